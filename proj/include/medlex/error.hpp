#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace medlex {

/// Malformed or unreadable input. Carries the source name and a 1-based line
/// number (0 when the problem is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : std::runtime_error(format(source, line, message)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& message) {
    if (line == 0) return source + ": " + message;
    return source + ":" + std::to_string(line) + ": " + message;
  }

  std::string source_;
  std::size_t line_;
};

/// A file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration accepted syntactically but rejected by lint.
class LintError : public std::runtime_error {
 public:
  explicit LintError(std::vector<std::string> findings)
      : std::runtime_error("configuration lint failed"), findings_(std::move(findings)) {}
  const std::vector<std::string>& findings() const { return findings_; }

 private:
  std::vector<std::string> findings_;
};

/// Two equally trusted sources disagree on the category of a term.
class MergeConflictError : public std::runtime_error {
 public:
  explicit MergeConflictError(std::vector<std::string> conflicts)
      : std::runtime_error("equal-trust conflicts between resources"),
        conflicts_(std::move(conflicts)) {}
  const std::vector<std::string>& conflicts() const { return conflicts_; }

 private:
  std::vector<std::string> conflicts_;
};

/// A gold-labelled term has no prediction to score against.
class MissingPredictionError : public std::runtime_error {
 public:
  explicit MissingPredictionError(std::string term)
      : std::runtime_error("gold term '" + term + "' has no prediction"), term_(std::move(term)) {}
  const std::string& term() const { return term_; }

 private:
  std::string term_;
};

}  // namespace medlex
