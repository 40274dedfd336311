#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace medlex {

/// Aligned plain-text table. The first column is left-aligned, the others
/// right-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_rule();
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;  // empty row = rule
};

/// num/den * multiplier rounded half-up to `decimals` places using integer
/// arithmetic. "N/A" when den is zero.
std::string format_fixed(std::size_t num, std::size_t den, std::size_t multiplier, int decimals);

inline std::string format_percent(std::size_t num, std::size_t den) {
  return format_fixed(num, den, 100, 1);
}
inline std::string format_ratio(std::size_t num, std::size_t den) {
  return format_fixed(num, den, 1, 3);
}

}  // namespace medlex
