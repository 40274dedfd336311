#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "medlex/cli.hpp"

namespace fixture {

namespace fs = std::filesystem;

inline fs::path dir() { return fs::path(MEDLEX_FIXTURE_DIR); }
inline fs::path data_dir() { return fs::path(MEDLEX_DATA_DIR); }
inline std::string path(const std::string& name) { return (dir() / name).string(); }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("medlex-" + tag + "-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

inline Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "medlex");
  std::ostringstream out, err;
  Run r;
  r.code = medlex::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace fixture
