#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "dispute/json_codec.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return DISPUTE_DATA_DIR; }
inline std::filesystem::path asset_dir() { return DISPUTE_ASSET_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dispute::json read_json(const std::filesystem::path& p) {
  return dispute::json::parse(read_file(p));
}

inline dispute::MaterialSummary iphone_summary() {
  return dispute::summary_from_json(read_json(data_dir() / "iphone" / "summary.json"));
}

inline dispute::CaseFile iphone_case() {
  return dispute::case_from_json(read_json(data_dir() / "iphone" / "case.json"));
}

inline dispute::MockProvider::Script iphone_script() {
  return dispute::mock_script_from_json(read_json(data_dir() / "iphone" / "mock_script.json"));
}

/// Fresh scratch directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dispute-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << body;
}

}  // namespace fixtures
