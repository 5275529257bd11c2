#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "carriersig/cli.hpp"

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

/// Runs the CLI in-process; args exclude the program name.
inline CliResult run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"carriersig"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.status = carriersig::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("carriersig-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

/// Distances with 70 same-antenna pairs (50 below 0.4) and 1308
/// different-antenna pairs (8 below 0.4).
inline std::string dubai_distances_csv() {
  std::string s = "carrier_a,carrier_b,distance,same_antenna\n";
  int n = 0;
  const auto row = [&](double d, bool same) {
    s += "X" + std::to_string(n) + ",Y" + std::to_string(n) + "," + std::to_string(d) +
         (same ? ",true\n" : ",false\n");
    ++n;
  };
  for (int i = 0; i < 50; ++i) row(0.1 + 0.005 * i, true);
  for (int i = 0; i < 20; ++i) row(0.45 + 0.02 * i, true);
  for (int i = 0; i < 8; ++i) row(0.3 + 0.01 * i, false);
  for (int i = 0; i < 1300; ++i) row(0.5 + 0.0003 * i, false);
  return s;
}
