#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fdts/timeseries.hpp"
#include "json.hpp"

namespace fdts::test {

inline std::filesystem::path data_dir() { return FDTS_TEST_DATA_DIR; }

inline const nlohmann::json& oracles() {
  static const nlohmann::json j = [] {
    std::ifstream in(data_dir() / "oracles.json");
    return nlohmann::json::parse(in);
  }();
  return j;
}

inline std::vector<double> read_column(const std::string& name) {
  std::ifstream in(data_dir() / name);
  std::vector<double> out;
  double v = 0.0;
  while (in >> v) out.push_back(v);
  return out;
}

inline TimeSeries oracle_series(const std::string& name) {
  return TimeSeries::from_values(read_column(name), name);
}

inline std::vector<double> to_vector(const TimeSeries& x) {
  return {x.values().begin(), x.values().end()};
}

// Fresh scratch directory per call under the build tree's temp area.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("fdts_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fdts::test
