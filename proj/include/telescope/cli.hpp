#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace telescope {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<int> depths;
  std::string weight = "1/2";
  std::optional<double> tolerance;
  std::size_t samples = 64;
  std::string grid;
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  double radius = 1.0;
  std::string side = "z";
  std::optional<std::string> lambda;
  double threshold = 1.0;
  std::optional<int> dual;
};

/// Exit codes: 0 success, 1 mathematical failure, 2 input error. Reports
/// (and error payloads) go to the --out file or to `out`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace telescope
