#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffrakt/analytic.hpp"
#include "diffrakt/window.hpp"

namespace diffrakt::cli {

// Every flag of the command line, in the form it takes in a JSON config.
struct RunConfig {
  // sine, ball, gauss, exp, cpA, cpB, ginibre (determinantal), perm-<family>,
  // cox, gaf, poisson.
  std::string process = "sine";
  double p = 1.0;
  double alpha = 0.5;
  int d = 1;
  // Ginibre matrix size or GAF truncation degree; 0 picks a default.
  int N = 0;
  // Empty picks a default window for the process.
  std::string window;
  std::uint64_t seed = 42;
  int realizations = 1;
  int bins = 64;
  // 0 picks min(inradius / 2, 3).
  double rmax = 0.0;
  std::string tgrid = "0:3:301";
  std::string out = ".";
  // Sampler grid (spectral nodes or FFT cells per axis); 0 picks a default.
  int grid = 0;
  // Ginibre engine: "matrix" or "disk".
  std::string engine = "disk";
  // Verification fault injection (relative perturbation of h).
  double mutate = 0.0;

  // Throws InvalidArgument on malformed values.
  void check() const;
};

nlohmann::ordered_json to_json(const RunConfig& config);
// Unknown keys are rejected; missing keys keep their defaults.
RunConfig from_json(const nlohmann::json& j);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  std::vector<double> values() const;
};
// "start:stop:count".
Grid parse_grid(const std::string& text);

ProcessSpec process_spec(const RunConfig& config);
Window resolve_window(const RunConfig& config);

}  // namespace diffrakt::cli
