#pragma once

#include <iosfwd>
#include <vector>

#include "cli/run_config.hpp"
#include "diffrakt/samplers.hpp"

namespace diffrakt::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kVerifyFailure = 4 };

// Worker count: hardware concurrency, capped by DIFFRAKT_THREADS when set.
int worker_count();

// Realizations 0..n-1 with seeds derive_seed(seed, i), in realization order.
std::vector<PointConfiguration> sample_realizations(const RunConfig& config, int threads);

int cmd_analytic(const RunConfig& config);
int cmd_sample(const RunConfig& config);
int cmd_estimate(const RunConfig& config);
int cmd_verify(const RunConfig& config, std::ostream& report);

}  // namespace diffrakt::cli
