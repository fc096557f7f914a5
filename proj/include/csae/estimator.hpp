#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csae/arrays.hpp"
#include "csae/grover.hpp"
#include "csae/schedule.hpp"
#include "csae/signsearch.hpp"

namespace csae {

struct EstimateResult {
    double theta_hat = 0.0;
    double a_hat = 0.0;  // sin(theta_hat)
    SignVector signs;
    double nll = 0.0;
    long long total_queries = 0;
    int max_depth = 0;
    double separation = 1.0;  // subspace diagnostic, surfaced but never acted on
};

/// Everything the estimator needs besides the measurements themselves.
struct EstimatorConfig {
    PhysicalArray array;
    Schedule schedule;
    SearchConfig search;

    /// Nested array plus rank-based schedule from (q, levels, K).
    static EstimatorConfig nested(int order_q, const std::vector<int>& levels, double shot_scale);
    /// Explicit depth list plus rank-based schedule.
    static EstimatorConfig from_depths(std::vector<int> depths, int order_q, double shot_scale);
};

/// Published preset configurations (confidence 99% / 95% / 68%). Depth and
/// shot lists are stored verbatim; names are "table3", "table4", "table5".
EstimatorConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Algorithm core: sign search over the configured array, amplitude from
/// the winning angle, exact query accounting from the schedule.
EstimateResult estimate(const Observations& obs, const EstimatorConfig& config);
EstimateResult estimate(const MeasurementSet& measurements, const EstimatorConfig& config);

/// Simulate-and-estimate composition used by the benchmarks; deterministic
/// for a given seed.
EstimateResult run_csae(double theta_true, const EstimatorConfig& config, std::uint64_t seed);

}  // namespace csae
