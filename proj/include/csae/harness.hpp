#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csae/estimator.hpp"
#include "csae/schedule.hpp"

namespace csae {

/// One Monte Carlo trial of the full simulate-estimate loop.
struct TrialRecord {
    double amplitude = 0.0;
    double a_hat = 0.0;
    double error = 0.0;  // |amplitude - a_hat|
    long long total_queries = 0;
    int max_depth = 0;
    std::uint64_t seed = 0;
};

/// Weighted-least-squares fit of N = C / eps + b.
struct FitResult {
    double C = 0.0;
    double b = 0.0;
    double C_stderr = 0.0;
    double b_stderr = 0.0;
};

/// Greedy distribution of the schedule's shots over QPUs.
struct QpuAssignment {
    std::vector<std::vector<int>> shot_depths;  // per QPU, depth of each assigned shot
    std::vector<long long> loads;               // per QPU, sequential U applications
    long long parallel_depth = 0;               // max load
};

struct MonteCarloConfig {
    double amplitude_min = 0.1;
    double amplitude_max = 0.9;
    double fixed_amplitude = -1.0;  // >= 0 pins the amplitude instead
    int trials = 1;
    std::uint64_t base_seed = 0;
    int jobs = 0;  // 0 = hardware concurrency
    EstimatorConfig estimator;
};

/// Independent seeded trials, deterministic for a given base seed and
/// independent of the job count.
std::vector<TrialRecord> monte_carlo(const MonteCarloConfig& config);

/// The ceil(delta * T)-th smallest error (no interpolation).
double percentile_error(const std::vector<TrialRecord>& trials, double delta);
double percentile_error(std::vector<double> errors, double delta);

/// Minimize sum_i eps_i * (N_i - C/eps_i - b)^2 over (C, b) via the 2x2
/// normal equations; standard errors from the weighted residual covariance.
/// Throws std::invalid_argument for fewer than 3 points or a singular system.
FitResult wls_fit(const std::vector<std::pair<double, double>>& eps_queries);

/// Expand the schedule into shots (cost 2n+1 sequential U applications per
/// depth-n shot), then assign in decreasing cost to the least-loaded QPU.
QpuAssignment parallel_schedule(const Schedule& schedule, int n_qpus);

/// (n_qpus, parallel_depth) for n_qpus = 1..max_qpus.
std::vector<std::pair<int, long long>> speedup_curve(const Schedule& schedule, int max_qpus);

/// Total sequential U applications of the whole schedule (the 1-QPU load).
long long total_u_applications(const Schedule& schedule);

}  // namespace csae
