#pragma once

#include <string>
#include <vector>

#include "csae/arrays.hpp"
#include "csae/estimator.hpp"
#include "csae/harness.hpp"
#include "csae/schedule.hpp"

namespace csae {

/// Serialization helpers for the CLI. All output is deterministic for a
/// given input: JSON keys are ordered and doubles use shortest round-trip
/// (JSON) or 17 significant digits (CSV).

std::string schedule_json(const Schedule& schedule);
std::string arrays_json(const PhysicalArray& physical, const VirtualArray& virt);
std::string estimate_json(const EstimateResult& result, double amplitude_true,
                          std::uint64_t seed);
std::string fit_json(const FitResult& fit);
std::string benchmark_summary_json(const std::vector<TrialRecord>& trials,
                                   const std::vector<double>& deltas,
                                   long long queries_per_trial);
std::string speedup_json(const std::vector<std::pair<int, long long>>& curve,
                         long long saturation);

/// CSV columns: amplitude,a_hat,error,queries,max_depth,seed
std::string trials_csv(const std::vector<TrialRecord>& trials);
/// CSV columns: epsilon,queries  (one row per confidence level)
std::string fit_points_csv(const std::vector<std::pair<double, double>>& points);
/// CSV columns: n_qpus,parallel_depth
std::string speedup_csv(const std::vector<std::pair<int, long long>>& curve);

/// Parse a two-column (epsilon, queries) CSV, header row optional.
std::vector<std::pair<double, double>> parse_fit_points_csv(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace csae
