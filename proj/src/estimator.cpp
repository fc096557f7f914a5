#include "csae/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace csae {

EstimatorConfig EstimatorConfig::nested(int order_q, const std::vector<int>& levels,
                                        double shot_scale) {
    EstimatorConfig cfg;
    cfg.array = nested_positions(order_q, levels);
    cfg.schedule = shot_schedule(cfg.array.positions, shot_scale);
    return cfg;
}

EstimatorConfig EstimatorConfig::from_depths(std::vector<int> depths, int order_q,
                                             double shot_scale) {
    EstimatorConfig cfg;
    cfg.array = PhysicalArray::from_positions(std::move(depths), order_q);
    cfg.schedule = shot_schedule(cfg.array.positions, shot_scale);
    return cfg;
}

// Published target-error presets. Depth and shot lists are stored verbatim;
// shot_schedule() reproduces them from K, which the tests cross-check.
EstimatorConfig preset_config(const std::string& name) {
    EstimatorConfig cfg;
    if (name == "table3") {  // 99% confidence
        cfg.array = PhysicalArray::from_positions(
            {0, 1, 2, 4, 8, 16, 32, 64, 128, 256}, 4);
        cfg.array.levels = {2, 2, 2, 2, 2, 2, 2, 2, 2};
        cfg.schedule.depths = cfg.array.positions;
        cfg.schedule.shots = {162, 73, 65, 57, 49, 41, 33, 25, 17, 9};
        cfg.schedule.shot_scale = 8.1;
    } else if (name == "table4") {  // 95% confidence
        cfg.array = PhysicalArray::from_positions(
            {0, 1, 2, 4, 8, 12, 16, 32, 64, 128, 256}, 4);
        cfg.array.levels = {2, 2, 4, 2, 2, 2, 2, 2};
        cfg.schedule.depths = cfg.array.positions;
        cfg.schedule.shots = {88, 40, 36, 32, 28, 24, 20, 16, 12, 8, 4};
        cfg.schedule.shot_scale = 4.0;
    } else if (name == "table5") {  // 68% confidence
        cfg.array = PhysicalArray::from_positions(
            {0, 1, 2, 4, 8, 16, 32, 64, 128}, 4);
        cfg.array.levels = {2, 2, 2, 2, 2, 2, 2, 2};
        cfg.schedule.depths = cfg.array.positions;
        cfg.schedule.shots = {54, 24, 21, 18, 15, 12, 9, 6, 3};
        cfg.schedule.shot_scale = 3.0;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return cfg;
}

std::vector<std::string> preset_names() { return {"table3", "table4", "table5"}; }

EstimateResult estimate(const Observations& obs, const EstimatorConfig& config) {
    if (obs.depths != config.array.positions) {
        throw std::invalid_argument("measurements were not taken at the configured depths");
    }
    const Candidate best = search(obs, config.array, config.search);

    EstimateResult result;
    result.theta_hat = best.theta_hat;
    result.a_hat = std::sin(best.theta_hat);
    result.signs = best.signs;
    result.nll = best.nll;
    result.separation = best.separation;
    result.total_queries = total_queries(config.schedule);
    result.max_depth = config.schedule.n_max();
    return result;
}

EstimateResult estimate(const MeasurementSet& measurements, const EstimatorConfig& config) {
    return estimate(Observations::from_measurements(measurements), config);
}

EstimateResult run_csae(double theta_true, const EstimatorConfig& config, std::uint64_t seed) {
    Rng rng(seed);
    MeasurementSet measurements = sample_set(theta_true, config.schedule, rng);
    measurements.seed = seed;
    return estimate(measurements, config);
}

}  // namespace csae
