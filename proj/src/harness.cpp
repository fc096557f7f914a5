#include "csae/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace csae {

std::vector<TrialRecord> monte_carlo(const MonteCarloConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trial count must be positive");
    if (config.fixed_amplitude < 0.0 && !(config.amplitude_min < config.amplitude_max)) {
        throw std::invalid_argument("empty amplitude range");
    }

    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(config.trials));

    std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
    const Rng base(config.base_seed);

    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto worker = [&](unsigned worker_id) {
        try {
            for (int t = static_cast<int>(worker_id); t < config.trials;
                 t += static_cast<int>(jobs)) {
                Rng trial_rng = base.derive(static_cast<std::uint64_t>(t));
                const std::uint64_t trial_seed = trial_rng.raw();

                Rng run_rng(trial_seed);
                const double amplitude = config.fixed_amplitude >= 0.0
                                             ? config.fixed_amplitude
                                             : run_rng.uniform(config.amplitude_min,
                                                               config.amplitude_max);
                const double theta = std::asin(amplitude);

                MeasurementSet m = sample_set(theta, config.estimator.schedule, run_rng);
                m.seed = trial_seed;
                const EstimateResult est = estimate(m, config.estimator);

                TrialRecord& rec = records[static_cast<std::size_t>(t)];
                rec.amplitude = amplitude;
                rec.a_hat = est.a_hat;
                rec.error = std::abs(amplitude - est.a_hat);
                rec.total_queries = est.total_queries;
                rec.max_depth = est.max_depth;
                rec.seed = trial_seed;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

double percentile_error(std::vector<double> errors, double delta) {
    if (errors.empty()) throw std::invalid_argument("no trial errors");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("confidence must lie in (0,1)");
    std::sort(errors.begin(), errors.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(delta * static_cast<double>(errors.size())));
    return errors[std::clamp<std::size_t>(rank, 1, errors.size()) - 1];
}

double percentile_error(const std::vector<TrialRecord>& trials, double delta) {
    std::vector<double> errors;
    errors.reserve(trials.size());
    for (const auto& t : trials) errors.push_back(t.error);
    return percentile_error(std::move(errors), delta);
}

FitResult wls_fit(const std::vector<std::pair<double, double>>& eps_queries) {
    if (eps_queries.size() < 3) throw std::invalid_argument("fit needs at least 3 points");

    // Model N = C/eps + b, weights w = eps: 2x2 weighted normal equations.
    Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
    Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
    for (const auto& [eps, queries] : eps_queries) {
        if (!(eps > 0.0)) throw std::invalid_argument("errors must be positive");
        const Eigen::Vector2d x(1.0 / eps, 1.0);
        gram += eps * x * x.transpose();
        rhs += eps * queries * x;
    }
    const double det = gram.determinant();
    if (std::abs(det) <= 1e-12 * gram(0, 0) * gram(1, 1)) {
        throw std::invalid_argument("singular fit: identical error values");
    }
    const Eigen::Vector2d coeff = gram.inverse() * rhs;

    double weighted_ss = 0.0;
    for (const auto& [eps, queries] : eps_queries) {
        const double r = queries - coeff[0] / eps - coeff[1];
        weighted_ss += eps * r * r;
    }
    const double dof = static_cast<double>(eps_queries.size()) - 2.0;
    const double s2 = weighted_ss / dof;
    const Eigen::Matrix2d cov = s2 * gram.inverse();

    FitResult fit;
    fit.C = coeff[0];
    fit.b = coeff[1];
    fit.C_stderr = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.b_stderr = std::sqrt(std::max(0.0, cov(1, 1)));
    return fit;
}

long long total_u_applications(const Schedule& schedule) {
    long long total = 0;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        total += schedule.shots[i] * (2LL * schedule.depths[i] + 1);
    }
    return total;
}

QpuAssignment parallel_schedule(const Schedule& schedule, int n_qpus) {
    if (n_qpus < 1) throw std::invalid_argument("QPU count must be positive");

    QpuAssignment out;
    out.shot_depths.resize(static_cast<std::size_t>(n_qpus));
    out.loads.assign(static_cast<std::size_t>(n_qpus), 0);

    // Least-loaded-first, ties to the lowest QPU index.
    using Entry = std::pair<long long, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (int i = 0; i < n_qpus; ++i) heap.emplace(0, i);

    // One shot at depth n costs 2n+1 sequential applications of U; walk the
    // schedule from the deepest circuits down.
    for (auto i = static_cast<long long>(schedule.size()) - 1; i >= 0; --i) {
        const int depth = schedule.depths[static_cast<std::size_t>(i)];
        const long long cost = 2LL * depth + 1;
        for (long long s = 0; s < schedule.shots[static_cast<std::size_t>(i)]; ++s) {
            auto [load, qpu] = heap.top();
            heap.pop();
            out.shot_depths[static_cast<std::size_t>(qpu)].push_back(depth);
            out.loads[static_cast<std::size_t>(qpu)] = load + cost;
            heap.emplace(load + cost, qpu);
        }
    }
    out.parallel_depth = *std::max_element(out.loads.begin(), out.loads.end());
    return out;
}

std::vector<std::pair<int, long long>> speedup_curve(const Schedule& schedule, int max_qpus) {
    if (max_qpus < 1) throw std::invalid_argument("QPU count must be positive");
    std::vector<std::pair<int, long long>> curve;
    curve.reserve(static_cast<std::size_t>(max_qpus));
    for (int n = 1; n <= max_qpus; ++n) {
        curve.emplace_back(n, parallel_schedule(schedule, n).parallel_depth);
    }
    return curve;
}

}  // namespace csae
