#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "csae/harness.hpp"

using namespace csae;

namespace {

// Exhaustive two-way split: the optimal makespan over every assignment,
// via a subset-sum sweep over one machine's load.
long long optimal_two_way_split(const Schedule& schedule) {
    const long long total = total_u_applications(schedule);
    std::vector<char> reachable(static_cast<std::size_t>(total) + 1, 0);
    reachable[0] = 1;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const long long cost = 2LL * schedule.depths[i] + 1;
        for (long long s = 0; s < schedule.shots[i]; ++s) {
            for (long long v = total - cost; v >= 0; --v) {
                if (reachable[static_cast<std::size_t>(v)]) {
                    reachable[static_cast<std::size_t>(v + cost)] = 1;
                }
            }
        }
    }
    long long best = total;
    for (long long v = 0; v <= total; ++v) {
        if (reachable[static_cast<std::size_t>(v)]) {
            best = std::min(best, std::max(v, total - v));
        }
    }
    return best;
}

std::map<int, long long> shot_multiset(const Schedule& schedule) {
    std::map<int, long long> m;
    for (std::size_t i = 0; i < schedule.size(); ++i) m[schedule.depths[i]] += schedule.shots[i];
    return m;
}

}  // namespace

TEST_CASE("percentile is the ceiling order statistic") {
    const std::vector<double> errs{1e-4, 2e-4, 3e-4, 4e-4, 5e-4};
    CHECK(percentile_error(errs, 0.8) == 4e-4);
    CHECK(percentile_error(errs, 0.95) == 5e-4);
    CHECK(percentile_error(std::vector<double>{7.0, 7.0, 7.0}, 0.5) == 7.0);
    CHECK_THROWS_AS(percentile_error(std::vector<double>{}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(percentile_error(errs, 1.0), std::invalid_argument);
}

TEST_CASE("percentile of synthetic uniform errors concentrates") {
    Rng rng(99);
    std::vector<double> errs;
    for (int i = 0; i < 500; ++i) errs.push_back(rng.uniform());
    const double p95 = percentile_error(errs, 0.95);
    CHECK(p95 > 0.93);
    CHECK(p95 < 0.97);
}

TEST_CASE("percentile grows with the confidence level") {
    Rng rng(5);
    std::vector<double> errs;
    for (int i = 0; i < 137; ++i) errs.push_back(rng.uniform());
    double last = 0.0;
    for (double d : {0.1, 0.3, 0.5, 0.68, 0.9, 0.99}) {
        const double e = percentile_error(errs, d);
        CHECK(e >= last);
        last = e;
    }
}

TEST_CASE("WLS fit recovers exact models") {
    {
        std::vector<std::pair<double, double>> pts;
        for (double eps : {1e-2, 1e-3, 1e-4}) pts.emplace_back(eps, 4.0 / eps);
        const auto fit = wls_fit(pts);
        CHECK(fit.C == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(std::abs(fit.b) < 1e-8);
        CHECK(fit.C_stderr < 1e-6);
    }
    {
        std::vector<std::pair<double, double>> pts;
        for (double eps : {1e-2, 2e-3, 1e-3, 1e-4}) pts.emplace_back(eps, 4.0 / eps + 7.0);
        const auto fit = wls_fit(pts);
        CHECK(fit.C == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(fit.b == doctest::Approx(7.0).epsilon(1e-6));
    }
}

TEST_CASE("WLS fit rejects degenerate inputs") {
    CHECK_THROWS_AS(wls_fit({{1e-3, 10.0}, {1e-3, 20.0}}), std::invalid_argument);
    CHECK_THROWS_AS(wls_fit({{1e-3, 10.0}, {1e-3, 20.0}, {1e-3, 30.0}}), std::invalid_argument);
    CHECK_THROWS_AS(wls_fit({{1e-3, 10.0}, {-1e-3, 20.0}, {1e-2, 30.0}}), std::invalid_argument);
}

TEST_CASE("WLS residuals are orthogonal to the weighted regressors") {
    Rng rng(31);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 12; ++i) {
        const double eps = std::pow(10.0, -rng.uniform(1.0, 4.0));
        pts.emplace_back(eps, 4.0 / eps + 100.0 * rng.uniform(-1.0, 1.0));
    }
    const auto fit = wls_fit(pts);
    double dot_u = 0.0, dot_1 = 0.0, scale = 0.0;
    for (const auto& [eps, queries] : pts) {
        const double r = queries - fit.C / eps - fit.b;
        dot_u += eps * r / eps;
        dot_1 += eps * r;
        scale += std::abs(queries);
    }
    CHECK(std::abs(dot_u) < 1e-9 * scale);
    CHECK(std::abs(dot_1) < 1e-9 * scale);
}

TEST_CASE("single QPU load equals the full sequential cost") {
    const auto schedule = preset_config("table5").schedule;
    const auto assignment = parallel_schedule(schedule, 1);
    CHECK(assignment.parallel_depth == total_u_applications(schedule));
}

TEST_CASE("enough QPUs saturate at the deepest circuit") {
    const auto schedule = preset_config("table4").schedule;
    long long shots = 0;
    for (long long s : schedule.shots) shots += s;
    const auto assignment = parallel_schedule(schedule, static_cast<int>(shots));
    CHECK(assignment.parallel_depth == 2LL * schedule.n_max() + 1);
    CHECK(assignment.parallel_depth == 513);
}

TEST_CASE("greedy assignment conserves the shot multiset") {
    const auto schedule = preset_config("table5").schedule;
    for (int qpus : {1, 2, 3, 7, 40}) {
        const auto assignment = parallel_schedule(schedule, qpus);
        std::map<int, long long> seen;
        for (const auto& shots : assignment.shot_depths) {
            for (int depth : shots) ++seen[depth];
        }
        CHECK(seen == shot_multiset(schedule));
        // both lower bounds hold for any assignment
        long long total = total_u_applications(schedule);
        CHECK(assignment.parallel_depth >= (total + qpus - 1) / qpus);
        CHECK(assignment.parallel_depth >= 2LL * schedule.n_max() + 1);
        for (std::size_t i = 0; i < assignment.shot_depths.size(); ++i) {
            long long load = 0;
            for (int depth : assignment.shot_depths[i]) load += 2LL * depth + 1;
            CHECK(load == assignment.loads[i]);
        }
    }
}

TEST_CASE("two QPUs on the 68% preset match the exhaustive optimum") {
    const auto schedule = preset_config("table5").schedule;
    const auto greedy = parallel_schedule(schedule, 2);
    const long long optimal = optimal_two_way_split(schedule);
    CHECK(greedy.parallel_depth == optimal);
    CHECK(optimal == 1587);  // frozen from the subset-sum oracle
}

TEST_CASE("speedup curve is monotone and flat after saturation") {
    const auto schedule = preset_config("table5").schedule;
    const auto curve = speedup_curve(schedule, 200);
    CHECK(curve.front().second == total_u_applications(schedule));
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].second <= curve[i - 1].second);
    }
    CHECK(curve.back().second == 2LL * schedule.n_max() + 1);
}

TEST_CASE("monte carlo is deterministic and independent of the job count") {
    MonteCarloConfig cfg;
    cfg.trials = 6;
    cfg.base_seed = 42;
    cfg.estimator = preset_config("table5");
    cfg.estimator.search.esprit.method = EspritMethod::Auto;

    cfg.jobs = 1;
    const auto seq = monte_carlo(cfg);
    cfg.jobs = 3;
    const auto par = monte_carlo(cfg);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].amplitude == par[i].amplitude);
        CHECK(seq[i].a_hat == par[i].a_hat);
        CHECK(seq[i].seed == par[i].seed);
        CHECK(seq[i].error == doctest::Approx(std::abs(seq[i].amplitude - seq[i].a_hat))
                                  .epsilon(1e-15));
        CHECK(seq[i].total_queries == 1560);
    }
}

TEST_CASE("fixed-amplitude monte carlo pins every trial") {
    MonteCarloConfig cfg;
    cfg.trials = 3;
    cfg.fixed_amplitude = 0.5;
    cfg.base_seed = 7;
    cfg.estimator = preset_config("table5");
    cfg.estimator.search.esprit.method = EspritMethod::Auto;
    for (const auto& t : monte_carlo(cfg)) {
        CHECK(t.amplitude == 0.5);
        CHECK(t.max_depth == 128);
    }
}
