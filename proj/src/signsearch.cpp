#include "csae/signsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "csae/errors.hpp"

namespace csae {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kProbFloor = 1e-12;
constexpr double kRangeTol = 1e-9;

bool better(double nll_a, double theta_a, double nll_b, double theta_b) {
    if (nll_a != nll_b) return nll_a < nll_b;
    return theta_a < theta_b;  // deterministic tie-break toward smaller angle
}

// Memoizes pipeline evaluations by sign pattern; window sweeps revisit
// many vectors.
class MemoizedPipeline {
public:
    MemoizedPipeline(const Pipeline& pipeline, SearchStats* stats)
        : pipeline_(pipeline), stats_(stats) {}

    const Candidate& evaluate(const SignVector& signs) {
        if (stats_) ++stats_->pipeline_requests;
        auto [it, fresh] = cache_.try_emplace(signs.signs);
        if (fresh) {
            if (stats_) ++stats_->pipeline_evals;
            it->second = pipeline_.evaluate(signs);
        }
        return it->second;
    }

private:
    const Pipeline& pipeline_;
    SearchStats* stats_;
    std::map<std::vector<int>, Candidate> cache_;
};

Candidate grid_stage(const Pipeline& pipeline, int grid_size, MemoizedPipeline& memo) {
    if (grid_size < 2) throw std::invalid_argument("grid size must be at least 2");
    const auto& depths = pipeline.observations().depths;

    Candidate best;
    best.nll = std::numeric_limits<double>::infinity();
    for (int g = 0; g < grid_size; ++g) {
        const double theta_g = kHalfPi * (static_cast<double>(g) + 0.5) /
                               static_cast<double>(grid_size);
        const Candidate& cand = memo.evaluate(signs_for_theta(theta_g, depths));
        if (better(cand.nll, cand.theta_hat, best.nll, best.theta_hat)) best = cand;
    }
    return best;
}

}  // namespace

double nll(const Observations& obs, double theta_hat) {
    double total = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double p = std::clamp(exact_p0(theta_hat, obs.depths[i]),
                                    kProbFloor, 1.0 - kProbFloor);
        total -= obs.zeros[i] * std::log(p) + (obs.shots[i] - obs.zeros[i]) * std::log1p(-p);
    }
    return total;
}

double nll(const MeasurementSet& m, double theta_hat) {
    return nll(Observations::from_measurements(m), theta_hat);
}

SignVector signs_for_theta(double theta, const std::vector<int>& depths) {
    SignVector out;
    out.signs.reserve(depths.size());
    for (int n : depths) {
        out.signs.push_back(std::sin(static_cast<double>(2 * n + 1) * 2.0 * theta) >= 0.0 ? 1 : -1);
    }
    return out;
}

std::vector<SignVector> sliding_window_signs(const SignVector& base, int k, int w) {
    if (k < 0) throw std::invalid_argument("window start must be nonnegative");
    if (w < 1 || w > 8) throw std::invalid_argument("window width must lie in [1, 8]");
    const int len = static_cast<int>(base.size());
    if (k >= len) return {};

    const int width = std::min(w, len - k);
    std::vector<SignVector> out;
    out.reserve(std::size_t{1} << width);
    for (unsigned mask = 0; mask < (1u << width); ++mask) {
        SignVector s = base;
        for (int b = 0; b < width; ++b) {
            s.signs[static_cast<std::size_t>(k + b)] = (mask >> b) & 1u ? 1 : -1;
        }
        out.push_back(std::move(s));
    }
    return out;
}

double disambiguate_theta(double omega, const Observations& obs) {
    if (!std::isfinite(omega)) throw EstimationError("non-finite frequency estimate");

    // The signal frequency is 4 theta in [0, 2 pi); the principal value has
    // two preimages and at most one lies strictly inside [0, pi/2].
    const double candidates[2] = {omega / 4.0, (omega + 2.0 * std::numbers::pi) / 4.0};
    double best_theta = std::numeric_limits<double>::quiet_NaN();
    double best_nll = std::numeric_limits<double>::infinity();
    for (double c : candidates) {
        if (c < -kRangeTol || c > kHalfPi + kRangeTol) continue;
        const double theta = std::clamp(c, 0.0, kHalfPi);
        const double score = nll(obs, theta);
        if (std::isnan(best_theta) || better(score, theta, best_nll, best_theta)) {
            best_theta = theta;
            best_nll = score;
        }
    }
    if (std::isnan(best_theta)) {
        throw EstimationError("no angle candidate in [0, pi/2]");
    }
    return best_theta;
}

namespace {
std::vector<int> capped_ula(const PhysicalArray& array, int max_ula) {
    auto ula = positive_ula(coarray(array, array.order_q));
    if (max_ula >= 3 && static_cast<int>(ula.size()) > max_ula) {
        ula.resize(static_cast<std::size_t>(max_ula));
    }
    return ula;
}
}  // namespace

Pipeline::Pipeline(Observations obs, const PhysicalArray& array, SearchConfig config)
    : obs_(std::move(obs)), array_(array), config_(config),
      plan_(make_coarray_plan(array, array.order_q, capped_ula(array, config.max_ula))) {
    if (obs_.depths != array_.positions) {
        throw std::invalid_argument("measurement depths do not match the physical array");
    }
}

Candidate Pipeline::evaluate(const SignVector& signs) const {
    const PhysicalSignal phys = form_physical_signal(obs_, signs);
    const VirtualSignal virt = synthesize_virtual(phys, plan_, config_.renormalize);
    const SubspaceEstimate sub = esprit_omega(build_toeplitz(virt), config_.esprit);
    Candidate cand;
    cand.signs = signs;
    cand.theta_hat = disambiguate_theta(sub.omega, obs_);
    cand.nll = nll(obs_, cand.theta_hat);
    cand.separation = sub.separation;
    return cand;
}

Candidate initial_candidate(const Pipeline& pipeline, int grid_size, SearchStats* stats) {
    MemoizedPipeline memo(pipeline, stats);
    return grid_stage(pipeline, grid_size, memo);
}

Candidate search(const Observations& obs, const PhysicalArray& array,
                 const SearchConfig& config, SearchStats* stats) {
    Pipeline pipeline(obs, array, config);
    MemoizedPipeline memo(pipeline, stats);

    const int n_depths = static_cast<int>(obs.size());
    const int grid_size = config.grid_size > 0 ? config.grid_size : 4 * n_depths;

    Candidate best = grid_stage(pipeline, grid_size, memo);
    if (stats) stats->stage_best_nll.push_back(best.nll);

    // Sliding-window sweeps, hill-climbing on the running best. A single
    // left-to-right pass can corrupt shallow signs before the deep ones are
    // repaired, so after each pass the signs implied by the refined angle
    // are scored as well, and the pass repeats (bounded) while it improves.
    const int sweeps = std::max(1, config.max_sweeps);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        const double nll_before = best.nll;
        for (int k = 0; k < n_depths; ++k) {
            for (const SignVector& signs :
                 sliding_window_signs(best.signs, k, config.window_width)) {
                const Candidate& cand = memo.evaluate(signs);
                if (better(cand.nll, cand.theta_hat, best.nll, best.theta_hat)) best = cand;
            }
            if (stats) stats->stage_best_nll.push_back(best.nll);
        }
        const SignVector refit = signs_for_theta(best.theta_hat, obs.depths);
        if (!(refit == best.signs)) {
            const Candidate& cand = memo.evaluate(refit);
            if (better(cand.nll, cand.theta_hat, best.nll, best.theta_hat)) best = cand;
        }
        if (stats) stats->stage_best_nll.push_back(best.nll);
        if (!(best.nll < nll_before)) break;
    }
    return best;
}

}  // namespace csae
