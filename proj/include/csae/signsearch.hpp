#pragma once

#include <optional>
#include <vector>

#include "csae/arrays.hpp"
#include "csae/esprit.hpp"
#include "csae/grover.hpp"
#include "csae/signal.hpp"

namespace csae {

/// A sign assignment together with the angle and score it produced.
struct Candidate {
    SignVector signs;
    double theta_hat = 0.0;
    double nll = 0.0;
    double separation = 1.0;
};

struct SearchConfig {
    int grid_size = 0;   // 0 means 4 * |D|
    int window_width = 5;
    int max_sweeps = 4;  // window passes; later passes run only after an improvement
    int max_ula = 0;     // cap on the M fed to ESPRIT; 0 keeps the full run
    bool renormalize = false;
    EspritOptions esprit;
};

struct SearchStats {
    long pipeline_evals = 0;       // full signal->ESPRIT->score evaluations
    long pipeline_requests = 0;    // including memoized repeats
    std::vector<double> stage_best_nll;
};

/// Binomial negative log-likelihood of theta given the measurements, with
/// probabilities clamped to [1e-12, 1 - 1e-12].
double nll(const Observations& obs, double theta_hat);
double nll(const MeasurementSet& m, double theta_hat);

/// s_n = +1 where sin((2n+1) 2 theta) >= 0, else -1.
SignVector signs_for_theta(double theta, const std::vector<int>& depths);

/// Every sign vector agreeing with base outside positions [k, k+w).
/// The window truncates at the end of the vector; k past the end gives {}.
std::vector<SignVector> sliding_window_signs(const SignVector& base, int k, int w);

/// Map an ESPRIT frequency to theta in [0, pi/2]. The signal frequency is
/// 4 theta in [0, 2 pi), so the principal-value omega has the preimages
/// omega/4 and (omega + 2 pi)/4; in-range candidates are scored by nll.
/// Throws EstimationError when neither preimage is admissible.
double disambiguate_theta(double omega, const Observations& obs);

/// Shared measurement-side context for one search: the plan and ULA are
/// built once per (array, order) and reused for every sign candidate.
class Pipeline {
public:
    Pipeline(Observations obs, const PhysicalArray& array, SearchConfig config);

    /// signal -> virtual array -> ESPRIT -> disambiguation -> nll.
    Candidate evaluate(const SignVector& signs) const;

    const Observations& observations() const { return obs_; }
    const SearchConfig& config() const { return config_; }
    int ula_length() const { return static_cast<int>(plan_.ula.size()); }

private:
    Observations obs_;
    PhysicalArray array_;
    SearchConfig config_;
    CoarrayPlan plan_;
};

/// Grid stage of the search: signs_for_theta over a uniform grid on
/// [0, pi/2], each candidate pushed through the full pipeline, best nll wins.
Candidate initial_candidate(const Pipeline& pipeline, int grid_size,
                            SearchStats* stats = nullptr);

/// Full sign search: grid initialization, then a sliding window sweep that
/// hill-climbs on the running best. At most grid_size + |D| * 2^w pipeline
/// evaluations; repeated sign vectors are memoized.
Candidate search(const Observations& obs, const PhysicalArray& array,
                 const SearchConfig& config, SearchStats* stats = nullptr);

}  // namespace csae
