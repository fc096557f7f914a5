#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "csae/arrays.hpp"
#include "csae/grover.hpp"

namespace csae {

/// One sign per measured depth: the assumed sign of sin((2n+1) 2 theta).
struct SignVector {
    std::vector<int> signs;  // each +1 or -1

    std::size_t size() const { return signs.size(); }
    bool operator==(const SignVector&) const = default;
};

/// Unit-modulus signal estimates on the physical positions.
struct PhysicalSignal {
    std::vector<int> positions;
    Eigen::VectorXcd values;
};

/// Signal synthesized on the positive ULA of the virtual array.
struct VirtualSignal {
    Eigen::VectorXcd values;  // z_0 .. z_{M-1}
    int ula_length = 0;
};

/// Precomputed per-(array, order) data for virtual-signal synthesis:
/// FFT length and the exact decomposition counts on the positive ULA.
struct CoarrayPlan {
    int order_q = 1;
    int max_position = 0;
    std::size_t fft_len = 0;
    std::vector<int> ula;            // [0 .. M-1]
    std::vector<double> tuple_counts;  // decompositions per ULA position
};

CoarrayPlan make_coarray_plan(const PhysicalArray& physical, int order_q);
CoarrayPlan make_coarray_plan(const PhysicalArray& physical, int order_q,
                              const std::vector<int>& ula);

/// y_n = c + i s_n sqrt(1 - c^2) with c = clamp(2 p0_hat - 1, -1, 1).
/// Throws std::invalid_argument when the sign count does not match.
PhysicalSignal form_physical_signal(const Observations& obs, const SignVector& signs);
PhysicalSignal form_physical_signal(const MeasurementSet& m, const SignVector& signs);

/// Co-array synthesis: z_v is the average of prod_i y_{a_i} * conj(prod_j y_{b_j})
/// over all index tuples with sum(a) - sum(b) = v. Computed as a q-fold
/// self-convolution of the physical signal followed by an autocorrelation,
/// which sums exactly the same tuple products. z_0 is pinned to 1.
/// When renormalize is set every z_v is rescaled to unit modulus.
VirtualSignal synthesize_virtual(const PhysicalSignal& signal, const CoarrayPlan& plan,
                                 bool renormalize = false);

/// Convenience overload that builds the plan on the fly.
VirtualSignal synthesize_virtual(const PhysicalSignal& signal, const PhysicalArray& physical,
                                 int order_q, const std::vector<int>& ula,
                                 bool renormalize = false);

}  // namespace csae
