#include "csae/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csae/fft.hpp"

namespace csae {

namespace {

using Cplx = std::complex<double>;

// Direct evaluation is cheaper and more accurate for small arrays; the FFT
// route takes over once support * ULA length grows past this.
constexpr std::size_t kDirectCostLimit = std::size_t{1} << 21;

// q-fold self-convolution of a signal living on sparse integer positions,
// returned as a dense vector over [0, q * xmax].
std::vector<Cplx> convolve_power(const std::vector<int>& positions,
                                 const Eigen::VectorXcd& values, int q, int xmax) {
    std::vector<Cplx> acc(static_cast<std::size_t>(xmax) + 1, Cplx{0.0, 0.0});
    for (std::size_t i = 0; i < positions.size(); ++i) {
        acc[static_cast<std::size_t>(positions[i])] = values[static_cast<Eigen::Index>(i)];
    }
    std::vector<Cplx> cur = acc;
    for (int round = 1; round < q; ++round) {
        std::vector<Cplx> next(static_cast<std::size_t>(round + 1) * xmax + 1, Cplx{0.0, 0.0});
        for (std::size_t i = 0; i < positions.size(); ++i) {
            const auto offset = static_cast<std::size_t>(positions[i]);
            const Cplx y = values[static_cast<Eigen::Index>(i)];
            if (y == Cplx{0.0, 0.0}) continue;
            for (std::size_t s = 0; s < cur.size(); ++s) {
                next[s + offset] += y * cur[s];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Correlation lags 0..m-1 of conv with itself, evaluated directly.
std::vector<Cplx> correlate_direct(const std::vector<Cplx>& conv, int m) {
    std::vector<Cplx> out(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v) {
        Cplx sum{0.0, 0.0};
        for (std::size_t s = static_cast<std::size_t>(v); s < conv.size(); ++s) {
            sum += conv[s] * std::conj(conv[s - static_cast<std::size_t>(v)]);
        }
        out[static_cast<std::size_t>(v)] = sum;
    }
    return out;
}

// Same correlation through the FFT: IFFT(|FFT(f)^q|^2) holds the lags.
std::vector<Cplx> correlate_fft(const std::vector<int>& positions,
                                const Eigen::VectorXcd& values, int q,
                                std::size_t fft_len, int m) {
    std::vector<Cplx> buf(fft_len, Cplx{0.0, 0.0});
    for (std::size_t i = 0; i < positions.size(); ++i) {
        buf[static_cast<std::size_t>(positions[i])] = values[static_cast<Eigen::Index>(i)];
    }
    fft_inplace(buf, false);
    for (auto& x : buf) {
        Cplx p = x;
        for (int round = 1; round < q; ++round) p *= x;
        x = p * std::conj(p);  // = |FFT(f)^q|^2, real
    }
    fft_inplace(buf, true);
    return {buf.begin(), buf.begin() + m};
}

bool use_direct(const CoarrayPlan& plan) {
    const auto support = static_cast<std::size_t>(plan.order_q) *
                             static_cast<std::size_t>(plan.max_position) + 1;
    return support * plan.ula.size() <= kDirectCostLimit;
}

std::vector<Cplx> tuple_sums(const std::vector<int>& positions, const Eigen::VectorXcd& values,
                             const CoarrayPlan& plan) {
    const int m = static_cast<int>(plan.ula.size());
    if (use_direct(plan)) {
        return correlate_direct(convolve_power(positions, values, plan.order_q,
                                               plan.max_position), m);
    }
    return correlate_fft(positions, values, plan.order_q, plan.fft_len, m);
}

}  // namespace

CoarrayPlan make_coarray_plan(const PhysicalArray& physical, int order_q,
                              const std::vector<int>& ula) {
    if (order_q < 1) throw std::invalid_argument("array order q must be >= 1");
    CoarrayPlan plan;
    plan.order_q = order_q;
    plan.max_position = physical.max_position();
    plan.fft_len = next_pow2(2 * static_cast<std::size_t>(order_q) *
                                 static_cast<std::size_t>(plan.max_position) + 1);
    plan.ula = ula;

    Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(physical.positions.size()));
    const auto counts = tuple_sums(physical.positions, ones, plan);
    plan.tuple_counts.resize(counts.size());
    for (std::size_t v = 0; v < counts.size(); ++v) {
        const double c = counts[v].real();
        if (!(c > 0.5)) {
            throw std::invalid_argument("ULA position not representable in the co-array");
        }
        plan.tuple_counts[v] = c;
    }
    return plan;
}

CoarrayPlan make_coarray_plan(const PhysicalArray& physical, int order_q) {
    return make_coarray_plan(physical, order_q, positive_ula(coarray(physical, order_q)));
}

PhysicalSignal form_physical_signal(const Observations& obs, const SignVector& signs) {
    if (obs.size() != signs.size()) {
        throw std::invalid_argument("sign vector length does not match measurement count");
    }
    PhysicalSignal out;
    out.positions = obs.depths;
    out.values.resize(static_cast<Eigen::Index>(obs.size()));
    for (std::size_t i = 0; i < obs.size(); ++i) {
        // Clamping keeps the square root real when p0_hat saturates at 0 or 1.
        const double c = std::clamp(2.0 * obs.p0_hat[i] - 1.0, -1.0, 1.0);
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        out.values[static_cast<Eigen::Index>(i)] = Cplx{c, signs.signs[i] >= 0 ? s : -s};
    }
    return out;
}

PhysicalSignal form_physical_signal(const MeasurementSet& m, const SignVector& signs) {
    return form_physical_signal(Observations::from_measurements(m), signs);
}

VirtualSignal synthesize_virtual(const PhysicalSignal& signal, const CoarrayPlan& plan,
                                 bool renormalize) {
    if (signal.positions.empty()) throw std::invalid_argument("empty physical signal");
    const auto sums = tuple_sums(signal.positions, signal.values, plan);

    VirtualSignal out;
    out.ula_length = static_cast<int>(plan.ula.size());
    out.values.resize(static_cast<Eigen::Index>(sums.size()));
    for (std::size_t v = 0; v < sums.size(); ++v) {
        Cplx z = sums[v] / plan.tuple_counts[v];
        if (renormalize && v != 0) {
            const double mag = std::abs(z);
            if (mag > 0.0) z /= mag;
        }
        out.values[static_cast<Eigen::Index>(v)] = z;
    }
    out.values[0] = Cplx{1.0, 0.0};  // empty phase difference
    return out;
}

VirtualSignal synthesize_virtual(const PhysicalSignal& signal, const PhysicalArray& physical,
                                 int order_q, const std::vector<int>& ula, bool renormalize) {
    return synthesize_virtual(signal, make_coarray_plan(physical, order_q, ula), renormalize);
}

}  // namespace csae
