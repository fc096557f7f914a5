#include "csae/arrays.hpp"

#include <algorithm>
#include <stdexcept>

namespace csae {

namespace {
constexpr long long kMaxPosition = 1 << 24;  // guards schedule/FFT sizes downstream
}

PhysicalArray PhysicalArray::from_positions(std::vector<int> positions, int order_q) {
    if (order_q < 1) throw std::invalid_argument("array order q must be >= 1");
    if (positions.empty()) throw std::invalid_argument("empty position list");
    for (int p : positions) {
        if (p < 0) throw std::invalid_argument("positions must be nonnegative");
        if (p > kMaxPosition) throw std::invalid_argument("position too large");
    }
    positions.push_back(0);  // a depth-0 measurement is always taken
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    return PhysicalArray{std::move(positions), order_q, {}};
}

PhysicalArray nested_positions(int order_q, const std::vector<int>& levels) {
    if (order_q < 1) throw std::invalid_argument("array order q must be >= 1");
    const std::size_t two_q = 2 * static_cast<std::size_t>(order_q);
    // 2q levels follow the nested-set construction verbatim; 2q+1 levels are
    // the split form of the same array (every set stops at N_i - 1).
    const bool split_form = levels.size() == two_q + 1;
    if (levels.size() != two_q && !split_form) {
        throw std::invalid_argument("levels must have length 2q or 2q+1");
    }
    for (int n : levels) {
        if (n < 1) throw std::invalid_argument("levels must be positive");
    }

    std::vector<int> positions{0};
    long long stride = 1;  // prod_{k < i} N_k, with N_0 = 1
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const bool last = i + 1 == levels.size();
        const int n_hi = (!split_form && last) ? levels[i] : levels[i] - 1;
        for (int n = 1; n <= n_hi; ++n) {
            const long long pos = stride * n;
            if (pos > kMaxPosition) throw std::invalid_argument("nested array position too large");
            positions.push_back(static_cast<int>(pos));
        }
        stride *= levels[i];
    }
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    return PhysicalArray{std::move(positions), order_q, levels};
}

bool VirtualArray::contains(long long v) const {
    return std::binary_search(positions.begin(), positions.end(), v);
}

VirtualArray coarray(const PhysicalArray& physical, int order_q) {
    if (physical.positions.empty()) throw std::invalid_argument("empty physical array");
    if (order_q < 1) throw std::invalid_argument("array order q must be >= 1");

    const long long xmax = physical.max_position();
    const long long span = xmax * order_q;

    // Pairwise difference set, offset so index 0 is position -xmax.
    std::vector<char> diff(static_cast<std::size_t>(2 * xmax + 1), 0);
    for (int a : physical.positions) {
        for (int b : physical.positions) {
            diff[static_cast<std::size_t>(xmax + a - b)] = 1;
        }
    }

    // The 2q-th order co-array is the q-fold sumset of the 2nd-order
    // difference set: each (a_i, b_i) index pair contributes one difference.
    std::vector<char> reach(static_cast<std::size_t>(2 * span + 1), 0);
    reach[static_cast<std::size_t>(span)] = 1;
    std::vector<long long> diff_values;
    for (long long d = -xmax; d <= xmax; ++d) {
        if (diff[static_cast<std::size_t>(xmax + d)]) diff_values.push_back(d);
    }
    std::vector<char> next(reach.size(), 0);
    for (int round = 0; round < order_q; ++round) {
        std::fill(next.begin(), next.end(), 0);
        const long long reach_span = static_cast<long long>(round) * xmax;
        for (long long v = -reach_span; v <= reach_span; ++v) {
            if (!reach[static_cast<std::size_t>(span + v)]) continue;
            for (long long d : diff_values) {
                next[static_cast<std::size_t>(span + v + d)] = 1;
            }
        }
        std::swap(reach, next);
    }

    VirtualArray out;
    for (long long v = -span; v <= span; ++v) {
        if (reach[static_cast<std::size_t>(span + v)]) out.positions.push_back(v);
    }
    int run = 0;
    while (out.contains(run)) ++run;
    out.ula_length = run;
    return out;
}

std::vector<int> positive_ula(const VirtualArray& virt) {
    if (virt.ula_length < 2) {
        throw std::invalid_argument("degenerate virtual array: ULA shorter than 2");
    }
    std::vector<int> ula(static_cast<std::size_t>(virt.ula_length));
    for (int i = 0; i < virt.ula_length; ++i) ula[static_cast<std::size_t>(i)] = i;
    return ula;
}

}  // namespace csae
