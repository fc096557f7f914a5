#pragma once

#include <vector>

namespace csae {

/// Sparse sensor positions: the Grover depths we actually measure.
/// Position 0 is always a member.
struct PhysicalArray {
    std::vector<int> positions;  // sorted, distinct, positions[0] == 0
    int order_q = 1;
    std::vector<int> levels;     // empty for user-supplied position lists

    int max_position() const { return positions.empty() ? 0 : positions.back(); }

    /// Wrap an explicit position list (sorted, deduplicated, 0 inserted).
    static PhysicalArray from_positions(std::vector<int> positions, int order_q);
};

/// The 2q-th order difference co-array of a physical array: every value of
/// sum(q positions) - sum(q positions), indices repeating freely. Symmetric
/// about 0 by construction.
struct VirtualArray {
    std::vector<long long> positions;  // sorted, symmetric about 0
    int ula_length = 0;                // largest L with {0..L-1} contained

    bool contains(long long v) const;
};

/// Nested-array construction: positions
///   {0} u  U_{i=1..2q-1} { n * prod_{k<i} N_k : n = 1..N_i - 1 }
///       u  { n * prod_{k<2q} N_k : n = 1..N_2q }
/// with N_0 = 1. A list of 2q+1 levels is also accepted and interpreted as
/// the split form of the same construction (uniform n = 1..N_i - 1 rule for
/// every set); the published parameter tables use that convention.
/// Throws std::invalid_argument for q < 1, wrong-length levels, or N_i < 1.
PhysicalArray nested_positions(int order_q, const std::vector<int>& levels);

/// Exact 2q-th order co-array membership, computed by q-fold sumset closure
/// of the pairwise difference set.
VirtualArray coarray(const PhysicalArray& physical, int order_q);

/// The nonnegative contiguous run [0, ula_length). Its length is the M fed
/// to the subspace estimator. Throws std::invalid_argument when the run is
/// degenerate (ula_length < 2).
std::vector<int> positive_ula(const VirtualArray& virt);

}  // namespace csae
