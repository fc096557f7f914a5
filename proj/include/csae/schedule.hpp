#pragma once

#include <vector>

namespace csae {

/// Deterministic shot allocation over a fixed list of depths.
/// Depths are distinct, ascending, and start at 0.
struct Schedule {
    std::vector<int> depths;
    std::vector<long long> shots;
    double shot_scale = 0.0;  // the constant K behind the allocation

    int n_max() const { return depths.empty() ? 0 : depths.back(); }
    std::size_t size() const { return depths.size(); }
};

/// Rank-based shot allocation. With m nonzero depths, the i-th smallest
/// nonzero depth receives ceil(K * (m - i + 1)) shots and depth 0 receives
/// 2 * ceil(K * (m + 1)). On power-of-two depth ladders this is exactly
/// N_shots(n) = ceil(K * (log2(n_max / n) + 1)) and it also reproduces the
/// published allocations on ladders with off-grid depths.
Schedule shot_schedule(std::vector<int> depths, double shot_scale);

/// Oracle-query accounting: a shot at depth n costs n Grover applications,
/// a depth-0 shot costs one query.
long long total_queries(const Schedule& schedule);

}  // namespace csae
