#include "csae/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace csae {

Schedule shot_schedule(std::vector<int> depths, double shot_scale) {
    if (!(shot_scale > 0.0)) throw std::invalid_argument("shot scale K must be positive");
    if (depths.empty() || depths.front() != 0) {
        throw std::invalid_argument("depth list must start at 0");
    }
    for (std::size_t i = 1; i < depths.size(); ++i) {
        if (depths[i] <= depths[i - 1]) {
            throw std::invalid_argument("depths must be strictly increasing");
        }
    }

    const auto m = static_cast<long long>(depths.size()) - 1;  // nonzero depths
    Schedule s;
    s.depths = std::move(depths);
    s.shot_scale = shot_scale;
    s.shots.resize(s.depths.size());
    s.shots[0] = 2 * static_cast<long long>(std::ceil(shot_scale * static_cast<double>(m + 1)));
    for (long long i = 1; i <= m; ++i) {
        s.shots[i] = static_cast<long long>(std::ceil(shot_scale * static_cast<double>(m - i + 1)));
    }
    return s;
}

long long total_queries(const Schedule& schedule) {
    long long total = 0;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const long long n = schedule.depths[i];
        total += n == 0 ? schedule.shots[i] : schedule.shots[i] * n;
    }
    return total;
}

}  // namespace csae
