#include "csae/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csae {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kHalfPi)) {
        throw std::domain_error("theta must lie in [0, pi/2]");
    }
}
}  // namespace

double TrueState::amplitude() const { return std::sin(theta); }

TrueState TrueState::from_theta(double theta) {
    check_theta(theta);
    return TrueState{theta};
}

TrueState TrueState::from_amplitude(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw std::domain_error("amplitude must lie in [0, 1]");
    }
    return TrueState{std::asin(a)};
}

std::vector<int> MeasurementSet::depths() const {
    std::vector<int> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.depth);
    return out;
}

double exact_p0(double theta, long long depth) {
    check_theta(theta);
    if (depth < 0) throw std::domain_error("depth must be nonnegative");
    const double c = std::cos(static_cast<double>(2 * depth + 1) * theta);
    return c * c;
}

ShotRecord sample(double theta, int depth, long long shots, Rng& rng) {
    if (shots < 1) throw std::invalid_argument("shots must be positive");
    const double p0 = exact_p0(theta, depth);
    return ShotRecord{depth, shots, rng.binomial(shots, p0)};
}

MeasurementSet sample_set(double theta, const Schedule& schedule, Rng& rng) {
    if (schedule.depths.empty()) throw std::invalid_argument("empty schedule");
    if (schedule.depths.size() != schedule.shots.size()) {
        throw std::invalid_argument("schedule depth/shot length mismatch");
    }
    MeasurementSet out;
    out.records.reserve(schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (i > 0 && schedule.depths[i] <= schedule.depths[i - 1]) {
            throw std::invalid_argument("schedule depths must be strictly increasing");
        }
        out.records.push_back(sample(theta, schedule.depths[i], schedule.shots[i], rng));
    }
    return out;
}

Observations Observations::from_measurements(const MeasurementSet& m) {
    Observations obs;
    obs.depths.reserve(m.records.size());
    for (const auto& r : m.records) {
        if (r.shots < 1 || r.zeros < 0 || r.zeros > r.shots) {
            throw std::invalid_argument("malformed shot record");
        }
        obs.depths.push_back(r.depth);
        obs.p0_hat.push_back(r.p0_hat());
        obs.shots.push_back(static_cast<double>(r.shots));
        obs.zeros.push_back(static_cast<double>(r.zeros));
    }
    return obs;
}

Observations Observations::exact(double theta, const Schedule& schedule) {
    Observations obs;
    obs.depths = schedule.depths;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double p = exact_p0(theta, schedule.depths[i]);
        obs.p0_hat.push_back(p);
        obs.shots.push_back(static_cast<double>(schedule.shots[i]));
        obs.zeros.push_back(p * static_cast<double>(schedule.shots[i]));
    }
    return obs;
}

}  // namespace csae
