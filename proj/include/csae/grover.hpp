#pragma once

#include <cstdint>
#include <vector>

#include "csae/rng.hpp"
#include "csae/schedule.hpp"

namespace csae {

/// The hidden rotation angle theta and the amplitude a = sin(theta).
/// The amplitude is always derived from theta, never stored on its own.
struct TrueState {
    double theta = 0.0;

    double amplitude() const;

    static TrueState from_theta(double theta);
    static TrueState from_amplitude(double a);
};

/// Binomial measurement statistics of one circuit depth.
struct ShotRecord {
    int depth = 0;         // Grover power n
    long long shots = 0;   // N_shots(n)
    long long zeros = 0;   // outcomes that measured |0>

    double p0_hat() const { return static_cast<double>(zeros) / static_cast<double>(shots); }
};

/// All measurements of one run: one record per depth, depths strictly increasing.
struct MeasurementSet {
    std::vector<ShotRecord> records;
    std::uint64_t seed = 0;

    std::vector<int> depths() const;
};

/// Measurement statistics in the form the estimator consumes. Sampled sets
/// carry integer counts; the noiseless path fills p0_hat with the exact
/// probabilities while keeping the schedule's shot counts as likelihood
/// weights.
struct Observations {
    std::vector<int> depths;
    std::vector<double> p0_hat;
    std::vector<double> shots;
    std::vector<double> zeros;

    std::size_t size() const { return depths.size(); }

    static Observations from_measurements(const MeasurementSet& m);
    static Observations exact(double theta, const Schedule& schedule);
};

/// p0(n) = cos^2((2n+1) theta). Throws std::domain_error for theta outside
/// [0, pi/2].
double exact_p0(double theta, long long depth);

/// One binomial sample of the depth-n measurement. Depth 0 means a single
/// application of U with no Grover iterate.
ShotRecord sample(double theta, int depth, long long shots, Rng& rng);

/// Sample every depth of a schedule. Throws std::invalid_argument on an
/// empty schedule.
MeasurementSet sample_set(double theta, const Schedule& schedule, Rng& rng);

}  // namespace csae
