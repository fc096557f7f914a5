#pragma once

#include <cstdint>
#include <random>

namespace csae {

/// Seeded random stream with platform-independent draws.
///
/// All randomness in the library flows through explicitly passed Rng
/// instances; there is no global generator. Uniform doubles are built
/// from the raw 64-bit output so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Exact binomial draw as a sum of Bernoulli trials.
    /// Shot counts in this codebase are at most a few hundred per depth
    /// (millions only in convergence tests), so the O(n) method is fine
    /// and avoids any normal approximation.
    long long binomial(long long n, double p) {
        long long hits = 0;
        for (long long i = 0; i < n; ++i) {
            if (uniform() < p) ++hits;
        }
        return hits;
    }

    std::uint64_t raw() { return engine_(); }

    /// Derive an independent child stream, e.g. one per Monte Carlo trial.
    /// Mixing uses splitmix64 so nearby (seed, id) pairs decorrelate.
    Rng derive(std::uint64_t stream_id) const {
        std::uint64_t x = seed_mix_ ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
        x = splitmix(x);
        return Rng(x);
    }

    static Rng derived(std::uint64_t base_seed, std::uint64_t stream_id) {
        Rng r(base_seed);
        return r.derive(stream_id);
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
    std::uint64_t seed_mix_ = engine_();  // consumed once; decorrelates derive()
};

}  // namespace csae
