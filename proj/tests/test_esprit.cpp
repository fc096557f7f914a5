#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "csae/esprit.hpp"
#include "csae/rng.hpp"

using namespace csae;

namespace {

using Cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd pure_tone(double omega, int m) {
    Eigen::VectorXcd z(m);
    for (int v = 0; v < m; ++v) z[v] = std::polar(1.0, omega * v);
    return z;
}

VirtualSignal as_signal(Eigen::VectorXcd z) {
    VirtualSignal s;
    s.ula_length = static_cast<int>(z.size());
    s.values = std::move(z);
    return s;
}

double wrap_angle(double x) {
    while (x > kPi) x -= 2.0 * kPi;
    while (x <= -kPi) x += 2.0 * kPi;
    return x;
}

}  // namespace

TEST_CASE("Toeplitz entries follow first row = z, first column = conj(z)") {
    Eigen::VectorXcd z(3);
    z << Cplx{1.0, 0.0}, Cplx{0.0, 1.0}, Cplx{-1.0, 0.0};  // e^{i pi/2 v}
    const auto cov = build_toeplitz(as_signal(z));
    CHECK(cov.entry(0, 1) == Cplx{0.0, 1.0});
    CHECK(cov.entry(1, 0) == Cplx{0.0, -1.0});
    CHECK(cov.entry(0, 2) == Cplx{-1.0, 0.0});

    const auto dense = cov.dense();
    CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-15);  // Hermitian
    for (int j = 0; j + 1 < 3; ++j) {
        for (int k = 0; k + 1 < 3; ++k) {
            CHECK(std::abs(dense(j, k) - dense(j + 1, k + 1)) < 1e-15);  // Toeplitz
        }
    }
}

TEST_CASE("a pure exponential generates a rank-1 covariance") {
    const auto cov = build_toeplitz(as_signal(pure_tone(0.7, 8)));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cov.dense());
    const auto& sv = svd.singularValues();
    for (int i = 1; i < sv.size(); ++i) CHECK(sv[i] < 1e-10 * sv[0]);
}

TEST_CASE("constant signal gives the all-ones matrix") {
    const auto cov = build_toeplitz(as_signal(Eigen::VectorXcd::Ones(5)));
    CHECK((cov.dense() - Eigen::MatrixXcd::Ones(5, 5)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("covariances below 3 lags are rejected") {
    Eigen::VectorXcd z(2);
    z << Cplx{1.0, 0.0}, Cplx{0.0, 1.0};
    CHECK_THROWS_AS(build_toeplitz(as_signal(z)), std::invalid_argument);
}

TEST_CASE("FFT matvec agrees with the dense product") {
    Rng rng(21);
    for (int m : {3, 5, 16, 33}) {
        Eigen::VectorXcd z(m);
        z[0] = Cplx{1.0, 0.0};
        for (int v = 1; v < m; ++v) {
            z[v] = Cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
        const ToeplitzCovariance cov(z);
        Eigen::VectorXcd x(m);
        for (int v = 0; v < m; ++v) x[v] = Cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const Eigen::VectorXcd fast = cov.apply(x);
        const Eigen::VectorXcd slow = cov.dense() * x;
        CHECK((fast - slow).norm() < 1e-12 * std::max(1.0, slow.norm()));
    }
}

TEST_CASE("noiseless frequencies are recovered to 1e-9") {
    CHECK(esprit_omega(build_toeplitz(as_signal(pure_tone(0.7, 16)))).omega ==
          doctest::Approx(0.7).epsilon(1e-9));
    CHECK(std::abs(esprit_omega(build_toeplitz(as_signal(Eigen::VectorXcd::Ones(8)))).omega) <
          1e-9);
    CHECK(esprit_omega(build_toeplitz(as_signal(pure_tone(kPi - 0.01, 32)))).omega ==
          doctest::Approx(kPi - 0.01).epsilon(1e-9));
}

TEST_CASE("noiseless exactness across random frequencies and sizes") {
    Rng rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        const double omega = rng.uniform(-kPi * 0.999, kPi * 0.999);
        const int m = 8 + static_cast<int>(rng.uniform(0.0, 57.0));
        const auto est = esprit_omega(build_toeplitz(as_signal(pure_tone(omega, m))));
        CHECK(std::abs(est.omega - omega) < 1e-8);
        CHECK(est.separation >= 1.0);
    }
}

TEST_CASE("Lanczos path agrees with the dense path") {
    Rng rng(456);
    EspritOptions dense_opts;
    dense_opts.method = EspritMethod::Dense;
    EspritOptions fast_opts;
    fast_opts.method = EspritMethod::Lanczos;

    for (int trial = 0; trial < 40; ++trial) {
        const double omega = rng.uniform(-3.0, 3.0);
        const int m = 16 + static_cast<int>(rng.uniform(0.0, 240.0));
        // mild deterministic phase noise so the spectrum is not exactly rank-1
        Eigen::VectorXcd z(m);
        for (int v = 0; v < m; ++v) {
            z[v] = std::polar(1.0, omega * v + 0.02 * rng.uniform(-1.0, 1.0));
        }
        const auto cov = build_toeplitz(as_signal(z));
        const auto slow = esprit_omega(cov, dense_opts);
        const auto fast = esprit_omega(cov, fast_opts);
        CHECK(std::abs(wrap_angle(fast.omega - slow.omega)) < 1e-6);
    }
}

TEST_CASE("conjugating the signal negates the frequency") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const double omega = rng.uniform(-2.5, 2.5);
        const int m = 12 + static_cast<int>(rng.uniform(0.0, 40.0));
        Eigen::VectorXcd z = pure_tone(omega, m);
        const double fwd = esprit_omega(build_toeplitz(as_signal(z))).omega;
        const double rev = esprit_omega(build_toeplitz(as_signal(z.conjugate()))).omega;
        CHECK(std::abs(wrap_angle(fwd + rev)) < 1e-8);
    }
}

TEST_CASE("error under phase noise shrinks as the array grows") {
    const double omega = 1.1;
    const double delta = 0.05;
    std::vector<double> medians;
    for (int m : {16, 64, 256}) {
        std::vector<double> errs;
        for (int seed = 0; seed < 100; ++seed) {
            Rng rng(9000 + static_cast<std::uint64_t>(seed));
            Eigen::VectorXcd z(m);
            for (int v = 0; v < m; ++v) {
                z[v] = std::polar(1.0, omega * v + delta * rng.uniform(-1.0, 1.0));
            }
            errs.push_back(std::abs(
                wrap_angle(esprit_omega(build_toeplitz(as_signal(z))).omega - omega)));
        }
        std::sort(errs.begin(), errs.end());
        medians.push_back(errs[errs.size() / 2]);
    }
    CHECK(medians[1] < medians[0]);
    CHECK(medians[2] < medians[1]);
}
