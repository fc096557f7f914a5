#pragma once

#include <complex>

#include <Eigen/Dense>

#include "csae/signal.hpp"

namespace csae {

/// Hermitian Toeplitz covariance generated by the virtual signal:
/// entry (j,k) = z_{k-j} for k >= j and conj(z_{j-k}) below the diagonal,
/// i.e. first row = z, first column = conj(z). This is the spatially
/// smoothed single-snapshot covariance.
class ToeplitzCovariance {
public:
    explicit ToeplitzCovariance(Eigen::VectorXcd generating);

    int size() const { return static_cast<int>(gen_.size()); }
    const Eigen::VectorXcd& generating() const { return gen_; }

    std::complex<double> entry(int row, int col) const;
    Eigen::MatrixXcd dense() const;

    /// Matrix-vector product in O(M log M) via circulant embedding.
    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

private:
    Eigen::VectorXcd gen_;
    std::vector<std::complex<double>> circ_spectrum_;  // FFT of the embedded circulant
    std::size_t fft_len_ = 0;
};

ToeplitzCovariance build_toeplitz(const VirtualSignal& virt);

enum class EspritMethod {
    Dense,    // full Hermitian eigendecomposition
    Lanczos,  // top-2 singular pairs via Lanczos with FFT matvecs
    Auto,     // Dense for small matrices, Lanczos beyond
};

struct EspritOptions {
    EspritMethod method = EspritMethod::Dense;
    int auto_dense_limit = 64;  // Auto switches to Lanczos above this size
    int max_lanczos_iter = 48;
    double ritz_tol = 1e-10;
};

/// Frequency estimate plus diagnostics.
struct SubspaceEstimate {
    double omega = 0.0;  // in (-pi, pi]
    std::complex<double> rotation_eigenvalues[2] = {};
    double separation = 1.0;  // ratio of 2nd to 3rd singular value of R
};

/// ESPRIT on the Toeplitz covariance: take the top-2 singular vectors S,
/// split into S1 (first M-1 rows) and S2 (last M-1 rows), and read the
/// frequency off the rotation P = pinv(S1) S2. The eigenvalue of P whose
/// modulus is closest to 1 is the signal eigenvalue; with first row = z the
/// shift structure carries e^{-i omega}, so omega is its negated phase.
/// Throws std::invalid_argument for M < 3 and EstimationError when the
/// signal subspace is degenerate.
SubspaceEstimate esprit_omega(const ToeplitzCovariance& cov, const EspritOptions& opts = {});

}  // namespace csae
