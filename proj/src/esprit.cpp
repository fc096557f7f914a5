#include "csae/esprit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "csae/errors.hpp"
#include "csae/fft.hpp"
#include "csae/rng.hpp"

namespace csae {

namespace {

using Cplx = std::complex<double>;

struct TopPairs {
    Eigen::MatrixXcd vectors;       // M x 2, leading singular vectors
    double sigma[3] = {0.0, 0.0, 0.0};  // top-3 singular values (3rd may be 0)
};

// Indices of the largest-|value| entries, descending.
std::vector<int> by_magnitude(const Eigen::VectorXd& values) {
    std::vector<int> idx(static_cast<std::size_t>(values.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(values[a]) > std::abs(values[b]);
    });
    return idx;
}

TopPairs top_pairs_dense(const ToeplitzCovariance& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cov.dense());
    if (eig.info() != Eigen::Success) {
        throw EstimationError("eigendecomposition failed");
    }
    const auto idx = by_magnitude(eig.eigenvalues());
    TopPairs top;
    top.vectors.resize(cov.size(), 2);
    top.vectors.col(0) = eig.eigenvectors().col(idx[0]);
    top.vectors.col(1) = eig.eigenvectors().col(idx[1]);
    for (int i = 0; i < 3 && i < static_cast<int>(idx.size()); ++i) {
        top.sigma[i] = std::abs(eig.eigenvalues()[idx[static_cast<std::size_t>(i)]]);
    }
    return top;
}

// Hermitian Lanczos with full reorthogonalization; Ritz pairs with the
// largest |value| approximate the leading singular pairs. Breakdown injects
// a fresh direction so a second vector always materializes.
TopPairs top_pairs_lanczos(const ToeplitzCovariance& cov, const EspritOptions& opts) {
    const int m = cov.size();
    const int max_iter = std::min(opts.max_lanczos_iter, m);

    Eigen::MatrixXcd basis(m, max_iter);
    std::vector<double> alpha, beta;  // beta[k] couples step k to k+1

    Rng rng(0x3c5ae5eedULL);  // fixed stream: deterministic start vector
    Eigen::VectorXcd v(m);
    for (int i = 0; i < m; ++i) v[i] = Cplx{rng.uniform() - 0.5, rng.uniform() - 0.5};
    v.normalize();
    basis.col(0) = v;

    double scale = 0.0;
    Eigen::MatrixXd tri;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small_eig;
    int built = 1;
    for (int k = 0; k < max_iter; ++k) {
        Eigen::VectorXcd w = cov.apply(basis.col(k));
        alpha.push_back(w.dot(basis.col(k)).real());
        // Two reorthogonalization sweeps against the whole basis.
        for (int sweep = 0; sweep < 2; ++sweep) {
            const auto head = basis.leftCols(built);
            w -= head * (head.adjoint() * w);
        }
        double b = w.norm();
        scale = std::max(scale, std::abs(alpha.back()));

        bool broke = b <= 1e-13 * std::max(scale, 1.0);
        if (broke && built < m) {
            // Invariant subspace found: continue from a fresh direction.
            for (int j = 0; j < m; ++j) {
                w.setZero();
                w[j] = 1.0;
                for (int sweep = 0; sweep < 2; ++sweep) {
                    const auto head = basis.leftCols(built);
                    w -= head * (head.adjoint() * w);
                }
                if (w.norm() > 0.1) break;
            }
            b = w.norm();
            beta.push_back(0.0);
        } else {
            beta.push_back(b);
        }

        // Ritz pairs of the running tridiagonal matrix.
        const int k1 = k + 1;
        tri.setZero(k1, k1);
        for (int i = 0; i < k1; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < k1 && beta[static_cast<std::size_t>(i)] > 0.0) {
                tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        small_eig.compute(tri);
        const auto order = by_magnitude(small_eig.eigenvalues());

        const bool exhausted = built >= m || k + 1 == max_iter || b <= 1e-13 * std::max(scale, 1.0);
        if (k1 >= 2) {
            const double top = std::abs(small_eig.eigenvalues()[order[0]]);
            double resid = 0.0;
            for (int i = 0; i < 2; ++i) {
                const auto& s = small_eig.eigenvectors().col(order[static_cast<std::size_t>(i)]);
                resid = std::max(resid, beta.back() * std::abs(s[k1 - 1]));
            }
            if (resid <= opts.ritz_tol * std::max(top, 1e-300) || exhausted) {
                TopPairs out;
                out.vectors.resize(m, 2);
                for (int i = 0; i < 2; ++i) {
                    const auto& s = small_eig.eigenvectors().col(order[static_cast<std::size_t>(i)]);
                    out.vectors.col(i) = (basis.leftCols(k1) * s).normalized();
                }
                for (int i = 0; i < 3 && i < k1; ++i) {
                    out.sigma[i] = std::abs(small_eig.eigenvalues()[order[static_cast<std::size_t>(i)]]);
                }
                return out;
            }
        }
        if (exhausted) break;

        basis.col(k + 1) = w / b;
        built = k + 2;
    }
    throw EstimationError("Lanczos iteration failed to produce a signal subspace");
}

}  // namespace

ToeplitzCovariance::ToeplitzCovariance(Eigen::VectorXcd generating) : gen_(std::move(generating)) {
    if (gen_.size() < 3) {
        throw std::invalid_argument("Toeplitz covariance needs at least 3 lags");
    }
    gen_[0] = Cplx{gen_[0].real(), 0.0};  // Hermitian diagonal

    const auto m = static_cast<std::size_t>(gen_.size());
    fft_len_ = next_pow2(2 * m - 1);
    // First column of the circulant embedding: row j of R applied to x is
    // sum_k h[j-k] x[k] with h[d] = conj(z_d) for d >= 0 and h[-d] = z_d.
    circ_spectrum_.assign(fft_len_, Cplx{0.0, 0.0});
    circ_spectrum_[0] = gen_[0];
    for (std::size_t d = 1; d < m; ++d) {
        circ_spectrum_[d] = std::conj(gen_[static_cast<Eigen::Index>(d)]);
        circ_spectrum_[fft_len_ - d] = gen_[static_cast<Eigen::Index>(d)];
    }
    fft_inplace(circ_spectrum_, false);
}

std::complex<double> ToeplitzCovariance::entry(int row, int col) const {
    return col >= row ? gen_[col - row] : std::conj(gen_[row - col]);
}

Eigen::MatrixXcd ToeplitzCovariance::dense() const {
    const int m = size();
    Eigen::MatrixXcd out(m, m);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) out(j, k) = entry(j, k);
    }
    return out;
}

Eigen::VectorXcd ToeplitzCovariance::apply(const Eigen::VectorXcd& x) const {
    const int m = size();
    if (x.size() != m) throw std::invalid_argument("matvec size mismatch");
    std::vector<Cplx> buf(fft_len_, Cplx{0.0, 0.0});
    for (int i = 0; i < m; ++i) buf[static_cast<std::size_t>(i)] = x[i];
    fft_inplace(buf, false);
    for (std::size_t i = 0; i < fft_len_; ++i) buf[i] *= circ_spectrum_[i];
    fft_inplace(buf, true);
    Eigen::VectorXcd out(m);
    for (int i = 0; i < m; ++i) out[i] = buf[static_cast<std::size_t>(i)];
    return out;
}

ToeplitzCovariance build_toeplitz(const VirtualSignal& virt) {
    return ToeplitzCovariance(virt.values);
}

SubspaceEstimate esprit_omega(const ToeplitzCovariance& cov, const EspritOptions& opts) {
    const int m = cov.size();

    EspritMethod method = opts.method;
    if (method == EspritMethod::Auto) {
        method = m <= opts.auto_dense_limit ? EspritMethod::Dense : EspritMethod::Lanczos;
    }
    const TopPairs top =
        method == EspritMethod::Dense ? top_pairs_dense(cov) : top_pairs_lanczos(cov, opts);

    // Shift-invariance: rows 0..M-2 versus rows 1..M-1 of the signal subspace.
    const Eigen::MatrixXcd s1 = top.vectors.topRows(m - 1);
    const Eigen::MatrixXcd s2 = top.vectors.bottomRows(m - 1);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()[0];
    if (!(smax > 0.0)) throw EstimationError("degenerate signal subspace");
    Eigen::Vector2d inv_sigma = Eigen::Vector2d::Zero();
    for (int i = 0; i < 2; ++i) {
        // Standard pseudo-inverse cutoff; a rank-1 S1 still yields the
        // signal eigenvalue through the surviving term.
        if (svd.singularValues()[i] > 1e-12 * smax) inv_sigma[i] = 1.0 / svd.singularValues()[i];
    }
    const Eigen::Matrix2cd rotation = svd.matrixV() * inv_sigma.asDiagonal() *
                                      svd.matrixU().adjoint() * s2;

    // Eigenvalues of the 2x2 rotation.
    const Cplx tr = rotation.trace();
    const Cplx det = rotation.determinant();
    const Cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const Cplx l1 = 0.5 * (tr + disc);
    const Cplx l2 = 0.5 * (tr - disc);

    // The signal eigenvalue sits near the unit circle; the other is noise.
    const bool first = std::abs(std::abs(l1) - 1.0) <= std::abs(std::abs(l2) - 1.0);
    const Cplx signal = first ? l1 : l2;

    SubspaceEstimate est;
    est.rotation_eigenvalues[0] = signal;
    est.rotation_eigenvalues[1] = first ? l2 : l1;
    // First row = z gives the shift structure e^{-i omega}; undo the sign.
    est.omega = -std::arg(signal);
    if (est.omega <= -std::numbers::pi) est.omega = std::numbers::pi;
    est.separation = std::max(1.0, top.sigma[1] / std::max(top.sigma[2], 1e-300));
    return est;
}

}  // namespace csae
