#pragma once
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <lapacke.h>
#include <stdexcept>
#include <vector>

#include "mskt/rng.hpp"

namespace mskt {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline SpMat sparse_identity(Eigen::Index n) {
    SpMat id(n, n);
    id.setIdentity();
    return id;
}

inline SpMat to_sparse(const MatC& dense, double drop_tol = 0.0) {
    return dense.sparseView(1.0, drop_tol);
}

/// Kronecker product of sparse matrices, row-major index convention:
/// (i_a * rows_b + i_b, j_a * cols_b + j_b).
inline SpMat kron(const SpMat& a, const SpMat& b) {
    SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(a.nonZeros()) * static_cast<size_t>(b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SpMat::InnerIterator ita(a, ka); ita; ++ita)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SpMat::InnerIterator itb(b, kb); itb; ++itb)
                    trips.emplace_back(ita.row() * b.rows() + itb.row(),
                                       ita.col() * b.cols() + itb.col(),
                                       ita.value() * itb.value());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

inline double frobenius_norm(const SpMat& a) {
    double s = 0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) s += std::norm(it.value());
    return std::sqrt(s);
}

inline SpMat adjoint_sparse(const SpMat& a) { return SpMat(a.adjoint()); }

inline double hermiticity_defect(const SpMat& a) {
    return frobenius_norm(SpMat(a - adjoint_sparse(a)));
}

inline double max_imag_abs(const SpMat& a) {
    double m = 0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it)
            m = std::max(m, std::abs(it.value().imag()));
    return m;
}

inline MatR to_dense_real(const SpMat& a, double imag_tol = 1e-12) {
    if (max_imag_abs(a) > imag_tol)
        throw NumericError("to_dense_real: matrix has imaginary entries");
    MatR out = MatR::Zero(a.rows(), a.cols());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) out(it.row(), it.col()) = it.value().real();
    return out;
}

/// Eigendecomposition of a real symmetric matrix (LAPACK dsyevd; divide and
/// conquer is far faster than Eigen's QR path at the dimensions ED needs).
struct SymmetricEigen {
    VecR eigenvalues;
    MatR eigenvectors;  // columns
};

inline SymmetricEigen eigh(MatR a, double symmetry_tol = 1e-9) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix not square");
    const double defect = (a - a.transpose()).norm();
    if (defect > symmetry_tol * std::max(1.0, a.norm()))
        throw NumericError("eigh: matrix not symmetric");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    SymmetricEigen out;
    out.eigenvalues.resize(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, out.eigenvalues.data());
    if (info != 0) throw NumericError("eigh: dsyevd failed, info=" + std::to_string(info));
    out.eigenvectors = std::move(a);
    return out;
}

/// Spectral norm (largest singular value) of a sparse operator, by power
/// iteration on A^dagger A with a fixed seeded start vector. Converges in
/// value even with degenerate leading singular values.
inline double spectral_norm(const SpMat& a, double rel_tol = 1e-12, int max_iter = 20000) {
    const Eigen::Index n = a.cols();
    if (n == 0 || a.nonZeros() == 0) return 0.0;
    Rng rng(0x5eed0123456789abULL);
    VecC v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(rng.u01() - 0.5, rng.u01() - 0.5);
    v.normalize();
    const SpMat ah = adjoint_sparse(a);
    double lambda = 0;
    for (int it = 0; it < max_iter; ++it) {
        VecC w = ah * (a * v).eval();
        const double nw = w.norm();
        if (nw == 0) return 0.0;
        v = w / nw;
        if (std::abs(nw - lambda) <= rel_tol * std::max(1.0, nw) && it > 4)
            return std::sqrt(nw);
        lambda = nw;
    }
    return std::sqrt(lambda);
}

inline double spectral_norm(const MatC& a, double rel_tol = 1e-12) {
    if (a.rows() * a.cols() == 0) return 0.0;
    if (a.rows() <= 256 && a.cols() <= 256)
        return a.jacobiSvd().singularValues()(0);
    return spectral_norm(to_sparse(a), rel_tol);
}

/// exp(scale * H) for hermitian H, via eigendecomposition.
inline MatC expm_hermitian(const MatC& h, double scale = 1.0) {
    Eigen::SelfAdjointEigenSolver<MatC> es(h);
    if (es.info() != Eigen::Success) throw NumericError("expm_hermitian: eigensolver failed");
    const VecR lam = es.eigenvalues();
    MatC out = es.eigenvectors() * (scale * lam.array()).exp().matrix().asDiagonal() *
               es.eigenvectors().adjoint();
    return out;
}

}  // namespace mskt
