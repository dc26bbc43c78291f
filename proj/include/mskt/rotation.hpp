#pragma once
#include <cmath>
#include <optional>
#include <vector>

#include "mskt/bounds.hpp"
#include "mskt/ed.hpp"

namespace mskt {

struct RotationDecomposition {
    SpMat rotated_h;  // R^-1 H R
    SpMat b;          // anti-hermitian part of R^-1 H R - H
    SpMat c;          // hermitian part
    double norm_c_actual = 0.0;
    double norm_c_bound = 0.0;
};

struct RotationReport {
    RotationAngles angles;
    double c_constant = 0.0;
    double rot_identity_defect = 0.0;   // |R^-1 O R - e^{-c theta_x} O| / scale
    double split_defect = 0.0;          // |R^-1 H R - H - B - C| / scale
    double b_antiherm_defect = 0.0;
    double c_herm_defect = 0.0;
    std::optional<double> antiherm_exp_norm_dev;  // | |e^{-tau B}| - 1 |
    RotationDecomposition decomp;

    bool ok(double tol = 1e-9) const {
        const double slack = tol * std::max(1.0, decomp.norm_c_bound);
        return rot_identity_defect <= tol && split_defect <= tol &&
               b_antiherm_defect <= tol && c_herm_defect <= tol &&
               decomp.norm_c_actual <= decomp.norm_c_bound + slack &&
               (!antiherm_exp_norm_dev || *antiherm_exp_norm_dev <= tol);
    }
};

namespace detail {

inline SpMat site_exp_product(const EdModel& model, GeneratorKind kind,
                              const std::vector<double>& theta, double sign) {
    const HilbertSpace& hs = model.space();
    SpMat r = sparse_identity(hs.total_dim);
    const MatC local = model.site_generator_local(kind);
    for (int z = 0; z < hs.n_sites(); ++z) {
        if (theta[z] == 0.0) continue;
        r = SpMat(r * embed_single(hs, z, expm_hermitian(local, sign * theta[z])));
    }
    return r;
}

inline double spectral_norm_hermitian(const SpMat& a) {
    if (a.rows() <= 2048) {
        MatC dense(a);
        Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (dense + dense.adjoint()));
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    return spectral_norm(a);
}

}  // namespace detail

/// Numerically validates the complex-rotation argument on a realized model:
/// (a) R^-1 O_xy R = e^{-c theta_x} O_xy, (b) R^-1 H R - H splits into an
/// anti-hermitian B plus a hermitian C assembled per term with the angles
/// referenced to x0(A), (c) |C| respects the perimeter-sum estimate
/// 2 kappa^2 gamma |Phi|_kappa log(d+1) + 2 kappa^2 |Phi|_kappa.
inline RotationReport verify_rotation_machinery(const EdModel& model, int x, int y, double kappa,
                                                std::optional<Correlator> correlator = std::nullopt,
                                                double tau = 0.1) {
    const ModelSpec& spec = model.spec();
    const Graph& g = spec.graph;
    const Correlator corr = correlator.value_or(default_correlator(spec.family()));
    const SymmetryData sym = symmetry_for(spec, corr);

    RotationReport rep;
    rep.angles = rotation_angles(g, x, y, kappa);
    rep.c_constant = sym.c;
    const std::vector<double>& theta = rep.angles.theta;

    const SpMat r = detail::site_exp_product(model, sym.generator, theta, +1.0);
    const SpMat r_inv = detail::site_exp_product(model, sym.generator, theta, -1.0);

    // (a) rotation acts on the correlator as a scalar.
    const SpMat o = model.correlator_op(x, y, corr);
    const SpMat rotated_o = SpMat(r_inv * SpMat(o * r));
    const double scale_o = std::max(1.0, frobenius_norm(o));
    rep.rot_identity_defect =
        frobenius_norm(SpMat(rotated_o - std::exp(-sym.c * theta[x]) * o)) / scale_o;

    // (b) per-term split into odd/even multicommutator parts.
    const HilbertSpace& hs = model.space();
    const MatC local_gen = model.site_generator_local(sym.generator);
    SpMat b(hs.total_dim, hs.total_dim), c(hs.total_dim, hs.total_dim);
    for (const auto& term : model.terms()) {
        int x0 = term.support.front();
        for (int z : term.support)
            if (g.distance(x, z) != Graph::kUnreachable &&
                (g.distance(x, x0) == Graph::kUnreachable || g.distance(x, z) < g.distance(x, x0)))
                x0 = z;
        SpMat conj_plus = sparse_identity(hs.total_dim);
        SpMat conj_minus = sparse_identity(hs.total_dim);
        bool nontrivial = false;
        for (int z : term.support) {
            const double delta = theta[z] - theta[x0];
            if (delta == 0.0) continue;
            nontrivial = true;
            conj_plus = SpMat(conj_plus * embed_single(hs, z, expm_hermitian(local_gen, delta)));
            conj_minus = SpMat(conj_minus * embed_single(hs, z, expm_hermitian(local_gen, -delta)));
        }
        if (!nontrivial) continue;
        const SpMat d = SpMat(SpMat(conj_minus * SpMat(term.op * conj_plus)) - term.op);
        const SpMat d_adj = adjoint_sparse(d);
        b += SpMat(0.5 * (d - d_adj));
        c += SpMat(0.5 * (d + d_adj));
    }
    const SpMat rotated_h = SpMat(r_inv * SpMat(model.hamiltonian() * r));
    const double scale_h = std::max(1.0, frobenius_norm(model.hamiltonian()));
    rep.split_defect =
        frobenius_norm(SpMat(rotated_h - model.hamiltonian() - b - c)) / scale_h;
    rep.b_antiherm_defect = frobenius_norm(SpMat(b + adjoint_sparse(b))) / scale_h;
    rep.c_herm_defect = frobenius_norm(SpMat(c - adjoint_sparse(c))) / scale_h;

    // (c) the perimeter-sum estimate on |C|.
    const auto terms = build_interaction(spec);
    const double gamma = g.perimeter_constant().value();
    const double knorm = k_norm(terms, g, kappa);
    const int dxy = g.distance(x, y);
    rep.decomp.rotated_h = rotated_h;
    rep.decomp.b = b;
    rep.decomp.c = c;
    rep.decomp.norm_c_actual = detail::spectral_norm_hermitian(c);
    rep.decomp.norm_c_bound = 2.0 * kappa * kappa * knorm * (gamma * std::log(dxy + 1.0) + 1.0);

    // |e^{-tau B}| = 1 because B is anti-hermitian.
    if (hs.total_dim <= 2048) {
        const MatC m = Complex(0, -1) * MatC(b);  // hermitian when B is anti-hermitian
        Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (m + m.adjoint()));
        const MatC u = es.eigenvectors() *
                       (Complex(0, -tau) * es.eigenvalues().array().cast<Complex>()).exp().matrix().asDiagonal() *
                       es.eigenvectors().adjoint();
        rep.antiherm_exp_norm_dev = std::abs(spectral_norm(u) - 1.0);
    }
    return rep;
}

}  // namespace mskt
