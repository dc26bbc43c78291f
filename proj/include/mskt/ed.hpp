#pragma once
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mskt/interaction.hpp"
#include "mskt/operators.hpp"

namespace mskt {

struct RealizedTerm {
    std::vector<int> support;
    SpMat op;
};

/// A model family realized as dense-capable operators on the full tensor
/// space: per-term matrices, their sum, and the family's symmetry operators
/// and correlators. The ground-truth engine behind the bound checks.
class EdModel {
  public:
    EdModel(ModelSpec spec, long dim_cap = HilbertSpace::default_dim_cap())
        : spec_(std::move(spec)) {
        validate_model(spec_);
        const Graph& g = spec_.graph;
        const int n = g.n_vertices();
        switch (spec_.family()) {
            case Family::spin_su2: {
                spin_.emplace(spec_.spin().s);
                hs_ = HilbertSpace(std::vector<int>(n, spin_->dim), dim_cap);
                build_spin_terms();
                break;
            }
            case Family::loop_tq: {
                const double s = loop_spin_s(spec_.loop().theta);
                spin_.emplace(s);
                hs_ = HilbertSpace(std::vector<int>(n, spin_->dim), dim_cap);
                build_loop_terms();
                break;
            }
            case Family::hubbard: {
                fermions_.emplace(n, dim_cap);
                hs_ = fermions_->space();
                build_hubbard_terms();
                break;
            }
            case Family::tj: {
                fermions_.emplace(n, dim_cap);
                hs_ = fermions_->space();
                build_tj_terms();
                break;
            }
        }
        hamiltonian_.resize(hs_.total_dim, hs_.total_dim);
        hamiltonian_.setZero();
        for (const auto& t : terms_) hamiltonian_ += t.op;
        const double defect = hermiticity_defect(hamiltonian_);
        if (defect > 1e-10 * std::max(1.0, frobenius_norm(hamiltonian_)))
            throw NumericError("EdModel: hamiltonian not hermitian, defect=" + std::to_string(defect));
    }

    const ModelSpec& spec() const { return spec_; }
    const HilbertSpace& space() const { return hs_; }
    const std::vector<RealizedTerm>& terms() const { return terms_; }
    const SpMat& hamiltonian() const { return hamiltonian_; }

    /// Local matrix of the symmetry generator at one site (same for all
    /// sites). Fermionic generators are occupation diagonals, basis
    /// (0, dn, up, updn).
    MatC site_generator_local(GeneratorKind kind) const {
        switch (kind) {
            case GeneratorKind::spin_s3_over_s:
                return spin_->S3 / spin_->s;
            case GeneratorKind::loop_s2_over_s:
                return spin_->S2 / spin_->s;
            case GeneratorKind::density_diff: {
                MatC m = MatC::Zero(4, 4);
                m(1, 1) = -1.0;
                m(2, 2) = 1.0;
                return m;
            }
            case GeneratorKind::density_half: {
                MatC m = MatC::Zero(4, 4);
                m(1, 1) = 0.5;
                m(2, 2) = 0.5;
                m(3, 3) = 1.0;
                return m;
            }
        }
        throw std::invalid_argument("unknown generator kind");
    }

    /// Single-site symmetry generator, normalized to operator norm 1.
    SpMat site_generator(int z, GeneratorKind kind) const {
        switch (kind) {
            case GeneratorKind::spin_s3_over_s:
                return embed_single(hs_, z, MatC(spin_->S3 / spin_->s));
            case GeneratorKind::loop_s2_over_s:
                return embed_single(hs_, z, MatC(spin_->S2 / spin_->s));
            case GeneratorKind::density_diff:
                return SpMat(fermions_->number(z, Spin::up) - fermions_->number(z, Spin::down));
            case GeneratorKind::density_half:
                return SpMat(0.5 * fermions_->number_total(z));
        }
        throw std::invalid_argument("unknown generator kind");
    }

    /// Conserved charges declared for the family, as (name, operator).
    std::vector<std::pair<std::string, SpMat>> conserved_charges() const {
        std::vector<std::pair<std::string, SpMat>> out;
        const int n = hs_.n_sites();
        auto total = [&](const char* name, auto&& site_op) {
            SpMat q(hs_.total_dim, hs_.total_dim);
            for (int z = 0; z < n; ++z) q += site_op(z);
            out.emplace_back(name, std::move(q));
        };
        switch (spec_.family()) {
            case Family::spin_su2:
                total("total_S1", [&](int z) { return embed_single(hs_, z, spin_->S1); });
                total("total_S2", [&](int z) { return embed_single(hs_, z, spin_->S2); });
                total("total_S3", [&](int z) { return embed_single(hs_, z, spin_->S3); });
                break;
            case Family::loop_tq:
                total("total_S2", [&](int z) { return embed_single(hs_, z, spin_->S2); });
                break;
            case Family::hubbard:
            case Family::tj:
                total("total_Sz", [&](int z) {
                    return SpMat(fermions_->number(z, Spin::up) - fermions_->number(z, Spin::down));
                });
                total("total_N", [&](int z) { return fermions_->number_total(z); });
                break;
        }
        return out;
    }

    /// The two-point observable O_xy for a correlator.
    SpMat correlator_op(int x, int y, Correlator corr) const {
        switch (corr) {
            case Correlator::spin_raise:
                require_family(Family::spin_su2, corr);
                return embed_on_sites(hs_, {x, y}, kron_dense(spin_->Sp, spin_->Sm));
            case Correlator::loop_ladder: {
                require_family(Family::loop_tq, corr);
                // Ladder operators about the 2-axis: Qp = S1 - i S3 satisfies
                // [S2/s, Qp] = (1/s) Qp.
                const MatC qp = spin_->S1 - Complex(0, 1) * spin_->S3;
                const MatC qm = qp.adjoint();
                return embed_on_sites(hs_, {x, y}, kron_dense(qp, qm));
            }
            case Correlator::magnetic:
                require_fermionic(corr);
                return SpMat(fermions_->spin_plus(x) * fermions_->spin_minus(y));
            case Correlator::pair: {
                require_fermionic(corr);
                const SpMat left = SpMat(fermions_->cdag(x, Spin::up) * fermions_->cdag(x, Spin::down));
                const SpMat right = SpMat(fermions_->c(y, Spin::up) * fermions_->c(y, Spin::down));
                return SpMat(left * right);
            }
            case Correlator::single_particle:
                require_fermionic(corr);
                return SpMat(fermions_->cdag(x, Spin::up) * fermions_->c(y, Spin::up));
        }
        throw std::invalid_argument("unknown correlator");
    }

    /// S^j_x S^j_y for spin-type families, j in {1,2,3}.
    SpMat spin_pair_op(int x, int y, int j) const {
        if (!spin_) throw std::invalid_argument("spin_pair_op: not a spin-type family");
        const MatC& sj = j == 1 ? spin_->S1 : (j == 2 ? spin_->S2 : spin_->S3);
        return embed_on_sites(hs_, {x, y}, kron_dense(sj, sj));
    }

    const SpinAlgebra& spin_algebra() const {
        if (!spin_) throw std::invalid_argument("not a spin-type family");
        return *spin_;
    }
    const FermionOps& fermions() const {
        if (!fermions_) throw std::invalid_argument("not a fermionic family");
        return *fermions_;
    }

    static MatC kron_dense(const MatC& a, const MatC& b) {
        MatC out(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    }

  private:
    void require_family(Family f, Correlator corr) const {
        if (spec_.family() != f)
            throw std::invalid_argument("correlator " + correlator_name(corr) +
                                        " undefined for family " + family_name(spec_.family()));
    }
    void require_fermionic(Correlator corr) const {
        if (!fermions_)
            throw std::invalid_argument("correlator " + correlator_name(corr) +
                                        " undefined for family " + family_name(spec_.family()));
    }

    void build_spin_terms() {
        const auto& p = spec_.spin();
        const MatC ss = kron_dense(spin_->S1, spin_->S1) + kron_dense(spin_->S2, spin_->S2) +
                        kron_dense(spin_->S3, spin_->S3);
        MatC local = MatC::Zero(ss.rows(), ss.cols());
        MatC power = MatC::Identity(ss.rows(), ss.cols());
        for (double ck : p.couplings) {
            power = power * ss;
            local -= ck * power;
        }
        for (auto [x, y] : spec_.graph.edges())
            terms_.push_back({{x, y}, embed_on_sites(hs_, {x, y}, local)});
    }

    void build_loop_terms() {
        const auto& p = spec_.loop();
        const int theta = static_cast<int>(std::round(p.theta));
        const MatC local = -(p.u * loop_transposition(theta) +
                             (1.0 - p.u) * loop_double_bar(theta) -
                             MatC::Identity(theta * theta, theta * theta));
        for (auto [x, y] : spec_.graph.edges())
            terms_.push_back({{x, y}, embed_on_sites(hs_, {x, y}, local)});
    }

    SpMat hopping_pair(int x, int y) const {
        SpMat h(hs_.total_dim, hs_.total_dim);
        for (Spin sigma : {Spin::up, Spin::down}) {
            const SpMat hop = SpMat(fermions_->cdag(x, sigma) * fermions_->c(y, sigma));
            h += hop;
            h += adjoint_sparse(hop);
        }
        return h;
    }

    void build_hubbard_terms() {
        const auto& p = spec_.hubbard();
        const Graph& g = spec_.graph;
        // Pair hopping over all reachable pairs; the x = y diagonal is a pure
        // one-body shift and is left to the potential.
        for (int x = 0; x < g.n_vertices(); ++x)
            for (int y = x + 1; y < g.n_vertices(); ++y) {
                const int d = g.distance(x, y);
                if (d == Graph::kUnreachable) continue;
                const double txy = p.t * std::pow(d + 1.0, -p.alpha);
                terms_.push_back({{x, y}, SpMat(-txy * hopping_pair(x, y))});
            }
        if (p.U != 0.0 || p.mu != 0.0) {
            for (int x = 0; x < g.n_vertices(); ++x) {
                SpMat v = SpMat(p.U * SpMat(fermions_->number(x, Spin::up) *
                                            fermions_->number(x, Spin::down)) +
                                p.mu * fermions_->number_total(x));
                terms_.push_back({{x}, std::move(v)});
            }
        }
    }

    SpMat heisenberg_pair(int x, int y) const {
        const SpMat pm = SpMat(fermions_->spin_plus(x) * fermions_->spin_minus(y));
        const SpMat zz = SpMat(fermions_->spin3(x) * fermions_->spin3(y));
        return SpMat(0.5 * (pm + adjoint_sparse(pm)) + zz);
    }

    void build_tj_terms() {
        const auto& p = spec_.tj();
        for (auto [x, y] : spec_.graph.edges()) {
            const SpMat nn = SpMat(fermions_->number_total(x) * fermions_->number_total(y));
            SpMat term = SpMat(-0.5 * p.t * hopping_pair(x, y) +
                               p.J * SpMat(heisenberg_pair(x, y) - 0.25 * nn));
            terms_.push_back({{x, y}, std::move(term)});
        }
    }

    ModelSpec spec_;
    HilbertSpace hs_;
    std::optional<SpinAlgebra> spin_;
    std::optional<FermionOps> fermions_;
    std::vector<RealizedTerm> terms_;
    SpMat hamiltonian_;
};

// Convenience builders mirroring the realized families.
inline SpMat build_spin_hamiltonian(const Graph& g, double s, std::vector<double> couplings,
                                    long dim_cap = HilbertSpace::default_dim_cap()) {
    return EdModel(ModelSpec{g, SpinParams{s, std::move(couplings)}}, dim_cap).hamiltonian();
}
inline SpMat build_loop_hamiltonian(const Graph& g, double theta, double u,
                                    long dim_cap = HilbertSpace::default_dim_cap()) {
    loop_spin_s(theta);
    return EdModel(ModelSpec{g, LoopParams{theta, u}}, dim_cap).hamiltonian();
}
inline SpMat build_hubbard(const Graph& g, double t, double alpha, double U, double mu,
                           long dim_cap = HilbertSpace::default_dim_cap()) {
    return EdModel(ModelSpec{g, HubbardParams{t, alpha, U, mu}}, dim_cap).hamiltonian();
}
inline SpMat build_tj(const Graph& g, double t, double J,
                      long dim_cap = HilbertSpace::default_dim_cap()) {
    return EdModel(ModelSpec{g, TJParams{t, J}}, dim_cap).hamiltonian();
}

/// Full spectrum of a (real symmetric) Hamiltonian; shared between Gibbs
/// states at different temperatures.
struct Spectrum {
    VecR evals;
    MatR evecs;

    static std::shared_ptr<const Spectrum> of(const SpMat& h) {
        auto out = std::make_shared<Spectrum>();
        SymmetricEigen eig = eigh(to_dense_real(h));
        out->evals = std::move(eig.eigenvalues);
        out->evecs = std::move(eig.eigenvectors);
        return out;
    }

    /// diag(V^dag O V): expectation of O in each eigenstate.
    VecC diag_in_eigenbasis(const SpMat& o) const {
        const Eigen::Index dim = evals.size();
        VecC out(dim);
        for (Eigen::Index n = 0; n < dim; ++n) {
            const VecC v = evecs.col(n).cast<Complex>();
            out(n) = v.dot(o * v);  // dot conjugates the left factor
        }
        return out;
    }

    /// Tr exp(-beta H), evaluated with a max-weight shift.
    double partition_function(double beta) const {
        const double e0 = evals.minCoeff();
        double z = 0;
        for (Eigen::Index n = 0; n < evals.size(); ++n) z += std::exp(-beta * (evals(n) - e0));
        return z * std::exp(-beta * e0);
    }

    /// Smallest positive gap above the ground state (0 if spectrum is flat).
    double gap() const {
        const double e0 = evals.minCoeff();
        double g = 0;
        for (Eigen::Index n = 0; n < evals.size(); ++n) {
            const double d = evals(n) - e0;
            if (d > 1e-12 && (g == 0 || d < g)) g = d;
        }
        return g;
    }
};

/// Gibbs state at fixed beta over a cached eigendecomposition.
class GibbsContext {
  public:
    GibbsContext(std::shared_ptr<const Spectrum> spectrum, double beta)
        : spectrum_(std::move(spectrum)), beta_(beta) {
        if (!(beta_ >= 0)) throw std::invalid_argument("GibbsContext: beta must be >= 0");
        const VecR& e = spectrum_->evals;
        weights_ = (-(beta_) * (e.array() - e.minCoeff())).exp();
        z_shifted_ = weights_.sum();
    }
    GibbsContext(const SpMat& h, double beta) : GibbsContext(Spectrum::of(h), beta) {}

    double beta() const { return beta_; }
    const Spectrum& spectrum() const { return *spectrum_; }

    /// <O> = Tr(O e^{-beta H}) / Tr e^{-beta H}.
    Complex expectation(const SpMat& o) const {
        if (o.rows() != spectrum_->evals.size())
            throw std::invalid_argument("gibbs expectation: dimension mismatch");
        return expectation_from_diag(spectrum_->diag_in_eigenbasis(o));
    }

    Complex expectation_from_diag(const VecC& diag) const {
        const Complex val = (diag.array() * weights_.array().cast<Complex>()).sum() / z_shifted_;
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw NumericError("gibbs expectation: non-finite result");
        return val;
    }

  private:
    std::shared_ptr<const Spectrum> spectrum_;
    double beta_;
    Eigen::ArrayXd weights_;
    double z_shifted_;
};

inline Complex gibbs_correlator(const GibbsContext& ctx, const SpMat& o) {
    return ctx.expectation(o);
}

/// A beta large enough that the Gibbs state is the ground state to well below
/// tolerance (50 thermal lengths of the spectral gap).
inline double beta_for_ground_state(const Spectrum& spectrum) {
    const double g = spectrum.gap();
    return g > 0 ? 50.0 / g : 1.0;
}

struct CorrelatorValue {
    std::string name;
    Complex value;
};

/// The standard per-family correlator table at inverse temperature beta.
inline std::vector<CorrelatorValue> standard_correlators(const EdModel& model, int x, int y,
                                                         const GibbsContext& ctx) {
    std::vector<CorrelatorValue> out;
    switch (model.spec().family()) {
        case Family::spin_su2:
        case Family::loop_tq: {
            for (int j = 1; j <= 3; ++j)
                out.push_back({"s" + std::to_string(j) + "s" + std::to_string(j),
                               ctx.expectation(model.spin_pair_op(x, y, j))});
            const Correlator ladder = model.spec().family() == Family::spin_su2
                                          ? Correlator::spin_raise
                                          : Correlator::loop_ladder;
            const char* name = model.spec().family() == Family::spin_su2 ? "spsm" : "qpqm";
            out.push_back({name, ctx.expectation(model.correlator_op(x, y, ladder))});
            break;
        }
        case Family::hubbard:
        case Family::tj: {
            for (Correlator c : {Correlator::magnetic, Correlator::pair, Correlator::single_particle})
                out.push_back({correlator_name(c), ctx.expectation(model.correlator_op(x, y, c))});
            break;
        }
    }
    return out;
}

/// Exact spectral norms of the realized terms; a tighter alternative to the
/// published per-term bounds.
inline std::vector<InteractionTerm> exact_norm_terms(const EdModel& model) {
    std::vector<InteractionTerm> terms;
    int tag = 0;
    for (const auto& t : model.terms())
        terms.push_back({t.support, spectral_norm(t.op), tag++});
    return terms;
}

}  // namespace mskt
