#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mskt/interaction.hpp"

namespace mskt {

/// sum_{r>=1} r^{-p} for p > 1, to relative accuracy ~1e-12: direct summation
/// plus an Euler-Maclaurin tail.
inline double dirichlet_sum(double p) {
    if (!(p > 1.0))
        throw std::domain_error("dirichlet_sum: series diverges for exponent " + std::to_string(p));
    const long cutoff = 10000;
    double acc = 0.0;
    for (long r = 1; r <= cutoff; ++r) {
        const double term = std::pow(static_cast<double>(r), -p);
        acc += term;
        if (term < 1e-17 * acc) return acc;
    }
    const double a = cutoff + 1.0;
    const double f = std::pow(a, -p);
    acc += a * f / (p - 1.0);                               // integral from a
    acc += 0.5 * f;                                         // trapezoid correction
    acc += (p / 12.0) * f / a;                              // -f'(a)/12
    acc -= (p * (p + 1.0) * (p + 2.0) / 720.0) * f / (a * a * a);
    return acc;
}

/// K-norm of an interaction on a finite graph:
///   sup_y sum_{A ni y} |Phi_A| (|A|-1)^2 (diam(A)+1)^{2K(|A|-1)+2}.
/// One-body terms do not contribute.
inline double k_norm(const std::vector<InteractionTerm>& terms, const Graph& g, double K) {
    std::vector<double> per_vertex(g.n_vertices(), 0.0);
    for (const auto& term : terms) {
        const auto sz = static_cast<double>(term.support.size());
        if (term.support.size() <= 1) continue;
        const int diam = g.subset_diameter(term.support);
        const double w =
            term.norm_value * (sz - 1.0) * (sz - 1.0) *
            std::pow(diam + 1.0, 2.0 * K * (sz - 1.0) + 2.0);
        for (int y : term.support) per_vertex.at(y) += w;
    }
    double sup = 0.0;
    for (double v : per_vertex) sup = std::max(sup, v);
    return sup;
}

/// Imaginary rotation angles for the pair (x, y):
///   theta_z = kappa log((d(x,y)+1)/(d(x,z)+1)) when d(x,z) <= d(x,y), else 0.
struct RotationAngles {
    int x = 0, y = 0;
    double kappa = 0.0;
    std::vector<double> theta;
};

inline RotationAngles rotation_angles(const Graph& g, int x, int y, double kappa) {
    if (x == y) throw std::invalid_argument("rotation_angles: x and y must differ");
    const int dxy = g.distance(x, y);
    if (dxy == Graph::kUnreachable)
        throw std::invalid_argument("rotation_angles: x and y are unreachable");
    RotationAngles out{x, y, kappa, std::vector<double>(g.n_vertices(), 0.0)};
    for (int z = 0; z < g.n_vertices(); ++z) {
        const int dxz = g.distance(x, z);
        if (dxz == Graph::kUnreachable || dxz > dxy) continue;
        out.theta[z] = kappa * std::log((dxy + 1.0) / (dxz + 1.0));
    }
    return out;
}

using KnormFn = std::function<double(double kappa)>;

/// xi_K(beta) = (K/beta) (c - 2 K gamma |Phi|_{K/beta}); -inf where the norm
/// diverges.
inline double xi_of_K(double beta, double K, double c, double gamma, const KnormFn& knorm) {
    if (!(beta > 0) || !(K > 0)) throw std::invalid_argument("xi_of_K: beta and K must be positive");
    const double nrm = knorm(K / beta);
    if (!std::isfinite(nrm)) return -std::numeric_limits<double>::infinity();
    return (K / beta) * (c - 2.0 * K * gamma * nrm);
}

struct DecayBound {
    double c = 0.0;
    Rational gamma{0, 1};
    double beta = 0.0;
    double kappa = 0.0;
    double K_star = 0.0;
    double xi = 0.0;
    double prefactor_C = 1.0;
    bool vacuous = false;
};

/// Maximize xi_K over K in (0, K_max] by golden-section search. K_max <= 0
/// selects the default 10 c / (4 gamma |Phi|_0), shrunk into the region where
/// the norm is finite. norm_O scales the prefactor C = |O| e^{2 kappa^2 |Phi|_kappa}.
inline DecayBound optimize_xi(double beta, double c, Rational gamma, const KnormFn& knorm,
                              double K_max = 0.0, double norm_O = 1.0) {
    if (!(beta > 0)) throw std::invalid_argument("optimize_xi: beta must be positive");
    const double g = gamma.value();
    DecayBound bound;
    bound.c = c;
    bound.gamma = gamma;
    bound.beta = beta;
    bound.prefactor_C = norm_O;
    if (!(c > 0)) {  // xi_K <= 0 for every K
        bound.vacuous = true;
        return bound;
    }
    if (K_max <= 0) {
        const double n0 = knorm(0.0);
        K_max = n0 > 0 ? 10.0 * c / (4.0 * g * n0) : 1.0;
    }
    for (int i = 0; i < 2048 && !std::isfinite(knorm(K_max / beta)); ++i) K_max *= 0.5;
    if (!std::isfinite(knorm(K_max / beta))) {
        bound.vacuous = true;
        return bound;
    }

    const auto f = [&](double K) { return xi_of_K(beta, K, c, g, knorm); };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = K_max;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-9 * std::max(1.0, std::abs(b))) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a); f1 = f(x1);
        }
    }
    bound.K_star = 0.5 * (a + b);
    bound.xi = f(bound.K_star);
    bound.kappa = bound.K_star / beta;
    const double nrm = knorm(bound.kappa);
    bound.prefactor_C = norm_O * std::exp(2.0 * bound.kappa * bound.kappa * nrm);
    bound.vacuous = !(bound.xi > 0);
    return bound;
}

enum class KnormMode { closed_form, lattice };

/// |Phi|_kappa for a model family: either the published closed-form bounds
/// (gamma from the model graph) or the explicit lattice sum over terms.
inline KnormFn family_knorm(const ModelSpec& spec, KnormMode mode = KnormMode::closed_form) {
    if (mode == KnormMode::lattice) {
        auto terms = build_interaction(spec);
        // copy shares the graph's distance cache through the spec copy
        return [g = spec.graph, terms = std::move(terms)](double kappa) {
            return k_norm(terms, g, kappa);
        };
    }
    const double gamma = spec.graph.perimeter_constant().value();
    switch (spec.family()) {
        case Family::spin_su2:
            return [gamma](double kappa) { return std::exp2(2.0 * kappa + 2.0) * gamma; };
        case Family::loop_tq: {
            const auto p = spec.loop();
            const double w = p.u + (1.0 - p.u) * p.theta + 1.0;
            return [gamma, w](double kappa) { return std::exp2(2.0 * kappa + 2.0) * gamma * w; };
        }
        case Family::hubbard: {
            const auto p = spec.hubbard();
            return [gamma, p](double kappa) {
                const double exponent = p.alpha - 2.0 * kappa - 3.0;
                if (!(exponent > 1.0)) return std::numeric_limits<double>::infinity();
                return 2.0 * std::abs(p.t) * gamma * dirichlet_sum(exponent);
            };
        }
        case Family::tj: {
            const auto p = spec.tj();
            const double w = 2.0 * std::abs(p.t) + std::abs(p.J);
            return [gamma, w](double kappa) { return std::exp2(2.0 * kappa + 2.0) * gamma * w; };
        }
    }
    throw std::invalid_argument("unknown family");
}

/// lim_{beta -> inf} beta xi(beta) = c^2 / (8 gamma |Phi|_0), with the
/// family's closed-form |Phi|_0 and the correlator's commutator constant.
/// For the spin family this is 1/(32 s^2 gamma^2); the published statement
/// has a single power of s, and the discrepancy is reported by the CLI.
inline double asymptotic_exponent(const ModelSpec& spec, Correlator corr) {
    validate_model(spec);
    if (spec.family() == Family::hubbard && !(spec.hubbard().alpha > 4.0))
        throw std::domain_error("hubbard: alpha must exceed 4 for a Lambda-uniform bound");
    const double c = symmetry_for(spec, corr).c;
    const double gamma = spec.graph.perimeter_constant().value();
    const double n0 = family_knorm(spec, KnormMode::closed_form)(0.0);
    return c * c / (8.0 * gamma * n0);
}

/// Tabulate d -> C (d+1)^{-xi}.
inline std::vector<std::pair<int, double>> bound_curve(const DecayBound& bound,
                                                       const std::vector<int>& d_values) {
    std::vector<std::pair<int, double>> out;
    out.reserve(d_values.size());
    const double logC = std::log(bound.prefactor_C);
    for (int d : d_values) {
        if (d < 0) throw std::invalid_argument("bound_curve: negative distance");
        out.emplace_back(d, std::exp(logC - bound.xi * std::log(d + 1.0)));
    }
    return out;
}

}  // namespace mskt
