#pragma once
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "mskt/config.hpp"
#include "mskt/graph.hpp"

namespace mskt {

enum class Family { spin_su2, loop_tq, hubbard, tj };

enum class Correlator {
    spin_raise,       // S^+_x O_y for SU(2) spin models
    loop_ladder,      // ladder operators about the 2-axis for the loop model
    magnetic,         // c^dag_up,x c_dn,x c^dag_dn,y c_up,y
    pair,             // c^dag_up,x c^dag_dn,x c_up,y c_dn,y
    single_particle,  // c^dag_sigma,x c_sigma,y
};

enum class GeneratorKind {
    spin_s3_over_s,   // S^3 / s
    loop_s2_over_s,   // S^2 / s, theta = 2s + 1
    density_diff,     // n_up - n_dn
    density_half,     // (n_up + n_dn) / 2
};

/// One local interaction term: its support, and an upper bound on (by
/// default the published per-term bound for) its operator norm.
struct InteractionTerm {
    std::vector<int> support;
    double norm_value = 0.0;
    int matrix_tag = -1;  // index into the realized-term list, -1 if none
};

struct SymmetryData {
    GeneratorKind generator;
    double c = 0.0;
    Correlator correlator;
};

struct SpinParams {
    double s = 0.5;
    std::vector<double> couplings;  // couplings[k-1] = c_k, k = 1..2s
};
struct LoopParams {
    double theta = 2.0;
    double u = 1.0;
};
struct HubbardParams {
    double t = 1.0;
    double alpha = 5.0;
    double U = 0.0;
    double mu = 0.0;
};
struct TJParams {
    double t = 1.0;
    double J = 1.0;
};

struct ModelSpec {
    Graph graph;
    std::variant<SpinParams, LoopParams, HubbardParams, TJParams> params;

    Family family() const { return static_cast<Family>(params.index()); }
    const SpinParams& spin() const { return std::get<SpinParams>(params); }
    const LoopParams& loop() const { return std::get<LoopParams>(params); }
    const HubbardParams& hubbard() const { return std::get<HubbardParams>(params); }
    const TJParams& tj() const { return std::get<TJParams>(params); }
};

inline std::string family_name(Family f) {
    switch (f) {
        case Family::spin_su2: return "spin_su2";
        case Family::loop_tq: return "loop_tq";
        case Family::hubbard: return "hubbard";
        case Family::tj: return "tj";
    }
    return "?";
}

inline std::string correlator_name(Correlator c) {
    switch (c) {
        case Correlator::spin_raise: return "spin_raise";
        case Correlator::loop_ladder: return "loop_ladder";
        case Correlator::magnetic: return "magnetic";
        case Correlator::pair: return "pair";
        case Correlator::single_particle: return "single";
    }
    return "?";
}

inline Correlator correlator_from_string(const std::string& s) {
    if (s == "spin_raise") return Correlator::spin_raise;
    if (s == "loop_ladder") return Correlator::loop_ladder;
    if (s == "magnetic") return Correlator::magnetic;
    if (s == "pair") return Correlator::pair;
    if (s == "single") return Correlator::single_particle;
    throw std::invalid_argument("unknown correlator: " + s);
}

inline Correlator default_correlator(Family f) {
    switch (f) {
        case Family::spin_su2: return Correlator::spin_raise;
        case Family::loop_tq: return Correlator::loop_ladder;
        // The fermionic decay theorems are stated for the weakest commutator
        // constant, which is the single-particle correlator's c = 1/2.
        case Family::hubbard:
        case Family::tj: return Correlator::single_particle;
    }
    throw std::invalid_argument("unknown family");
}

/// Requires theta in {2, 3, ...}; the spin-model correspondence only exists
/// there (theta = 2s + 1).
inline double loop_spin_s(double theta) {
    if (theta < 2 || std::abs(theta - std::round(theta)) > 1e-12)
        throw std::invalid_argument("loop model requires integer theta >= 2 here, got " +
                                    std::to_string(theta));
    return (std::round(theta) - 1.0) / 2.0;
}

inline void validate_model(const ModelSpec& spec) {
    switch (spec.family()) {
        case Family::spin_su2: {
            const auto& p = spec.spin();
            const double two_s = 2.0 * p.s;
            if (p.s <= 0 || std::abs(two_s - std::round(two_s)) > 1e-12)
                throw std::invalid_argument("spin_su2: s must be a positive half-integer");
            const int kmax = static_cast<int>(std::round(two_s));
            if (p.couplings.empty() || static_cast<int>(p.couplings.size()) > kmax)
                throw std::invalid_argument("spin_su2: need 1.." + std::to_string(kmax) +
                                            " couplings c_k");
            double sum = 0.0, w = 1.0;
            for (double ck : p.couplings) {
                w *= 3.0 * p.s * p.s;
                sum += std::abs(ck) * w;
            }
            if (sum > 1.0 + 1e-12)
                throw std::invalid_argument(
                    "spin_su2: sum_k |c_k| (3 s^2)^k = " + std::to_string(sum) +
                    " exceeds 1; rescale the couplings");
            break;
        }
        case Family::loop_tq: {
            const auto& p = spec.loop();
            if (!(p.theta > 0)) throw std::invalid_argument("loop_tq: theta must be positive");
            if (p.u < 0 || p.u > 1) throw std::invalid_argument("loop_tq: u must lie in [0, 1]");
            break;
        }
        case Family::hubbard: {
            const auto& p = spec.hubbard();
            if (!std::isfinite(p.t) || !std::isfinite(p.alpha) || !std::isfinite(p.U) ||
                !std::isfinite(p.mu))
                throw std::invalid_argument("hubbard: parameters must be finite");
            if (p.alpha <= 0) throw std::invalid_argument("hubbard: alpha must be positive");
            break;
        }
        case Family::tj: {
            const auto& p = spec.tj();
            if (!std::isfinite(p.t) || !std::isfinite(p.J))
                throw std::invalid_argument("tj: parameters must be finite");
            break;
        }
    }
}

/// Per-edge norm bound for the uniform two-site term of each family.
inline double per_term_norm_bound(const ModelSpec& spec) {
    switch (spec.family()) {
        case Family::spin_su2: {
            const auto& p = spec.spin();
            double sum = 0.0, w = 1.0;
            for (double ck : p.couplings) {
                w *= 3.0 * p.s * p.s;
                sum += std::abs(ck) * w;
            }
            return sum;
        }
        case Family::loop_tq: {
            const auto& p = spec.loop();
            return p.u + (1.0 - p.u) * p.theta + 1.0;
        }
        case Family::tj: {
            const auto& p = spec.tj();
            return 2.0 * std::abs(p.t) + std::abs(p.J);
        }
        case Family::hubbard:
            throw std::invalid_argument("hubbard terms are per-pair, not per-edge");
    }
    return 0.0;
}

/// Declarative interaction: one term per edge (spin, loop, t-J) or per
/// reachable vertex pair (Hubbard, hopping 2|t|(d+1)^-alpha), followed by
/// one-body potential terms where present. Term order is deterministic and
/// matrix_tag indexes the matching realized term.
inline std::vector<InteractionTerm> build_interaction(const ModelSpec& spec) {
    validate_model(spec);
    const Graph& g = spec.graph;
    std::vector<InteractionTerm> terms;
    switch (spec.family()) {
        case Family::spin_su2:
        case Family::loop_tq:
        case Family::tj: {
            const double norm = per_term_norm_bound(spec);
            for (auto [x, y] : g.edges())
                terms.push_back({{x, y}, norm, static_cast<int>(terms.size())});
            break;
        }
        case Family::hubbard: {
            const auto& p = spec.hubbard();
            for (int x = 0; x < g.n_vertices(); ++x)
                for (int y = x + 1; y < g.n_vertices(); ++y) {
                    const int d = g.distance(x, y);
                    if (d == Graph::kUnreachable) continue;
                    const double norm = 2.0 * std::abs(p.t) * std::pow(d + 1.0, -p.alpha);
                    terms.push_back({{x, y}, norm, static_cast<int>(terms.size())});
                }
            if (p.U != 0.0 || p.mu != 0.0) {
                // diag over (0, dn, up, updn): {0, mu, mu, U + 2 mu}
                const double norm = std::max({std::abs(p.mu), std::abs(p.U + 2.0 * p.mu), 0.0});
                for (int x = 0; x < g.n_vertices(); ++x)
                    terms.push_back({{x}, norm, static_cast<int>(terms.size())});
            }
            break;
        }
    }
    return terms;
}

/// Generator and commutator constant for a correlator, per family.
inline SymmetryData symmetry_for(const ModelSpec& spec, Correlator corr) {
    const Family f = spec.family();
    auto reject = [&] {
        throw std::invalid_argument("correlator " + correlator_name(corr) +
                                    " is not defined for family " + family_name(f));
    };
    switch (corr) {
        case Correlator::spin_raise:
            if (f != Family::spin_su2) reject();
            return {GeneratorKind::spin_s3_over_s, 1.0 / spec.spin().s, corr};
        case Correlator::loop_ladder: {
            if (f != Family::loop_tq) reject();
            const double s = loop_spin_s(spec.loop().theta);
            return {GeneratorKind::loop_s2_over_s, 1.0 / s, corr};
        }
        case Correlator::magnetic:
            if (f != Family::hubbard && f != Family::tj) reject();
            return {GeneratorKind::density_diff, 2.0, corr};
        case Correlator::pair:
            if (f != Family::hubbard && f != Family::tj) reject();
            return {GeneratorKind::density_half, 1.0, corr};
        case Correlator::single_particle:
            if (f != Family::hubbard && f != Family::tj) reject();
            return {GeneratorKind::density_half, 0.5, corr};
    }
    throw std::invalid_argument("unknown correlator");
}

// ---------------------------------------------------------------------------
// key=value model configuration
// ---------------------------------------------------------------------------

inline Graph graph_from_config(const Config& cfg) {
    const LatticeKind kind = lattice_kind_from_string(cfg.get_string("lattice"));
    if (kind == LatticeKind::edge_list) return read_edge_list_file(cfg.get_string("graph_file"));
    const Boundary bc =
        cfg.get_string("boundary", "open") == "periodic" ? Boundary::periodic : Boundary::open;
    if (kind == LatticeKind::chain || kind == LatticeKind::ring)
        return make_lattice(kind, {cfg.get_int("L")}, bc);
    return make_lattice(kind, {cfg.get_int("rows"), cfg.get_int("cols")}, bc);
}

/// Read a ModelSpec from a flat key=value config. Call cfg.finish() after any
/// further CLI-level keys are consumed; unknown keys are hard errors.
inline ModelSpec read_model_spec(const Config& cfg) {
    const std::string fam = cfg.get_string("family");
    Graph g = graph_from_config(cfg);
    ModelSpec spec{std::move(g), SpinParams{}};
    if (fam == "spin_su2") {
        SpinParams p;
        p.s = cfg.get_double("s");
        const int kmax = static_cast<int>(std::round(2.0 * p.s));
        for (int k = 1; k <= kmax; ++k) {
            const std::string key = "c" + std::to_string(k);
            if (cfg.has(key))
                p.couplings.resize(k), p.couplings[k - 1] = cfg.get_double(key);
        }
        if (p.couplings.empty()) throw std::invalid_argument("spin_su2: no couplings c1.. given");
        spec.params = p;
    } else if (fam == "loop_tq") {
        spec.params = LoopParams{cfg.get_double("theta"), cfg.get_double("u")};
    } else if (fam == "hubbard") {
        spec.params = HubbardParams{cfg.get_double("t"), cfg.get_double("alpha"),
                                    cfg.get_double("U", 0.0), cfg.get_double("mu", 0.0)};
    } else if (fam == "tj") {
        spec.params = TJParams{cfg.get_double("t"), cfg.get_double("J")};
    } else {
        throw std::invalid_argument("unknown family: " + fam);
    }
    validate_model(spec);
    return spec;
}

}  // namespace mskt
