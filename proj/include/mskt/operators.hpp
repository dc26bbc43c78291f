#pragma once
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "mskt/linalg.hpp"

namespace mskt {

/// Spin-s matrices on C^{2s+1}. Basis ordered by descending magnetization,
/// index i <-> m = s - i.
struct SpinAlgebra {
    double s;
    int dim;
    MatC S1, S2, S3, Sp, Sm;

    explicit SpinAlgebra(double spin) : s(spin) {
        const double two_s = 2.0 * s;
        if (s <= 0 || std::abs(two_s - std::round(two_s)) > 1e-12)
            throw std::invalid_argument("SpinAlgebra: s must be a positive half-integer");
        dim = static_cast<int>(std::round(two_s)) + 1;
        S3 = MatC::Zero(dim, dim);
        Sp = MatC::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            const double m = s - i;
            S3(i, i) = m;
            if (i > 0) Sp(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
        }
        Sm = Sp.adjoint();
        S1 = 0.5 * (Sp + Sm);
        S2 = Complex(0, -0.5) * (Sp - Sm);
    }
};

/// Tensor-product space over graph vertices; vertex 0 is the most significant
/// index (row-major composition), matching the deterministic vertex numbering
/// of the lattice generators.
struct HilbertSpace {
    std::vector<int> site_dims;
    long total_dim = 1;

    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<int> dims, long dim_cap = default_dim_cap())
        : site_dims(std::move(dims)) {
        for (int d : site_dims) {
            if (d <= 0) throw std::invalid_argument("HilbertSpace: nonpositive site dimension");
            if (total_dim > dim_cap / d)
                throw ResourceError("HilbertSpace: dimension exceeds cap " + std::to_string(dim_cap));
            total_dim *= d;
        }
    }

    int n_sites() const { return static_cast<int>(site_dims.size()); }

    long stride(int site) const {
        long s = 1;
        for (int j = site + 1; j < n_sites(); ++j) s *= site_dims[j];
        return s;
    }

    /// Hard maximum 2^16; default 2^14, overridable via MSKT_DIM_CAP.
    static long default_dim_cap() {
        static const long cap = [] {
            long c = 1L << 14;
            if (const char* env = std::getenv("MSKT_DIM_CAP")) {
                const long v = std::atol(env);
                if (v > 0) c = v;
            }
            return std::min(c, 1L << 16);
        }();
        return cap;
    }
};

/// Embed an operator acting on `sites` (distinct, in the order used to index
/// `local`) into the full space, identity elsewhere. `local` is indexed by
/// the tensor product of the listed sites in the given order.
inline SpMat embed_on_sites(const HilbertSpace& hs, const std::vector<int>& sites,
                            const MatC& local) {
    const int k = static_cast<int>(sites.size());
    long local_dim = 1;
    for (int site : sites) {
        if (site < 0 || site >= hs.n_sites())
            throw std::invalid_argument("embed_on_sites: site out of range");
        local_dim *= hs.site_dims[site];
    }
    if (local.rows() != local_dim || local.cols() != local_dim)
        throw std::invalid_argument("embed_on_sites: local operator dimension mismatch");

    // Strides of the listed sites within the local index, and globally.
    std::vector<long> local_stride(k, 1), global_stride(k);
    for (int i = k - 2; i >= 0; --i)
        local_stride[i] = local_stride[i + 1] * hs.site_dims[sites[i + 1]];
    for (int i = 0; i < k; ++i) global_stride[i] = hs.stride(sites[i]);

    // Global base indices of the complement space (listed sites set to 0).
    std::vector<char> listed(hs.n_sites(), 0);
    for (int site : sites) listed[site] = 1;
    std::vector<long> base{0};
    for (int site = 0; site < hs.n_sites(); ++site) {
        if (listed[site]) continue;
        std::vector<long> next;
        next.reserve(base.size() * hs.site_dims[site]);
        for (long b : base)
            for (int a = 0; a < hs.site_dims[site]; ++a) next.push_back(b + a * hs.stride(site));
        base = std::move(next);
    }

    auto to_global = [&](long local_index) {
        long g = 0;
        for (int i = 0; i < k; ++i)
            g += ((local_index / local_stride[i]) % hs.site_dims[sites[i]]) * global_stride[i];
        return g;
    };

    std::vector<Triplet> trips;
    for (long r = 0; r < local_dim; ++r)
        for (long c = 0; c < local_dim; ++c) {
            const Complex v = local(r, c);
            if (v == Complex(0, 0)) continue;
            const long gr = to_global(r), gc = to_global(c);
            for (long b : base) trips.emplace_back(b + gr, b + gc, v);
        }
    SpMat out(hs.total_dim, hs.total_dim);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

inline SpMat embed_single(const HilbertSpace& hs, int site, const MatC& local) {
    return embed_on_sites(hs, {site}, local);
}

// ---------------------------------------------------------------------------
// Loop-model edge operators on C^theta (x) C^theta.
// ---------------------------------------------------------------------------

/// Transposition: T e_i (x) e_j = e_j (x) e_i.
inline MatC loop_transposition(int theta) {
    MatC t = MatC::Zero(theta * theta, theta * theta);
    for (int i = 0; i < theta; ++i)
        for (int j = 0; j < theta; ++j) t(j * theta + i, i * theta + j) = 1.0;
    return t;
}

/// "Double bar" operator: (e_i (x) e_j, Q e_l (x) e_k) = delta_ij delta_lk.
inline MatC loop_double_bar(int theta) {
    MatC q = MatC::Zero(theta * theta, theta * theta);
    for (int i = 0; i < theta; ++i)
        for (int l = 0; l < theta; ++l) q(i * theta + i, l * theta + l) = 1.0;
    return q;
}

// ---------------------------------------------------------------------------
// Spin-1/2 fermions in the occupation basis, two modes per site.
// ---------------------------------------------------------------------------

enum class Spin { up, down };

/// Jordan-Wigner realization: modes ordered (site0 up, site0 down, site1 up,
/// ...), mode 0 most significant. Site basis index is 2 n_up + n_down, so the
/// local states are (0, down, up, updown) = (0, 1, 2, 3).
class FermionOps {
  public:
    explicit FermionOps(int n_sites, long dim_cap = HilbertSpace::default_dim_cap())
        : n_sites_(n_sites), hs_(std::vector<int>(n_sites, 4), dim_cap) {
        const int n_modes = 2 * n_sites_;
        MatC sigma_minus = MatC::Zero(2, 2);
        sigma_minus(0, 1) = 1.0;
        MatC pauli_z = MatC::Zero(2, 2);
        pauli_z(0, 0) = 1.0;
        pauli_z(1, 1) = -1.0;
        const SpMat sm = to_sparse(sigma_minus);
        const SpMat z = to_sparse(pauli_z);
        const SpMat id2 = sparse_identity(2);
        annihilators_.reserve(n_modes);
        for (int m = 0; m < n_modes; ++m) {
            SpMat op(1, 1);
            op.insert(0, 0) = 1.0;
            for (int k = 0; k < n_modes; ++k)
                op = kron(op, k < m ? z : (k == m ? sm : id2));
            annihilators_.push_back(std::move(op));
        }
    }

    const HilbertSpace& space() const { return hs_; }
    int n_sites() const { return n_sites_; }

    const SpMat& c(int site, Spin sigma) const { return annihilators_.at(mode(site, sigma)); }
    SpMat cdag(int site, Spin sigma) const { return adjoint_sparse(c(site, sigma)); }
    SpMat number(int site, Spin sigma) const { return SpMat(cdag(site, sigma) * c(site, sigma)); }
    SpMat number_total(int site) const {
        return SpMat(number(site, Spin::up) + number(site, Spin::down));
    }

    /// On-site spin operators S^i = (1/2) sum c^dag tau^i c.
    SpMat spin_plus(int site) const { return SpMat(cdag(site, Spin::up) * c(site, Spin::down)); }
    SpMat spin_minus(int site) const { return adjoint_sparse(spin_plus(site)); }
    SpMat spin3(int site) const {
        return SpMat(0.5 * (number(site, Spin::up) - number(site, Spin::down)));
    }

  private:
    int mode(int site, Spin sigma) const {
        if (site < 0 || site >= n_sites_) throw std::invalid_argument("FermionOps: site out of range");
        return 2 * site + (sigma == Spin::down ? 1 : 0);
    }

    int n_sites_;
    HilbertSpace hs_;
    std::vector<SpMat> annihilators_;
};

}  // namespace mskt
