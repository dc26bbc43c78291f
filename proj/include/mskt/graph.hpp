#pragma once
#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mskt/rational.hpp"

namespace mskt {

/// Finite undirected graph with precomputed all-pairs graph distances.
/// Vertices are 0..n-1; edges are unordered pairs without self-loops or
/// duplicates. Immutable after construction, so freely shareable.
class Graph {
  public:
    static constexpr int kUnreachable = -1;

    Graph(int n_vertices, std::vector<std::pair<int, int>> edge_pairs)
        : n_(n_vertices) {
        if (n_ <= 0) throw std::invalid_argument("Graph: vertex count must be positive");
        std::set<std::pair<int, int>> uniq;
        for (auto [u, v] : edge_pairs) {
            check_vertex(u);
            check_vertex(v);
            if (u == v) throw std::invalid_argument("Graph: self-edge at vertex " + std::to_string(u));
            uniq.insert({std::min(u, v), std::max(u, v)});
        }
        edges_.assign(uniq.begin(), uniq.end());
        adj_.assign(n_, {});
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
        compute_all_distances();
    }

    int n_vertices() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<int>& neighbors(int v) const { check_vertex(v); return adj_[v]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// Shortest-path distance, kUnreachable if no path exists.
    int distance(int x, int y) const {
        check_vertex(x);
        check_vertex(y);
        return dist_[x][y];
    }

    bool reachable(int x, int y) const { return distance(x, y) != kUnreachable; }

    /// All vertices at distance exactly ell from center.
    std::vector<int> shell(int center, int ell) const {
        check_vertex(center);
        if (ell < 0) throw std::invalid_argument("shell: negative radius");
        std::vector<int> out;
        for (int y = 0; y < n_; ++y)
            if (dist_[center][y] == ell) out.push_back(y);
        return out;
    }

    int eccentricity(int x) const {
        check_vertex(x);
        int e = 0;
        for (int y = 0; y < n_; ++y) e = std::max(e, dist_[x][y]);
        return e;
    }

    int diameter() const {
        int d = 0;
        for (int x = 0; x < n_; ++x) d = std::max(d, eccentricity(x));
        return d;
    }

    /// Perimeter constant: max over vertices x and radii ell >= 1 of
    /// |shell(x, ell)| / ell, as an exact fraction. Unreachable vertices do
    /// not belong to any shell. Also reports the maximizing (x, ell); ties
    /// resolve to the smallest (x, ell) in lexicographic order.
    Rational perimeter_constant(int* argmax_vertex = nullptr, int* argmax_radius = nullptr) const {
        Rational best(0, 1);
        int bx = 0, bl = 1;
        for (int x = 0; x < n_; ++x) {
            std::vector<int> count(n_ + 1, 0);
            int maxd = 0;
            for (int y = 0; y < n_; ++y) {
                const int d = dist_[x][y];
                if (d > 0) { ++count[d]; maxd = std::max(maxd, d); }
            }
            for (int ell = 1; ell <= maxd; ++ell) {
                if (count[ell] == 0) continue;
                Rational r(count[ell], ell);
                if (best < r) { best = r; bx = x; bl = ell; }
            }
        }
        if (argmax_vertex) *argmax_vertex = bx;
        if (argmax_radius) *argmax_radius = bl;
        return best;
    }

    /// Max pairwise distance within A, measured in the ambient graph.
    int subset_diameter(const std::vector<int>& subset) const {
        if (subset.empty()) throw std::invalid_argument("subset_diameter: empty subset");
        int d = 0;
        for (size_t i = 0; i < subset.size(); ++i) {
            check_vertex(subset[i]);
            for (size_t j = i + 1; j < subset.size(); ++j) {
                const int dij = dist_[subset[i]][subset[j]];
                if (dij == kUnreachable)
                    throw std::invalid_argument("subset_diameter: vertices " + std::to_string(subset[i]) +
                                                " and " + std::to_string(subset[j]) + " are unreachable");
                d = std::max(d, dij);
            }
        }
        return d;
    }

  private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("Graph: unknown vertex id " + std::to_string(v));
    }

    void compute_all_distances() {
        dist_.assign(n_, std::vector<int>(n_, kUnreachable));
        std::vector<int> queue;
        for (int s = 0; s < n_; ++s) {
            auto& d = dist_[s];
            d[s] = 0;
            queue.clear();
            queue.push_back(s);
            for (size_t head = 0; head < queue.size(); ++head) {
                const int u = queue[head];
                for (int v : adj_[u]) {
                    if (d[v] == kUnreachable) {
                        d[v] = d[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
    }

    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> dist_;
};

enum class LatticeKind { square, triangular, hexagonal, kagome, chain, ring, edge_list };
enum class Boundary { open, periodic };

inline LatticeKind lattice_kind_from_string(const std::string& s) {
    if (s == "square") return LatticeKind::square;
    if (s == "triangular") return LatticeKind::triangular;
    if (s == "hexagonal") return LatticeKind::hexagonal;
    if (s == "kagome") return LatticeKind::kagome;
    if (s == "chain") return LatticeKind::chain;
    if (s == "ring") return LatticeKind::ring;
    if (s == "edge_list") return LatticeKind::edge_list;
    throw std::invalid_argument("unsupported lattice kind: " + s);
}

namespace detail {

inline std::vector<std::pair<int, int>> grid_edges(int rows, int cols, Boundary bc,
                                                   bool diagonal, bool brick_wall) {
    std::vector<std::pair<int, int>> edges;
    const bool wrap = (bc == Boundary::periodic);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const bool has_right = wrap ? cols > 1 : c + 1 < cols;
            const bool has_down = wrap ? rows > 1 : r + 1 < rows;
            const int rr = (r + 1) % rows, cc = (c + 1) % cols;
            if (has_right) edges.push_back({id(r, c), id(r, cc)});
            // Brick-wall (honeycomb) keeps every horizontal edge but only the
            // vertical edges on alternating columns.
            if (has_down && (!brick_wall || (r + c) % 2 == 0)) edges.push_back({id(r, c), id(rr, c)});
            if (diagonal && has_right && has_down) edges.push_back({id(r, c), id(rr, cc)});
        }
    }
    return edges;
}

}  // namespace detail

/// Deterministic lattice generators with row-major vertex numbering.
/// dims: {rows, cols} for 2D kinds, {length} for chain/ring.
inline Graph make_lattice(LatticeKind kind, const std::vector<int>& dims,
                          Boundary bc = Boundary::open) {
    for (int d : dims)
        if (d <= 0) throw std::invalid_argument("make_lattice: dims must be positive");
    switch (kind) {
        case LatticeKind::chain:
        case LatticeKind::ring: {
            if (dims.size() != 1) throw std::invalid_argument("make_lattice: chain/ring take one dim");
            const int n = dims[0];
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
            if ((kind == LatticeKind::ring || bc == Boundary::periodic) && n > 2)
                edges.push_back({n - 1, 0});
            return Graph(n, std::move(edges));
        }
        case LatticeKind::square:
        case LatticeKind::triangular:
        case LatticeKind::hexagonal: {
            if (dims.size() != 2) throw std::invalid_argument("make_lattice: 2D kinds take {rows, cols}");
            const int rows = dims[0], cols = dims[1];
            const bool diag = (kind == LatticeKind::triangular);
            const bool brick = (kind == LatticeKind::hexagonal);
            return Graph(rows * cols, detail::grid_edges(rows, cols, bc, diag, brick));
        }
        case LatticeKind::kagome: {
            // Kagome is the line graph of the honeycomb lattice: one site per
            // honeycomb edge, adjacent when the edges share an endpoint.
            if (dims.size() != 2) throw std::invalid_argument("make_lattice: kagome takes {rows, cols}");
            Graph honey = make_lattice(LatticeKind::hexagonal, dims, bc);
            const auto& he = honey.edges();
            const int m = static_cast<int>(he.size());
            std::vector<std::pair<int, int>> edges;
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b) {
                    const auto [u1, v1] = he[a];
                    const auto [u2, v2] = he[b];
                    if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) edges.push_back({a, b});
                }
            return Graph(m, std::move(edges));
        }
        case LatticeKind::edge_list:
            throw std::invalid_argument("make_lattice: edge_list graphs are read from a file");
    }
    throw std::invalid_argument("make_lattice: unsupported kind");
}

/// Edge-list interchange format: header line "n <vertex_count>", then one
/// "u v" pair per line. Blank lines and lines starting with '#' are skipped.
inline Graph read_edge_list(std::istream& in, const std::string& name = "<stream>") {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            if (!(ls >> tag >> n) || tag != "n" || n <= 0) fail("expected header 'n <vertex_count>'");
            continue;
        }
        int u, v;
        if (!(ls >> u >> v)) fail("expected edge 'u v'");
        if (u < 0 || u >= n || v < 0 || v >= n) fail("vertex id out of range");
        if (u == v) fail("self-edge");
        edges.push_back({u, v});
    }
    if (n < 0) throw std::invalid_argument(name + ": missing header 'n <vertex_count>'");
    return Graph(n, std::move(edges));
}

inline Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return read_edge_list(in, path);
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
    out << "n " << g.n_vertices() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

}  // namespace mskt
