#pragma once

// Finite simplicial graphs (defining graphs) with the vertex-set calculus
// used everywhere else: links, stars, orthogonal complements, joins,
// cliques, rigidity predicates and star-gluings.
//
// Vertex subsets are 64-bit masks over the graph's vertex order, so graphs
// are capped at 64 vertices (far beyond desk scale).

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace raag {

using VertexId = int;
using VertexMask = std::uint64_t;

inline VertexMask bit(VertexId v) { return VertexMask{1} << v; }
inline bool has(VertexMask m, VertexId v) { return (m >> v) & 1; }
inline int popcount(VertexMask m) { return __builtin_popcountll(m); }

// Iterate set bits low-to-high.
template <typename F>
inline void for_each_vertex(VertexMask m, F f) {
    while (m) {
        VertexId v = __builtin_ctzll(m);
        f(v);
        m &= m - 1;
    }
}

inline std::vector<VertexId> mask_to_vec(VertexMask m) {
    std::vector<VertexId> out;
    for_each_vertex(m, [&](VertexId v) { out.push_back(v); });
    return out;
}

class SimplicialGraph {
public:
    SimplicialGraph() = default;

    explicit SimplicialGraph(std::vector<std::string> vertex_names)
        : names_(std::move(vertex_names)), adj_(names_.size(), 0) {
        if (names_.size() > 64)
            throw std::invalid_argument("graph capped at 64 vertices");
        for (int i = 0; i < (int)names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw std::invalid_argument("duplicate vertex name: " + names_[i]);
        }
    }

    int size() const { return (int)names_.size(); }
    VertexMask all() const {
        return size() == 64 ? ~VertexMask{0} : (VertexMask{1} << size()) - 1;
    }

    const std::string& name(VertexId v) const { return names_.at(v); }
    const std::vector<std::string>& names() const { return names_; }

    VertexId id(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::invalid_argument("unknown vertex: " + name);
        return it->second;
    }
    bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }

    void add_edge(VertexId a, VertexId b) {
        if (a == b) throw std::invalid_argument("no loops in a simplicial graph");
        check(a); check(b);
        adj_[a] |= bit(b);
        adj_[b] |= bit(a);
    }
    void add_edge(const std::string& a, const std::string& b) { add_edge(id(a), id(b)); }

    bool adjacent(VertexId a, VertexId b) const { return has(adj_.at(a), b); }

    // Open neighbourhood lk(v).
    VertexMask link(VertexId v) const { check(v); return adj_[v]; }
    // Closed neighbourhood st(v) = lk(v) + v.
    VertexMask star(VertexId v) const { check(v); return adj_[v] | bit(v); }

    // Vertices adjacent to every vertex of m (the orthogonal complement).
    VertexMask orthogonal(VertexMask m) const {
        VertexMask out = all();
        for_each_vertex(m, [&](VertexId v) { out &= adj_[v]; });
        return out & ~m;
    }

    bool is_clique(VertexMask m) const {
        bool ok = true;
        for_each_vertex(m, [&](VertexId v) {
            if ((m & ~bit(v)) & ~adj_[v]) ok = false;
        });
        return ok;
    }

    // All cliques, the empty set included, in deterministic (mask) order.
    std::vector<VertexMask> cliques() const {
        std::vector<VertexMask> out{0};
        std::function<void(VertexMask, VertexMask)> grow =
            [&](VertexMask cur, VertexMask cand) {
                for_each_vertex(cand, [&](VertexId v) {
                    VertexMask nxt = cur | bit(v);
                    out.push_back(nxt);
                    // only extend with later vertices to avoid duplicates
                    VertexMask later = cand & adj_[v] & ~((bit(v) << 1) - 1);
                    grow(nxt, later);
                });
            };
        grow(0, all());
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<VertexMask> maximal_cliques() const {
        auto cls = cliques();
        std::vector<VertexMask> out;
        for (VertexMask c : cls) {
            if (c == 0 && size() > 0) continue;
            if (orthogonal(c) == 0) out.push_back(c);
        }
        return out;
    }

    int clique_number() const {
        int best = 0;
        for (VertexMask c : maximal_cliques()) best = std::max(best, popcount(c));
        return best;
    }

    SimplicialGraph complement() const {
        SimplicialGraph g(names_);
        for (int a = 0; a < size(); ++a)
            for (int b = a + 1; b < size(); ++b)
                if (!adjacent(a, b)) g.add_edge(a, b);
        return g;
    }

    // Induced subgraph on m; vertex order inherited.
    SimplicialGraph induced(VertexMask m) const {
        std::vector<std::string> nm;
        for_each_vertex(m, [&](VertexId v) { nm.push_back(names_[v]); });
        SimplicialGraph g(nm);
        auto vs = mask_to_vec(m);
        for (int i = 0; i < (int)vs.size(); ++i)
            for (int j = i + 1; j < (int)vs.size(); ++j)
                if (adjacent(vs[i], vs[j])) g.add_edge(i, j);
        return g;
    }

    // Connected components of the induced subgraph on m.
    std::vector<VertexMask> components(VertexMask m) const {
        std::vector<VertexMask> out;
        VertexMask todo = m;
        while (todo) {
            VertexId seed = __builtin_ctzll(todo);
            VertexMask comp = 0, frontier = bit(seed);
            while (frontier) {
                comp |= frontier;
                VertexMask nxt = 0;
                for_each_vertex(frontier, [&](VertexId v) { nxt |= adj_[v] & m; });
                frontier = nxt & ~comp;
            }
            out.push_back(comp);
            todo &= ~comp;
        }
        return out;
    }

    bool connected(VertexMask m) const { return components(m).size() <= 1; }

    bool operator==(const SimplicialGraph& o) const {
        return names_ == o.names_ && adj_ == o.adj_;
    }

private:
    void check(VertexId v) const {
        if (v < 0 || v >= size()) throw std::out_of_range("vertex id out of range");
    }
    std::vector<std::string> names_;
    std::map<std::string, VertexId> index_;
    std::vector<VertexMask> adj_;
};

// Join: disjoint union plus all cross edges. Names must not collide.
inline SimplicialGraph join(const SimplicialGraph& a, const SimplicialGraph& b) {
    std::vector<std::string> nm = a.names();
    for (auto& n : b.names()) nm.push_back(n);
    SimplicialGraph g(nm);
    for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j)
            if (a.adjacent(i, j)) g.add_edge(i, j);
    for (int i = 0; i < b.size(); ++i)
        for (int j = i + 1; j < b.size(); ++j)
            if (b.adjacent(i, j)) g.add_edge(a.size() + i, a.size() + j);
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            g.add_edge(i, a.size() + j);
    return g;
}

// Maximal join decomposition: factors are the complement's connected
// components, ordered by smallest vertex. A single factor means the graph
// is join-irreducible.
inline std::vector<VertexMask> join_decomposition(const SimplicialGraph& g) {
    return g.complement().components(g.all());
}

// All graph automorphisms as permutation vectors (perm[v] = image of v).
// Brute backtracking; fine through the documented 12-vertex desk scale.
inline std::vector<std::vector<VertexId>> automorphisms(const SimplicialGraph& g) {
    int n = g.size();
    std::vector<std::vector<VertexId>> out;
    std::vector<VertexId> perm(n, -1);
    std::vector<bool> used(n, false);
    std::function<void(int)> rec = [&](int v) {
        if (v == n) { out.push_back(perm); return; }
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            if (popcount(g.link(v)) != popcount(g.link(w))) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (g.adjacent(u, v) != g.adjacent(perm[u], w)) ok = false;
            if (!ok) continue;
            perm[v] = w; used[w] = true;
            rec(v + 1);
            perm[v] = -1; used[w] = false;
        }
    };
    rec(0);
    return out;
}

// Star-rigidity: no nontrivial automorphism fixes some closed star pointwise.
// Returns nullopt if rigid, otherwise a witness (vertex, automorphism).
inline std::optional<std::pair<VertexId, std::vector<VertexId>>>
star_rigidity_witness(const SimplicialGraph& g) {
    for (auto& perm : automorphisms(g)) {
        bool trivial = true;
        for (int v = 0; v < g.size(); ++v)
            if (perm[v] != v) { trivial = false; break; }
        if (trivial) continue;
        for (int v = 0; v < g.size(); ++v) {
            bool fixes_star = true;
            for_each_vertex(g.star(v), [&](VertexId u) {
                if (perm[u] != u) fixes_star = false;
            });
            if (fixes_star) return std::make_pair(v, perm);
        }
    }
    return std::nullopt;
}

inline bool is_star_rigid(const SimplicialGraph& g) {
    return !star_rigidity_witness(g).has_value();
}

// Induced square (4-cycle with both diagonals missing); witness in cycle order.
inline std::optional<std::array<VertexId, 4>>
induced_square_witness(const SimplicialGraph& g) {
    int n = g.size();
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c) {
            if (g.adjacent(a, c)) continue;
            for (int b = 0; b < n; ++b) {
                if (b == a || b == c || !g.adjacent(a, b) || !g.adjacent(b, c)) continue;
                for (int d = b + 1; d < n; ++d) {
                    if (d == a || d == c || g.adjacent(b, d)) continue;
                    if (g.adjacent(a, d) && g.adjacent(c, d))
                        return std::array<VertexId, 4>{a, b, c, d};
                }
            }
        }
    return std::nullopt;
}

inline bool has_induced_square(const SimplicialGraph& g) {
    return induced_square_witness(g).has_value();
}

// Witnesses for the outer-automorphism finiteness test.
struct OutFinitenessReport {
    bool finite = true;
    // pairs (v, w), v != w, with lk(v) contained in st(w): transvection v -> vw
    std::vector<std::pair<VertexId, VertexId>> dominations;
    // vertices whose star separates: partial conjugations
    std::vector<VertexId> separating_stars;
};

inline OutFinitenessReport out_finiteness(const SimplicialGraph& g) {
    OutFinitenessReport rep;
    for (int v = 0; v < g.size(); ++v)
        for (int w = 0; w < g.size(); ++w) {
            if (v == w) continue;
            if ((g.link(v) & ~g.star(w)) == 0)
                rep.dominations.emplace_back(v, w);
        }
    for (int v = 0; v < g.size(); ++v) {
        VertexMask rest = g.all() & ~g.star(v);
        if (g.components(rest).size() >= 2) rep.separating_stars.push_back(v);
    }
    rep.finite = rep.dominations.empty() && rep.separating_stars.empty();
    return rep;
}

// Glue n copies of g along the closed star of v. Star vertices keep their
// names; each non-star vertex u becomes u[1], ..., u[n]. copy_of maps each
// new vertex to its copy index (0 for the shared star).
struct GluedGraph {
    SimplicialGraph graph;
    std::vector<int> copy_of;
    VertexId glued_vertex = -1;  // v inside the glued graph
};

inline GluedGraph glue_along_star(const SimplicialGraph& g, VertexId v, int n) {
    if (n < 1) throw std::invalid_argument("need at least one copy");
    if (n == 1) return {g, std::vector<int>(g.size(), 0), v};
    VertexMask st = g.star(v);
    std::vector<std::string> nm;
    std::vector<int> copy_of;
    // new-id lookup: star vertex -> id; (vertex, copy) -> id
    std::vector<VertexId> star_id(g.size(), -1);
    std::vector<std::vector<VertexId>> copy_id(g.size(), std::vector<VertexId>(n + 1, -1));
    for_each_vertex(st, [&](VertexId u) {
        star_id[u] = (VertexId)nm.size();
        nm.push_back(g.name(u));
        copy_of.push_back(0);
    });
    for (int j = 1; j <= n; ++j)
        for (int u = 0; u < g.size(); ++u) {
            if (has(st, u)) continue;
            copy_id[u][j] = (VertexId)nm.size();
            nm.push_back(g.name(u) + "[" + std::to_string(j) + "]");
            copy_of.push_back(j);
        }
    SimplicialGraph out(nm);
    auto at = [&](VertexId u, int j) { return has(st, u) ? star_id[u] : copy_id[u][j]; };
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b) {
            if (!g.adjacent(a, b)) continue;
            if (has(st, a) && has(st, b)) out.add_edge(star_id[a], star_id[b]);
            else
                for (int j = 1; j <= n; ++j) out.add_edge(at(a, j), at(b, j));
        }
    return {out, copy_of, star_id[v]};
}

}  // namespace raag
