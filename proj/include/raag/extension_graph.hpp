#pragma once

// Vertices of the extension graph: conjugates g <v> g^{-1} of cyclic
// generator subgroups, canonically named by the minimal representative of
// g * G_st(v). Adjacency (= commutation) is decided exactly by a
// double-coset test; balls are enumerated with an explicit conjugator
// length bound and honest truncation flags.

#include <algorithm>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "raag/flats.hpp"

namespace raag {

struct ExtVertex {
    VertexId type = -1;    // vertex v of the defining graph
    NormalForm conj;       // canonical: coset_min_rep(g, st(v))

    const GraphRef& graph() const { return conj.graph(); }

    bool operator==(const ExtVertex& o) const {
        return type == o.type && conj == o.conj;
    }
    bool operator!=(const ExtVertex& o) const { return !(*this == o); }

    std::string key() const {
        std::string k = conj.key();
        k.append(reinterpret_cast<const char*>(&type), sizeof type);
        return k;
    }
    std::string str() const {
        std::string s = "[" + conj.graph()->name(type);
        if (!conj.is_identity()) s += " @ " + conj.str();
        return s + "]";
    }
};

struct ExtVertexHash {
    size_t operator()(const ExtVertex& u) const {
        return std::hash<std::string>{}(u.key());
    }
};

// Canonical vertex for the parabolic g <v> g^{-1}.
inline ExtVertex ext_vertex(const NormalForm& g, VertexId v) {
    return ExtVertex{v, coset_min_rep(g, g.graph()->star(v))};
}

// Commutation of the two cyclic parabolics: the defining-graph types must
// be adjacent and some element conjugates both from the standard position,
// i.e. c1^{-1} c2 lies in G_st(v1) * G_st(v2).
inline bool ext_adjacent(const ExtVertex& u1, const ExtVertex& u2) {
    if (u1 == u2) return false;
    const SimplicialGraph& g = *u1.graph();
    if (!g.adjacent(u1.type, u2.type)) return false;
    NormalForm d = u1.conj.inverse() * u2.conj;
    return double_coset_member(d, g.star(u1.type), g.star(u2.type));
}

// Left conjugation action of the group on extension-graph vertices.
inline ExtVertex conj_action(const NormalForm& g, const ExtVertex& u) {
    return ext_vertex(g * u.conj, u.type);
}

// The clique of extension-graph vertices spanned by a standard flat:
// directions of the lines through the flat's representative.
inline std::vector<ExtVertex> delta(const StandardCoset& flat) {
    if (!flat.graph()->is_clique(flat.type))
        throw std::invalid_argument("delta needs a flat (clique type)");
    std::vector<ExtVertex> out;
    for_each_vertex(flat.type, [&](VertexId v) {
        out.push_back(ext_vertex(flat.rep, v));
    });
    return out;
}

// Truncated ball in the extension graph. Neighbor enumeration of u ranges
// over candidate conjugators w (|w| <= conj_bound) applied on top of u's
// conjugator; `expanded` records which vertices had their neighbor list
// generated at all (frontier vertices did not). Lists are complete only
// relative to conj_bound.
struct ExtBall {
    GraphRef graph;
    ExtVertex base;
    int radius = 0;
    int conj_bound = 0;
    std::vector<ExtVertex> vertices;            // BFS order
    std::vector<int> dist;
    std::vector<char> expanded;
    std::vector<std::pair<int, int>> edges;     // index pairs, i < j
    bool truncated = false;                     // some vertex not expanded

    std::optional<int> index_of(const ExtVertex& u) const {
        for (int i = 0; i < (int)vertices.size(); ++i)
            if (vertices[i] == u) return i;
        return std::nullopt;
    }
};

inline std::vector<ExtVertex>
ext_neighbors(const ExtVertex& u, const std::vector<NormalForm>& conjugators) {
    const GraphRef& g = u.graph();
    std::unordered_set<std::string> seen;
    std::vector<ExtVertex> out;
    for (const NormalForm& w : conjugators) {
        NormalForm c = w * u.conj;
        for (VertexId x = 0; x < g->size(); ++x) {
            if (!g->adjacent(u.type, x)) continue;
            ExtVertex cand = ext_vertex(c, x);
            if (!ext_adjacent(u, cand)) continue;
            if (seen.insert(cand.key()).second) out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end(), [](const ExtVertex& a, const ExtVertex& b) {
        auto ka = std::make_tuple(a.conj.word_length(), a.type, a.key());
        auto kb = std::make_tuple(b.conj.word_length(), b.type, b.key());
        return ka < kb;
    });
    return out;
}

inline ExtBall ext_ball(const ExtVertex& base, int radius, int conj_bound) {
    if (radius < 0 || conj_bound < 0)
        throw std::invalid_argument("negative truncation parameter");
    ExtBall ball;
    ball.graph = base.graph();
    ball.base = base;
    ball.radius = radius;
    ball.conj_bound = conj_bound;
    auto conjugators = word_ball(ball.graph, conj_bound);

    std::unordered_map<std::string, int> index;
    auto add = [&](const ExtVertex& u, int d) {
        index.emplace(u.key(), (int)ball.vertices.size());
        ball.vertices.push_back(u);
        ball.dist.push_back(d);
        ball.expanded.push_back(false);
        return (int)ball.vertices.size() - 1;
    };
    add(base, 0);
    std::unordered_set<long long> edge_seen;
    for (int i = 0; i < (int)ball.vertices.size(); ++i) {
        if (ball.dist[i] >= radius) continue;
        ball.expanded[i] = true;
        for (const ExtVertex& nb : ext_neighbors(ball.vertices[i], conjugators)) {
            auto it = index.find(nb.key());
            int j = it != index.end() ? it->second : add(nb, ball.dist[i] + 1);
            long long ekey = (long long)std::min(i, j) * 1000000 + std::max(i, j);
            if (i != j && edge_seen.insert(ekey).second)
                ball.edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    for (char e : ball.expanded)
        if (!e) ball.truncated = true;
    return ball;
}

// The star region of an extension-graph vertex u of type v: the coset
// P = c * G_st(v), a product (v-line) x (cosets of G_lk(v)).
struct ProductRegion {
    StandardCoset carrier;    // c * G_st(v)
    ExtVertex direction;      // u
};

inline ProductRegion product_region(const ExtVertex& u) {
    const SimplicialGraph& g = *u.graph();
    return {StandardCoset(u.conj, g.star(u.type)), u};
}

// Coordinates of a point x of P: (k, h) with x = c * v^k * h, h in G_lk(v);
// k is the line coordinate, h names the leaf coset.
inline std::pair<std::int64_t, NormalForm>
decompose_point(const ProductRegion& p, const NormalForm& x) {
    if (!p.carrier.contains(x))
        throw std::invalid_argument("point outside the product region");
    NormalForm rel = p.carrier.rep.inverse() * x;
    VertexId v = p.direction.type;
    std::int64_t k = rel.exponent_sum(v);
    NormalForm h = NormalForm::generator(rel.graph(), v, -k) * rel;
    // v is central in G_st(v), so removing v^k leaves the link part
    return {k, h};
}

}  // namespace raag
