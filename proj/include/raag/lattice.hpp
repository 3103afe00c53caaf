#pragma once

// Finite-index lattice constructions: star-glued graphs come from
// graph.hpp; here live the mod-n exponent character, the twisted embedding
// of the glued group, its action on line classes, type cocycles of
// window maps, and canonical completion of labeled digraphs (with the
// subdivided-tree preset).

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "raag/extension_graph.hpp"
#include "raag/graph.hpp"
#include "raag/word.hpp"

namespace raag {

// Exponent sum of v mod n (a character to Z/n killing every other
// generator).
inline std::int64_t phi_n(const NormalForm& w, VertexId v, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("modulus must be positive");
    std::int64_t e = w.exponent_sum(v) % n;
    return e < 0 ? e + n : e;
}

// The twisted embedding of the star-glued group: generators of copy j are
// conjugated by v^(j-1), and the glued vertex itself maps to v^n.
struct QEmbedding {
    GraphRef glued;      // ambient graph of the source
    GraphRef target;     // original graph
    VertexId v = -1;     // glued vertex in the target
    VertexId vn = -1;    // glued vertex in the source
    std::int64_t n = 1;
    std::vector<int> copy_of;          // per glued vertex
    std::vector<VertexId> bar;         // glued vertex -> underlying target vertex
};

inline QEmbedding make_q_embedding(const SimplicialGraph& original, VertexId v,
                                   std::int64_t n) {
    GluedGraph gl = glue_along_star(original, v, (int)n);
    QEmbedding q;
    q.glued = std::make_shared<SimplicialGraph>(gl.graph);
    q.target = std::make_shared<SimplicialGraph>(original);
    q.v = v;
    q.vn = gl.glued_vertex;
    q.n = n;
    q.copy_of = gl.copy_of;
    for (int u = 0; u < q.glued->size(); ++u) {
        std::string nm = q.glued->name(u);
        auto br = nm.find('[');
        q.bar.push_back(original.id(br == std::string::npos ? nm : nm.substr(0, br)));
    }
    return q;
}

inline NormalForm q_embed_generator(const QEmbedding& q, VertexId u, std::int64_t e) {
    NormalForm vgen = NormalForm::generator(q.target, q.v, 1);
    if (u == q.vn) return vgen.pow(q.n * e);
    int j = q.copy_of.at(u);
    NormalForm ubar = NormalForm::generator(q.target, q.bar.at(u), e);
    if (j == 0) return ubar;  // star vertex, shared by every copy
    return vgen.pow(j - 1) * ubar * vgen.pow(1 - j);
}

inline NormalForm q_embed(const QEmbedding& q, const NormalForm& w) {
    NormalForm out = NormalForm::identity(q.target);
    for (auto& s : w.syllables()) out = out * q_embed_generator(q, s.gen, s.exp);
    return out;
}

// Induced map on extension-graph vertices: the class of conj<u>conj^{-1}
// goes to the class of q(conj) q(<u>) q(conj)^{-1}; q(u) is a conjugated
// generator (or v^n), so the image class is again a generator class.
inline ExtVertex q_star(const QEmbedding& q, const ExtVertex& u) {
    NormalForm c = q_embed(q, u.conj);
    if (u.type == q.vn) return ext_vertex(c, q.v);
    int j = q.copy_of.at(u.type);
    NormalForm shift = NormalForm::generator(q.target, q.v, 1).pow(j == 0 ? 0 : j - 1);
    return ext_vertex(c * shift, q.bar.at(u.type));
}

// ---------------------------------------------------------------------------
// Type cocycle of a window map: the permutation of defining-graph vertices
// read off from how the map carries line directions through a point.

// Minimal flat containing the images of a line's window points; the type
// must be a single vertex.
inline std::optional<VertexId>
image_line_type(const std::function<NormalForm(const NormalForm&)>& h,
                const NormalForm& x, VertexId v, std::int64_t window) {
    std::vector<NormalForm> images;
    for (std::int64_t k = -window; k <= window; ++k)
        images.push_back(h(x * NormalForm::generator(x.graph(), v, 1).pow(k)));
    VertexMask meet = ~VertexMask{0};
    bool any = false;
    const GraphRef& g = x.graph();
    for (VertexMask c : g->cliques()) {
        StandardCoset f(images[0], c);
        bool all = true;
        for (auto& p : images)
            if (!f.contains(p)) { all = false; break; }
        if (all) { meet &= c; any = true; }
    }
    if (!any) return std::nullopt;
    VertexMask t = meet & g->all();
    if (popcount(t) != 1) return std::nullopt;
    return __builtin_ctzll(t);
}

// c(h, x): for each generator v, the type of the image of the v-line
// through x. Must be a graph automorphism; throws with the offending
// direction otherwise.
inline std::vector<VertexId>
type_cocycle(const std::function<NormalForm(const NormalForm&)>& h,
             const NormalForm& x, std::int64_t window = 2) {
    const GraphRef& g = x.graph();
    std::vector<VertexId> perm(g->size(), -1);
    for (VertexId v = 0; v < g->size(); ++v) {
        auto t = image_line_type(h, x, v, window);
        if (!t)
            throw std::domain_error("image of the " + g->name(v) +
                                    "-line spans no line");
        perm[v] = *t;
    }
    std::vector<bool> seen(g->size(), false);
    for (VertexId v = 0; v < g->size(); ++v) {
        if (seen[perm[v]])
            throw std::domain_error("type map is not a bijection");
        seen[perm[v]] = true;
    }
    for (VertexId a = 0; a < g->size(); ++a)
        for (VertexId b = a + 1; b < g->size(); ++b)
            if (g->adjacent(a, b) != g->adjacent(perm[a], perm[b]))
                throw std::domain_error("type map is not a graph automorphism");
    return perm;
}

// ---------------------------------------------------------------------------
// Labeled digraphs and canonical completion.

struct LabeledDigraph {
    std::vector<std::string> vertices;          // ids
    std::vector<std::string> color;             // parallel to vertices
    struct Edge { int from, to; std::string label; };
    std::vector<Edge> edges;

    int vertex(const std::string& id) {
        for (int i = 0; i < (int)vertices.size(); ++i)
            if (vertices[i] == id) return i;
        vertices.push_back(id);
        color.push_back("");
        return (int)vertices.size() - 1;
    }
};

// Per-vertex, per-label (indegree, outdegree) table.
inline std::map<std::pair<int, std::string>, std::pair<int, int>>
degree_table(const LabeledDigraph& d) {
    std::map<std::pair<int, std::string>, std::pair<int, int>> deg;
    for (auto& e : d.edges) {
        deg[{e.from, e.label}].second++;
        deg[{e.to, e.label}].first++;
    }
    return deg;
}

// A complete labeled digraph has exactly one in- and one out-edge per label
// at every vertex: the certificate that it covers the rose on the alphabet.
struct CompletionCertificate {
    bool covers = true;
    int added_edges = 0;
    std::map<int, int> loops_added;  // per vertex
};

inline bool is_complete_cover(const LabeledDigraph& d,
                              const std::vector<std::string>& alphabet) {
    auto deg = degree_table(d);
    for (int v = 0; v < (int)d.vertices.size(); ++v)
        for (auto& a : alphabet) {
            auto it = deg.find({v, a});
            auto [in, out] = it == deg.end() ? std::pair<int, int>{0, 0} : it->second;
            if (in != 1 || out != 1) return false;
        }
    return true;
}

// Canonical completion: per label, the edge set (at most one in and one out
// per vertex required) is a disjoint union of paths and cycles; close each
// maximal path into a cycle, giving isolated vertices loops. Idempotent on
// complete inputs.
inline CompletionCertificate canonical_complete(LabeledDigraph& d,
                                                const std::vector<std::string>& alphabet) {
    CompletionCertificate cert;
    int n = (int)d.vertices.size();
    for (auto& a : alphabet) {
        std::vector<int> succ(n, -1), pred(n, -1);
        for (auto& e : d.edges) {
            if (e.label != a) continue;
            if (succ[e.from] != -1)
                throw std::invalid_argument("two out-edges labeled " + a +
                                            " at vertex " + d.vertices[e.from]);
            if (pred[e.to] != -1)
                throw std::invalid_argument("two in-edges labeled " + a +
                                            " at vertex " + d.vertices[e.to]);
            succ[e.from] = e.to;
            pred[e.to] = e.from;
        }
        for (int v = 0; v < n; ++v) {
            if (pred[v] != -1 || succ[v] == v) continue;
            // v starts a maximal path (possibly of length 0): walk to its end
            int end = v;
            while (succ[end] != -1) end = succ[end];
            d.edges.push_back({end, v, a});
            succ[end] = v;
            pred[v] = end;
            cert.added_edges++;
            if (end == v) cert.loops_added[v]++;
        }
    }
    cert.covers = is_complete_cover(d, alphabet);
    return cert;
}

// Double every non-loop edge with its reverse (same label), the first step
// of the subdivided-tree preset.
inline void add_reversed_edges(LabeledDigraph& d) {
    auto orig = d.edges;
    for (auto& e : orig)
        if (e.from != e.to) d.edges.push_back({e.to, e.from, e.label});
}

// ---------------------------------------------------------------------------
// Subdivided-tree preset: a finite window of the (n,n)-biregular tree with
// white/black sides and edge labels s_1..s_n, barycentrically subdivided
// with gray midpoints; white half-edges are labeled a_i, black half-edges
// a'_i, oriented into the midpoint.

struct TreeWindow {
    // white vertices w0.., black b0..; edges (white, black, i in 1..n)
    std::vector<std::tuple<std::string, std::string, int>> edges;
};

// Depth-limited window of the biregular tree.
inline TreeWindow biregular_tree_window(int n, int depth) {
    TreeWindow t;
    int wc = 0, bc = 0;
    struct Node { std::string id; bool white; int via; };
    std::vector<std::pair<Node, int>> frontier{{{"w0", true, 0}, 0}};
    ++wc;
    for (size_t i = 0; i < frontier.size(); ++i) {
        auto [node, d] = frontier[i];
        if (d >= depth) continue;
        for (int lab = 1; lab <= n; ++lab) {
            if (d > 0 && lab == node.via) continue;  // edge back to the parent
            std::string child =
                node.white ? "b" + std::to_string(bc++) : "w" + std::to_string(wc++);
            if (node.white) t.edges.emplace_back(node.id, child, lab);
            else t.edges.emplace_back(child, node.id, lab);
            frontier.push_back({{child, !node.white, lab}, d + 1});
        }
    }
    return t;
}

inline LabeledDigraph barycentric_label(const TreeWindow& t) {
    LabeledDigraph d;
    int mid = 0;
    for (auto& [w, b, lab] : t.edges) {
        int wi = d.vertex(w), bi = d.vertex(b);
        d.color[wi] = "white";
        d.color[bi] = "black";
        int m = d.vertex("m" + std::to_string(mid++));
        d.color[m] = "gray";
        d.edges.push_back({wi, m, "a" + std::to_string(lab)});
        d.edges.push_back({bi, m, "a'" + std::to_string(lab)});
    }
    return d;
}

struct PresetCompletion {
    LabeledDigraph graph;
    CompletionCertificate certificate;
    std::vector<std::string> alphabet;
};

// Full preset: subdivide, double with reverses, canonically complete over
// the alphabet a_1..a_n, a'_1..a'_n.
inline PresetCompletion complete_subdivided_tree(int n, int depth) {
    PresetCompletion out;
    out.graph = barycentric_label(biregular_tree_window(n, depth));
    add_reversed_edges(out.graph);
    for (int i = 1; i <= n; ++i) out.alphabet.push_back("a" + std::to_string(i));
    for (int i = 1; i <= n; ++i) out.alphabet.push_back("a'" + std::to_string(i));
    out.certificate = canonical_complete(out.graph, out.alphabet);
    return out;
}

}  // namespace raag
