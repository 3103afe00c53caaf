#pragma once

// The cubical poset of standard flats: truncated balls with honest
// truncation bookkeeping, interval cubes, vertex links with their
// join/discrete-class structure, a Gromov-style flag check, product
// splitting over joins, the G x Aut(graph) action, the dictionary between
// flat-preserving point bijections and poset maps, and exact geodesic
// verification in the 1-skeleton.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "raag/extension_graph.hpp"
#include "raag/flats.hpp"

namespace raag {

inline int rank(const StandardCoset& f) { return flat_dim(f); }

// ---------------------------------------------------------------------------
// Neighbor generation in the flats poset (cover relations only).

struct FlatNeighbors {
    std::vector<StandardCoset> ups;     // F < U, codim 1; always complete
    std::vector<StandardCoset> downs;   // D < F, codim 1; complete up to rep bound
    bool truncated = false;             // some down dropped by the rep bound
};

// Down-neighbors removing v from the type are rep * v^k * G_{type - v},
// one per integer k. Any such coset with canonical rep of length <= bound
// has |k| <= |rep| + bound, so the scan window below is complete.
inline FlatNeighbors flat_neighbors(const StandardCoset& f, std::int64_t rep_bound) {
    const SimplicialGraph& g = *f.graph();
    FlatNeighbors out;
    for_each_vertex(g.orthogonal(f.type), [&](VertexId w) {
        out.ups.emplace_back(f.rep, f.type | bit(w));
    });
    std::int64_t span = f.rep.word_length() + rep_bound + 1;
    for_each_vertex(f.type, [&](VertexId v) {
        VertexMask sub = f.type & ~bit(v);
        for (std::int64_t k = -span; k <= span; ++k) {
            StandardCoset d(f.rep * NormalForm::generator(f.graph(), v, 1).pow(k), sub);
            if (d.rep.word_length() <= rep_bound) out.downs.push_back(d);
            else out.truncated = true;
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Truncated balls.

struct BuildingBall {
    GraphRef graph;
    StandardCoset base;
    int radius = 0;
    std::int64_t rep_bound = 0;

    std::vector<StandardCoset> vertices;   // BFS order
    std::vector<int> dist;
    std::vector<char> expanded;            // neighbor list was generated
    std::vector<char> trunc;               // some neighbor dropped by rep bound
    std::vector<std::pair<int, int>> edges;  // cover pairs (lower, upper)

    struct Cube {
        int low, high;
        VertexMask added;   // type(high) - type(low)
        int dim;
    };
    std::vector<Cube> cubes;               // dim >= 2 intervals fully present

    std::unordered_map<std::string, int> index;

    std::optional<int> find(const StandardCoset& f) const {
        auto it = index.find(f.key());
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    bool truncated() const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (!expanded[i] || trunc[i]) return true;
        return false;
    }
};

inline BuildingBall building_ball(const StandardCoset& base, int radius,
                                  std::int64_t rep_bound) {
    if (radius < 0 || rep_bound < 0)
        throw std::invalid_argument("negative truncation parameter");
    if (base.rep.word_length() > rep_bound)
        throw std::invalid_argument("base representative exceeds the rep bound");
    BuildingBall b;
    b.graph = base.graph();
    b.base = base;
    b.radius = radius;
    b.rep_bound = rep_bound;

    auto add = [&](const StandardCoset& f, int d) {
        b.index.emplace(f.key(), (int)b.vertices.size());
        b.vertices.push_back(f);
        b.dist.push_back(d);
        b.expanded.push_back(false);
        b.trunc.push_back(false);
        return (int)b.vertices.size() - 1;
    };
    add(base, 0);
    std::set<std::pair<int, int>> eset;
    for (int i = 0; i < (int)b.vertices.size(); ++i) {
        if (b.dist[i] >= radius) continue;
        FlatNeighbors nb = flat_neighbors(b.vertices[i], rep_bound);
        b.expanded[i] = true;
        b.trunc[i] = nb.truncated;
        for (const StandardCoset& u : nb.ups) {
            auto j = b.find(u);
            int ju = j ? *j : add(u, b.dist[i] + 1);
            eset.emplace(i, ju);
        }
        for (const StandardCoset& d : nb.downs) {
            auto j = b.find(d);
            int jd = j ? *j : add(d, b.dist[i] + 1);
            eset.emplace(jd, i);
        }
    }
    b.edges.assign(eset.begin(), eset.end());

    // cubes: per low vertex, clique extensions with every corner present
    for (int i = 0; i < (int)b.vertices.size(); ++i) {
        const StandardCoset& low = b.vertices[i];
        VertexMask cand = b.graph->orthogonal(low.type);
        std::vector<VertexId> cs = mask_to_vec(cand);
        int m = (int)cs.size();
        for (int s = 1; s < (1 << m); ++s) {
            VertexMask add_mask = 0;
            for (int t = 0; t < m; ++t)
                if (s & (1 << t)) add_mask |= bit(cs[t]);
            if (popcount(add_mask) < 2) continue;
            if (!b.graph->is_clique(low.type | add_mask)) continue;
            bool all_in = true;
            int high_idx = -1;
            for (VertexMask t = add_mask; t; t = (t - 1) & add_mask) {
                auto j = b.find(StandardCoset(low.rep, low.type | t));
                if (!j) { all_in = false; break; }
                if (t == add_mask) high_idx = *j;
            }
            if (all_in)
                b.cubes.push_back({i, high_idx, add_mask, popcount(add_mask)});
        }
    }
    return b;
}

// ---------------------------------------------------------------------------
// Links.
//
// The link of a flat F splits as a join: the finite upper part (one vertex
// per orthogonal extension of the type) and, per generator v of the type,
// an infinite discrete class of codimension-one subflats. Two link
// vertices span a square exactly when they are an up/up pair with adjacent
// added generators or an up/down pair; down/down pairs never do.

struct VertexLink {
    int center = -1;
    std::vector<int> up;                              // ball indices
    std::map<VertexId, std::vector<int>> down_class;  // v -> class members
    bool conclusive = false;   // center expanded and nothing dropped
};

inline VertexLink vertex_link(const BuildingBall& b, int i) {
    VertexLink lk;
    lk.center = i;
    const StandardCoset& f = b.vertices[i];
    for_each_vertex(f.type, [&](VertexId v) { lk.down_class[v]; });
    for (auto& [lo, hi] : b.edges) {
        if (lo == i) lk.up.push_back(hi);
        if (hi == i) {
            const StandardCoset& d = b.vertices[lo];
            VertexId v = __builtin_ctzll(f.type & ~d.type);
            lk.down_class[v].push_back(lo);
        }
    }
    lk.conclusive = b.expanded[i] && !b.trunc[i];
    return lk;
}

// Gromov flag check on the generated complex. For each vertex whose
// neighbor list is complete (expanded, nothing dropped), build the link
// graph by the abstract square rule, then demand that every clique of link
// vertices whose spanned interval lies inside the ball is realized by a
// generated cube. Cliques whose expected corners fall outside the window
// are counted inconclusive, not failed.
struct FlagReport {
    bool ok = true;
    int judged = 0;
    int inconclusive_cliques = 0;
    std::optional<std::pair<int, std::vector<int>>> witness;  // center, clique
};

inline FlagReport check_flag(const BuildingBall& b) {
    FlagReport rep;
    const SimplicialGraph& g = *b.graph;
    for (int i = 0; i < (int)b.vertices.size(); ++i) {
        if (!b.expanded[i] || b.trunc[i]) continue;
        rep.judged++;
        const StandardCoset& f = b.vertices[i];
        VertexLink lk = vertex_link(b, i);
        // link vertices: ups, then downs
        std::vector<int> lv = lk.up;
        std::vector<int> downs;
        for (auto& [v, cls] : lk.down_class)
            for (int d : cls) downs.push_back(d);
        lv.insert(lv.end(), downs.begin(), downs.end());
        int nu = (int)lk.up.size(), nl = (int)lv.size();
        auto link_adj = [&](int a, int c) {
            bool au = a < nu, cu = c < nu;
            if (au && cu) {
                VertexId wa = __builtin_ctzll(b.vertices[lv[a]].type & ~f.type);
                VertexId wc = __builtin_ctzll(b.vertices[lv[c]].type & ~f.type);
                return g.adjacent(wa, wc);
            }
            if (!au && !cu) return false;   // parallel or crossing subflats
            return true;                    // up/down always spans a square
        };
        // enumerate cliques of size >= 2 in the link graph
        std::vector<std::vector<int>> cliques;
        std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& cur,
                                                               int from) {
            if (cur.size() >= 2) cliques.push_back(cur);
            for (int c = from; c < nl; ++c) {
                bool ok = true;
                for (int a : cur)
                    if (!link_adj(a, c)) { ok = false; break; }
                if (!ok) continue;
                cur.push_back(c);
                grow(cur, c + 1);
                cur.pop_back();
            }
        };
        std::vector<int> cur;
        grow(cur, 0);
        for (auto& cl : cliques) {
            // expected interval: meet of downs, join of ups
            NormalForm low_rep = f.rep;
            VertexMask low_type = f.type, high_type = f.type;
            for (int a : cl) {
                const StandardCoset& n = b.vertices[lv[a]];
                if (a < nu) high_type |= n.type;
                else {
                    VertexId v = __builtin_ctzll(f.type & ~n.type);
                    low_type &= ~bit(v);
                    // shift the rep to the subflat's position along v
                    NormalForm rel = f.rep.inverse() * n.rep;
                    low_rep = low_rep *
                              NormalForm::generator(f.graph(), v, rel.exponent_sum(v));
                }
            }
            high_type |= low_type;
            VertexMask added = high_type & ~low_type;
            StandardCoset low(low_rep, low_type);
            auto li = b.find(low);
            bool corners_in = li.has_value();
            for (VertexMask t = added; t && corners_in; t = (t - 1) & added)
                if (!b.find(StandardCoset(low.rep, low.type | t))) corners_in = false;
            if (!corners_in) { rep.inconclusive_cliques++; continue; }
            bool found = false;
            for (auto& cb : b.cubes)
                if (cb.low == *li && cb.added == added) { found = true; break; }
            if (!found) {
                rep.ok = false;
                if (!rep.witness) rep.witness = std::make_pair(i, cl);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Products over join decompositions.

// Split a group element along a join factorization of its support.
inline std::pair<NormalForm, NormalForm> split_element(const NormalForm& w,
                                                       VertexMask part1) {
    std::vector<Syllable> a, c;
    for (auto& s : w.syllables()) (has(part1, s.gen) ? a : c).push_back(s);
    return {NormalForm(w.graph(), a), NormalForm(w.graph(), c)};
}

struct ProductSplit {
    bool consistent = true;
    // factor data, one entry per ball vertex, as flats of the ambient group
    std::vector<std::pair<StandardCoset, StandardCoset>> factors;
    std::string failure;
};

// Verify that a ball over a join graph factors: each flat splits
// componentwise, the split map is injective, and cover relations hold
// componentwise (one side moves, the other stays).
inline ProductSplit product_split(const BuildingBall& b, VertexMask part1) {
    const SimplicialGraph& g = *b.graph;
    VertexMask part2 = g.all() & ~part1;
    ProductSplit out;
    for_each_vertex(part1, [&](VertexId v) {
        if ((g.link(v) & part2) != part2) out.consistent = false;
    });
    if (!out.consistent) { out.failure = "not a join along the given split"; return out; }
    std::unordered_set<std::string> seen;
    for (auto& f : b.vertices) {
        auto [g1, g2] = split_element(f.rep, part1);
        StandardCoset f1(g1, f.type & part1), f2(g2, f.type & part2);
        out.factors.emplace_back(f1, f2);
        std::string k = f1.key() + "|" + f2.key();
        if (!seen.insert(k).second) {
            out.consistent = false;
            out.failure = "factor map not injective";
            return out;
        }
    }
    for (auto& [lo, hi] : b.edges) {
        auto& [a1, a2] = out.factors[lo];
        auto& [c1, c2] = out.factors[hi];
        bool move1 = !(a1 == c1), move2 = !(a2 == c2);
        if (move1 == move2 ||
            (move1 && !coset_leq(a1, c1)) || (move2 && !coset_leq(a2, c2))) {
            out.consistent = false;
            out.failure = "edge does not factor";
            return out;
        }
    }
    return out;
}

// All flats with representative length <= bound (a rep-length window of the
// whole poset; finite, no radius truncation). Used for exact product-law
// comparisons over joins.
inline std::vector<StandardCoset> flat_window(const GraphRef& g, int rep_bound) {
    std::vector<StandardCoset> out;
    std::unordered_set<std::string> seen;
    for (auto& w : word_ball(g, rep_bound))
        for (auto& f : flats_through(w))
            if (f.rep.word_length() <= rep_bound && seen.insert(f.key()).second)
                out.push_back(f);
    return out;
}

// ---------------------------------------------------------------------------
// The action of G x Aut(graph) on flats.

struct HatElement {
    NormalForm g;                 // left translation
    std::vector<VertexId> theta;  // graph automorphism, theta[v] = image
};

inline NormalForm apply_graph_auto(const std::vector<VertexId>& theta,
                                   const NormalForm& w) {
    std::vector<Syllable> out;
    for (auto& s : w.syllables()) out.push_back({theta.at(s.gen), s.exp});
    return NormalForm(w.graph(), out);
}

inline VertexMask apply_graph_auto(const std::vector<VertexId>& theta, VertexMask m) {
    VertexMask out = 0;
    for_each_vertex(m, [&](VertexId v) { out |= bit(theta.at(v)); });
    return out;
}

inline StandardCoset hat_action(const HatElement& h, const StandardCoset& f) {
    return StandardCoset(h.g * apply_graph_auto(h.theta, f.rep),
                         apply_graph_auto(h.theta, f.type));
}

// ---------------------------------------------------------------------------
// Flat-preserving point bijections <-> poset maps, on finite windows.

struct FlatMapEntry {
    StandardCoset source, image;
    int evidence = 0;        // window points that witnessed the image
    bool dim_match = false;  // image dimension equals source dimension
};

struct FlatPreservingCheck {
    bool flat_preserving = true;
    std::vector<FlatMapEntry> entries;
    std::optional<StandardCoset> witness;  // flat whose image spans no flat
};

// Minimal standard flat containing a finite nonempty set of points.
inline std::optional<StandardCoset>
minimal_flat_containing(const std::vector<NormalForm>& pts) {
    if (pts.empty()) return std::nullopt;
    const GraphRef& g = pts[0].graph();
    VertexMask meet = ~VertexMask{0};
    bool any = false;
    for (VertexMask c : g->cliques()) {
        StandardCoset f(pts[0], c);
        bool all = true;
        for (auto& p : pts)
            if (!f.contains(p)) { all = false; break; }
        if (all) { meet &= c; any = true; }
    }
    if (!any) return std::nullopt;
    return StandardCoset(pts[0], meet & g->all());
}

// Induce a poset map from a window bijection on points: for each flat of
// the ball met by the window, the image is the minimal flat containing the
// image points. Fails (with witness) when image points span no flat.
inline FlatPreservingCheck
fp_to_auto(const std::vector<std::pair<NormalForm, NormalForm>>& window_map,
           const BuildingBall& b) {
    FlatPreservingCheck out;
    for (auto& f : b.vertices) {
        std::vector<NormalForm> images;
        int ev = 0;
        for (auto& [x, y] : window_map)
            if (f.contains(x)) { images.push_back(y); ++ev; }
        if (ev == 0) continue;
        auto m = minimal_flat_containing(images);
        if (!m) {
            out.flat_preserving = false;
            out.witness = f;
            continue;
        }
        out.entries.push_back({f, *m, ev, flat_dim(*m) == flat_dim(f)});
    }
    return out;
}

// Restrict a poset map (given on rank-0 flats) back to a point map.
inline std::vector<std::pair<NormalForm, NormalForm>>
auto_to_fp(const std::vector<std::pair<StandardCoset, StandardCoset>>& flat_map) {
    std::vector<std::pair<NormalForm, NormalForm>> out;
    for (auto& [f, im] : flat_map) {
        if (flat_dim(f) != 0) continue;
        if (flat_dim(im) != 0)
            throw std::invalid_argument("rank-0 flat mapped to positive rank");
        out.emplace_back(f.rep, im.rep);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Geodesics from loops in the complement.

// For an immersed cycle a_1, ..., a_n in the complement (consecutive
// vertices distinct and non-adjacent, cyclically), the alternating path
// {1}, <a_1>, {a_1}, a_1<a_2>, ..., {a_1...a_n} of length 2n.
inline std::vector<StandardCoset>
complement_loop_path(const GraphRef& g, const std::vector<VertexId>& loop) {
    int n = (int)loop.size();
    if (n < 2) throw std::invalid_argument("loop needs at least two vertices");
    for (int i = 0; i < n; ++i) {
        VertexId a = loop[i], c = loop[(i + 1) % n];
        if (a == c || g->adjacent(a, c))
            throw std::invalid_argument("loop is not immersed in the complement");
    }
    std::vector<StandardCoset> path;
    NormalForm pref = NormalForm::identity(g);
    path.emplace_back(pref, VertexMask{0});
    for (int i = 0; i < n; ++i) {
        path.emplace_back(pref, bit(loop[i]));
        pref = pref * NormalForm::generator(g, loop[i]);
        path.emplace_back(pref, VertexMask{0});
    }
    return path;
}

// Exact distance check in the 1-skeleton by bidirectional BFS. Down-moves
// scan exponents in [-exp_window, exp_window]; the check is re-run with an
// enlarged window and reported conclusive only when stable.
struct GeodesicCheck {
    bool valid_path = false;   // consecutive cover relations
    bool is_geodesic = false;
    std::int64_t path_length = 0;
    std::int64_t distance = -1;
    bool conclusive = false;
};

namespace detail {

inline std::vector<StandardCoset> skeleton_neighbors(const StandardCoset& f,
                                                     std::int64_t exp_window) {
    const SimplicialGraph& g = *f.graph();
    std::vector<StandardCoset> out;
    for_each_vertex(g.orthogonal(f.type), [&](VertexId w) {
        out.emplace_back(f.rep, f.type | bit(w));
    });
    for_each_vertex(f.type, [&](VertexId v) {
        for (std::int64_t k = -exp_window; k <= exp_window; ++k)
            out.emplace_back(f.rep * NormalForm::generator(f.graph(), v, 1).pow(k),
                             f.type & ~bit(v));
    });
    return out;
}

inline std::int64_t skeleton_distance(const StandardCoset& s, const StandardCoset& t,
                                      std::int64_t cap, std::int64_t exp_window) {
    if (s == t) return 0;
    std::unordered_map<std::string, std::int64_t> ds{{s.key(), 0}}, dt{{t.key(), 0}};
    std::vector<StandardCoset> fs{s}, ft{t};
    std::int64_t depth_s = 0, depth_t = 0, best = -1;
    auto expand = [&](std::vector<StandardCoset>& frontier,
                      std::unordered_map<std::string, std::int64_t>& mine,
                      std::unordered_map<std::string, std::int64_t>& other,
                      std::int64_t& depth) {
        std::vector<StandardCoset> next;
        for (auto& f : frontier)
            for (auto& nb : skeleton_neighbors(f, exp_window)) {
                auto k = nb.key();
                if (mine.count(k)) continue;
                mine.emplace(k, depth + 1);
                auto it = other.find(k);
                if (it != other.end()) {
                    std::int64_t total = depth + 1 + it->second;
                    if (best < 0 || total < best) best = total;
                }
                next.push_back(nb);
            }
        frontier = std::move(next);
        ++depth;
    };
    while (true) {
        if (best >= 0 && best <= depth_s + depth_t + 1) return best;
        if (depth_s + depth_t >= cap) return best;  // -1: beyond cap
        if (fs.empty() && ft.empty()) return best;
        if (fs.size() <= ft.size() && !fs.empty()) expand(fs, ds, dt, depth_s);
        else if (!ft.empty()) expand(ft, dt, ds, depth_t);
        else expand(fs, ds, dt, depth_s);
    }
}

}  // namespace detail

inline bool cover_edge(const StandardCoset& a, const StandardCoset& c) {
    int da = flat_dim(a), dc = flat_dim(c);
    if (da + 1 == dc) return coset_leq(a, c);
    if (dc + 1 == da) return coset_leq(c, a);
    return false;
}

inline GeodesicCheck verify_geodesic(const std::vector<StandardCoset>& path,
                                     std::int64_t exp_window = 0) {
    GeodesicCheck out;
    if (path.size() < 2) throw std::invalid_argument("path needs two vertices");
    out.path_length = (std::int64_t)path.size() - 1;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        if (!cover_edge(path[i], path[i + 1])) return out;
    out.valid_path = true;
    if (exp_window <= 0) exp_window = out.path_length + 2;
    std::int64_t d1 = detail::skeleton_distance(path.front(), path.back(),
                                                out.path_length, exp_window);
    std::int64_t d2 = detail::skeleton_distance(path.front(), path.back(),
                                                out.path_length, exp_window + 2);
    out.distance = d1;
    out.is_geodesic = (d1 < 0 || d1 >= out.path_length);
    if (out.is_geodesic) out.distance = out.path_length;  // realized by the path
    out.conclusive = (d1 == d2) || (d1 < 0 && d2 < 0);
    return out;
}

}  // namespace raag
