#pragma once

// Blow-up data and window assembly of the blown-up complex.
//
// A blow-up datum assigns to each parallelism class of standard lines a
// table: a surjection (onto an integer interval, with bounded fibers) from
// line coordinates to core coordinates. The branched line of a class is
// its core interval with one tip per line point, attached at the table
// value; branched flats are products of branched lines, and the assembled
// complex carries the collapse projection back to the flats poset.

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "raag/building.hpp"

namespace raag {

struct LineTable {
    std::map<std::int64_t, std::int64_t> g;  // line coordinate -> core coordinate
    std::int64_t fiber_bound = 0;
};

struct BranchedLine {
    LineTable table;
    std::int64_t core_min = 0, core_max = 0;
};

// Validates a window table: nonempty, surjective onto its core interval,
// fibers within the bound.
inline BranchedLine make_branched_line(const LineTable& t) {
    if (t.g.empty()) throw std::invalid_argument("empty line table");
    if (t.fiber_bound < 1) throw std::invalid_argument("fiber bound must be positive");
    std::map<std::int64_t, std::int64_t> fiber;
    std::int64_t lo = t.g.begin()->second, hi = lo;
    for (auto& [k, n] : t.g) {
        lo = std::min(lo, n);
        hi = std::max(hi, n);
        if (++fiber[n] > t.fiber_bound)
            throw std::invalid_argument("fiber exceeds bound at core coordinate " +
                                        std::to_string(n));
    }
    for (std::int64_t n = lo; n <= hi; ++n)
        if (!fiber.count(n))
            throw std::invalid_argument("table misses core coordinate " +
                                        std::to_string(n) + ": not surjective");
    return {t, lo, hi};
}

// Coordinate of a point on a line flat: x = F.rep * v^k.
inline std::int64_t line_coordinate(const StandardCoset& line, const NormalForm& x) {
    if (popcount(line.type) != 1)
        throw std::invalid_argument("not a line flat");
    if (!line.contains(x))
        throw std::invalid_argument("point not on the line");
    VertexId v = __builtin_ctzll(line.type);
    return (line.rep.inverse() * x).exponent_sum(v);
}

// The canonical line of a parallelism class (the class is named by an
// extension-graph vertex).
inline StandardCoset class_line(const ExtVertex& u) {
    return StandardCoset(u.conj, bit(u.type));
}

// Coordinate shift between a line and its class's canonical line under the
// parallelism map: parallelism sends F.rep * v^k to ref.rep * v^(k - shift)
// ... i.e. the class coordinate of F's origin.
inline std::int64_t line_shift(const StandardCoset& line) {
    VertexId v = __builtin_ctzll(line.type);
    StandardCoset ref = class_line(ext_vertex(line.rep, v));
    NormalForm y = parallelism_map(line, ref, line.rep);
    return line_coordinate(ref, y);
}

// A datum: per defining-graph vertex a base table (used, shifted into
// class coordinates, for every class of that type), plus optional
// per-class overrides. Tables are read in the canonical line's coordinate.
struct BlowupDatum {
    GraphRef graph;
    std::map<VertexId, LineTable> base;
    std::unordered_map<std::string, LineTable> overrides;  // ExtVertex key -> table

    const LineTable& table_for_class(const ExtVertex& u) const {
        auto it = overrides.find(u.key());
        if (it != overrides.end()) return it->second;
        auto jt = base.find(u.type);
        if (jt == base.end())
            throw std::invalid_argument("datum has no table for type " +
                                        graph->name(u.type));
        return jt->second;
    }

    // Evaluate the class table at a coordinate of a concrete line.
    std::optional<std::int64_t> eval(const StandardCoset& line, std::int64_t k) const {
        VertexId v = __builtin_ctzll(line.type);
        ExtVertex cls = ext_vertex(line.rep, v);
        const LineTable& t = table_for_class(cls);
        auto it = t.g.find(k + line_shift(line));
        if (it == t.g.end()) return std::nullopt;
        return it->second;
    }
};

// Identity datum on a coordinate window.
inline BlowupDatum identity_datum(const GraphRef& g, std::int64_t window) {
    BlowupDatum d;
    d.graph = g;
    LineTable t;
    t.fiber_bound = 1;
    for (std::int64_t k = -window; k <= window; ++k) t.g[k] = k;
    for (VertexId v = 0; v < g->size(); ++v) d.base[v] = t;
    return d;
}

// ---------------------------------------------------------------------------
// Assembly.
//
// A vertex of the assembled complex is a point of the core of some
// branched flat: the flat plus one core coordinate per direction of its
// type. Rank-0 vertices are the group points themselves (every coordinate
// a tip). Edges are core steps (one coordinate moves by 1) and tip
// attachments (a codimension-one subflat, sitting as a tip of the extra
// direction, joined to its attachment core point).

struct BlowupVertex {
    StandardCoset flat;
    std::map<VertexId, std::int64_t> coords;  // per direction of flat.type

    std::string key() const {
        std::string s = flat.key();
        for (auto& [v, n] : coords) {
            s.append(reinterpret_cast<const char*>(&v), sizeof v);
            s.append(reinterpret_cast<const char*>(&n), sizeof n);
        }
        return s;
    }
};

struct BlowupComplex {
    GraphRef graph;
    BlowupDatum datum;
    std::vector<BlowupVertex> vertices;
    std::vector<std::pair<int, int>> edges;
    std::unordered_map<std::string, int> index;        // vertex key -> id
    std::unordered_map<std::string, int> point_index;  // group point key -> rank-0 id

    std::optional<int> find_point(const NormalForm& x) const {
        auto it = point_index.find(x.key());
        if (it == point_index.end()) return std::nullopt;
        return it->second;
    }
    // the collapse projection to the flats poset
    const StandardCoset& project(int id) const { return vertices[id].flat; }
};

inline BlowupComplex assemble(const BlowupDatum& datum,
                              const std::vector<NormalForm>& window) {
    BlowupComplex y;
    y.graph = datum.graph;
    y.datum = datum;
    if (window.empty()) return y;

    // flats in scope: all flats through window points, deduped
    std::vector<StandardCoset> flats;
    std::unordered_set<std::string> fseen;
    for (auto& x : window)
        for (auto& f : flats_through(x))
            if (fseen.insert(f.key()).second) flats.push_back(f);

    auto add_vertex = [&](const BlowupVertex& v) {
        auto it = y.index.find(v.key());
        if (it != y.index.end()) return it->second;
        y.index.emplace(v.key(), (int)y.vertices.size());
        y.vertices.push_back(v);
        return (int)y.vertices.size() - 1;
    };
    std::set<std::pair<int, int>> eset;
    auto add_edge = [&](int a, int b) {
        if (a != b) eset.emplace(std::min(a, b), std::max(a, b));
    };

    // rank-0 vertices
    for (auto& x : window) {
        int id = add_vertex({StandardCoset(x, 0), {}});
        y.point_index.emplace(x.key(), id);
    }

    // core vertices and edges per flat, by increasing dimension
    std::sort(flats.begin(), flats.end(), [](auto& a, auto& b) {
        return std::make_pair(flat_dim(a), a.key()) <
               std::make_pair(flat_dim(b), b.key());
    });
    for (auto& f : flats) {
        int d = flat_dim(f);
        if (d == 0) continue;
        // per-direction core windows
        std::vector<VertexId> dirs = mask_to_vec(f.type);
        std::vector<std::vector<std::int64_t>> cores;
        for (VertexId v : dirs) {
            ExtVertex cls = ext_vertex(f.rep, v);
            BranchedLine bl = make_branched_line(datum.table_for_class(cls));
            std::vector<std::int64_t> core;
            for (std::int64_t n = bl.core_min; n <= bl.core_max; ++n) core.push_back(n);
            cores.push_back(core);
        }
        // enumerate coordinate tuples
        std::vector<size_t> idx(dirs.size(), 0);
        std::vector<int> ids;
        std::vector<std::map<VertexId, std::int64_t>> tuples;
        while (true) {
            std::map<VertexId, std::int64_t> c;
            for (size_t i = 0; i < dirs.size(); ++i) c[dirs[i]] = cores[i][idx[i]];
            tuples.push_back(c);
            ids.push_back(add_vertex({f, c}));
            size_t i = 0;
            while (i < dirs.size() && ++idx[i] == cores[i].size()) idx[i++] = 0;
            if (i == dirs.size()) break;
        }
        // core edges: coordinates differing by 1 in one direction
        for (size_t a = 0; a < tuples.size(); ++a)
            for (size_t i = 0; i < dirs.size(); ++i) {
                auto c = tuples[a];
                c[dirs[i]]++;
                BlowupVertex nb{f, c};
                auto it = y.index.find(nb.key());
                if (it != y.index.end()) add_edge(ids[a], it->second);
            }
        // tip edges to codimension-one subflats in scope
        for (VertexId v : dirs) {
            VertexMask sub = f.type & ~bit(v);
            ExtVertex cls = ext_vertex(f.rep, v);
            const LineTable& t = datum.table_for_class(cls);
            StandardCoset vline(f.rep, bit(v));
            std::int64_t shift = line_shift(vline);
            for (auto& [kc, n] : t.g) {
                std::int64_t k = kc - shift;  // concrete line coordinate
                StandardCoset fsub(f.rep * NormalForm::generator(y.graph, v, 1).pow(k),
                                   sub);
                if (popcount(sub) == 0) {
                    auto pid = y.find_point(fsub.rep);
                    if (!pid) continue;
                    std::map<VertexId, std::int64_t> c{{v, n}};
                    auto it = y.index.find(BlowupVertex{f, c}.key());
                    if (it != y.index.end()) add_edge(*pid, it->second);
                } else {
                    if (!fseen.count(fsub.key())) continue;
                    // every core point of the subflat attaches
                    std::vector<VertexId> sdirs = mask_to_vec(sub);
                    for (auto& tup : tuples) {
                        if (tup.at(v) != t.g.begin()->second) continue;  // once per tuple slice
                        std::map<VertexId, std::int64_t> csub, cfull;
                        for (VertexId w : sdirs) csub[w] = tup.at(w);
                        cfull = csub;
                        cfull[v] = n;
                        auto is_ = y.index.find(BlowupVertex{fsub, csub}.key());
                        auto if_ = y.index.find(BlowupVertex{f, cfull}.key());
                        if (is_ != y.index.end() && if_ != y.index.end())
                            add_edge(is_->second, if_->second);
                    }
                }
            }
        }
    }
    y.edges.assign(eset.begin(), eset.end());
    return y;
}

// ---------------------------------------------------------------------------
// Metric comparison.

struct DistortionReport {
    double multiplicative = 1.0;  // max two-sided ratio over sampled pairs
    std::int64_t additive = 0;    // max |d_Y - d_G| over sampled pairs
    int pairs = 0;
    bool disconnected = false;    // some sampled pair not joined in the window
};

inline std::vector<std::int64_t> blowup_distances_from(const BlowupComplex& y, int src) {
    std::vector<std::int64_t> d(y.vertices.size(), -1);
    std::vector<std::vector<int>> adj(y.vertices.size());
    for (auto& [a, b] : y.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> q{src};
    d[src] = 0;
    for (size_t i = 0; i < q.size(); ++i)
        for (int nb : adj[q[i]])
            if (d[nb] < 0) {
                d[nb] = d[q[i]] + 1;
                q.push_back(nb);
            }
    return d;
}

// Compare blown-up distance with word distance over window point pairs with
// word distance >= min_separation (the multiplicative constant is only
// meaningful past the additive tip hops, so small separations are skipped
// for the ratio; they still feed the additive gap).
inline DistortionReport distortion(const BlowupComplex& y,
                                   const std::vector<NormalForm>& points,
                                   std::int64_t min_separation = 1) {
    DistortionReport rep;
    for (size_t i = 0; i < points.size(); ++i) {
        auto src = y.find_point(points[i]);
        if (!src) throw std::invalid_argument("sample point missing from the complex");
        auto dist = blowup_distances_from(y, *src);
        for (size_t j = i + 1; j < points.size(); ++j) {
            auto dst = y.find_point(points[j]);
            if (!dst) throw std::invalid_argument("sample point missing from the complex");
            std::int64_t dy = dist[*dst];
            if (dy < 0) { rep.disconnected = true; continue; }
            std::int64_t dg = (points[i].inverse() * points[j]).word_length();
            rep.additive = std::max(rep.additive, std::abs(dy - dg));
            if (dg < min_separation || dg == 0) continue;
            rep.pairs++;
            double r = std::max((double)dy / (double)dg, (double)dg / (double)dy);
            rep.multiplicative = std::max(rep.multiplicative, r);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Compatibility with a group action (window check).
//
// A "move" is a pair (element, source line): the element carries the source
// line to its image line, and the datum is compatible with the move when
// the induced map tips -> tips extends to an isometry of branched lines:
// the induced core map must be well defined on fibers, a +-1 isometry on
// consecutive core points, and fiber sizes must match.

struct CompatibilityWitness {
    bool compatible = true;
    std::string reason;
    std::int64_t where = 0;  // offending coordinate
};

inline CompatibilityWitness
check_move_compatibility(const BlowupDatum& datum, const NormalForm& h,
                         const StandardCoset& line) {
    CompatibilityWitness w;
    VertexId v = __builtin_ctzll(line.type);
    StandardCoset image(h * line.rep, line.type);
    std::map<std::int64_t, std::int64_t> core_map;  // induced on cores
    std::map<std::int64_t, std::int64_t> src_fiber, dst_fiber;
    ExtVertex src_cls = ext_vertex(line.rep, v), dst_cls = ext_vertex(image.rep, v);
    const LineTable& ts = datum.table_for_class(src_cls);
    const LineTable& td = datum.table_for_class(dst_cls);
    for (auto& [n, c] : td.g) dst_fiber[c]++;
    std::int64_t s_src = line_shift(line), s_dst = line_shift(image);
    for (auto& [kc, n] : ts.g) {
        std::int64_t k = kc - s_src;  // concrete source coordinate
        NormalForm x = line.rep * NormalForm::generator(line.graph(), v, 1).pow(k);
        std::int64_t k_img = line_coordinate(image, h * x);
        auto it = td.g.find(k_img + s_dst);
        if (it == td.g.end()) continue;  // image tip outside the window
        src_fiber[n]++;
        auto [pos, fresh] = core_map.emplace(n, it->second);
        if (!fresh && pos->second != it->second) {
            w.compatible = false;
            w.reason = "induced core map not constant on a fiber";
            w.where = n;
            return w;
        }
    }
    // isometry on consecutive core points seen in the window
    std::optional<std::int64_t> step;
    for (auto it = core_map.begin(); it != core_map.end(); ++it) {
        auto nx = std::next(it);
        if (nx == core_map.end()) break;
        if (nx->first != it->first + 1) continue;
        std::int64_t d = nx->second - it->second;
        if (d != 1 && d != -1) {
            w.compatible = false;
            w.reason = "induced core map is not a unit step";
            w.where = it->first;
            return w;
        }
        if (step && *step != d) {
            w.compatible = false;
            w.reason = "induced core map changes direction";
            w.where = it->first;
            return w;
        }
        step = d;
    }
    // fibers touching a window boundary are truncated, hence not judged
    std::int64_t src_lo = ts.g.begin()->first, src_hi = ts.g.rbegin()->first;
    std::int64_t dst_lo = td.g.begin()->first, dst_hi = td.g.rbegin()->first;
    for (auto& [n, m] : core_map) {
        bool interior = true;
        std::int64_t full_src = 0, full_dst = 0;
        for (auto& [kc, c] : ts.g)
            if (c == n) {
                full_src++;
                if (kc == src_lo || kc == src_hi) interior = false;
            }
        for (auto& [kc, c] : td.g)
            if (c == m) {
                full_dst++;
                if (kc == dst_lo || kc == dst_hi) interior = false;
            }
        if (interior && src_fiber[n] == full_src && full_src != full_dst) {
            w.compatible = false;
            w.reason = "fiber sizes differ across the move";
            w.where = n;
            return w;
        }
    }
    return w;
}

inline CompatibilityWitness
check_compatibility(const BlowupDatum& datum,
                    const std::vector<std::pair<NormalForm, StandardCoset>>& moves) {
    for (auto& [h, line] : moves) {
        auto w = check_move_compatibility(datum, h, line);
        if (!w.compatible) return w;
    }
    return {};
}

// Transport reference tables across classes: for each (class, carrier) the
// class's table is the reference table read through the carrier, making
// the carrier an isometry of branched lines by construction. Equivariance
// of the supplied reference data is verified, not assumed: each carrier
// must map the reference line of the class's type to a line of that class.
inline BlowupDatum
datum_from_actions(const GraphRef& graph, std::map<VertexId, LineTable> reference,
                   const std::vector<std::pair<ExtVertex, NormalForm>>& carriers) {
    BlowupDatum d;
    d.graph = graph;
    for (auto& [v, t] : reference) make_branched_line(t);  // validate
    d.base = std::move(reference);
    for (auto& [cls, h] : carriers) {
        StandardCoset ref = class_line(ExtVertex{cls.type, NormalForm::identity(graph)});
        StandardCoset image(h * ref.rep, ref.type);
        if (!(ext_vertex(image.rep, cls.type) == cls))
            throw std::invalid_argument("carrier does not reach the claimed class");
        const LineTable& t0 = d.base.at(cls.type);
        LineTable t;
        t.fiber_bound = t0.fiber_bound;
        std::int64_t s_dst = line_shift(image);
        for (auto& [k0, n] : t0.g) {
            NormalForm x = ref.rep * NormalForm::generator(graph, cls.type, 1).pow(k0);
            std::int64_t k_img = line_coordinate(image, h * x);
            t.g[k_img + s_dst] = n;
        }
        make_branched_line(t);  // windowed image must still be a valid table
        d.overrides.emplace(cls.key(), std::move(t));
    }
    return d;
}

}  // namespace raag
