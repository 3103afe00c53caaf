#pragma once

// Star projections, factor actions on line classes, quasi-isometry
// straightening on windows, and orbit analysis of integer action tables.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "raag/blowup.hpp"

namespace raag {

// Coordinate (along the direction line) of the combinatorial gate of x in
// the star region of u: write conj^{-1} x = p * r with p the maximal left
// divisor in G_st(v); the coordinate is the v-exponent of p.
inline std::int64_t star_project(const ExtVertex& u, const NormalForm& x) {
    const SimplicialGraph& g = *u.graph();
    auto [p, r] = peel_left_divisor(u.conj.inverse() * x, g.star(u.type));
    (void)r;
    return p.exponent_sum(u.type);
}

// Projection of a line class w (not in the closed star of u) to u's
// direction line: every point of every representative line must project to
// one coordinate. Verified on sample points of `reps` representative
// parallel lines over a +-window, not assumed.
struct LineProjection {
    std::int64_t coordinate = 0;
    int points_checked = 0;
};

inline LineProjection pi_v(const ExtVertex& u, const ExtVertex& w,
                           int reps = 2, std::int64_t window = 3) {
    if (u == w || ext_adjacent(u, w))
        throw std::invalid_argument("target class lies in the closed star");
    const GraphRef& g = u.graph();
    LineProjection out;
    bool first = true;
    // representative parallel lines: translate the class line by elements
    // of the star of the line's type
    std::vector<NormalForm> shifts{NormalForm::identity(g)};
    for_each_vertex(g->star(w.type), [&](VertexId s) {
        if ((int)shifts.size() < reps)
            shifts.push_back(NormalForm::generator(g, s, 1));
    });
    while ((int)shifts.size() < reps)
        shifts.push_back(NormalForm::generator(g, w.type, (std::int64_t)shifts.size()));
    for (auto& s : shifts) {
        NormalForm base = w.conj * s;
        if (!(ext_vertex(base, w.type) == w))
            continue;  // shift left the class; skip
        for (std::int64_t k = -window; k <= window; ++k) {
            NormalForm x = base * NormalForm::generator(g, w.type, 1).pow(k);
            std::int64_t c = star_project(u, x);
            if (first) { out.coordinate = c; first = false; }
            else if (c != out.coordinate)
                throw std::domain_error("line does not project to a single point");
            out.points_checked++;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Factor actions: an element preserving the line class u acts on the
// leaf space Z_u (cosets of the link parabolic inside the star region),
// coordinatized by the direction line. Tables are extracted from window
// maps and checked for consistency across sample points of each leaf.

struct FactorAction {
    ExtVertex direction;
    std::map<std::int64_t, std::int64_t> table;  // leaf coordinate -> leaf coordinate
};

inline FactorAction
factor_action(const ExtVertex& u,
              const std::vector<std::pair<NormalForm, NormalForm>>& window_map) {
    FactorAction out{u, {}};
    ProductRegion p = product_region(u);
    for (auto& [x, y] : window_map) {
        if (!p.carrier.contains(x)) continue;
        if (!p.carrier.contains(y))
            throw std::domain_error("window map does not preserve the star region");
        auto [kx, hx] = decompose_point(p, x);
        auto [ky, hy] = decompose_point(p, y);
        (void)hx; (void)hy;
        auto [it, fresh] = out.table.emplace(kx, ky);
        if (!fresh && it->second != ky)
            throw std::domain_error("window map is not constant on a leaf");
    }
    return out;
}

// Consistency of a factor action with the star projection: for each line
// class l not in the closed star, acting then projecting agrees with
// projecting then applying the factor table. `h` must act by left
// translation and the moved class is recomputed from the moved line.
struct ConsistencyWitness {
    bool consistent = true;
    ExtVertex line;
    std::int64_t lhs = 0, rhs = 0;
};

inline ConsistencyWitness
consistency_check(const ExtVertex& u, const NormalForm& h,
                  const std::vector<ExtVertex>& lines,
                  int reps = 2, std::int64_t window = 3) {
    // factor table of left translation by h on a coordinate window
    std::vector<std::pair<NormalForm, NormalForm>> wm;
    ProductRegion p = product_region(u);
    for (std::int64_t k = -2 * window - 4; k <= 2 * window + 4; ++k) {
        NormalForm x = p.carrier.rep * NormalForm::generator(u.graph(), u.type, 1).pow(k);
        wm.emplace_back(x, h * x);
    }
    FactorAction act = factor_action(u, wm);
    ConsistencyWitness out;
    for (auto& l : lines) {
        std::int64_t before = pi_v(u, l, reps, window).coordinate;
        ExtVertex moved = conj_action(h, l);
        std::int64_t after = pi_v(u, moved, reps, window).coordinate;
        auto it = act.table.find(before);
        if (it == act.table.end())
            throw std::domain_error("projection coordinate outside the action window");
        if (it->second != after) {
            out.consistent = false;
            out.line = l;
            out.lhs = it->second;
            out.rhs = after;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Straightening a quasi-isometry on a window.
//
// For each interior point x, each maximal flat through x is pushed
// forward to the unique maximal flat within Hausdorff distance D of its
// image; the straightened value is the single common point of the
// pushforwards. Non-unique candidates or an empty intersection are
// reported as failures with the offending flat.

struct StraightenResult {
    bool ok = true;
    std::string failure;
    std::optional<StandardCoset> witness;  // offending flat, when failed
    std::vector<std::pair<NormalForm, NormalForm>> straightened;  // x -> q'(x)
    std::int64_t sup_displacement = 0;     // sup d(q(x), q'(x)) over interior
};

// Default search distance for pushforward candidates: D = L + A + 1.
inline std::int64_t straighten_search_distance(std::int64_t l, std::int64_t a) {
    return l + a + 1;
}

inline StraightenResult
straighten_qi(const std::unordered_map<std::string, NormalForm>& qmap,
              const std::vector<NormalForm>& window, std::int64_t window_radius,
              std::int64_t l_const, std::int64_t a_const,
              std::int64_t search_distance = -1) {
    StraightenResult out;
    if (window.empty()) return out;
    const GraphRef& g = window[0].graph();
    std::int64_t d_search = search_distance >= 0
                                ? search_distance
                                : straighten_search_distance(l_const, a_const);
    std::int64_t interior = window_radius - d_search - 1;
    auto q = [&](const NormalForm& x) -> const NormalForm& {
        auto it = qmap.find(x.key());
        if (it == qmap.end()) throw std::invalid_argument("window map misses a point");
        return it->second;
    };
    auto near_ball = word_ball(g, (int)d_search);

    for (auto& x : window) {
        if (x.word_length() > interior) continue;
        const NormalForm& qx = q(x);
        // candidate maximal flats near q(x), deduped
        std::unordered_set<std::string> cseen;
        std::vector<StandardCoset> cands;
        for (auto& step : near_ball)
            for (auto& c : flats_through(qx * step, /*only_maximal=*/true))
                if (cseen.insert(c.key()).second) cands.push_back(c);
        std::vector<StandardCoset> images;
        bool failed = false;
        for (auto& f : flats_through(x, /*only_maximal=*/true)) {
            // sample of f inside the window: move along each direction
            std::vector<NormalForm> sample;
            for_each_vertex(f.type, [&](VertexId v) {
                for (std::int64_t k = -d_search - 1; k <= d_search + 1; ++k) {
                    NormalForm p = x * NormalForm::generator(g, v, 1).pow(k);
                    if (p.word_length() <= window_radius) sample.push_back(p);
                }
            });
            std::vector<StandardCoset> close;
            for (auto& c : cands) {
                bool all = true;
                for (auto& p : sample)
                    if (point_coset_distance(q(p), c) > d_search) { all = false; break; }
                if (all) close.push_back(c);
            }
            if (close.empty()) {
                out.ok = false;
                out.failure = "no flat within the search distance of the image";
                out.witness = f;
                failed = true;
                break;
            }
            if (close.size() > 1) {
                out.ok = false;
                out.failure = "pushforward flat is not unique";
                out.witness = f;
                failed = true;
                break;
            }
            images.push_back(close[0]);
        }
        if (failed) return out;
        // intersect the pushforwards
        std::optional<StandardCoset> meet;
        for (auto& im : images) {
            if (!meet) { meet = im; continue; }
            auto inter = coset_intersection(*meet, im);
            if (!inter) { meet.reset(); break; }
            meet = *inter;
        }
        if (!meet || flat_dim(*meet) != 0) {
            out.ok = false;
            out.failure = "pushforward flats do not meet in a single point";
            out.witness = StandardCoset(x, 0);
            return out;
        }
        out.straightened.emplace_back(x, meet->rep);
        std::int64_t disp = (q(x).inverse() * meet->rep).word_length();
        out.sup_displacement = std::max(out.sup_displacement, disp);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orbit analysis of integer action tables (partial bijections on a window).

struct OrbitReport {
    std::vector<std::vector<std::int64_t>> orbits;  // sorted members
    std::vector<char> escapes;   // orbit leaves the window under some table
    std::map<std::string, double> mean_displacement;  // per table label
};

inline OrbitReport
orbit_analysis(const std::map<std::string, std::map<std::int64_t, std::int64_t>>& tables,
               std::int64_t lo, std::int64_t hi) {
    OrbitReport rep;
    std::map<std::int64_t, int> orbit_of;
    for (std::int64_t z = lo; z <= hi; ++z) {
        if (orbit_of.count(z)) continue;
        int id = (int)rep.orbits.size();
        rep.orbits.emplace_back();
        rep.escapes.push_back(false);
        std::vector<std::int64_t> stack{z};
        orbit_of[z] = id;
        while (!stack.empty()) {
            std::int64_t c = stack.back();
            stack.pop_back();
            rep.orbits[id].push_back(c);
            for (auto& [label, t] : tables) {
                auto push = [&](std::int64_t n) {
                    if (n < lo || n > hi) { rep.escapes[id] = true; return; }
                    if (!orbit_of.count(n)) {
                        orbit_of[n] = id;
                        stack.push_back(n);
                    }
                };
                auto it = t.find(c);
                if (it != t.end()) push(it->second);
                for (auto& [a, b] : t)
                    if (b == c) push(a);
            }
        }
        std::sort(rep.orbits[id].begin(), rep.orbits[id].end());
    }
    for (auto& [label, t] : tables) {
        double sum = 0;
        int n = 0;
        for (auto& [a, b] : t) { sum += (double)(b - a); ++n; }
        rep.mean_displacement[label] = n ? sum / n : 0.0;
    }
    return rep;
}

}  // namespace raag
