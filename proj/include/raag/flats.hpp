#pragma once

// Standard parabolic cosets g * G_lambda and standard flats (clique type),
// with exact parallelism, parallel-set product structure, and pairwise
// intersection. Cosets are stored by their canonical minimal representative
// so equality is structural.

#include <optional>
#include <stdexcept>
#include <vector>

#include "raag/word.hpp"

namespace raag {

struct StandardCoset {
    NormalForm rep;    // canonical: coset_min_rep of any representative
    VertexMask type;   // lambda

    StandardCoset() = default;
    StandardCoset(const NormalForm& g, VertexMask lambda)
        : rep(coset_min_rep(g, lambda)), type(lambda) {}

    const GraphRef& graph() const { return rep.graph(); }

    bool contains(const NormalForm& x) const {
        return in_parabolic(rep.inverse() * x, type);
    }
    bool operator==(const StandardCoset& o) const {
        return type == o.type && rep == o.rep;
    }
    bool operator!=(const StandardCoset& o) const { return !(*this == o); }

    std::string key() const {
        std::string k = rep.key();
        k.append(reinterpret_cast<const char*>(&type), sizeof type);
        return k;
    }
};

struct StandardCosetHash {
    size_t operator()(const StandardCoset& c) const {
        return std::hash<std::string>{}(c.key());
    }
};

// A standard flat is a standard coset whose type is a clique; its dimension
// is the clique size.
inline StandardCoset make_flat(const NormalForm& g, VertexMask lambda) {
    if (!g.graph()->is_clique(lambda))
        throw std::invalid_argument("flat type must be a clique");
    return StandardCoset(g, lambda);
}

inline int flat_dim(const StandardCoset& f) { return popcount(f.type); }

// Containment in the standard-coset poset: c1 <= c2.
inline bool coset_leq(const StandardCoset& c1, const StandardCoset& c2) {
    if ((c1.type & ~c2.type) != 0) return false;
    return c2.contains(c1.rep);
}

// Type of the normalizer of G_lambda: lambda together with its orthogonal.
inline VertexMask normalizer_type(const SimplicialGraph& g, VertexMask lambda) {
    return lambda | g.orthogonal(lambda);
}

// Flats F1, F2 are parallel iff same type and rep1^{-1} rep2 normalizes
// G_lambda.
inline bool are_parallel(const StandardCoset& f1, const StandardCoset& f2) {
    if (f1.type != f2.type) return false;
    NormalForm d = f1.rep.inverse() * f2.rep;
    return in_parabolic(d, normalizer_type(*f1.graph(), f1.type));
}

// The parallel set of F: rep * G_{lambda + lambda^perp}, carrying the
// product decomposition G_lambda x G_{lambda^perp}.
struct ParallelSet {
    StandardCoset carrier;   // rep * G_{lambda + perp}
    VertexMask flat_type;    // lambda
    VertexMask perp_type;    // lambda^perp
};

inline ParallelSet parallel_set(const StandardCoset& f) {
    VertexMask perp = f.graph()->orthogonal(f.type);
    return {StandardCoset(f.rep, f.type | perp), f.type, perp};
}

// Split d in G_{lambda + perp} into commuting parts (d_lambda, d_perp).
inline std::pair<NormalForm, NormalForm>
split_normalizer_element(const NormalForm& d, VertexMask lambda, VertexMask perp) {
    if (!in_parabolic(d, lambda | perp))
        throw std::invalid_argument("element does not normalize the parabolic");
    std::vector<Syllable> a, b;
    for (auto& s : d.syllables())
        (has(lambda, s.gen) ? a : b).push_back(s);
    return {NormalForm(d.graph(), a), NormalForm(d.graph(), b)};
}

// Parallelism map p: F1 -> F2 between parallel flats, induced by the
// product structure of the common parallel set. x must lie on F1.
inline NormalForm parallelism_map(const StandardCoset& f1, const StandardCoset& f2,
                                  const NormalForm& x) {
    if (!are_parallel(f1, f2))
        throw std::invalid_argument("flats are not parallel");
    if (!f1.contains(x))
        throw std::invalid_argument("point is not on the source flat");
    VertexMask perp = f1.graph()->orthogonal(f1.type);
    NormalForm d = f1.rep.inverse() * f2.rep;
    auto [dl, dp] = split_normalizer_element(d, f1.type, perp);
    (void)dl;
    NormalForm z = f1.rep.inverse() * x;  // coordinate along the flat
    return f1.rep * dp * z;
}

// Intersection of two standard cosets: empty or a standard coset of type
// lambda1 & lambda2, located via a double-coset witness.
inline std::optional<StandardCoset>
coset_intersection(const StandardCoset& c1, const StandardCoset& c2) {
    NormalForm d = c1.rep.inverse() * c2.rep;
    auto w = double_coset_witness(d, c1.type, c2.type);
    if (!w.member) return std::nullopt;
    NormalForm common = c1.rep * w.a_part;  // = c2.rep * b_part^{-1}
    return StandardCoset(common, c1.type & c2.type);
}

// All flats through a point, one per (maximal) clique, in mask order.
inline std::vector<StandardCoset>
flats_through(const NormalForm& g, bool only_maximal = false) {
    std::vector<StandardCoset> out;
    auto types = only_maximal ? g.graph()->maximal_cliques() : g.graph()->cliques();
    for (VertexMask t : types) out.emplace_back(g, t);
    return out;
}

// Distance from a point to a coset (length of the reduced part).
inline std::int64_t point_coset_distance(const NormalForm& x, const StandardCoset& c) {
    return coset_min_rep(x.inverse() * c.rep, c.type).word_length();
}

// Nearest point of the coset to x (the combinatorial gate): c.rep * d where
// d is the maximal left divisor of rep^{-1} x supported in the type.
inline NormalForm coset_gate(const NormalForm& x, const StandardCoset& c) {
    auto [d, r] = peel_left_divisor(c.rep.inverse() * x, c.type);
    (void)r;
    return c.rep * d;
}

}  // namespace raag
