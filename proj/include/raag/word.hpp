#pragma once

// Exact word arithmetic in graph products of infinite cyclic groups.
//
// Elements are kept in a canonical normal form: a reduced syllable sequence
// (no free cancellation, no merge of equal-generator syllables across
// commuting separators) shuffled to the lexicographically least word under
// the ambient graph's vertex order. Equality is string equality of
// canonical forms.
//
// Exponents are checked 64-bit integers: overflow throws instead of
// wrapping. That comfortably covers desk scale.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "raag/graph.hpp"

namespace raag {

using GraphRef = std::shared_ptr<const SimplicialGraph>;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("syllable exponent overflow");
    return r;
}

struct Syllable {
    VertexId gen;
    std::int64_t exp;
    bool operator==(const Syllable&) const = default;
};

namespace detail {

// Push one syllable onto an already-reduced word, merging through commuting
// separators. A merge to zero deletes the target and re-pushes the suffix,
// which may cascade.
inline void push_syllable(std::vector<Syllable>& w, Syllable s,
                          const SimplicialGraph& g) {
    if (s.exp == 0) return;
    for (int j = (int)w.size() - 1; j >= 0; --j) {
        if (w[j].gen == s.gen) {
            std::int64_t e = checked_add(w[j].exp, s.exp);
            if (e != 0) {
                w[j].exp = e;
            } else {
                std::vector<Syllable> suffix(w.begin() + j + 1, w.end());
                w.erase(w.begin() + j, w.end());
                for (auto& t : suffix) push_syllable(w, t, g);
            }
            return;
        }
        if (!g.adjacent(w[j].gen, s.gen)) break;
    }
    w.push_back(s);
}

inline std::vector<Syllable> reduce(const std::vector<Syllable>& raw,
                                    const SimplicialGraph& g) {
    std::vector<Syllable> w;
    w.reserve(raw.size());
    for (auto& s : raw) push_syllable(w, s, g);
    return w;
}

// Lexicographically least shuffle of a reduced word: repeatedly emit the
// least-generator syllable movable to the front.
inline std::vector<Syllable> lex_shuffle(std::vector<Syllable> w,
                                         const SimplicialGraph& g) {
    std::vector<Syllable> out;
    out.reserve(w.size());
    while (!w.empty()) {
        int best = -1;
        VertexMask seen = 0;
        for (int i = 0; i < (int)w.size(); ++i) {
            if ((seen & ~g.link(w[i].gen)) == 0)
                if (best < 0 || w[i].gen < w[best].gen) best = i;
            seen |= bit(w[i].gen);
        }
        out.push_back(w[best]);
        w.erase(w.begin() + best);
    }
    return out;
}

}  // namespace detail

class NormalForm {
public:
    NormalForm() = default;

    // Normalizes an arbitrary syllable sequence.
    NormalForm(GraphRef graph, const std::vector<Syllable>& raw)
        : graph_(std::move(graph)) {
        if (!graph_) throw std::invalid_argument("null ambient graph");
        for (auto& s : raw)
            if (s.gen < 0 || s.gen >= graph_->size())
                throw std::invalid_argument("generator outside ambient graph");
        syls_ = detail::lex_shuffle(detail::reduce(raw, *graph_), *graph_);
    }

    static NormalForm identity(GraphRef graph) { return NormalForm(std::move(graph), {}); }

    static NormalForm generator(GraphRef graph, VertexId v, std::int64_t e = 1) {
        return NormalForm(std::move(graph), {Syllable{v, e}});
    }

    const GraphRef& graph() const { return graph_; }
    const std::vector<Syllable>& syllables() const { return syls_; }
    bool is_identity() const { return syls_.empty(); }

    std::int64_t word_length() const {
        std::int64_t n = 0;
        for (auto& s : syls_) n = checked_add(n, s.exp < 0 ? -s.exp : s.exp);
        return n;
    }
    int syllable_length() const { return (int)syls_.size(); }

    VertexMask support() const {
        VertexMask m = 0;
        for (auto& s : syls_) m |= bit(s.gen);
        return m;
    }

    bool operator==(const NormalForm& o) const {
        return syls_ == o.syls_ && compatible(o);
    }
    bool operator!=(const NormalForm& o) const { return !(*this == o); }

    NormalForm operator*(const NormalForm& o) const {
        require_same_ambient(o);
        std::vector<Syllable> w = syls_;
        for (auto& s : o.syls_) detail::push_syllable(w, s, *graph_);
        return from_reduced(graph_, std::move(w));
    }

    NormalForm inverse() const {
        std::vector<Syllable> w(syls_.rbegin(), syls_.rend());
        for (auto& s : w) {
            if (s.exp == std::numeric_limits<std::int64_t>::min())
                throw std::overflow_error("syllable exponent overflow");
            s.exp = -s.exp;
        }
        return from_reduced(graph_, std::move(w));  // reversal of reduced is reduced
    }

    NormalForm pow(std::int64_t k) const {
        NormalForm base = k < 0 ? inverse() : *this;
        std::int64_t n = k < 0 ? -k : k;
        NormalForm acc = identity(graph_);
        for (std::int64_t i = 0; i < n; ++i) acc = acc * base;
        return acc;
    }

    // Total exponent of v (well defined on the abelianization).
    std::int64_t exponent_sum(VertexId v) const {
        std::int64_t n = 0;
        for (auto& s : syls_)
            if (s.gen == v) n = checked_add(n, s.exp);
        return n;
    }

    std::string str() const {
        if (syls_.empty()) return "1";
        std::ostringstream os;
        for (size_t i = 0; i < syls_.size(); ++i) {
            if (i) os << ' ';
            os << graph_->name(syls_[i].gen);
            if (syls_[i].exp != 1) os << '^' << syls_[i].exp;
        }
        return os.str();
    }

    // Hashable key (generator/exponent stream).
    std::string key() const {
        std::string k;
        for (auto& s : syls_) {
            k.append(reinterpret_cast<const char*>(&s.gen), sizeof s.gen);
            k.append(reinterpret_cast<const char*>(&s.exp), sizeof s.exp);
        }
        return k;
    }

    void require_same_ambient(const NormalForm& o) const {
        if (!compatible(o))
            throw std::invalid_argument("ambient graph mismatch");
    }

    // Trusted constructor: `w` must already be reduced.
    static NormalForm from_reduced(GraphRef graph, std::vector<Syllable> w) {
        NormalForm nf;
        nf.graph_ = std::move(graph);
        nf.syls_ = detail::lex_shuffle(std::move(w), *nf.graph_);
        return nf;
    }

private:
    bool compatible(const NormalForm& o) const {
        if (graph_ == o.graph_) return true;
        if (!graph_ || !o.graph_) return false;
        return *graph_ == *o.graph_;
    }

    GraphRef graph_;
    std::vector<Syllable> syls_;
};

struct NormalFormHash {
    size_t operator()(const NormalForm& w) const {
        return std::hash<std::string>{}(w.key());
    }
};

// Parse "a b^2 c^-1" style words by vertex name.
inline NormalForm parse_word(const GraphRef& g, const std::string& text) {
    std::vector<Syllable> syls;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "1" || tok == "e") continue;
        auto caret = tok.find('^');
        std::string name = tok.substr(0, caret);
        std::int64_t e = 1;
        if (caret != std::string::npos) e = std::stoll(tok.substr(caret + 1));
        syls.push_back({g->id(name), e});
    }
    return NormalForm(g, syls);
}

// g is in the standard parabolic G_M iff its support lies in M.
inline bool in_parabolic(const NormalForm& w, VertexMask m) {
    return (w.support() & ~m) == 0;
}

// Minimal-length representative of the left coset w * G_lambda, canonical
// under the lex rule: strip final syllables supported in lambda to a
// fixpoint (the maximal right divisor in G_lambda), re-normalizing as
// deletions cascade.
inline NormalForm coset_min_rep(const NormalForm& w, VertexMask lambda) {
    std::vector<Syllable> cur = w.syllables();
    const SimplicialGraph& g = *w.graph();
    bool changed = true;
    while (changed) {
        changed = false;
        VertexMask blocked = 0;
        for (int i = (int)cur.size() - 1; i >= 0; --i) {
            bool final_syl = (blocked & ~g.link(cur[i].gen)) == 0;
            if (final_syl && has(lambda, cur[i].gen)) {
                cur.erase(cur.begin() + i);
                cur = detail::reduce(cur, g);
                changed = true;
                break;
            }
            blocked |= bit(cur[i].gen);
        }
    }
    return NormalForm::from_reduced(w.graph(), std::move(cur));
}

// Maximal left divisor of w supported in `a`, and the remainder: w = d * r
// with d in G_a and no initial syllable of r in a.
inline std::pair<NormalForm, NormalForm>
peel_left_divisor(const NormalForm& w, VertexMask a) {
    const SimplicialGraph& g = *w.graph();
    std::vector<Syllable> cur = w.syllables();
    std::vector<Syllable> div;
    bool changed = true;
    while (changed) {
        changed = false;
        VertexMask blocked = 0;
        for (int i = 0; i < (int)cur.size(); ++i) {
            bool initial = (blocked & ~g.link(cur[i].gen)) == 0;
            if (initial && has(a, cur[i].gen)) {
                div.push_back(cur[i]);
                cur.erase(cur.begin() + i);
                cur = detail::reduce(cur, g);
                changed = true;
                break;
            }
            blocked |= bit(cur[i].gen);
        }
    }
    return {NormalForm(w.graph(), div), NormalForm::from_reduced(w.graph(), std::move(cur))};
}

// Membership in the double coset G_a * w-free ... : decides g in G_a G_b by
// peeling the maximal left divisor in a and right divisor in b to a
// fixpoint. On success also returns a witness g = a_part * b_part.
struct DoubleCosetWitness {
    bool member = false;
    NormalForm a_part, b_part;
};

inline DoubleCosetWitness double_coset_witness(const NormalForm& g,
                                               VertexMask a, VertexMask b) {
    // invariant: g = a_part * rem * b_part
    NormalForm apart = NormalForm::identity(g.graph());
    NormalForm bpart = NormalForm::identity(g.graph());
    NormalForm rem = g;
    while (true) {
        auto [la, r1] = peel_left_divisor(rem, a);
        apart = apart * la;
        auto [rb_inv, core_inv] = peel_left_divisor(r1.inverse(), b);
        bpart = rb_inv.inverse() * bpart;
        rem = core_inv.inverse();
        if (la.is_identity() && rb_inv.is_identity()) break;
    }
    DoubleCosetWitness out;
    out.member = rem.is_identity();
    out.a_part = apart;
    out.b_part = bpart;
    return out;
}

inline bool double_coset_member(const NormalForm& g, VertexMask a, VertexMask b) {
    return double_coset_witness(g, a, b).member;
}

// Ball of radius r in the word metric, BFS over canonical forms, sorted by
// (length, key) for determinism.
inline std::vector<NormalForm> word_ball(const GraphRef& g, int radius) {
    std::vector<NormalForm> out{NormalForm::identity(g)};
    std::unordered_set<std::string> seen{out[0].key()};
    size_t lo = 0;
    for (int d = 0; d < radius; ++d) {
        size_t hi = out.size();
        for (size_t i = lo; i < hi; ++i) {
            for (VertexId v = 0; v < g->size(); ++v)
                for (int sgn : {1, -1}) {
                    NormalForm w = out[i] * NormalForm::generator(g, v, sgn);
                    if (seen.insert(w.key()).second) out.push_back(w);
                }
        }
        lo = hi;
    }
    return out;
}

}  // namespace raag
