#pragma once

// Orbit-equivalence toy: the binary odometer (add one with carry, least
// significant bit first) against the coordinatewise flip action on N-bit
// windows of {0,1}^infinity, with the transfer cocycle, its algebraic
// identities, cohomologous modifications, and return sets.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace raag {

// A point is the low N bits of a binary sequence; bit k of `bits` is
// coordinate k.
struct BitPoint {
    std::uint32_t bits = 0;
    int n = 0;
};

inline BitPoint make_point(std::uint32_t bits, int n) {
    if (n < 1 || n > 30) throw std::invalid_argument("window size out of range");
    return {bits & ((1u << n) - 1), n};
}

// Flip the coordinates in `support` (the action of a finite-support
// element of the direct sum of Z/2's).
inline BitPoint flip(std::uint32_t support, BitPoint x) {
    if (support >> x.n)
        throw std::invalid_argument("support exceeds the window");
    x.bits ^= support;
    return x;
}

// One odometer step; overflow means the carry leaves the window, so the
// result is only the truncation of the true value.
struct OdometerStep {
    BitPoint value;
    bool overflow = false;
};

inline OdometerStep odometer(BitPoint x) {
    std::uint32_t mask = (1u << x.n) - 1;
    bool overflow = (x.bits == mask);
    x.bits = (x.bits + 1) & mask;
    return {x, overflow};
}

inline OdometerStep odometer_inverse(BitPoint x) {
    std::uint32_t mask = (1u << x.n) - 1;
    bool overflow = (x.bits == 0);  // borrow leaves the window
    x.bits = (x.bits - 1) & mask;
    return {x, overflow};
}

// k-fold odometer with overflow tracking.
inline OdometerStep odometer_pow(BitPoint x, std::int64_t k) {
    OdometerStep s{x, false};
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
        OdometerStep t = k > 0 ? odometer(s.value) : odometer_inverse(s.value);
        s.value = t.value;
        s.overflow = s.overflow || t.overflow;
    }
    return s;
}

// Transfer cocycle: the unique k with odometer^k(x) = flip(s, x), exact
// whenever neither side's carry leaves the window. As integers on the
// window: k = value(flip(s,x)) - value(x), which never overflows for
// in-window supports, so the result is always exact here; the `exact`
// flag reports whether the same k is certified by in-window odometer
// iteration (no carries/borrows escaping).
struct CocycleValue {
    std::int64_t k = 0;
    bool exact = true;
};

inline CocycleValue oe_cocycle(std::uint32_t support, BitPoint x) {
    BitPoint y = flip(support, x);
    CocycleValue out;
    out.k = (std::int64_t)y.bits - (std::int64_t)x.bits;
    out.exact = !odometer_pow(x, out.k).overflow;
    return out;
}

// c(g1 g2, x) = c(g1, g2 x) + c(g2, x), checked over every point of the
// window where all three values are exact.
struct CocycleLawReport {
    bool holds = true;
    long checked = 0, skipped = 0;
    std::optional<BitPoint> witness;
};

inline CocycleLawReport cocycle_law_check(std::uint32_t s1, std::uint32_t s2, int n) {
    CocycleLawReport rep;
    for (std::uint32_t b = 0; b < (1u << n); ++b) {
        BitPoint x = make_point(b, n);
        CocycleValue c2 = oe_cocycle(s2, x);
        CocycleValue c1 = oe_cocycle(s1, flip(s2, x));
        CocycleValue c12 = oe_cocycle(s1 ^ s2, x);
        if (!(c1.exact && c2.exact && c12.exact)) { rep.skipped++; continue; }
        rep.checked++;
        if (c12.k != c1.k + c2.k) {
            rep.holds = false;
            if (!rep.witness) rep.witness = x;
        }
    }
    return rep;
}

// A cohomologous modification c'(g, x) = f(g x) + c(g, x) - f(x).
inline std::int64_t cohomologous(const std::function<std::int64_t(BitPoint)>& f,
                                 std::uint32_t support, BitPoint x) {
    return f(flip(support, x)) + oe_cocycle(support, x).k - f(x);
}

// Return set of x into the window subset Z: all supports s with
// flip(s, x) in Z.
inline std::vector<std::uint32_t>
return_set(BitPoint x, const std::function<bool(BitPoint)>& in_z) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < (1u << x.n); ++s)
        if (in_z(flip(s, x))) out.push_back(s);
    return out;
}

// Sup over the window of |c(s, .)|.
inline std::int64_t linfty_bound(std::uint32_t support, int n) {
    std::int64_t best = 0;
    for (std::uint32_t b = 0; b < (1u << n); ++b) {
        std::int64_t k = oe_cocycle(support, make_point(b, n)).k;
        best = std::max(best, k < 0 ? -k : k);
    }
    return best;
}

}  // namespace raag
