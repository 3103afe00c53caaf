#include <catch2/catch_amalgamated.hpp>

#include "raag/coupling.hpp"

using namespace raag;

TEST_CASE("points, flips and the odometer") {
    CHECK_THROWS(make_point(0, 0));
    CHECK_THROWS(make_point(0, 31));
    BitPoint x = make_point(0b1011, 4);
    CHECK(x.bits == 0b1011);
    CHECK(flip(0b0110, x).bits == 0b1101);
    CHECK_THROWS(flip(0b10000, x));

    auto s = odometer(make_point(0b0111, 4));
    CHECK(s.value.bits == 0b1000);
    CHECK(!s.overflow);
    auto top = odometer(make_point(0b1111, 4));
    CHECK(top.value.bits == 0);
    CHECK(top.overflow);
    auto back = odometer_inverse(make_point(0, 4));
    CHECK(back.value.bits == 0b1111);
    CHECK(back.overflow);

    // inverse undoes a step, powers add up
    for (std::uint32_t b = 0; b < 16; ++b) {
        BitPoint p = make_point(b, 4);
        CHECK(odometer_inverse(odometer(p).value).value.bits == b);
        CHECK(odometer_pow(p, 5).value.bits ==
              odometer_pow(odometer_pow(p, 2).value, 3).value.bits);
    }
    CHECK(odometer_pow(make_point(3, 4), 0).value.bits == 3);
}

TEST_CASE("the transfer cocycle satisfies its defining equation") {
    int n = 4;
    for (std::uint32_t b = 0; b < (1u << n); ++b)
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
            BitPoint x = make_point(b, n);
            CocycleValue c = oe_cocycle(s, x);
            CHECK(odometer_pow(x, c.k).value.bits == flip(s, x).bits);
            // within a window the difference of values never wraps
            CHECK(c.exact);
        }
    // pinned values: flipping the top bit jumps by the bit's weight
    CHECK(oe_cocycle(0b1000, make_point(0, 4)).k == 8);
    CHECK(oe_cocycle(0b1000, make_point(0b1000, 4)).k == -8);
    CHECK(oe_cocycle(0b0001, make_point(0, 4)).k == 1);
    CHECK(oe_cocycle(0, make_point(9, 4)).k == 0);
}

TEST_CASE("cocycle law over the window") {
    for (int n : {3, 5}) {
        for (std::uint32_t s1 : {1u, 5u, 7u})
            for (std::uint32_t s2 : {2u, 3u, 6u}) {
                auto rep = cocycle_law_check(s1, s2, n);
                CHECK(rep.holds);
                CHECK(rep.checked == (1 << n));
                CHECK(rep.skipped == 0);
                CHECK(!rep.witness.has_value());
            }
    }
}

TEST_CASE("cohomologous modifications still satisfy the law") {
    int n = 4;
    auto f = [](BitPoint p) { return (std::int64_t)(p.bits % 3); };
    for (std::uint32_t s1 : {1u, 6u})
        for (std::uint32_t s2 : {3u, 12u})
            for (std::uint32_t b = 0; b < (1u << n); ++b) {
                BitPoint x = make_point(b, n);
                std::int64_t lhs = cohomologous(f, s1 ^ s2, x);
                std::int64_t rhs =
                    cohomologous(f, s1, flip(s2, x)) + cohomologous(f, s2, x);
                CHECK(lhs == rhs);
            }
    // the trivial modification returns the original cocycle
    auto zero = [](BitPoint) { return (std::int64_t)0; };
    CHECK(cohomologous(zero, 0b101, make_point(2, 4)) ==
          oe_cocycle(0b101, make_point(2, 4)).k);
}

TEST_CASE("return sets") {
    int n = 4;
    BitPoint x = make_point(0b0101, n);
    // Z = points with even value (lowest bit clear)
    auto rs = return_set(x, [](BitPoint p) { return (p.bits & 1) == 0; });
    CHECK(rs.size() == 8);  // half of all supports
    for (auto s : rs) CHECK((s & 1) == 1);  // must flip the set low bit
    // Z = everything
    CHECK(return_set(x, [](BitPoint) { return true; }).size() == 16);
    // Z = exactly x itself: only the identity returns
    auto self = return_set(x, [&](BitPoint p) { return p.bits == x.bits; });
    REQUIRE(self.size() == 1);
    CHECK(self[0] == 0);
}

TEST_CASE("sup norm of generator cocycles") {
    int n = 5;
    for (int k = 0; k < n; ++k) {
        CHECK(linfty_bound(1u << k, n) == (1 << k));
        CHECK(linfty_bound(1u << k, n) <= (1 << (k + 1)));
    }
    // a two-bit support can jump by the sum of the weights
    CHECK(linfty_bound(0b101, 5) == 5);
}
