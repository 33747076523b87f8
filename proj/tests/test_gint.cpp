#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "d4kit/gint.hpp"

#include <random>

using d4::GaussianInt;
using d4::Int;

TEST_CASE("arithmetic basics") {
    GaussianInt a(3, -2), b(-1, 5);
    CHECK((a + b) == GaussianInt(2, 3));
    CHECK((a - b) == GaussianInt(4, -7));
    CHECK((a * b) == GaussianInt(7, 17));  // (3-2i)(-1+5i) = -3+15i+2i+10 = 7+17i
    CHECK(-a == GaussianInt(-3, 2));
    CHECK(a.conj() == GaussianInt(3, 2));
    CHECK(a.norm() == 13);
    CHECK(GaussianInt(0, 0).is_zero());
    CHECK_FALSE(a.is_zero());
}

TEST_CASE("string forms") {
    CHECK(GaussianInt(0, 0).str() == "0");
    CHECK(GaussianInt(5, 0).str() == "5");
    CHECK(GaussianInt(0, 1).str() == "i");
    CHECK(GaussianInt(0, -1).str() == "-i");
    CHECK(GaussianInt(0, 3).str() == "3i");
    CHECK(GaussianInt(2, 1).str() == "2+i");
    CHECK(GaussianInt(2, -7).str() == "2-7i");
    CHECK(GaussianInt(-1, -1).str() == "-1-i");
}

TEST_CASE("exact division") {
    GaussianInt a(7, 17), b(-1, 5);
    auto q = d4::gi_div_exact(a, b);
    REQUIRE(q.has_value());
    CHECK(*q == GaussianInt(3, -2));
    CHECK_FALSE(d4::gi_div_exact(GaussianInt(1, 0), GaussianInt(2, 0)).has_value());
    CHECK_THROWS_AS(d4::gi_div_exact(GaussianInt(5, 3), GaussianInt(0, 0)), d4::D4Error);
}

TEST_CASE("canonical representatives") {
    CHECK(d4::gi_is_canonical(GaussianInt(0, 0)));
    CHECK(d4::gi_is_canonical(GaussianInt(3, -5)));
    CHECK(d4::gi_is_canonical(GaussianInt(0, 2)));
    CHECK_FALSE(d4::gi_is_canonical(GaussianInt(-3, 5)));
    CHECK_FALSE(d4::gi_is_canonical(GaussianInt(0, -2)));
}

TEST_CASE("gi_sqrt on fixed values") {
    // (3+2i)^2 = 5+12i
    auto r = d4::gi_sqrt(GaussianInt(5, 12));
    REQUIRE(r.has_value());
    CHECK((*r) * (*r) == GaussianInt(5, 12));
    CHECK(d4::gi_is_canonical(*r));

    // 2i = (1+i)^2
    r = d4::gi_sqrt(GaussianInt(0, 2));
    REQUIRE(r.has_value());
    CHECK((*r) * (*r) == GaussianInt(0, 2));

    // -4 = (2i)^2
    r = d4::gi_sqrt(GaussianInt(-4, 0));
    REQUIRE(r.has_value());
    CHECK(*r == GaussianInt(0, 2));

    CHECK(d4::gi_sqrt(GaussianInt(0, 0)).has_value());
    CHECK_FALSE(d4::gi_sqrt(GaussianInt(2, 0)).has_value());
    CHECK_FALSE(d4::gi_sqrt(GaussianInt(1, 1)).has_value());

    // (2+i)^2 = 3+4i
    r = d4::gi_sqrt(GaussianInt(3, 4));
    REQUIRE(r.has_value());
    CHECK((*r) * (*r) == GaussianInt(3, 4));
}

TEST_CASE("gi_sqrt randomized round trip") {
    std::mt19937 rng(20260826);
    std::uniform_int_distribution<int> coeff(-1000, 1000);
    for (int k = 0; k < 500; ++k) {
        GaussianInt w(coeff(rng), coeff(rng));
        auto r = d4::gi_sqrt(w * w);
        REQUIRE(r.has_value());
        CHECK((*r) * (*r) == w * w);
        CHECK(d4::gi_is_canonical(*r));
    }
}

TEST_CASE("isqrt_exact") {
    CHECK(d4::isqrt_exact(Int(0)) == Int(0));
    CHECK(d4::isqrt_exact(Int(144)) == Int(12));
    CHECK_FALSE(d4::isqrt_exact(Int(145)).has_value());
    CHECK_FALSE(d4::isqrt_exact(Int(-4)).has_value());
    Int big = Int("123456789123456789");
    CHECK(d4::isqrt_exact(big * big) == big);
}
