#include "etfq/gf.hpp"

#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

using namespace etfq;

TEST_CASE("field construction") {
    CHECK(FieldCtx::make(3, 1).q() == 3);
    CHECK(FieldCtx::make(19, 1).q() == 19);
    auto f25 = FieldCtx::make(5, 2);
    CHECK(f25.q() == 25);
    CHECK(f25.nu() == 2);  // squares of F_5 are {0,1,4}
    CHECK_THROWS_AS(FieldCtx::make(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(9, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(15, 2), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(7, 3), std::invalid_argument);
}

TEST_CASE("square roots in prime fields") {
    auto f11 = FieldCtx::make(11, 1);
    auto r = f11.sqrt(5);
    REQUIRE(r.has_value());
    CHECK((*r)[0] == 4);
    CHECK((*r)[1] == 7);

    auto f5 = FieldCtx::make(5, 1);
    CHECK(f5.sqrt(0).value() == std::array<felem, 2>{0, 0});
    CHECK(!f5.sqrt(2).has_value());
}

TEST_CASE("sqrt via Tonelli-Shanks for large characteristic") {
    auto f = FieldCtx::make(2147483647, 1);
    for (felem x : {2ull, 123456789ull, 2147483646ull}) {
        felem sq = f.mul(x, x);
        auto r = f.sqrt(sq);
        REQUIRE(r.has_value());
        CHECK(f.mul((*r)[0], (*r)[0]) == sq);
        CHECK((*r)[1] == f.neg((*r)[0]));
    }
    // quadratic extension above the exhaustive cutoff
    auto f2 = FieldCtx::make(331, 2);
    felem t = f2.from_parts(0, 1);
    felem x = f2.add(f2.from_int(17), f2.mul(f2.from_int(5), t));
    auto r = f2.sqrt(f2.mul(x, x));
    REQUIRE(r.has_value());
    CHECK(f2.mul((*r)[0], (*r)[0]) == f2.mul(x, x));
}

TEST_CASE("square roots square back and pair up") {
    for (auto f : {FieldCtx::make(13, 1), FieldCtx::make(7, 2)}) {
        for (felem x = 0; x < f.q(); ++x) {
            auto r = f.sqrt(x);
            if (!r) {
                CHECK(!f.is_square(x));
                continue;
            }
            CHECK(f.mul((*r)[0], (*r)[0]) == x);
            CHECK(f.mul((*r)[1], (*r)[1]) == x);
        }
    }
}

TEST_CASE("nonzero squares form an index-2 subgroup") {
    for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) {
        auto f = FieldCtx::make(p, 1);
        felem nu = f.nonresidue();
        std::size_t squares = 0;
        for (felem x = 1; x < p; ++x) {
            bool sx = f.is_square(x);
            bool snx = f.is_square(f.mul(nu, x));
            CHECK(sx != snx);
            if (sx) ++squares;
        }
        CHECK(squares == (p - 1) / 2);
    }
}

TEST_CASE("product of squares and non-squares") {
    auto f = FieldCtx::make(11, 1);
    for (felem x = 1; x < 11; ++x)
        for (felem y = 1; y < 11; ++y)
            CHECK(f.is_square(f.mul(x, y)) == (f.is_square(x) == f.is_square(y)));
}

TEST_CASE("integer lift") {
    CHECK(FieldCtx::make(3, 1).from_int(7) == 1);
    CHECK(FieldCtx::make(5, 1).from_int(-2) == 3);
    CHECK(FieldCtx::make(7, 1).from_int(14) == 0);
}

TEST_CASE("integer lift is a ring homomorphism") {
    std::mt19937_64 rng(7001);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    for (auto f : {FieldCtx::make(13, 1), FieldCtx::make(3, 2)}) {
        for (int i = 0; i < 200; ++i) {
            long long a = dist(rng), b = dist(rng);
            CHECK(f.from_int(a + b) == f.add(f.from_int(a), f.from_int(b)));
            CHECK(f.from_int(a * b) == f.mul(f.from_int(a), f.from_int(b)));
        }
        CHECK(f.from_int(1) == f.one());
    }
}

TEST_CASE("field arithmetic in the quadratic extension") {
    auto f9 = FieldCtx::make(3, 2);
    felem t = f9.from_parts(0, 1);
    CHECK(f9.mul(t, t) == f9.from_int(2));  // t^2 = nu = 2
    for (felem x = 1; x < f9.q(); ++x) {
        CHECK(f9.mul(x, f9.inv(x)) == f9.one());
        // the prime subfield consists of squares in F_9
        if (f9.in_base_field(x)) CHECK(f9.is_square(x));
    }
    CHECK(!f9.in_base_field(f9.nonresidue()));
}

TEST_CASE("textual element encoding") {
    auto f7 = FieldCtx::make(7, 1);
    CHECK(f7.str(5) == "5");
    CHECK(f7.parse("5") == 5);
    CHECK_THROWS_AS(f7.parse("7"), std::invalid_argument);
    CHECK_THROWS_AS(f7.parse("1+2*t"), std::invalid_argument);

    auto f49 = FieldCtx::make(7, 2);
    CHECK(f49.str(f49.from_parts(3, 2)) == "3+2*t");
    CHECK(f49.str(f49.from_parts(4, 0)) == "4");
    for (felem x = 0; x < f49.q(); ++x) CHECK(f49.parse(f49.str(x)) == x);
    CHECK(f49.parse("0+1*t") == f49.from_parts(0, 1));
    CHECK_THROWS_AS(f49.parse("3+t"), std::invalid_argument);
    CHECK_THROWS_AS(f49.parse(""), std::invalid_argument);
}
