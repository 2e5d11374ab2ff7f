#include "etfq/frames.hpp"

#include "etfq/constructions.hpp"
#include "etfq/graphs.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

using namespace etfq;
using testutil::mat;

namespace {

IntMat petersen_signature() { return seidel_matrix(triangular_complement(5)); }

// signature matrix of the real 3 x 6 ETF spanned by the icosahedron's six
// diagonals: the Seidel matrix of the pentagon, bordered by ones
IntMat icosahedral_signature() {
    Graph pentagon(5);
    for (std::size_t i = 0; i < 5; ++i) pentagon.add_edge(i, (i + 1) % 5);
    IntMat inner = seidel_matrix(pentagon);
    IntMat s(6, 6);
    for (std::size_t j = 1; j < 6; ++j) {
        s.set(0, j, 1);
        s.set(j, 0, 1);
    }
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) s.set(i + 1, j + 1, inner.at(i, j));
    return s;
}

}  // namespace

TEST_CASE("verify trivial gram matrices") {
    auto f7 = FieldCtx::make(7, 1);
    auto id = verify_etf(MatGF::identity(f7, 5));
    REQUIRE(id.has_value());
    CHECK(id->params.a == 1);
    CHECK(id->params.b == 0);
    CHECK(id->params.c == 1);
    CHECK(id->params.d == 5);

    auto ones = verify_etf(MatGF::all_ones(f7, 6, 6));
    REQUIRE(ones.has_value());
    CHECK(ones->params.a == 1);
    CHECK(ones->params.b == 1);
    CHECK(ones->params.c == 6);
    CHECK(ones->params.d == 1);

    auto st = steiner_modular(7, 3);
    CHECK(st.params.a == 0);
    CHECK(st.params.b == 1);
    CHECK(st.params.c == 2);
    CHECK(st.params.d == 21);
    CHECK(st.params.n == 49);

    CHECK(!verify_etf(mat(f7, {{1, 2}, {2, 1}})).has_value());  // (G12)^2 = 4, not tight
    CHECK_THROWS_AS(verify_etf(MatGF(f7, 2, 3)), std::invalid_argument);
}

TEST_CASE("welch residual") {
    auto f3 = FieldCtx::make(3, 1);
    CHECK(welch_residual({f3, f3.from_int(3), 1, f3.from_int(12), 12, 55}) == 0);
    CHECK(welch_residual({f3, 1, 0, 1, 7, 7}) == 0);
    auto f5 = FieldCtx::make(5, 1);
    CHECK(welch_residual({f5, 2, 1, 4, 45, 100}) == 0);
    CHECK(welch_residual({f5, 2, 1, 3, 3, 6}) != 0);
}

TEST_CASE("gerzon bound classification") {
    CHECK(gerzon_check(5, 15) == GerzonStatus::at_bound);
    CHECK(gerzon_check(5, 16) == GerzonStatus::violation);
    CHECK(gerzon_check(4, 10) == GerzonStatus::at_bound);
    CHECK(gerzon_check(10, 54) == GerzonStatus::within);
}

TEST_CASE("naimark complements") {
    auto f7 = FieldCtx::make(7, 1);
    auto ones = verify_etf(MatGF::all_ones(f7, 5, 5)).value();
    auto comp = naimark(ones);
    CHECK(comp.params.a == 4);
    CHECK(comp.params.b == 1);
    CHECK(comp.params.c == 5);
    CHECK(comp.params.d == 4);

    auto f3 = FieldCtx::make(3, 1);
    auto ones5 = verify_etf(MatGF::all_ones(f3, 5, 5)).value();
    auto comp5 = naimark(ones5);  // 2I - J over F_3
    CHECK(comp5.params.a == 1);
    CHECK(comp5.params.b == 1);
    CHECK(comp5.params.c == 2);
    CHECK(comp5.params.d == 4);

    // involution with rank additivity
    auto back = naimark(comp5);
    CHECK(back.gram == ones5.gram);
    CHECK(comp5.params.d + ones5.params.d == ones5.params.n);

    auto zero_tight = project_real_signature(petersen_signature(), 5, 3, 1);
    CHECK(zero_tight.params.c == 0);
    CHECK_THROWS_AS(naimark(zero_tight), std::domain_error);
}

TEST_CASE("rescaling") {
    auto f3 = FieldCtx::make(3, 1);
    auto ones = verify_etf(MatGF::all_ones(f3, 4, 4)).value();
    auto neg = rescale(ones, f3.neg(1));
    CHECK(neg.params.a == 2);
    CHECK(neg.params.b == 1);
    CHECK(neg.params.c == f3.neg(ones.params.c));

    auto f5 = FieldCtx::make(5, 1);
    auto tri = triangular_gerzon(12, 5);  // (3,1,2) over F_5
    CHECK(tri.params.a == 3);
    CHECK(tri.params.c == 2);
    auto flipped = rescale(tri, f5.neg(1));
    CHECK(flipped.params.a == 2);
    CHECK(flipped.params.b == 1);
    CHECK(flipped.params.c == 3);
    CHECK(flipped.params.d == 12);
    CHECK(normalized_params(tri.params) == std::pair<felem, felem>{2, 3});

    CHECK(rescale(tri.gram, 1) == tri.gram);
    CHECK_THROWS_AS(rescale(tri.gram, 0), std::domain_error);

    // composition: rescale by alpha then beta = rescale by alpha*beta
    auto ab = rescale(rescale(tri, 2), 4);
    CHECK(ab.gram == rescale(tri, f5.mul(2, 4)).gram);
}

TEST_CASE("switching normalization") {
    auto certs = bordered_etfs(paley(9), 3);
    REQUIRE(certs.size() == 1);
    CHECK(normalize_switching(certs[0].gram) == certs[0].gram);

    // flipping signs of some vectors is undone by normalization
    const MatGF& g = certs[0].gram;
    const FieldCtx& f = g.field();
    std::size_t n = g.rows();
    std::vector<felem> signs(n, 1);
    signs[2] = f.neg(1);
    signs[7] = f.neg(1);
    MatGF flipped(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            flipped.set(i, j, f.mul(signs[i], f.mul(g.at(i, j), signs[j])));
    auto back = normalize_switching(flipped);
    CHECK(back == g);
    auto cert = verify_etf(flipped).value();
    CHECK(cert.params.a == certs[0].params.a);
    CHECK(cert.params.c == certs[0].params.c);
    CHECK(cert.params.d == certs[0].params.d);
}

TEST_CASE("projecting real signature matrices") {
    IntMat s = petersen_signature();

    auto p3 = project_real_signature(s, 5, 3, 1);
    CHECK(p3.params.a == 0);
    CHECK(p3.params.b == 1);
    CHECK(p3.params.c == 0);
    CHECK(p3.params.d == 4);
    CHECK(p3.params.n >= 2 * p3.params.d);  // 0-tight needs n >= 2d

    auto p7 = project_real_signature(s, 5, 7, 1);
    CHECK(p7.params.a == 3);
    CHECK(p7.params.c == 6);
    CHECK(p7.params.d == 5);

    auto ico = project_real_signature(icosahedral_signature(), 3, 11, 1, felem{4});
    CHECK(ico.params.a == 4);
    CHECK(ico.params.c == 8);
    CHECK(ico.params.d == 3);

    // wrong claimed dimension is rejected
    CHECK_THROWS_AS(project_real_signature(s, 4, 3, 1), std::invalid_argument);
    // n = 2d needs a square root of n-1: 5 is a non-square mod 13
    CHECK_THROWS_AS(project_real_signature(icosahedral_signature(), 3, 13, 1),
                    std::domain_error);
    // not a signature matrix
    IntMat bad = petersen_signature();
    bad.set(0, 1, 2);
    bad.set(1, 0, 2);
    CHECK_THROWS_AS(project_real_signature(bad, 5, 3, 1), std::invalid_argument);
}

TEST_CASE("base field descent") {
    // entries already in the prime field: descend from F_9 to F_3
    auto over9 = project_real_signature(petersen_signature(), 5, 3, 2);
    CHECK(over9.params.field.degree() == 2);
    auto desc = descend_base_field(over9);
    CHECK(desc.j == 1);
    CHECK(desc.cert.params.field.degree() == 1);
    CHECK(desc.cert.params.a == 0);
    CHECK(desc.cert.params.c == 0);
    CHECK(desc.cert.params.d == 4);

    // c = 0 always descends
    CHECK(desc.cert.params.c == 0);

    // n = 2d with delta outside F_13: no descent below F_169
    auto ico169 = project_real_signature(icosahedral_signature(), 3, 13, 2);
    CHECK(!ico169.params.field.in_base_field(ico169.params.a));
    auto stay = descend_base_field(ico169);
    CHECK(stay.j == 2);
    CHECK(stay.cert.params.field.degree() == 2);
}

TEST_CASE("integrality test") {
    CHECK(integrality_test(5, 15, 11) == IntegralityResult::fail);  // 7 nonsquare
    CHECK(integrality_test(5, 15, 19) == IntegralityResult::pass);  // 7 = 8^2
    CHECK(integrality_test(5, 15, 5) == IntegralityResult::inapplicable);
    CHECK(integrality_test(5, 15, 7) == IntegralityResult::inapplicable);  // n = 1 mod 7
    CHECK(integrality_test(5, 15, 3) == IntegralityResult::pass);
    CHECK_THROWS_AS(integrality_test(5, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(integrality_test(5, 10, 3), std::invalid_argument);
}

TEST_CASE("admissible norms") {
    CHECK(admissible_norms(3, 5, 15) == std::vector<felem>{1, 2});
    CHECK(admissible_norms(7, 5, 15) == std::vector<felem>{0});
    CHECK(admissible_norms(19, 5, 15) == std::vector<felem>{8, 11});
    CHECK(admissible_norms(5, 5, 15) == std::vector<felem>{0, 1, 2, 3, 4});
    CHECK(admissible_norms(11, 3, 6) == std::vector<felem>{4, 7});
}

TEST_CASE("candidate primes") {
    auto c = candidate_primes(5, 15, false);
    CHECK(!c.unbounded);
    CHECK(c.primes == std::vector<std::uint64_t>{3, 5, 7, 19});
    CHECK(candidate_primes(5, 15, true).unbounded);
    auto small = candidate_primes(2, 4, false);
    CHECK(!small.unbounded);
    CHECK(small.primes == std::vector<std::uint64_t>{3});
}

TEST_CASE("certificate invariants across emitted certificates") {
    std::mt19937_64 rng(321);
    std::vector<EtfCertificate> certs;
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        auto f = FieldCtx::make(p, 1);
        certs.push_back(verify_etf(MatGF::identity(f, 6)).value());
        certs.push_back(verify_etf(MatGF::all_ones(f, 7, 7)).value());
        certs.push_back(steiner_modular(4, p));
    }
    certs.push_back(triangular_gerzon(10, 3));
    certs.push_back(steiner_modular(7, 3));
    for (auto& c : bordered_etfs(triangular(9), 3)) certs.push_back(c);

    for (const auto& cert : certs) {
        const FieldCtx& f = cert.params.field;
        CHECK(welch_residual(cert.params) == 0);
        CHECK(f.mul(f.from_int((long long)cert.params.n), cert.params.a) ==
              f.mul(f.from_int((long long)cert.params.d), cert.params.c));
        felem a2 = f.mul(cert.params.a, cert.params.a);
        if (a2 != cert.params.b)
            CHECK(gerzon_check(cert.params.d, cert.params.n) != GerzonStatus::violation);
        if (cert.params.c == 0) CHECK(cert.params.n >= 2 * cert.params.d);
        auto fact = gram_factor(cert.gram);
        CHECK(fact.vectors.transpose() * fact.geometry * fact.vectors == cert.gram);
        CHECK(rank(fact.vectors) == cert.params.d);
    }

    // verification is invariant under simultaneous permutation
    const auto& cert = certs.back();
    std::size_t n = cert.params.n;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    MatGF shuffled(cert.params.field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            shuffled.set(i, j, cert.gram.at(perm[i], perm[j]));
    auto again = verify_etf(shuffled).value();
    CHECK(again.params.a == cert.params.a);
    CHECK(again.params.b == cert.params.b);
    CHECK(again.params.c == cert.params.c);
    CHECK(again.params.d == cert.params.d);
}
