#include <catch2/catch_amalgamated.hpp>

#include "kch/laurent.hpp"
#include "kch/rng.hpp"

using kch::LaurentPoly;

TEST_CASE("monomial product adds exponents") {
    // (l m^3) * (l^-1) = m^3
    const LaurentPoly a = LaurentPoly::monomial(1, 1, 3);
    const LaurentPoly b = LaurentPoly::monomial(1, -1, 0);
    CHECK(a * b == LaurentPoly::monomial(1, 0, 3));
}

TEST_CASE("additive inverse cancels to the empty term map") {
    const LaurentPoly a = LaurentPoly(1) - LaurentPoly::mu();
    const LaurentPoly b = LaurentPoly::mu() - LaurentPoly(1);
    const LaurentPoly sum = a + b;
    CHECK(sum.is_zero());
    CHECK(sum.term_count() == 0);
}

TEST_CASE("binomial expansion") {
    const LaurentPoly one_minus_mu = LaurentPoly(1) - LaurentPoly::mu();
    const LaurentPoly sq = one_minus_mu * one_minus_mu;
    LaurentPoly expected = LaurentPoly(1) - LaurentPoly::monomial(2, 0, 1) +
                           LaurentPoly::monomial(1, 0, 2);
    CHECK(sq == expected);
    CHECK(sq.str() == "1 - 2*m + m^2");
}

TEST_CASE("ring laws on random small polynomials") {
    kch::Rng rng(20240901);
    auto random_poly = [&rng]() {
        LaurentPoly p;
        const int terms = 1 + static_cast<int>(rng.next_below(4));
        for (int t = 0; t < terms; ++t) {
            long c = static_cast<long>(rng.next_below(11)) - 5;
            p += LaurentPoly::monomial(c, static_cast<long>(rng.next_below(5)) - 2,
                                       static_cast<long>(rng.next_below(5)) - 2);
        }
        return p;
    };
    for (int t = 0; t < 200; ++t) {
        const LaurentPoly a = random_poly(), b = random_poly(), c = random_poly();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("exact rational evaluation") {
    // l m^3 at l = -1/8, m = 2 evaluates to -1
    const LaurentPoly p = LaurentPoly::monomial(1, 1, 3);
    CHECK(p.eval_exact(mpq_class(-1, 8), mpq_class(2)) == mpq_class(-1));
    // negative exponents invert exactly
    const LaurentPoly q = LaurentPoly::monomial(3, -2, -1);
    CHECK(q.eval_exact(mpq_class(2), mpq_class(3)) == mpq_class(1, 4));
}

TEST_CASE("complex evaluation matches exact evaluation") {
    const LaurentPoly p = LaurentPoly::monomial(2, 1, -2) - LaurentPoly::monomial(7, 0, 1) +
                          LaurentPoly(3);
    const mpq_class ql(5, 2), qm(-3, 4);
    const kch::Cplx cv = p.eval(kch::Cplx(2.5, 0.0), kch::Cplx(-0.75, 0.0));
    CHECK(std::abs(cv.real() - p.eval_exact(ql, qm).get_d()) < 1e-12);
    CHECK(std::abs(cv.imag()) < 1e-12);
}

TEST_CASE("candidate normalization") {
    using kch::normalize_candidate;
    // 2 l^2 m^-1 - 2 l m^-1  ->  l - 1
    LaurentPoly p = LaurentPoly::monomial(2, 2, -1) - LaurentPoly::monomial(2, 1, -1);
    const LaurentPoly lm1 = LaurentPoly::lambda() - LaurentPoly(1);
    CHECK(normalize_candidate(p) == lm1);
    // sign rule: -l + 1 -> l - 1
    CHECK(normalize_candidate(LaurentPoly(1) - LaurentPoly::lambda()) == lm1);
    // idempotence on a normal form
    CHECK(normalize_candidate(lm1) == lm1);
    CHECK_THROWS_AS(normalize_candidate(LaurentPoly()), kch::InvalidParams);
}
