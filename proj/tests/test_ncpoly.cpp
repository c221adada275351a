#include <catch2/catch_amalgamated.hpp>

#include "kch/ncpoly.hpp"
#include "kch/rng.hpp"

using kch::Gen;
using kch::LaurentPoly;
using kch::NcPoly;

namespace {

NcPoly a(int i, int j, int rank = 3) { return NcPoly::generator(rank, i, j); }

NcPoly random_poly(kch::Rng& rng, int rank) {
    NcPoly p(rank);
    const int terms = 1 + static_cast<int>(rng.next_below(3));
    for (int t = 0; t < terms; ++t) {
        kch::NcWord w;
        const int len = static_cast<int>(rng.next_below(3));
        for (int u = 0; u < len; ++u) {
            int i = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(rank)));
            int j = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(rank)));
            if (i == j) j = j % rank + 1;
            w.push_back(Gen{i, j});
        }
        const long c = static_cast<long>(rng.next_below(7)) - 3;
        p += NcPoly::term(rank, LaurentPoly::monomial(c, 0, static_cast<long>(rng.next_below(3))),
                          w);
    }
    return p;
}

} // namespace

TEST_CASE("words concatenate under multiplication") {
    const NcPoly prod = a(1, 2) * a(2, 1);
    REQUIRE(prod.term_count() == 1);
    const auto& [w, c] = *prod.terms().begin();
    CHECK(w == kch::NcWord{Gen{1, 2}, Gen{2, 1}});
    CHECK(c == LaurentPoly(1));
}

TEST_CASE("noncommutativity witness") {
    CHECK(a(1, 2) * a(2, 1) != a(2, 1) * a(1, 2));
}

TEST_CASE("scaling distributes over terms") {
    const LaurentPoly c = LaurentPoly(1) - LaurentPoly::mu();
    const NcPoly p = (a(1, 2) + a(2, 1)).scaled_by(c);
    REQUIRE(p.term_count() == 2);
    for (const auto& [w, k] : p.terms()) CHECK(k == c);
}

TEST_CASE("rank mismatch is rejected") {
    CHECK_THROWS_AS(a(1, 2, 2) + a(1, 2, 3), kch::RankMismatch);
    CHECK_THROWS_AS(a(1, 2, 2) * a(1, 2, 3), kch::RankMismatch);
}

TEST_CASE("substitution extends as an algebra homomorphism") {
    // substitute(a12 a21, {a12 -> -a21, a21 -> -a12}) = a21 a12
    std::map<Gen, NcPoly> images;
    images.emplace(Gen{1, 2}, -a(2, 1, 2));
    images.emplace(Gen{2, 1}, -a(1, 2, 2));
    const NcPoly p = a(1, 2, 2) * a(2, 1, 2);
    CHECK(substitute(p, images) == a(2, 1, 2) * a(1, 2, 2));

    // unital
    CHECK(substitute(NcPoly::unit(2), images) == NcPoly::unit(2));

    // braid-action case a_13 -> a_23 - a_21 a_13 (k = 1, i = 3)
    std::map<Gen, NcPoly> images3;
    images3.emplace(Gen{1, 3}, a(2, 3) - a(2, 1) * a(1, 3));
    for (const Gen& g : {Gen{1, 2}, Gen{2, 1}, Gen{2, 3}, Gen{3, 1}, Gen{3, 2}})
        images3.emplace(g, NcPoly::generator(3, g.i, g.j));
    CHECK(substitute(a(1, 3), images3) == a(2, 3) - a(2, 1) * a(1, 3));

    // missing image
    std::map<Gen, NcPoly> empty;
    CHECK_THROWS_AS(substitute(a(1, 2), empty), kch::MissingImage);
}

TEST_CASE("algebra laws and substitution properties on random polynomials") {
    kch::Rng rng(77);
    std::map<Gen, NcPoly> identity;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) identity.emplace(Gen{i, j}, NcPoly::generator(3, i, j));
    std::map<Gen, NcPoly> images;
    images.emplace(Gen{1, 2}, a(2, 3) - a(2, 1) * a(1, 3));
    images.emplace(Gen{2, 1}, -a(1, 2));
    images.emplace(Gen{1, 3}, a(1, 2) * a(2, 3));
    images.emplace(Gen{3, 1}, NcPoly::unit(3) + a(3, 1));
    images.emplace(Gen{2, 3}, a(2, 3).scaled_by(LaurentPoly::mu(-1)));
    images.emplace(Gen{3, 2}, a(3, 2));

    for (int t = 0; t < 60; ++t) {
        const NcPoly p = random_poly(rng, 3), q = random_poly(rng, 3), r = random_poly(rng, 3);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(substitute(p, identity) == p);
        CHECK(substitute(p * q, images) == substitute(p, images) * substitute(q, images));
        CHECK(substitute(p + q, images) == substitute(p, images) + substitute(q, images));
    }
}

TEST_CASE("canonicalization is idempotent") {
    kch::Rng rng(404);
    for (int t = 0; t < 40; ++t) {
        const NcPoly p = random_poly(rng, 3);
        // rebuild from the stored canonical terms: must be a no-op
        NcPoly rebuilt(3);
        for (const auto& [w, c] : p.terms()) rebuilt += NcPoly::term(3, c, w);
        CHECK(rebuilt == p);
        CHECK(rebuilt.str() == p.str());
        for (const auto& [w, c] : p.terms()) CHECK(!c.is_zero());
    }
}

TEST_CASE("serialization is stable") {
    const NcPoly p = NcPoly::scalar(2, LaurentPoly(1) - LaurentPoly::mu()) +
                     (a(1, 2, 2) * a(2, 1, 2)).scaled_by(LaurentPoly::monomial(1, 1, 3));
    CHECK(p.str() == "(1 - m) + (l*m^3)*a12.a21");
    CHECK(NcPoly(2).str() == "0");
}

TEST_CASE("term budget guards runaway growth") {
    const std::size_t saved = kch::nc_term_budget();
    kch::nc_term_budget() = 4;
    NcPoly p(2);
    for (int t = 0; t < 3; ++t)
        p += NcPoly::term(2, LaurentPoly(1),
                          kch::NcWord(static_cast<std::size_t>(t + 1), Gen{1, 2}));
    NcPoly q = p + NcPoly::term(2, LaurentPoly(1), kch::NcWord{Gen{2, 1}});
    CHECK_THROWS_AS(p * q, kch::TermBudgetExceeded);
    kch::nc_term_budget() = saved;
}
