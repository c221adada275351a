#include <catch2/catch_amalgamated.hpp>

#include "kch/curve.hpp"
#include "kch/io_json.hpp"

using kch::Cplx;
using kch::CurvePoint;
using kch::LaurentPoly;

namespace {
LaurentPoly mono(long c, long el, long em) { return LaurentPoly::monomial(c, el, em); }
} // namespace

TEST_CASE("stable A-polynomial of the trefoil") {
    // (l m^3 + 1)(l - 1) = l^2 m^3 - l m^3 + l - 1
    const LaurentPoly expect = mono(1, 2, 3) + mono(-1, 1, 3) + mono(1, 1, 0) + mono(-1, 0, 0);
    CHECK(kch::stable_a_poly_torus(2, 3) == kch::normalize_candidate(expect));
    CHECK(kch::stable_a_poly_torus(2, 3) == expect); // already normal
}

TEST_CASE("stable A-polynomial of T(3,5)") {
    // (l m^10 - 1)(l - 1)(l^2 m^15 - 1), expanded by hand
    const LaurentPoly expect = mono(1, 4, 25) + mono(-1, 3, 25) + mono(-1, 3, 15) +
                               mono(1, 2, 15) + mono(-1, 2, 10) + mono(1, 1, 10) + mono(1, 1, 0) +
                               mono(-1, 0, 0);
    CHECK(kch::stable_a_poly_torus(3, 5) == expect);
    // normalization idempotence
    CHECK(kch::normalize_candidate(kch::stable_a_poly_torus(3, 5)) ==
          kch::stable_a_poly_torus(3, 5));
}

TEST_CASE("default mu grid avoids the excluded values") {
    const auto grid = kch::default_mu_grid(25);
    REQUIRE(grid.size() == 25);
    for (const Cplx& mu0 : grid) {
        CHECK(std::abs(mu0) > 0.5);
        CHECK(std::abs(mu0 - Cplx(1.0, 0.0)) > 1e-3);
        const double r = std::abs(mu0);
        CHECK((std::abs(r - 0.8) < 1e-12 || std::abs(r - 1.25) < 1e-12));
    }
}

TEST_CASE("factor residuals on torus samples") {
    const auto grid = kch::default_mu_grid(6);
    const auto sample = kch::sample_torus_curve(3, 4, {1, 2, 3}, grid);
    CHECK(sample.skipped.empty());
    REQUIRE(sample.points.size() == 18);

    std::vector<CurvePoint> abelian, deg2, deg3;
    for (const CurvePoint& pt : sample.points) {
        if (pt.degree == 1) abelian.push_back(pt);
        if (pt.degree == 2) deg2.push_back(pt);
        if (pt.degree == 3) deg3.push_back(pt);
    }
    REQUIRE(abelian.size() == 6);
    REQUIRE(deg3.size() == 6);

    // abelian points vanish on l - 1 exactly
    const LaurentPoly lm1 = LaurentPoly::lambda() - LaurentPoly(1);
    CHECK(kch::factor_residual(lm1, abelian).max_abs == 0.0);

    // degree-3 points vanish on l m^8 - 1 (p=3, q=4: pq - q = 8, odd p)
    const LaurentPoly top = kch::torus_factor(3, 4, 3);
    CHECK(top == mono(1, 1, 8) + mono(-1, 0, 0));
    CHECK(kch::factor_residual(top, deg3).max_abs < 1e-9);

    // the sign-flipped polynomial is not a factor
    const LaurentPoly flipped = mono(1, 1, 8) + mono(1, 0, 0);
    CHECK(kch::factor_residual(flipped, deg3).max_abs >= 1.0);

    // each degree lies on exactly one factor
    for (const CurvePoint& pt : deg2) {
        CHECK(std::abs(kch::torus_factor(3, 4, 2).eval(pt.lambda0, pt.mu0)) < 1e-9);
        CHECK(std::abs(kch::torus_factor(3, 4, 3).eval(pt.lambda0, pt.mu0)) > 1e-2);
        CHECK(std::abs(lm1.eval(pt.lambda0, pt.mu0)) > 1e-2);
    }
}

TEST_CASE("torus completeness: each point lies on exactly one factor") {
    const auto grid = kch::default_mu_grid(25);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
        std::vector<int> dims;
        for (int n = 1; n <= p; ++n) dims.push_back(n);
        const auto sample = kch::sample_torus_curve(p, q, dims, grid);
        CHECK(sample.skipped.empty());
        REQUIRE(sample.points.size() == grid.size() * dims.size());
        for (const CurvePoint& pt : sample.points) {
            for (int n = 1; n <= p; ++n) {
                const double v = std::abs(kch::torus_factor(p, q, n).eval(pt.lambda0, pt.mu0));
                if (n == pt.degree)
                    CHECK(v <= 1e-8);
                else
                    CHECK(v >= 1e-2);
            }
        }
    }
}

TEST_CASE("pretzel factor residuals") {
    const auto grid = kch::default_mu_grid(4);
    const auto sample = kch::sample_pretzel_curve(2, grid);
    CHECK(sample.skipped.empty());
    REQUIRE(!sample.points.empty());
    const LaurentPoly factor = kch::pretzel_factor(2);
    CHECK(kch::factor_residual(factor, sample.points).max_abs < 1e-8);
}

TEST_CASE("csv round-trip is lossless") {
    const auto grid = kch::default_mu_grid(4);
    auto sample = kch::sample_torus_curve(2, 3, {1, 2}, grid);
    kch::sort_curve_points(sample.points, grid);
    const std::string csv = kch::curve_points_csv(sample.points);
    const auto parsed = kch::curve_points_from_csv(csv);
    REQUIRE(parsed.size() == sample.points.size());
    for (std::size_t t = 0; t < parsed.size(); ++t) {
        CHECK(parsed[t].family == sample.points[t].family);
        CHECK(parsed[t].degree == sample.points[t].degree);
        CHECK(parsed[t].lambda0 == sample.points[t].lambda0); // bit-exact
        CHECK(parsed[t].mu0 == sample.points[t].mu0);
        CHECK(parsed[t].residual == sample.points[t].residual);
    }
}

TEST_CASE("trefoil consistency across pipelines") {
    kch::SolveOptions opt;
    opt.attempts = 120;
    const auto grid = kch::default_mu_grid(3);
    const auto report = kch::consistency_check("trefoil", grid, 1e-6, opt);
    CHECK(report.all_ok());
    for (const auto& entry : report.entries) {
        REQUIRE(entry.solver_lambdas.size() == 2);
        // solver fiber = {1, -mu0^-3}
        bool has_abelian = false, has_geometric = false;
        for (const Cplx& l : entry.solver_lambdas) {
            if (std::abs(l - Cplx(1.0, 0.0)) < 1e-6) has_abelian = true;
            if (std::abs(l + kch::cpow_int(entry.mu0, -3)) < 1e-6) has_geometric = true;
        }
        CHECK(has_abelian);
        CHECK(has_geometric);
    }
}

TEST_CASE("figure-eight consistency across pipelines") {
    kch::SolveOptions opt;
    opt.attempts = 200;
    const auto grid = kch::default_mu_grid(2);
    const auto report = kch::consistency_check("figure-eight", grid, 1e-6, opt);
    CHECK(report.all_ok());
    for (const auto& entry : report.entries) {
        CHECK(entry.riley_roots == 2);
        CHECK(entry.solver_lambdas.size() == 3); // abelian + two Riley-root points
    }
}

TEST_CASE("two-bridge curve sampling needs a braid model") {
    const auto grid = kch::default_mu_grid(2);
    kch::SolveOptions opt;
    opt.attempts = 150;
    const auto sample = kch::sample_twobridge_curve(5, 3, grid, opt);
    CHECK(sample.skipped.empty());
    int abelian = 0, nonabelian = 0;
    for (const CurvePoint& pt : sample.points) {
        if (pt.family == "abelian") ++abelian;
        if (pt.family == "twobridge") ++nonabelian;
    }
    CHECK(abelian == 2);
    CHECK(nonabelian == 4); // two per grid value, generically
    CHECK_THROWS_AS(kch::sample_twobridge_curve(7, 3, grid, opt), kch::InvalidParams);
}

TEST_CASE("json round-trip is lossless") {
    const auto grid = kch::default_mu_grid(3);
    auto sample = kch::sample_torus_curve(2, 5, {1, 2}, grid);
    kch::sort_curve_points(sample.points, grid);
    const kch::Json j = kch::curve_points_json(sample.points);
    const auto parsed = kch::curve_points_from_json(kch::Json::parse(j.dump()));
    REQUIRE(parsed.size() == sample.points.size());
    for (std::size_t t = 0; t < parsed.size(); ++t) {
        CHECK(parsed[t].lambda0 == sample.points[t].lambda0); // bit-exact
        CHECK(parsed[t].mu0 == sample.points[t].mu0);
        CHECK(parsed[t].residual == sample.points[t].residual);
    }
}

TEST_CASE("A-polynomial factor and augmentation factor are linked by squaring") {
    // On the trefoil the classical A-polynomial factor l m^6 + 1 at
    // (lambda0, mu1) pairs with the augmentation factor l m^3 + 1 at
    // (lambda0, mu1^2); the sl2 twist construction realizes both with one
    // lambda0.
    const Cplx mu1(1.1, 0.25);
    const Cplx mu0 = mu1 * mu1;
    const auto rep = kch::torus_rep(2, 3, 2, mu0);
    const Cplx lambda0 = *rep.lambda0;
    const LaurentPoly aug_factor = mono(1, 1, 3) + mono(1, 0, 0); // l m^3 + 1
    const LaurentPoly a_factor = mono(1, 1, 6) + mono(1, 0, 0);   // l m^6 + 1
    CHECK(std::abs(aug_factor.eval(lambda0, mu0)) < 1e-9);
    CHECK(std::abs(a_factor.eval(lambda0, mu1)) < 1e-9);
}

TEST_CASE("alias lookup") {
    const auto aliases = kch::builtin_aliases();
    CHECK(kch::find_alias(aliases, "trefoil").torus.has_value());
    CHECK_THROWS_AS(kch::find_alias(aliases, "granny"), kch::InvalidParams);
}
