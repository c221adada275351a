#include <catch2/catch_amalgamated.hpp>

#include "kch/rep_pretzel.hpp"
#include "kch/rng.hpp"

using kch::Cplx;
using kch::Matrix;

TEST_CASE("closed forms of E0 and F0 match the word evaluation") {
    kch::Rng rng(2718);
    for (int t = 0; t < 10; ++t) {
        const Cplx mu0 = rng.next_annulus(0.5, 2.0);
        const Cplx x = rng.next_annulus(0.2, 3.0);
        const Matrix W = kch::pretzel_W(mu0, x);
        Matrix M = Matrix::Identity(3, 3);
        M(0, 0) = mu0;
        const Matrix Minv = kch::mat_inverse(M), Winv = kch::mat_inverse(W);
        const Matrix E0 = M * W * Minv * Winv * Minv;
        const Matrix F0 = Minv * Winv * M * W * M * Winv;
        CHECK(kch::max_abs(E0 - kch::pretzel_E0_formula(mu0, x)) < 1e-10);
        CHECK(kch::max_abs(F0 - kch::pretzel_F0_formula(mu0, x)) < 1e-10);
        // det W = mu^2: w is a product of two meridian conjugates
        const Cplx det = W.determinant();
        CHECK(std::abs(det - mu0 * mu0) < 1e-10);
    }
}

TEST_CASE("longitude eigenvalue at k=2, mu0=2") {
    const auto rep = kch::pretzel_rep(2, Cplx(2.0, 0.0));
    REQUIRE(rep.lambda0.has_value());
    // mu0^{-(2k+6)} = 2^-10
    CHECK(std::abs(*rep.lambda0 - Cplx(9.765625e-4, 0.0)) < 1e-8);
    CHECK(kch::relator_residual(rep) < 1e-8);
}

TEST_CASE("representations for k in {1,2,3} at random mu0") {
    kch::Rng rng(1123);
    for (int k : {1, 2, 3}) {
        const Cplx mu0 = rng.next_annulus(0.8, 1.25);
        const auto phi = kch::pretzel_phi_k(k, mu0);
        REQUIRE(!phi.roots.empty());
        for (int root = 0; root < static_cast<int>(phi.roots.size()); ++root) {
            const auto rep = kch::pretzel_rep(k, mu0, root);
            CHECK(kch::relator_residual(rep) < 1e-8);
            REQUIRE(rep.lambda0.has_value());
            CHECK(std::abs(*rep.lambda0 - kch::cpow_int(mu0, -(2 * k + 6))) < 1e-8);
            // [w^k m w] = 0, i.e. [w^{k+1}] = [w^k]
            const kch::GroupWord w = kch::GroupWord::gen(1);
            CHECK(std::abs(induced_aug(rep, w.pow(k + 1)) - induced_aug(rep, w.pow(k))) < 1e-8);
            const auto irr = kch::irreducibility(rep);
            CHECK(irr.irreducible);
            CHECK(irr.span_dim == 9);
        }
    }
}

TEST_CASE("identity suite") {
    kch::Rng rng(31415);
    for (int k : {1, 2, 3}) {
        const Cplx mu0 = rng.next_annulus(0.8, 1.25);
        const auto rep = kch::pretzel_rep(k, mu0);
        const auto suite = kch::pretzel_identity_suite(rep, k);
        CHECK(suite.commute < 1e-8);
        CHECK(suite.e0w_f0inv < 1e-8);
        CHECK(suite.power_pairs < 1e-8);
        CHECK(suite.power_sums < 1e-8);
        CHECK(suite.closing < 1e-8);
    }
}

TEST_CASE("cord relations for pretzel representations") {
    kch::Rng rng(424242);
    for (int t = 0; t < 3; ++t) {
        const Cplx mu0 = rng.next_annulus(0.8, 1.25);
        const auto rep = kch::pretzel_rep(2, mu0);
        CHECK(kch::cord_relation_check(rep, 200, 55) < 1e-8);
    }
}

TEST_CASE("negative twist parameters") {
    const Cplx mu0(1.15, 0.3);
    const auto rep = kch::pretzel_rep(-2, mu0);
    CHECK(kch::relator_residual(rep) < 1e-8);
    REQUIRE(rep.lambda0.has_value());
    // 2k+6 = 2 at k = -2
    CHECK(std::abs(*rep.lambda0 - kch::cpow_int(mu0, -2)) < 1e-8);
    const auto suite = kch::pretzel_identity_suite(rep, -2);
    CHECK(suite.power_pairs < 1e-8);
}

TEST_CASE("pretzel parameter validation") {
    CHECK_THROWS_AS(kch::pretzel_phi_k(0, Cplx(2.0, 0.0)), kch::InvalidParams);
    CHECK_THROWS_AS(kch::pretzel_phi_k(-1, Cplx(2.0, 0.0)), kch::InvalidParams);
    CHECK_THROWS_AS(kch::pretzel_phi_k(2, Cplx(1.0, 0.0)), kch::PreconditionError);
    CHECK_THROWS_AS(kch::pretzel_rep(2, Cplx(2.0, 0.0), 99), kch::InvalidParams);
}
