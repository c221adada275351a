#include <catch2/catch_amalgamated.hpp>

#include "kch/rep_twobridge.hpp"
#include "kch/rng.hpp"

using kch::Cplx;
using kch::GroupWord;
using kch::Matrix;

TEST_CASE("Riley root of the trefoil K(3,1)") {
    // hand expansion of W = NC gives Phi = mu^2 - mu + 1 - mu u
    const Cplx mu0(3.0, 0.0);
    const auto riley = kch::riley_polynomial(3, 1, mu0);
    REQUIRE(riley.roots.size() == 1);
    CHECK(std::abs(riley.roots[0] - Cplx(7.0 / 3.0, 0.0)) < 1e-10);
    CHECK(std::abs(riley.beta_of_root(riley.roots[0]) - Cplx(1.0, 0.0)) < 1e-10);

    // beta = 1 at any mu0
    kch::Rng rng(12);
    for (int t = 0; t < 5; ++t) {
        const Cplx mu = rng.next_annulus(0.5, 2.0);
        const auto r = kch::riley_polynomial(3, 1, mu);
        REQUIRE(r.roots.size() == 1);
        CHECK(std::abs(r.beta_of_root(r.roots[0]) - Cplx(1.0, 0.0)) < 1e-10);
    }
}

TEST_CASE("Riley polynomial of the figure-eight K(5,3)") {
    // independent symbolic expansion of W = N C^-1 N^-1 C gives
    // Phi(u) = u^2 + c (u + 1) with c = 3 - mu - 1/mu
    kch::Rng rng(88);
    for (int t = 0; t < 6; ++t) {
        const Cplx mu0 = rng.next_annulus(0.6, 1.6);
        const auto riley = kch::riley_polynomial(5, 3, mu0);
        REQUIRE(riley.coeffs.size() == 3);
        const Cplx lead = riley.coeffs[2];
        const Cplx c = Cplx(3.0, 0.0) - mu0 - Cplx(1.0, 0.0) / mu0;
        CHECK(std::abs(riley.coeffs[1] / lead - c) < 1e-9);
        CHECK(std::abs(riley.coeffs[0] / lead - c) < 1e-9);
        REQUIRE(riley.roots.size() == 2);
        // each root vanishes under direct matrix evaluation
        for (const Cplx& u : riley.roots) {
            const Matrix w = kch::riley_word_matrix(5, 3, mu0, u);
            CHECK(std::abs(w(0, 0) + (Cplx(1.0, 0.0) - mu0) * w(0, 1)) < 1e-9);
        }
    }
}

TEST_CASE("palindrome symmetry at Riley roots") {
    // ([m] - [b]) W_12 = W_21, i.e. (-mu u) W_12 = W_21
    kch::Rng rng(5150);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 1}, {5, 3}, {7, 3}, {7, 5}}) {
        const Cplx mu0 = rng.next_annulus(0.7, 1.5);
        const auto riley = kch::riley_polynomial(p, q, mu0);
        for (const Cplx& u : riley.roots) {
            const Matrix w = kch::riley_word_matrix(p, q, mu0, u);
            CHECK(std::abs(-mu0 * u * w(0, 1) - w(1, 0)) < 1e-9);
        }
    }
}

TEST_CASE("two-bridge representation of K(3,1)") {
    kch::Rng rng(3301);
    const Cplx mu0 = rng.next_annulus(0.5, 2.0);
    const auto rep = kch::two_bridge_rep(3, 1, mu0, Cplx(1.0, 0.0));
    CHECK(kch::relator_residual(rep) < 1e-10);
    CHECK(kch::cord_relation_check(rep, 200, 99) < 1e-8);

    const Matrix B = eval_word(rep, GroupWord::gen(1));
    const Cplx det = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0);
    CHECK(std::abs(det - mu0) < 1e-10);
    CHECK(std::abs(B(0, 0) + B(1, 1) - (Cplx(1.0, 0.0) + mu0)) < 1e-10);
}

TEST_CASE("figure-eight representations from both Riley roots") {
    const Cplx mu0(1.2, 0.45);
    const auto riley = kch::riley_polynomial(5, 3, mu0);
    REQUIRE(riley.roots.size() == 2);
    for (const Cplx& u : riley.roots) {
        const auto rep = kch::two_bridge_rep(5, 3, mu0, riley.beta_of_root(u));
        CHECK(kch::relator_residual(rep) < 1e-8);
        CHECK(kch::cord_relation_check(rep, 200, 2024) < 1e-8);
        CHECK(kch::irreducibility(rep).irreducible);
    }
}

TEST_CASE("cord-algebra and matrix-entry identity along b powers") {
    // [b^n w] = [b^n] W_11 - W_21 for the Schubert word and for random
    // alternating words
    const Cplx mu0(0.85, 0.3);
    const auto riley = kch::riley_polynomial(5, 3, mu0);
    const Cplx u = riley.roots[0];
    const auto rep = kch::two_bridge_rep(5, 3, mu0, riley.beta_of_root(u));
    const GroupWord m = GroupWord::gen(0), b = GroupWord::gen(1);

    auto check_word = [&](const std::vector<int>& eps) {
        // word m^{e1} b^{e2} ... alternating; W the matching N/C product
        GroupWord w;
        Matrix W = Matrix::Identity(2, 2);
        const Matrix N = kch::riley_N(mu0), C = kch::riley_C(mu0, u);
        const Matrix Ninv = kch::mat_inverse(N), Cinv = kch::mat_inverse(C);
        for (std::size_t t = 0; t < eps.size(); ++t) {
            const bool is_m = t % 2 == 0;
            w = w * GroupWord::gen(is_m ? 0 : 1, eps[t]);
            W = W * (eps[t] > 0 ? (is_m ? N : C) : (is_m ? Ninv : Cinv));
        }
        for (int n = -2; n <= 3; ++n) {
            const Cplx lhs = induced_aug(rep, b.pow(n) * w);
            const Cplx rhs = induced_aug(rep, b.pow(n)) * W(0, 0) - W(1, 0);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    };

    check_word(kch::schubert_epsilons(5, 3));
    kch::Rng rng(808);
    for (int t = 0; t < 10; ++t) {
        std::vector<int> eps(2 + 2 * static_cast<std::size_t>(rng.next_below(3)));
        for (auto& e : eps) e = rng.next_below(2) ? 1 : -1;
        check_word(eps);
    }
}

TEST_CASE("corrupted representations are detected") {
    const Cplx mu0(1.3, 0.2);
    // a perturbed meridian image breaks the cord relations
    auto rep = kch::two_bridge_rep(3, 1, mu0, Cplx(1.0, 0.0));
    rep.images[0](1, 0) += 1e-3;
    rep.inverses[0] = kch::mat_inverse(rep.images[0]);
    CHECK(kch::cord_relation_check(rep, 100, 5) > 1e-5);
    // a perturbed b image leaves the cord identities intact (they only see
    // the meridian) but breaks the relator
    auto rep2 = kch::two_bridge_rep(3, 1, mu0, Cplx(1.0, 0.0));
    rep2.images[1](0, 0) += 1e-3;
    rep2.inverses[1] = kch::mat_inverse(rep2.images[1]);
    CHECK(kch::relator_residual(rep2) > 1e-5);
}

TEST_CASE("degenerate and invalid two-bridge inputs") {
    const Cplx mu0(1.4, 0.0);
    CHECK_THROWS_AS(kch::two_bridge_rep(3, 1, mu0, mu0 * (Cplx(1.0, 0.0) - mu0)),
                    kch::AbelianDegenerate);
    CHECK_THROWS_AS(kch::two_bridge_rep(3, 1, mu0, Cplx(4.2, 1.0)), kch::NotARepresentation);
    CHECK_THROWS_AS(kch::riley_polynomial(4, 1, mu0), kch::InvalidParams);
    CHECK_THROWS_AS(kch::riley_polynomial(3, 1, Cplx(1.0, 0.0)), kch::PreconditionError);
}
