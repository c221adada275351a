#pragma once

#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kch/curve.hpp"

namespace kch {

/// One end-to-end verification criterion with its runtime budget.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string detail;
};

namespace acceptance {

struct Failure {
    std::string what;
};

inline void require(bool cond, const std::string& what, std::string& detail, bool& ok) {
    if (!cond) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
}

/// Tracks every representation certified irreducible during the sweeps, for
/// the dimension-bound criterion.
struct IrrepLog {
    struct Entry {
        std::string family;
        int dim = 0;
        int bound = 0;
    };
    std::vector<Entry> entries;
    void add(const std::string& family, int dim, int bound) {
        entries.push_back({family, dim, bound});
    }
};

// 1. Braid relations and inverse-composition identities, exact on all
//    generators of A_n, n <= 4, letters |k| <= 3.
inline CriterionResult braid_action_exactness() {
    CriterionResult r{.id = 1, .name = "braid-action exactness (relations + inverses, n <= 4)", .budget_seconds = 10};
    bool ok = true;
    int identities = 0;
    auto same_action = [&](const BraidWord& b1, const BraidWord& b2) {
        const int n = b1.strands;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                const NcPoly g = NcPoly::generator(n, i, j);
                if (!(apply_phi(b1, g) == apply_phi(b2, g))) return false;
                ++identities;
            }
        return true;
    };
    for (int n = 2; n <= 4 && ok; ++n) {
        for (int k = 1; k <= n - 1 && ok; ++k) {
            // inverse composition both ways
            for (const auto& letters :
                 {std::vector<int>{k, -k}, std::vector<int>{-k, k}}) {
                const BraidWord b(n, letters);
                for (int i = 1; i <= n && ok; ++i)
                    for (int j = 1; j <= n && ok; ++j) {
                        if (i == j) continue;
                        const NcPoly g = NcPoly::generator(n, i, j);
                        require(apply_phi(b, g) == g, "inverse identity failed", r.detail, ok);
                        ++identities;
                    }
            }
            // braid relation with the adjacent generator
            if (k + 1 <= n - 1) {
                require(same_action(BraidWord(n, {k, k + 1, k}), BraidWord(n, {k + 1, k, k + 1})),
                        "braid relation failed", r.detail, ok);
                require(same_action(BraidWord(n, {-k, -(k + 1), -k}),
                                    BraidWord(n, {-(k + 1), -k, -(k + 1)})),
                        "inverse braid relation failed", r.detail, ok);
            }
            // far commutation
            for (int j = k + 2; j <= n - 1 && ok; ++j)
                for (int sk : {1, -1})
                    for (int sj : {1, -1})
                        require(same_action(BraidWord(n, {sk * k, sj * j}),
                                            BraidWord(n, {sj * j, sk * k})),
                                "far commutation failed", r.detail, ok);
        }
    }
    r.pass = ok;
    if (ok) r.detail = std::to_string(identities) + " identities exact";
    return r;
}

// 2. Canonical augmentation: a_ij = 0, mu0 = 1 zeroes all ideal generators
//    for 5 sampled lambda0, exactly.
inline CriterionResult canonical_augmentation() {
    CriterionResult r{.id = 2, .name = "canonical augmentation (exact residual 0)", .budget_seconds = 10};
    bool ok = true;
    std::vector<BraidWord> braids{BraidWord(2, {1, 1, 1}), BraidWord(3, {1, -2, 1, -2})};
    Rng rng(0xacce551);
    while (braids.size() < 5) {
        const int len = 4 + static_cast<int>(rng.next_below(3));
        std::vector<int> letters;
        for (int t = 0; t < len; ++t) {
            const int k = 1 + static_cast<int>(rng.next_below(2));
            letters.push_back(rng.next_below(2) ? k : -k);
        }
        BraidWord b(3, letters);
        if (b.closure_is_knot()) braids.push_back(b);
    }
    const std::vector<mpq_class> lambdas{mpq_class(2), mpq_class(-3), mpq_class(7, 2),
                                         mpq_class(-5, 3), mpq_class(11)};
    int checks = 0;
    for (const BraidWord& b : braids) {
        const IdealPresentation ideal = ideal_generators(b);
        for (const mpq_class& l : lambdas) {
            require(canonical_residual_exact(ideal, l) == 0,
                    "nonzero canonical residual on braid " + b.str(), r.detail, ok);
            ++checks;
        }
    }
    r.pass = ok;
    if (ok) r.detail = std::to_string(checks) + " exact zero residuals across 5 braids";
    return r;
}

// 3. Trefoil fiber: solver lambda-multiset = {1, -mu0^-3} on a 10-point
//    grid, matching the representation side.
inline CriterionResult trefoil_fiber() {
    CriterionResult r{.id = 3, .name = "trefoil fiber {1, -mu0^-3} (solver vs representations)", .budget_seconds = 60};
    bool ok = true;
    SolveOptions opt;
    opt.attempts = 150;
    opt.seed = 42;
    const std::vector<Cplx> grid = default_mu_grid(10);
    const ConsistencyReport report = consistency_check("trefoil", grid, 1e-6, opt);
    require(report.all_ok(), "solver/representation fibers disagree", r.detail, ok);
    for (const ConsistencyEntry& e : report.entries) {
        require(e.solver_lambdas.size() == 2,
                "fiber size != 2 at one grid value", r.detail, ok);
        bool abelian = false, geometric = false;
        for (const Cplx& l : e.solver_lambdas) {
            if (std::abs(l - Cplx(1.0, 0.0)) <= 1e-6) abelian = true;
            if (std::abs(l + cpow_int(e.mu0, -3)) <= 1e-6) geometric = true;
        }
        require(abelian && geometric, "expected lambda values missing", r.detail, ok);
    }
    r.pass = ok;
    if (ok) r.detail = "10 grid values, both lambda branches matched to 1e-6";
    return r;
}

// 4. Torus stable A-polynomial: postconditions at 1e-8, factor vanishing at
//    1e-8 on 25-point grids, irreducibility span = n^2 for n in {2, 3}.
inline CriterionResult torus_stable_a(IrrepLog& log) {
    CriterionResult r{.id = 4, .name = "torus stable A-polynomial factors over 25-point grids", .budget_seconds = 120};
    bool ok = true;
    const std::vector<Cplx> grid = default_mu_grid(25);
    int points = 0;
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
        const Presentation pres = torus_presentation(p, q);
        long s = 0, rr = 0;
        for (const auto& [id, exp] : pres.meridian.letters()) (id == 0 ? s : rr) += exp;
        for (const Cplx& mu0 : grid) {
            for (int n = 1; n <= p && ok; ++n) {
                KCHRep rep;
                try {
                    rep = torus_rep(p, q, n, mu0);
                } catch (const std::exception& e) {
                    require(false, std::string("construction failed: ") + e.what(), r.detail, ok);
                    break;
                }
                const Cplx z = *rep.lambda0 * cpow_int(mu0, static_cast<long>(p) * q);
                const Matrix zI = z * Matrix::Identity(n, n);
                Matrix M = Matrix::Identity(n, n);
                M(0, 0) = mu0;
                const Matrix X = rep.image(0), Y = rep.image(1);
                require(max_abs(mat_pow(X, p) - zI) <= 1e-8, "X^p != zI", r.detail, ok);
                require(max_abs(mat_pow(Y, q) - zI) <= 1e-8, "Y^q != zI", r.detail, ok);
                require(max_abs(mat_pow(X, s) * mat_pow(Y, rr) - M) <= 1e-8, "X^s Y^r != M",
                        r.detail, ok);
                const LaurentPoly factor = torus_factor(p, q, n);
                require(std::abs(factor.eval(*rep.lambda0, mu0)) <= 1e-8,
                        "factor residual above 1e-8", r.detail, ok);
                if (n >= 2) {
                    const IrreducibilityResult irr = irreducibility(rep);
                    require(irr.irreducible && irr.span_dim == n * n,
                            "span certificate failed", r.detail, ok);
                    if (irr.irreducible) log.add("torus", n, p);
                }
                ++points;
            }
            if (!ok) break;
        }
        if (!ok) break;
    }
    r.pass = ok;
    if (ok) r.detail = std::to_string(points) + " representations verified at 1e-8";
    return r;
}

// 5. 2-bridge: K(3,1) beta = 1 to 1e-10; K(5,3) two roots; relators and
//    cord relations at 1e-8 over 200 random pairs; det/trace to 1e-10.
inline CriterionResult two_bridge_criterion(IrrepLog& log) {
    CriterionResult r{.id = 5, .name = "2-bridge Riley roots and induced representations", .budget_seconds = 60};
    bool ok = true;
    const std::vector<Cplx> grid = default_mu_grid(6);
    int reps = 0;
    for (const Cplx& mu0 : grid) {
        const RileyPolynomial tref = riley_polynomial(3, 1, mu0);
        require(tref.roots.size() == 1, "K(3,1) root count != 1", r.detail, ok);
        if (!tref.roots.empty())
            require(std::abs(tref.beta_of_root(tref.roots[0]) - Cplx(1.0, 0.0)) <= 1e-10,
                    "K(3,1) beta != 1 at 1e-10", r.detail, ok);

        const RileyPolynomial fig8 = riley_polynomial(5, 3, mu0);
        require(fig8.roots.size() == 2, "K(5,3) root count != 2", r.detail, ok);

        for (const auto& [p, q, riley] :
             std::vector<std::tuple<int, int, const RileyPolynomial*>>{{3, 1, &tref},
                                                                       {5, 3, &fig8}}) {
            for (const Cplx& u : riley->roots) {
                KCHRep rep;
                try {
                    rep = two_bridge_rep(p, q, mu0, riley->beta_of_root(u));
                } catch (const AbelianDegenerate&) {
                    continue;
                } catch (const std::exception& e) {
                    require(false, std::string("rep failed: ") + e.what(), r.detail, ok);
                    continue;
                }
                require(relator_residual(rep) <= 1e-8, "relator residual above 1e-8", r.detail,
                        ok);
                require(cord_relation_check(rep, 200, 1234) <= 1e-8,
                        "cord relations above 1e-8", r.detail, ok);
                const Matrix B = eval_word(rep, GroupWord::gen(1));
                require(std::abs(B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0) - mu0) <= 1e-10,
                        "det B != mu0 at 1e-10", r.detail, ok);
                require(std::abs(B(0, 0) + B(1, 1) - (Cplx(1.0, 0.0) + mu0)) <= 1e-10,
                        "tr B != 1 + mu0 at 1e-10", r.detail, ok);
                if (irreducibility(rep).irreducible) log.add("twobridge", rep.dim, 2);
                ++reps;
            }
        }
    }
    r.pass = ok;
    if (ok) r.detail = std::to_string(reps) + " representations across 6 grid values";
    return r;
}

// 6. Pretzel: roots exist, R = 0 at 1e-8, lambda0 = mu0^{-(2k+6)} at 1e-8,
//    identity suite at 1e-8, span 9.
inline CriterionResult pretzel_criterion(IrrepLog& log) {
    CriterionResult r{.id = 6, .name = "pretzel representations, R = 0, longitude eigenvalue", .budget_seconds = 120};
    bool ok = true;
    const std::vector<Cplx> grid = default_mu_grid(10);
    int reps = 0;
    for (int k : {1, 2, 3}) {
        for (const Cplx& mu0 : grid) {
            PretzelRootPoly phi;
            try {
                phi = pretzel_phi_k(k, mu0);
            } catch (const std::exception& e) {
                require(false, std::string("Phi_k failed: ") + e.what(), r.detail, ok);
                continue;
            }
            require(!phi.roots.empty(), "Phi_k has no root", r.detail, ok);
            for (int root = 0; root < static_cast<int>(phi.roots.size()) && ok; ++root) {
                KCHRep rep;
                try {
                    rep = pretzel_rep(k, mu0, root);
                } catch (const std::exception& e) {
                    require(false, std::string("rep failed: ") + e.what(), r.detail, ok);
                    continue;
                }
                // R = 0 re-verified here, independent of the constructor
                const Matrix W = rep.image(1), M = rep.image(0);
                const Matrix Minv = mat_inverse(M), Winv = mat_inverse(W);
                const Matrix E0 = M * W * Minv * Winv * Minv;
                const Matrix F0 = Minv * Winv * M * W * M * Winv;
                require(max_abs(mat_pow(W, k) * E0 - F0 * mat_pow(W, k)) <= 1e-8,
                        "R norm above 1e-8", r.detail, ok);
                require(std::abs(*rep.lambda0 - cpow_int(mu0, -(2 * k + 6))) <= 1e-8,
                        "lambda0 != mu0^{-(2k+6)} at 1e-8", r.detail, ok);
                require(pretzel_identity_suite(rep, k).max_residual <= 1e-8,
                        "identity suite above 1e-8", r.detail, ok);
                const IrreducibilityResult irr = irreducibility(rep);
                require(irr.irreducible && irr.span_dim == 9, "span certificate failed",
                        r.detail, ok);
                if (irr.irreducible) log.add("pretzel", rep.dim, 3);
                ++reps;
            }
        }
    }
    r.pass = ok;
    if (ok) r.detail = std::to_string(reps) + " representations for k in {1,2,3}";
    return r;
}

// 7. Reduction fixtures preserve (lambda0, mu0) and strictly decrease the
//    dimension.
inline CriterionResult reduction_criterion() {
    CriterionResult r{.id = 7, .name = "reduction of reducible representations", .budget_seconds = 10};
    bool ok = true;

    {
        const Cplx mu0(1.8, 0.35);
        Matrix d = Matrix::Identity(2, 2);
        d(0, 0) = mu0;
        KCHRep fixture = make_kch_rep(two_bridge_presentation(3, 1), {d, d}, mu0);
        fixture.lambda0 = Cplx(1.0, 0.0);
        const KCHRep reduced = reduce_rep(fixture);
        require(reduced.dim < fixture.dim, "dimension did not decrease", r.detail, ok);
        require(reduced.lambda0 &&
                    std::abs(*reduced.lambda0 - Cplx(1.0, 0.0)) <= 1e-8 &&
                    std::abs(reduced.mu0 - mu0) <= 1e-8,
                "(lambda0, mu0) not preserved on the abelian fixture", r.detail, ok);
    }
    {
        const Cplx mu0(0.75, 0.4);
        const KCHRep torus = torus_rep(2, 3, 2, mu0);
        std::vector<Matrix> big;
        for (const Matrix& g : torus.images) {
            Matrix m = Matrix::Identity(3, 3);
            m.topLeftCorner(2, 2) = g;
            big.push_back(m);
        }
        KCHRep fixture = make_kch_rep(torus.pres, big, mu0);
        fixture.lambda0 = longitude_eigenvalue(fixture).lambda0;
        const KCHRep reduced = reduce_rep(fixture);
        require(reduced.dim < fixture.dim, "dimension did not decrease", r.detail, ok);
        require(reduced.lambda0 && std::abs(*reduced.lambda0 - *torus.lambda0) <= 1e-8 &&
                    std::abs(reduced.mu0 - mu0) <= 1e-8,
                "(lambda0, mu0) not preserved on the block fixture", r.detail, ok);
    }
    {
        bool threw = false;
        try {
            reduce_rep(torus_rep(2, 3, 2, Cplx(2.0, 0.0)));
        } catch (const AlreadyIrreducible&) {
            threw = true;
        }
        require(threw, "irreducible input not rejected", r.detail, ok);
    }
    r.pass = ok;
    if (ok) r.detail = "both fixtures reduced, invariants preserved to 1e-8";
    return r;
}

// 8. Dimension bound: no certified irrep exceeds its family's meridional
//    generator count.
inline CriterionResult dimension_bound(const IrrepLog& log) {
    CriterionResult r{.id = 8, .name = "dimension bound across certified irreps", .budget_seconds = 10};
    bool ok = true;
    int violations = 0;
    for (const auto& e : log.entries)
        if (e.dim > e.bound) ++violations;
    require(violations == 0, std::to_string(violations) + " violations", r.detail, ok);
    require(!log.entries.empty(), "no certified irreps were logged", r.detail, ok);
    r.pass = ok;
    if (ok)
        r.detail = std::to_string(log.entries.size()) + " certified irreps, zero violations";
    return r;
}

} // namespace acceptance

/// Run all acceptance criteria, printing one pass/fail line per criterion.
/// Returns true iff every criterion passes within its runtime budget.
inline bool run_acceptance(std::ostream& os) {
    using clock = std::chrono::steady_clock;
    acceptance::IrrepLog log;
    std::vector<std::function<CriterionResult()>> criteria{
        [] { return acceptance::braid_action_exactness(); },
        [] { return acceptance::canonical_augmentation(); },
        [] { return acceptance::trefoil_fiber(); },
        [&log] { return acceptance::torus_stable_a(log); },
        [&log] { return acceptance::two_bridge_criterion(log); },
        [&log] { return acceptance::pretzel_criterion(log); },
        [] { return acceptance::reduction_criterion(); },
        [&log] { return acceptance::dimension_bound(log); },
    };
    bool all = true;
    for (auto& fn : criteria) {
        const auto t0 = clock::now();
        CriterionResult res = fn();
        res.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        const bool in_budget = res.seconds < res.budget_seconds;
        const bool pass = res.pass && in_budget;
        all = all && pass;
        os << (pass ? "[PASS] " : "[FAIL] ") << res.id << ". " << res.name << " ("
           << std::fixed << std::setprecision(2) << res.seconds << " s / budget "
           << std::setprecision(0) << res.budget_seconds << " s)";
        if (!res.detail.empty()) os << " - " << res.detail;
        if (!in_budget) os << " - RUNTIME BUDGET EXCEEDED";
        os << "\n";
    }
    return all;
}

} // namespace kch
