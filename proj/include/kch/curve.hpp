#pragma once

#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kch/augmentation.hpp"
#include "kch/rep_pretzel.hpp"
#include "kch/rep_torus.hpp"
#include "kch/rep_twobridge.hpp"

namespace kch {

/// A sampled point of the augmentation variety with provenance.
struct CurvePoint {
    Cplx lambda0{0.0, 0.0};
    Cplx mu0{0.0, 0.0};
    std::string family; // torus | twobridge | pretzel | braid-solver | abelian
    int degree = 0;     // representation dimension (0 for solver points)
    int p = 0, q = 0, k = 0;
    double residual = 0.0;
};

struct CurveSample {
    std::vector<CurvePoint> points;
    std::vector<std::string> skipped; // grid failures, logged and skipped
};

/// Default mu-grid: two circles |mu| in {0.8, 1.25} sampled at golden-angle
/// arguments, dodging roots of unity and the excluded values {0, 1}.
inline std::vector<Cplx> default_mu_grid(int count) {
    std::vector<Cplx> grid;
    grid.reserve(static_cast<std::size_t>(count));
    const double golden = 2.39996322972865332; // golden angle in radians
    for (int t = 0; t < count; ++t) {
        const double radius = t % 2 == 0 ? 0.8 : 1.25;
        const double ang = golden * (t + 1);
        grid.push_back(radius * Cplx(std::cos(ang), std::sin(ang)));
    }
    return grid;
}

namespace detail {

template <typename Fn>
inline CurveSample sample_grid(const std::vector<Cplx>& grid, Fn&& per_point) {
    std::vector<std::future<CurveSample>> futs;
    futs.reserve(grid.size());
    for (std::size_t t = 0; t < grid.size(); ++t)
        futs.push_back(std::async(std::launch::async, [&per_point, &grid, t] {
            CurveSample local;
            try {
                per_point(grid[t], local);
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "mu0 = (" << grid[t].real() << "," << grid[t].imag()
                   << ") skipped: " << e.what();
                local.skipped.push_back(os.str());
            }
            return local;
        }));
    CurveSample out;
    for (auto& f : futs) {
        CurveSample local = f.get();
        out.points.insert(out.points.end(), local.points.begin(), local.points.end());
        out.skipped.insert(out.skipped.end(), local.skipped.begin(), local.skipped.end());
    }
    return out;
}

} // namespace detail

namespace detail {

/// Grid sweeps retry once with a slightly perturbed mu0 when a construction
/// hits one of the typed exceptional-value errors; the perturbed value is
/// what gets recorded.
template <typename Fn>
inline auto retry_exceptional(Cplx& mu0, Fn&& construct) {
    try {
        return construct(mu0);
    } catch (const RootSelectionFailure&) {
    } catch (const EigenvalueCollision&) {
    } catch (const NoRoot&) {
    }
    mu0 *= Cplx(1.0 + 1e-6, 1e-7);
    return construct(mu0);
}

} // namespace detail

/// Torus-knot curve points for the requested representation degrees. Every
/// point re-verifies through its producing construction at `tol/10`.
inline CurveSample sample_torus_curve(int p, int q, const std::vector<int>& dims,
                                      const std::vector<Cplx>& grid, double tol = 1e-8,
                                      int branch = 0) {
    return detail::sample_grid(grid, [&](Cplx mu0_in, CurveSample& local) {
        for (int n : dims) {
            Cplx mu0 = mu0_in;
            const KCHRep rep = detail::retry_exceptional(
                mu0, [&](Cplx m) { return torus_rep(p, q, n, m, branch); });
            const double res =
                std::max(relator_residual(rep), longitude_eigenvalue(rep).defect);
            if (res > tol / 10) {
                std::ostringstream os;
                os << "torus(" << p << "," << q << ") n=" << n << " at mu0=(" << mu0.real()
                   << "," << mu0.imag() << "): residual " << res;
                local.skipped.push_back(os.str());
                continue;
            }
            CurvePoint pt;
            pt.lambda0 = *rep.lambda0;
            pt.mu0 = mu0;
            pt.family = n == 1 ? "abelian" : "torus";
            pt.degree = n;
            pt.p = p;
            pt.q = q;
            pt.residual = res;
            local.points.push_back(pt);
        }
    });
}

/// Pretzel curve points (degree 3), one per root of Phi_k.
inline CurveSample sample_pretzel_curve(int k, const std::vector<Cplx>& grid, double tol = 1e-8) {
    return detail::sample_grid(grid, [&](Cplx mu0_in, CurveSample& local) {
        Cplx mu0 = mu0_in;
        const PretzelRootPoly phi =
            detail::retry_exceptional(mu0, [&](Cplx m) { return pretzel_phi_k(k, m); });
        for (int root = 0; root < static_cast<int>(phi.roots.size()); ++root) {
            const KCHRep rep = pretzel_rep(k, mu0, root);
            const double res =
                std::max(relator_residual(rep), longitude_eigenvalue(rep).defect);
            if (res > tol / 10) {
                std::ostringstream os;
                os << "pretzel(" << k << ") root " << root << " at mu0=(" << mu0.real() << ","
                   << mu0.imag() << "): residual " << res;
                local.skipped.push_back(os.str());
                continue;
            }
            CurvePoint pt;
            pt.lambda0 = *rep.lambda0;
            pt.mu0 = mu0;
            pt.family = "pretzel";
            pt.degree = 3;
            pt.k = k;
            pt.residual = res;
            local.points.push_back(pt);
        }
    });
}

/// Braid-solver curve points: the sampled fiber of the augmentation variety
/// over each grid value.
inline CurveSample sample_braid_curve(const BraidWord& braid, const std::vector<Cplx>& grid,
                                      const SolveOptions& opt = {}) {
    const IdealPresentation ideal = ideal_generators(braid);
    return detail::sample_grid(grid, [&](Cplx mu0, CurveSample& local) {
        const SolveResult res = solve_augmentations(ideal, mu0, opt);
        for (const AugAssignment& sol : res.solutions) {
            const ResidualReport rr = is_augmentation(ideal, sol, opt.tol / 10);
            if (!rr.passes()) continue; // re-verification is the emission gate
            CurvePoint pt;
            pt.lambda0 = sol.lambda0;
            pt.mu0 = mu0;
            pt.family = "braid-solver";
            pt.degree = 0;
            pt.residual = rr.max_abs;
            local.points.push_back(pt);
        }
    });
}

/// Deduplicated lambda values of a solver result (tolerance-clustered).
inline std::vector<Cplx> distinct_lambdas(const std::vector<Cplx>& lambdas, double tol) {
    std::vector<Cplx> out;
    for (const Cplx& l : lambdas) {
        bool seen = false;
        for (const Cplx& known : out)
            if (std::abs(known - l) <= tol * std::max(1.0, std::abs(known))) seen = true;
        if (!seen) out.push_back(l);
    }
    std::sort(out.begin(), out.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

/// Built-in knot alias table; extensible through a JSON config (see
/// load_aliases in the CLI).
struct KnotAlias {
    std::string name;
    std::optional<BraidWord> braid;
    std::optional<std::pair<int, int>> torus;
    std::optional<std::pair<int, int>> twobridge;
    std::optional<int> pretzel;
};

inline std::vector<KnotAlias> builtin_aliases() {
    std::vector<KnotAlias> v;
    v.push_back(KnotAlias{"trefoil", BraidWord(2, {1, 1, 1}), std::pair<int, int>{2, 3},
                          std::pair<int, int>{3, 1}, std::nullopt});
    v.push_back(KnotAlias{"figure-eight", BraidWord(3, {1, -2, 1, -2}), std::nullopt,
                          std::pair<int, int>{5, 3}, std::nullopt});
    return v;
}

inline const KnotAlias& find_alias(const std::vector<KnotAlias>& aliases,
                                   const std::string& name) {
    for (const KnotAlias& a : aliases)
        if (a.name == name) return a;
    throw InvalidParams("unknown knot alias '" + name + "'");
}

/// Two-bridge curve points: the abelian point plus the non-abelian solver
/// lambdas, with Riley roots certifying the degree-2 representations. Needs
/// a braid model for the knot (built-ins: trefoil, figure-eight).
inline CurveSample sample_twobridge_curve(int p, int q, const std::vector<Cplx>& grid,
                                          const SolveOptions& opt = {},
                                          const std::vector<KnotAlias>& aliases =
                                              builtin_aliases()) {
    const BraidWord* braid = nullptr;
    for (const KnotAlias& a : aliases)
        if (a.twobridge && a.twobridge->first == p && a.twobridge->second == q && a.braid)
            braid = &*a.braid;
    if (!braid)
        throw InvalidParams("sample_twobridge_curve: no braid model known for K(" +
                            std::to_string(p) + "," + std::to_string(q) + ")");
    const IdealPresentation ideal = ideal_generators(*braid);
    return detail::sample_grid(grid, [&, braid](Cplx mu0, CurveSample& local) {
        const RileyPolynomial riley = riley_polynomial(p, q, mu0);
        int valid_reps = 0;
        double rep_residual = 0.0;
        for (const Cplx& u : riley.roots) {
            try {
                const KCHRep rep = two_bridge_rep(p, q, mu0, riley.beta_of_root(u));
                rep_residual = std::max(rep_residual, relator_residual(rep));
                ++valid_reps;
            } catch (const AbelianDegenerate&) {
            }
        }
        const SolveResult res = solve_augmentations(ideal, mu0, opt);
        const std::vector<Cplx> lambdas = distinct_lambdas(res.lambda_values(), 1e-6);
        for (const Cplx& l : lambdas) {
            const bool is_abelian = std::abs(l - Cplx(1.0, 0.0)) <= 1e-6;
            if (!is_abelian && valid_reps == 0) {
                local.skipped.push_back("non-abelian lambda without a certifying Riley root");
                continue;
            }
            double solver_res = 0.0;
            for (const AugAssignment& sol : res.solutions)
                if (std::abs(sol.lambda0 - l) <= 1e-6 * std::max(1.0, std::abs(l)))
                    solver_res = std::max(solver_res, is_augmentation(ideal, sol, opt.tol).max_abs);
            CurvePoint pt;
            pt.lambda0 = l;
            pt.mu0 = mu0;
            pt.family = is_abelian ? "abelian" : "twobridge";
            pt.degree = is_abelian ? 1 : 2;
            pt.p = p;
            pt.q = q;
            pt.residual = std::max(solver_res, is_abelian ? 0.0 : rep_residual);
            local.points.push_back(pt);
        }
    });
}

/// Max |c(lambda0, mu0)| of a candidate polynomial over sampled points.
struct FactorResidual {
    double max_abs = 0.0;
    std::vector<double> per_point;
};

inline FactorResidual factor_residual(const LaurentPoly& candidate,
                                      const std::vector<CurvePoint>& points) {
    FactorResidual out;
    out.per_point.reserve(points.size());
    for (const CurvePoint& pt : points) {
        const double v = std::abs(candidate.eval(pt.lambda0, pt.mu0));
        out.per_point.push_back(v);
        out.max_abs = std::max(out.max_abs, v);
    }
    return out;
}

/// The stable A-polynomial of the (p,q) torus knot,
/// (lambda mu^{pq-q} + (-1)^p) prod_{n=1}^{p-1} (lambda^n mu^{(n-1)pq} - 1),
/// expanded and normalized.
inline LaurentPoly stable_a_poly_torus(int p, int q) {
    if (!(1 <= p && p < q) || std::gcd(p, q) != 1)
        throw InvalidParams("stable_a_poly_torus: need 1 <= p < q coprime");
    LaurentPoly acc = LaurentPoly::monomial(1, 1, static_cast<long>(p) * q - q) +
                      LaurentPoly(p % 2 == 0 ? 1 : -1);
    for (int n = 1; n <= p - 1; ++n)
        acc *= LaurentPoly::monomial(1, n, static_cast<long>(n - 1) * p * q) - LaurentPoly(1);
    return normalize_candidate(acc);
}

/// One factor of the torus stable A-polynomial, normalized: the degree-n
/// factor lambda^n mu^{(n-1)pq} - 1 for n < p, or
/// lambda mu^{pq-q} + (-1)^p at n = p.
inline LaurentPoly torus_factor(int p, int q, int n) {
    if (n < 1 || n > p) throw InvalidParams("torus_factor: need 1 <= n <= p");
    if (n == p)
        return normalize_candidate(LaurentPoly::monomial(1, 1, static_cast<long>(p) * q - q) +
                                   LaurentPoly(p % 2 == 0 ? 1 : -1));
    return normalize_candidate(LaurentPoly::monomial(1, n, static_cast<long>(n - 1) * p * q) -
                               LaurentPoly(1));
}

/// The pretzel factor 1 - lambda mu^{2k+6}, normalized.
inline LaurentPoly pretzel_factor(int k) {
    return normalize_candidate(LaurentPoly(1) -
                               LaurentPoly::monomial(1, 1, 2 * static_cast<long>(k) + 6));
}

/// Cross-pipeline consistency: at each grid value the braid-solver fiber
/// must match the representation-induced values.
struct ConsistencyEntry {
    Cplx mu0;
    std::vector<Cplx> solver_lambdas;
    std::vector<Cplx> rep_lambdas; // representation-side expectations (may be empty)
    int riley_roots = 0;
    int expected_count = 0;
    bool ok = false;
    std::string note;
};

struct ConsistencyReport {
    std::string knot;
    std::vector<ConsistencyEntry> entries;
    int mismatches = 0;
    bool all_ok() const { return mismatches == 0; }
};

inline ConsistencyReport consistency_check(const std::string& alias_name,
                                           const std::vector<Cplx>& grid, double tol = 1e-6,
                                           const SolveOptions& opt = {},
                                           const std::vector<KnotAlias>& aliases =
                                               builtin_aliases()) {
    const KnotAlias& alias = find_alias(aliases, alias_name);
    if (!alias.braid) throw InvalidParams("consistency_check: alias has no braid model");
    const IdealPresentation ideal = ideal_generators(*alias.braid);

    ConsistencyReport report;
    report.knot = alias_name;
    for (const Cplx& mu0 : grid) {
        ConsistencyEntry entry;
        entry.mu0 = mu0;
        try {
            entry.solver_lambdas =
                distinct_lambdas(solve_augmentations(ideal, mu0, opt).lambda_values(), tol);

            // representation side
            entry.rep_lambdas.push_back(Cplx(1.0, 0.0)); // abelian
            if (alias.torus) {
                const auto [p, q] = *alias.torus;
                for (int n = 2; n <= p; ++n)
                    entry.rep_lambdas.push_back(*torus_rep(p, q, n, mu0).lambda0);
                entry.rep_lambdas = distinct_lambdas(entry.rep_lambdas, tol);
                entry.expected_count = static_cast<int>(entry.rep_lambdas.size());
                // full multiset comparison
                entry.ok = entry.solver_lambdas.size() == entry.rep_lambdas.size();
                if (entry.ok)
                    for (std::size_t t = 0; t < entry.rep_lambdas.size(); ++t)
                        if (std::abs(entry.solver_lambdas[t] - entry.rep_lambdas[t]) >
                            tol * std::max(1.0, std::abs(entry.rep_lambdas[t])))
                            entry.ok = false;
                if (!entry.ok) entry.note = "solver fiber differs from torus representations";
            } else if (alias.twobridge) {
                const auto [p, q] = *alias.twobridge;
                const RileyPolynomial riley = riley_polynomial(p, q, mu0);
                for (const Cplx& u : riley.roots) {
                    try {
                        two_bridge_rep(p, q, mu0, riley.beta_of_root(u));
                        ++entry.riley_roots;
                    } catch (const AbelianDegenerate&) {
                    }
                }
                entry.expected_count = 1 + entry.riley_roots;
                bool has_abelian = false;
                for (const Cplx& l : entry.solver_lambdas)
                    if (std::abs(l - Cplx(1.0, 0.0)) <= tol) has_abelian = true;
                entry.ok = has_abelian &&
                           static_cast<int>(entry.solver_lambdas.size()) == entry.expected_count;
                if (!entry.ok)
                    entry.note = "solver fiber size does not match abelian + Riley roots";
            } else {
                entry.note = "no representation model for this alias";
            }
        } catch (const std::exception& e) {
            entry.ok = false;
            entry.note = e.what();
        }
        if (!entry.ok) ++report.mismatches;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

/// CSV serialization, lossless at full float precision. Columns:
/// family,degree,p,q,k,mu_re,mu_im,lambda_re,lambda_im,residual
inline std::string curve_points_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream os;
    os.precision(17);
    os << "family,degree,p,q,k,mu_re,mu_im,lambda_re,lambda_im,residual\n";
    for (const CurvePoint& pt : points)
        os << pt.family << "," << pt.degree << "," << pt.p << "," << pt.q << "," << pt.k << ","
           << pt.mu0.real() << "," << pt.mu0.imag() << "," << pt.lambda0.real() << ","
           << pt.lambda0.imag() << "," << pt.residual << "\n";
    return os.str();
}

inline std::vector<CurvePoint> curve_points_from_csv(const std::string& text) {
    std::vector<CurvePoint> points;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t next = line.find(',', pos);
            if (next == std::string::npos) next = line.size();
            cells.push_back(line.substr(pos, next - pos));
            pos = next + 1;
        }
        if (cells.size() != 10) throw ParseError("curve CSV row must have 10 columns");
        CurvePoint pt;
        pt.family = cells[0];
        pt.degree = std::stoi(cells[1]);
        pt.p = std::stoi(cells[2]);
        pt.q = std::stoi(cells[3]);
        pt.k = std::stoi(cells[4]);
        pt.mu0 = Cplx(std::stod(cells[5]), std::stod(cells[6]));
        pt.lambda0 = Cplx(std::stod(cells[7]), std::stod(cells[8]));
        pt.residual = std::stod(cells[9]);
        points.push_back(pt);
    }
    return points;
}

/// Sort order for emitted points: (family, degree, grid position).
inline void sort_curve_points(std::vector<CurvePoint>& points, const std::vector<Cplx>& grid) {
    auto grid_index = [&grid](Cplx mu0) {
        for (std::size_t t = 0; t < grid.size(); ++t)
            if (grid[t] == mu0) return t;
        return grid.size();
    };
    std::stable_sort(points.begin(), points.end(), [&](const CurvePoint& a, const CurvePoint& b) {
        if (a.family != b.family) return a.family < b.family;
        if (a.degree != b.degree) return a.degree < b.degree;
        return grid_index(a.mu0) < grid_index(b.mu0);
    });
}

} // namespace kch
