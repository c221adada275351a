#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kch/braid.hpp"
#include "kch/linalg.hpp"
#include "kch/ncpoly.hpp"
#include "kch/rng.hpp"

namespace kch {

/// A candidate augmentation at the braid level: complex values for the
/// generators a_ij plus the ring values (lambda0, mu0), both in C*.
struct AugAssignment {
    int n = 0;
    std::map<Gen, Cplx> values;
    Cplx lambda0{1.0, 0.0};
    Cplx mu0{1.0, 0.0};

    static AugAssignment zeros(int n, Cplx lambda0, Cplx mu0) {
        AugAssignment a;
        a.n = n;
        a.lambda0 = lambda0;
        a.mu0 = mu0;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j) a.values[Gen{i, j}] = Cplx(0.0, 0.0);
        return a;
    }
};

/// Evaluate one ideal generator at an assignment.
inline Cplx evaluate(const NcPoly& p, const AugAssignment& a) {
    return p.eval(a.values, a.lambda0, a.mu0);
}

/// Residuals of all ideal generators at an assignment.
struct ResidualReport {
    double max_abs = 0.0;
    double tol = 0.0;
    std::vector<std::pair<std::string, double>> per_generator;
    bool passes() const { return max_abs <= tol; }
};

inline ResidualReport is_augmentation(const IdealPresentation& ideal, const AugAssignment& a,
                                      double tol) {
    if (ideal.n != a.n) throw RankMismatch("is_augmentation: rank mismatch");
    ResidualReport rep;
    rep.tol = tol;
    rep.per_generator.reserve(ideal.generators.size());
    for (const auto& g : ideal.generators) {
        const double r = std::abs(evaluate(g.poly, a));
        rep.per_generator.emplace_back(g.tag(), r);
        rep.max_abs = std::max(rep.max_abs, r);
    }
    return rep;
}

/// Commutative image of one ideal generator: words collapse to monomials in
/// the variables x_ij; the lambda content of each Laurent coefficient moves
/// into the monomial, leaving coefficients polynomial in mu alone.
struct CommTerm {
    LaurentPoly mu_coeff;  // e_lambda == 0 throughout
    long lambda_exp = 0;   // may be negative; lambda != 0 on the variety
    std::map<Gen, int> var_exps;
};

struct CommPoly {
    std::vector<CommTerm> terms;

    Cplx eval(const AugAssignment& a) const {
        Cplx acc(0.0, 0.0);
        for (const CommTerm& t : terms) {
            Cplx v = t.mu_coeff.eval(Cplx(1.0, 0.0), a.mu0) * cpow_int(a.lambda0, t.lambda_exp);
            for (const auto& [g, e] : t.var_exps) v *= cpow_int(a.values.at(g), e);
            acc += v;
        }
        return acc;
    }
};

inline CommPoly commutative_image(const NcPoly& p) {
    // collect by (lambda_exp, var exponent vector) so that commuting
    // collapses merge
    std::map<std::pair<long, std::map<Gen, int>>, LaurentPoly> acc;
    for (const auto& [w, c] : p.terms()) {
        std::map<Gen, int> exps;
        for (const Gen& g : w) ++exps[g];
        for (const auto& [e, z] : c.terms())
            acc[{e.first, exps}] += LaurentPoly::monomial(z, 0, e.second);
    }
    CommPoly out;
    for (auto& [key, mu_c] : acc) {
        if (mu_c.is_zero()) continue;
        out.terms.push_back(CommTerm{mu_c, key.first, key.second});
    }
    return out;
}

inline std::vector<CommPoly> commutative_system(const IdealPresentation& ideal) {
    std::vector<CommPoly> sys;
    sys.reserve(ideal.generators.size());
    for (const auto& g : ideal.generators) sys.push_back(commutative_image(g.poly));
    return sys;
}

namespace detail {

/// The fixed variable order used by the numeric solver: all a_ij in (i,j)
/// order, then lambda last.
inline std::vector<Gen> solver_vars(int n) {
    std::vector<Gen> vars;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) vars.push_back(Gen{i, j});
    return vars;
}

/// Compiled commutative system at fixed mu0: per equation, terms with
/// complex coefficient, lambda exponent and packed variable exponents.
struct CompiledSystem {
    struct Term {
        Cplx coeff;
        long lambda_exp;
        std::vector<std::pair<int, int>> exps; // (variable index, exponent)
    };
    int n = 0;
    bool lambda_free = true; // lambda is an unknown
    Cplx lambda_fixed{1.0, 0.0};
    std::vector<Gen> vars;
    std::vector<std::vector<Term>> equations;

    int unknowns() const { return static_cast<int>(vars.size()) + (lambda_free ? 1 : 0); }

    void eval(const Vector& v, Vector& F) const {
        const int nv = static_cast<int>(vars.size());
        const Cplx lambda = lambda_free ? v(nv) : lambda_fixed;
        for (std::size_t e = 0; e < equations.size(); ++e) {
            Cplx acc(0.0, 0.0);
            for (const Term& t : equations[e]) {
                Cplx val = t.coeff * cpow_int(lambda, t.lambda_exp);
                for (const auto& [vi, ex] : t.exps) val *= cpow_int(v(vi), ex);
                acc += val;
            }
            F(static_cast<Eigen::Index>(e)) = acc;
        }
    }

    void jacobian(const Vector& v, Matrix& J) const {
        const int nv = static_cast<int>(vars.size());
        const Cplx lambda = lambda_free ? v(nv) : lambda_fixed;
        J.setZero();
        for (std::size_t e = 0; e < equations.size(); ++e) {
            for (const Term& t : equations[e]) {
                const Cplx lam_pow = cpow_int(lambda, t.lambda_exp);
                // d/dx_k
                for (std::size_t d = 0; d < t.exps.size(); ++d) {
                    Cplx val = t.coeff * lam_pow *
                               static_cast<double>(t.exps[d].second) *
                               cpow_int(v(t.exps[d].first), t.exps[d].second - 1);
                    for (std::size_t o = 0; o < t.exps.size(); ++o) {
                        if (o == d) continue;
                        val *= cpow_int(v(t.exps[o].first), t.exps[o].second);
                    }
                    J(static_cast<Eigen::Index>(e), t.exps[d].first) += val;
                }
                // d/dlambda
                if (lambda_free && t.lambda_exp != 0) {
                    Cplx val = t.coeff * static_cast<double>(t.lambda_exp) *
                               cpow_int(lambda, t.lambda_exp - 1);
                    for (const auto& [vi, ex] : t.exps) val *= cpow_int(v(vi), ex);
                    J(static_cast<Eigen::Index>(e), nv) += val;
                }
            }
        }
    }
};

inline CompiledSystem compile_system(const IdealPresentation& ideal, Cplx mu0, bool lambda_free,
                                     Cplx lambda_fixed) {
    CompiledSystem cs;
    cs.n = ideal.n;
    cs.lambda_free = lambda_free;
    cs.lambda_fixed = lambda_fixed;
    cs.vars = solver_vars(ideal.n);
    std::map<Gen, int> var_index;
    for (std::size_t t = 0; t < cs.vars.size(); ++t) var_index[cs.vars[t]] = static_cast<int>(t);
    for (const CommPoly& p : commutative_system(ideal)) {
        std::vector<CompiledSystem::Term> eq;
        for (const CommTerm& t : p.terms) {
            CompiledSystem::Term ct;
            ct.coeff = t.mu_coeff.eval(Cplx(1.0, 0.0), mu0);
            ct.lambda_exp = t.lambda_exp;
            for (const auto& [g, e] : t.var_exps) ct.exps.emplace_back(var_index.at(g), e);
            eq.push_back(std::move(ct));
        }
        cs.equations.push_back(std::move(eq));
    }
    return cs;
}

/// Damped Gauss-Newton from one start. Returns true on convergence.
inline bool gauss_newton(const CompiledSystem& cs, Vector& v, double target, int max_iter = 120) {
    const Eigen::Index m = static_cast<Eigen::Index>(cs.equations.size());
    const Eigen::Index nv = cs.unknowns();
    Vector F(m), Ftrial(m);
    Matrix J(m, nv);
    cs.eval(v, F);
    double fnorm = F.norm();
    for (int it = 0; it < max_iter; ++it) {
        if (!std::isfinite(fnorm)) return false;
        if (F.template lpNorm<Eigen::Infinity>() <= target) return true;
        cs.jacobian(v, J);
        Vector delta = J.colPivHouseholderQr().solve(-F);
        if (!delta.allFinite()) return false;
        double step = 1.0;
        bool improved = false;
        for (int half = 0; half < 24; ++half) {
            Vector trial = v + step * delta;
            cs.eval(trial, Ftrial);
            const double tnorm = Ftrial.norm();
            if (std::isfinite(tnorm) && tnorm < fnorm) {
                v = trial;
                F = Ftrial;
                fnorm = tnorm;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) return F.template lpNorm<Eigen::Infinity>() <= target;
    }
    return F.template lpNorm<Eigen::Infinity>() <= target;
}

} // namespace detail

struct SolveOptions {
    int attempts = 200;
    double tol = 1e-8;
    std::uint64_t seed = 42;
    double start_rmin = 0.1;
    double start_rmax = 10.0;
    double cluster_rel = 1e-5;
    double value_bound = 1e8;
};

struct SolveResult {
    std::vector<AugAssignment> solutions;
    std::vector<int> cluster_sizes; // parallel to solutions
    int attempts_total = 0;
    int attempts_converged = 0;

    std::vector<Cplx> lambda_values() const {
        std::vector<Cplx> ls;
        ls.reserve(solutions.size());
        for (const auto& s : solutions) ls.push_back(s.lambda0);
        return ls;
    }
};

namespace detail {

inline AugAssignment assignment_from_vector(const CompiledSystem& cs, const Vector& v, Cplx mu0) {
    AugAssignment a;
    a.n = cs.n;
    a.mu0 = mu0;
    for (std::size_t t = 0; t < cs.vars.size(); ++t) a.values[cs.vars[t]] = v(static_cast<int>(t));
    a.lambda0 = cs.lambda_free ? v(static_cast<int>(cs.vars.size())) : cs.lambda_fixed;
    return a;
}

inline SolveResult multistart_solve(const IdealPresentation& ideal, const CompiledSystem& cs,
                                    Cplx mu0, const SolveOptions& opt) {
    SolveResult out;
    out.attempts_total = opt.attempts;
    const int nv = cs.unknowns();
    const double target = opt.tol * 1e-2;
    std::vector<Vector> converged;

    Rng rng(opt.seed);
    for (int attempt = 0; attempt < opt.attempts; ++attempt) {
        Rng r = rng.fork(static_cast<std::uint64_t>(attempt));
        Vector v(nv);
        for (int t = 0; t < nv; ++t) v(t) = r.next_annulus(opt.start_rmin, opt.start_rmax);
        if (!detail::gauss_newton(cs, v, target)) continue;
        if (!v.allFinite() || v.template lpNorm<Eigen::Infinity>() > opt.value_bound) continue;
        if (cs.lambda_free && std::abs(v(nv - 1)) < 1e-10) continue; // lambda in C*
        ++out.attempts_converged;
        converged.push_back(v);
    }

    // deterministic order, then cluster by relative distance
    std::sort(converged.begin(), converged.end(), [](const Vector& a, const Vector& b) {
        for (Eigen::Index t = 0; t < a.size(); ++t) {
            if (a(t).real() != b(t).real()) return a(t).real() < b(t).real();
            if (a(t).imag() != b(t).imag()) return a(t).imag() < b(t).imag();
        }
        return false;
    });
    std::vector<Vector> reps;
    std::vector<int> sizes;
    for (const Vector& v : converged) {
        bool merged = false;
        for (std::size_t c = 0; c < reps.size(); ++c) {
            const double scale =
                std::max({1.0, reps[c].template lpNorm<Eigen::Infinity>(),
                          v.template lpNorm<Eigen::Infinity>()});
            if ((reps[c] - v).template lpNorm<Eigen::Infinity>() <= opt.cluster_rel * scale) {
                ++sizes[c];
                merged = true;
                break;
            }
        }
        if (!merged) {
            reps.push_back(v);
            sizes.push_back(1);
        }
    }

    for (std::size_t c = 0; c < reps.size(); ++c) {
        AugAssignment a = assignment_from_vector(cs, reps[c], mu0);
        // solver soundness: re-verify through the exact evaluation path
        if (is_augmentation(ideal, a, opt.tol).passes()) {
            out.solutions.push_back(std::move(a));
            out.cluster_sizes.push_back(sizes[c]);
        }
    }
    return out;
}

} // namespace detail

/// Sample the fiber of the augmentation variety over a fixed mu0: multistart
/// damped Gauss-Newton on the full overdetermined system, unknowns all a_ij
/// and lambda. mu0 in {0,1} is rejected; the mu0 = 1 fiber is covered by the
/// canonical augmentation separately. Throws NoConvergence if no start
/// converges at all.
inline SolveResult solve_augmentations(const IdealPresentation& ideal, Cplx mu0,
                                       const SolveOptions& opt = {}) {
    if (std::abs(mu0) < 1e-12 || std::abs(mu0 - Cplx(1.0, 0.0)) < 1e-12)
        throw PreconditionError("solve_augmentations: mu0 must avoid {0, 1}");
    const auto cs = detail::compile_system(ideal, mu0, /*lambda_free=*/true, Cplx(0.0, 0.0));
    SolveResult out = detail::multistart_solve(ideal, cs, mu0, opt);
    if (out.attempts_converged == 0)
        throw NoConvergence("solve_augmentations: no start converged");
    return out;
}

/// Complete a (lambda0, mu0) point to a full braid-side assignment by solving
/// for the a_ij only. Bridges representation-induced points onto the braid
/// side. Returns the solutions found (possibly empty if the point is not on
/// the variety).
inline SolveResult complete_assignment(const IdealPresentation& ideal, Cplx lambda0, Cplx mu0,
                                       const SolveOptions& opt = {}) {
    if (std::abs(mu0) < 1e-12 || std::abs(mu0 - Cplx(1.0, 0.0)) < 1e-12)
        throw PreconditionError("complete_assignment: mu0 must avoid {0, 1}");
    const auto cs = detail::compile_system(ideal, mu0, /*lambda_free=*/false, lambda0);
    return detail::multistart_solve(ideal, cs, mu0, opt);
}

/// Exact canonical-augmentation residual: a_ij = 0, mu0 = 1, rational
/// lambda0. Returns the largest |value| over all generators as an exact
/// rational (expected: 0).
inline mpq_class canonical_residual_exact(const IdealPresentation& ideal,
                                          const mpq_class& lambda0) {
    mpq_class worst(0);
    for (const auto& g : ideal.generators) {
        // words vanish at the zero assignment; only the scalar term survives
        auto it = g.poly.terms().find(NcWord{});
        if (it == g.poly.terms().end()) continue;
        mpq_class v = it->second.eval_exact(lambda0, mpq_class(1));
        if (v < 0) v = -v;
        if (v > worst) worst = v;
    }
    return worst;
}

} // namespace kch
