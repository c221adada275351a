#pragma once

#include <numeric>
#include <vector>

#include "kch/linalg.hpp"
#include "kch/reps.hpp"

namespace kch {

/// Companion-like form used by the torus construction: x's across the first
/// row, ones on the subdiagonal, y's down the last column,
///
///       [ x_1 x_2 ... x_{n-1} y_0 ]
///       [  1   0  ...    0    y_1 ]
///       [  0   1         0    y_2 ]
///       [          ...            ]
///       [  0      ...    1  y_{n-1}]
///
/// Its characteristic polynomial a_0 + ... + a_{n-1} t^{n-1} + t^n has
///   a_{n-i} = -x_i - y_{n-i} + sum_{j=1}^{i-1} x_j y_{n-i+j}   (x_n = 0).
inline std::vector<Cplx> companion_charpoly(const std::vector<Cplx>& x,
                                            const std::vector<Cplx>& y) {
    const std::size_t n = y.size();
    if (x.size() + 1 != n) throw InvalidParams("companion_charpoly: need n-1 x's and n y's");
    std::vector<Cplx> a(n);
    for (std::size_t i = 1; i <= n; ++i) {
        Cplx xi = i <= n - 1 ? x[i - 1] : Cplx(0.0, 0.0);
        Cplx acc = -xi - y[n - i];
        for (std::size_t j = 1; j < i; ++j) acc += x[j - 1] * y[n - i + j];
        a[n - i] = acc;
    }
    return a;
}

inline Matrix companion_matrix(const std::vector<Cplx>& x, const std::vector<Cplx>& y) {
    const Eigen::Index n = static_cast<Eigen::Index>(y.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index c = 0; c + 1 < n; ++c) {
        m(0, c) = x[static_cast<std::size_t>(c)];
        m(c + 1, c) = 1.0;
    }
    for (Eigen::Index r = 0; r < n; ++r) m(r, n - 1) = y[static_cast<std::size_t>(r)];
    return m;
}

/// Solve the y-column so the companion form with the given x-row has the
/// monic characteristic polynomial c (ascending, length n). The recursion is
/// y_{n-1} = -c_{n-1} - x_1, then
/// y_{n-i} = -c_{n-i} - x_i + sum_{j=1}^{i-1} x_j y_{n-i+j}.
inline std::vector<Cplx> companion_fill(const std::vector<Cplx>& c, const std::vector<Cplx>& x) {
    const std::size_t n = c.size();
    if (x.size() + 1 != n) throw InvalidParams("companion_fill: need n-1 x's for degree n");
    std::vector<Cplx> y(n);
    for (std::size_t i = 1; i <= n; ++i) {
        Cplx xi = i <= n - 1 ? x[i - 1] : Cplx(0.0, 0.0);
        Cplx acc = -c[n - i] - xi;
        for (std::size_t j = 1; j < i; ++j) acc += x[j - 1] * y[n - i + j];
        y[n - i] = acc;
    }
    return y;
}

namespace detail {

/// All k-subsets of {0, ..., total-1}, visited in lexicographic order.
template <typename Fn>
inline void for_each_subset(int total, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (fn(idx)) return;
        int t = k - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] == total - k + t) --t;
        if (t < 0) return;
        ++idx[static_cast<std::size_t>(t)];
        for (int u = t + 1; u < k; ++u)
            idx[static_cast<std::size_t>(u)] = idx[static_cast<std::size_t>(u - 1)] + 1;
    }
}

/// n pairwise-distinct d-th roots of z whose product is `target`, found by
/// subset search over all d-th roots; every match is collected so callers
/// can retry on numerically poor choices.
inline std::vector<std::vector<Cplx>> root_subsets(Cplx z, int d, int n, Cplx target,
                                                   double rel_tol = 1e-9,
                                                   std::size_t max_hits = 64) {
    const Cplx base = std::pow(z, 1.0 / static_cast<double>(d));
    std::vector<Cplx> roots(static_cast<std::size_t>(d));
    for (int t = 0; t < d; ++t) {
        const double ang = 6.283185307179586476925286766559 * t / d;
        roots[static_cast<std::size_t>(t)] = base * Cplx(std::cos(ang), std::sin(ang));
    }
    const double scale = std::max(std::abs(target), 1e-300);
    std::vector<std::vector<Cplx>> hits;
    for_each_subset(d, n, [&](const std::vector<int>& idx) {
        Cplx prod(1.0, 0.0);
        for (int t : idx) prod *= roots[static_cast<std::size_t>(t)];
        if (std::abs(prod - target) <= rel_tol * scale) {
            std::vector<Cplx> sel;
            sel.reserve(idx.size());
            for (int t : idx) sel.push_back(roots[static_cast<std::size_t>(t)]);
            hits.push_back(std::move(sel));
        }
        return hits.size() >= max_hits;
    });
    return hits;
}

inline bool pairwise_distinct(const std::vector<Cplx>& v, double tol) {
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b)
            if (std::abs(v[a] - v[b]) <= tol) return false;
    return true;
}

/// Diagonalize `m`, match its eigenvalues bijectively onto `expected`, and
/// return V diag(replacement) V^-1 with the matched ordering.
inline std::optional<Matrix> rebuild_with_eigenvalues(const Matrix& m,
                                                      const std::vector<Cplx>& expected,
                                                      const std::vector<Cplx>& replacement,
                                                      double match_tol) {
    Eigen::ComplexEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) return std::nullopt;
    const Eigen::Index n = m.rows();
    std::vector<bool> used(expected.size(), false);
    Vector diag(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const Cplx ev = es.eigenvalues()(t);
        int best = -1;
        double best_d = match_tol;
        for (std::size_t u = 0; u < expected.size(); ++u) {
            if (used[u]) continue;
            const double dd = std::abs(ev - expected[u]);
            if (dd < best_d) {
                best_d = dd;
                best = static_cast<int>(u);
            }
        }
        if (best < 0) return std::nullopt;
        used[static_cast<std::size_t>(best)] = true;
        diag(t) = replacement[static_cast<std::size_t>(best)];
    }
    const Matrix V = es.eigenvectors();
    Eigen::FullPivLU<Matrix> lu(V);
    if (!lu.isInvertible()) return std::nullopt;
    return V * Matrix(diag.asDiagonal()) * lu.inverse();
}

} // namespace detail

struct TorusRepOptions {
    double root_rel_tol = 1e-9;
    double charpoly_tol = 1e-9;
    double post_tol = 1e-8;
    double distinct_tol = 1e-8;
};

/// Degree-n KCH representation of the (p,q)-torus knot group at meridian
/// eigenvalue mu0: rho(x) = X, rho(y) = Y with X^p = Y^q = zI and
/// X^s Y^r = diag[mu0, 1, ..., 1]. `branch` selects z among the n-th roots
/// of mu0^{pq} when n < p; z = (-1)^{n-1} mu0^q is forced at n = p.
/// The induced point has lambda0 = z mu0^{-pq}.
inline KCHRep torus_rep(int p, int q, int n, Cplx mu0, int branch = 0,
                        const TorusRepOptions& opt = {}) {
    if (!(1 <= p && p < q) || std::gcd(p, q) != 1)
        throw InvalidParams("torus_rep: need 1 <= p < q coprime");
    if (!(1 <= n && n <= p)) throw InvalidParams("torus_rep: need 1 <= n <= p");
    if (std::abs(mu0) < 1e-12 || std::abs(mu0 - Cplx(1.0, 0.0)) < 1e-12)
        throw PreconditionError("torus_rep: mu0 must avoid {0, 1}");

    const Presentation pres = torus_presentation(p, q);
    // recover (r, s) from the meridian word x^s y^r
    long s = 0, r = 0;
    for (const auto& [id, exp] : pres.meridian.letters()) (id == 0 ? s : r) += exp;

    Cplx z;
    if (n == p) {
        z = (n % 2 == 1 ? 1.0 : -1.0) * cpow_int(mu0, q);
    } else {
        const Cplx zn = cpow_int(mu0, static_cast<long>(p) * q);
        const Cplx principal = std::pow(zn, 1.0 / static_cast<double>(n));
        const double ang = 6.283185307179586476925286766559 * (branch % n) / n;
        z = principal * Cplx(std::cos(ang), std::sin(ang));
    }

    const auto zeta_sets = detail::root_subsets(z, q, n, cpow_int(mu0, p), opt.root_rel_tol);
    const auto eta_sets = detail::root_subsets(z, p, n, cpow_int(mu0, q), opt.root_rel_tol);
    if (zeta_sets.empty() || eta_sets.empty())
        throw RootSelectionFailure("torus_rep: no distinct-root subset with the required product");

    std::string last_failure = "torus_rep: all root-subset choices collided";
    for (const auto& zetas : zeta_sets) {
        for (const auto& etas : eta_sets) {
            // target spectra of the companion forms
            std::vector<Cplx> ytilde_spec, xtilde_spec;
            for (const Cplx& zt : zetas) ytilde_spec.push_back(cpow_int(zt, -r));
            for (const Cplx& et : etas) xtilde_spec.push_back(cpow_int(et, s));
            if (!detail::pairwise_distinct(ytilde_spec, opt.distinct_tol) ||
                !detail::pairwise_distinct(xtilde_spec, opt.distinct_tol)) {
                last_failure = "torus_rep: eigenvalue collision in zeta^-r or eta^s";
                continue;
            }
            std::vector<Cplx> cY = poly_from_roots(ytilde_spec);
            std::vector<Cplx> cX = poly_from_roots(xtilde_spec);
            cY.pop_back(); // drop the monic leading 1
            cX.pop_back();

            // Solve the x-row so that charpoly(M Ytilde) = cX. Each target
            // coefficient is affine in its x_i with slope -(mu0 - 1), so two
            // probes per step determine it.
            std::vector<Cplx> x(static_cast<std::size_t>(n - 1), Cplx(0.0, 0.0));
            auto xtilde_coeffs = [&](const std::vector<Cplx>& xs) {
                const std::vector<Cplx> y = companion_fill(cY, xs);
                std::vector<Cplx> xs_scaled(xs);
                for (Cplx& v : xs_scaled) v *= mu0;
                std::vector<Cplx> y_scaled(y);
                y_scaled[0] *= mu0;
                return companion_charpoly(xs_scaled, y_scaled);
            };
            for (int i = 1; i <= n - 1; ++i) {
                std::vector<Cplx> probe = x;
                probe[static_cast<std::size_t>(i - 1)] = Cplx(0.0, 0.0);
                const Cplx b0 = xtilde_coeffs(probe)[static_cast<std::size_t>(n - i)];
                probe[static_cast<std::size_t>(i - 1)] = Cplx(1.0, 0.0);
                const Cplx b1 = xtilde_coeffs(probe)[static_cast<std::size_t>(n - i)];
                const Cplx slope = b1 - b0;
                x[static_cast<std::size_t>(i - 1)] =
                    (cX[static_cast<std::size_t>(n - i)] - b0) / slope;
            }

            const std::vector<Cplx> y = companion_fill(cY, x);
            const std::vector<Cplx> got = xtilde_coeffs(x);
            double cp_err = 0.0;
            for (int t = 0; t < n; ++t)
                cp_err = std::max(cp_err,
                                  std::abs(got[static_cast<std::size_t>(t)] -
                                           cX[static_cast<std::size_t>(t)]));
            if (cp_err > opt.charpoly_tol) {
                last_failure = "torus_rep: solved x-row fails the charpoly target";
                continue;
            }

            const Matrix Ytilde = companion_matrix(x, y);
            Matrix M = Matrix::Identity(n, n);
            M(0, 0) = mu0;
            const Matrix Xtilde = M * Ytilde;

            std::vector<Cplx> etas_v(etas.begin(), etas.end());
            std::vector<Cplx> zetas_v(zetas.begin(), zetas.end());
            auto Xopt = detail::rebuild_with_eigenvalues(Xtilde, xtilde_spec, etas_v, 1e-6);
            auto Yopt = detail::rebuild_with_eigenvalues(Ytilde, ytilde_spec, zetas_v, 1e-6);
            if (!Xopt || !Yopt) {
                last_failure = "torus_rep: eigenvalue matching failed";
                continue;
            }
            const Matrix& X = *Xopt;
            const Matrix& Y = *Yopt;

            const Matrix zI = z * Matrix::Identity(n, n);
            const double defect =
                std::max({max_abs(mat_pow(X, p) - zI), max_abs(mat_pow(Y, q) - zI),
                          max_abs(mat_pow(X, s) * mat_pow(Y, r) - M)});
            if (defect > opt.post_tol) {
                last_failure = "torus_rep: postcondition residual too large";
                continue;
            }

            KCHRep rep = make_kch_rep(pres, {X, Y}, mu0);
            // z = mu0^{pq} at n = 1, so lambda0 = 1 identically
            rep.lambda0 = n == 1 ? Cplx(1.0, 0.0) : z * cpow_int(mu0, -static_cast<long>(p) * q);
            return rep;
        }
    }
    if (last_failure.find("collision") != std::string::npos)
        throw EigenvalueCollision(last_failure);
    throw RootSelectionFailure(last_failure);
}

} // namespace kch
