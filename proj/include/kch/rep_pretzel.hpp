#pragma once

#include <vector>

#include "kch/linalg.hpp"
#include "kch/reps.hpp"

namespace kch {

/// y is tied to x throughout the pretzel construction.
inline Cplx pretzel_y(Cplx mu0, Cplx x) {
    return Cplx(1.0, 0.0) + mu0 + (Cplx(1.0, 0.0) / mu0 - Cplx(1.0, 0.0)) * x;
}

/// The candidate image of w for the (-2,3,2k+1) pretzel knot: the generic
/// 3x3 KCH shape with eps([w]) = 1 and eps([w^-1]) = -mu frozen in,
///
///   W = [ 1/(1-mu)   x   mu^2 + mu^3/(1-mu)^2 + x y ]
///       [    1       0   mu^3/(1-mu)                ]
///       [    0       1   y                          ]
inline Matrix pretzel_W(Cplx mu0, Cplx x) {
    const Cplx one(1.0, 0.0);
    const Cplx y = pretzel_y(mu0, x);
    Matrix w = Matrix::Zero(3, 3);
    w(0, 0) = one / (one - mu0);
    w(0, 1) = x;
    w(0, 2) = mu0 * mu0 + mu0 * mu0 * mu0 / ((one - mu0) * (one - mu0)) + x * y;
    w(1, 0) = one;
    w(1, 2) = mu0 * mu0 * mu0 / (one - mu0);
    w(2, 1) = one;
    w(2, 2) = y;
    return w;
}

/// Closed forms of E_0 = rho(E) and F_0 = rho(F) in the same basis; used as
/// an independent check against the word-evaluated matrices.
inline Matrix pretzel_E0_formula(Cplx mu0, Cplx x) {
    const Cplx one(1.0, 0.0);
    Matrix e = Matrix::Zero(3, 3);
    e(0, 0) = -mu0 / (one - mu0);
    e(0, 1) = one + mu0 / ((one - mu0) * (one - mu0));
    e(0, 2) = mu0 * x / (one - mu0);
    e(1, 0) = -one / mu0;
    e(1, 1) = one / (mu0 * (one - mu0));
    e(1, 2) = x;
    e(2, 2) = one;
    return e;
}
inline Matrix pretzel_F0_formula(Cplx mu0, Cplx x) {
    const Cplx one(1.0, 0.0);
    const Cplx y = pretzel_y(mu0, x);
    Matrix f = Matrix::Zero(3, 3);
    f(0, 0) = one;
    f(1, 1) = y / mu0;
    f(1, 2) = x * y * (one - mu0) / (mu0 * mu0) + one;
    f(2, 1) = -one / mu0;
    f(2, 2) = -x * (one - mu0) / (mu0 * mu0);
    return f;
}

/// Phi_k(x) = (W^{k+1})_11 - (W^k)_11 as a polynomial in x, recovered by
/// sampling and fitting with 2(|k|+1)+2 points; trailing coefficients below
/// 1e-12 relative are trimmed before root extraction.
struct PretzelRootPoly {
    int k = 0;
    Cplx mu0;
    std::vector<Cplx> coeffs;
    std::vector<Cplx> roots;
};

inline PretzelRootPoly pretzel_phi_k(int k, Cplx mu0) {
    if (k == -1 || k == 0) throw InvalidParams("pretzel_phi_k: k != -1, 0 required");
    if (std::abs(mu0) < 1e-12 || std::abs(mu0 - Cplx(1.0, 0.0)) < 1e-12)
        throw PreconditionError("pretzel_phi_k: mu0 must avoid {0, 1}");
    PretzelRootPoly out;
    out.k = k;
    out.mu0 = mu0;
    const int samples = 2 * (std::abs(k) + 1) + 2;
    std::vector<Cplx> xs, vals;
    xs.reserve(static_cast<std::size_t>(samples));
    vals.reserve(static_cast<std::size_t>(samples));
    for (int t = 0; t < samples; ++t) {
        const double ang = 6.283185307179586476925286766559 * t / samples + 0.35;
        const Cplx x = 1.45 * Cplx(std::cos(ang), std::sin(ang)) + Cplx(0.23, 0.11);
        const Matrix w = pretzel_W(mu0, x);
        const Matrix wk = mat_pow(w, k);
        const Matrix wk1 = mat_pow(w, k + 1);
        xs.push_back(x);
        vals.push_back(wk1(0, 0) - wk(0, 0));
    }
    out.coeffs = poly_fit(xs, vals, static_cast<std::size_t>(samples - 1));
    out.roots = poly_roots(out.coeffs, 1e-12);
    if (out.roots.empty())
        throw NoRoot("pretzel_phi_k: Phi_k has no root at this mu0");
    // polish against the exact matrix evaluation; fitted roots drift for
    // larger |k|
    const auto deriv = poly_derivative(out.coeffs);
    auto phi_exact = [&](Cplx x) {
        const Matrix w = pretzel_W(mu0, x);
        return mat_pow(w, k + 1)(0, 0) - mat_pow(w, k)(0, 0);
    };
    for (Cplx& root : out.roots) root = polish_root(phi_exact, deriv, root);
    std::sort(out.roots.begin(), out.roots.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

struct PretzelRepOptions {
    double r_tol = 1e-8;
    double relator_tol = 1e-8;
};

/// Degree-3 KCH representation of the (-2,3,2k+1) pretzel knot at mu0:
/// m -> diag[mu0,1,1], w -> W with x a root of Phi_k. The identity R = W^k E0 - F0 W^k = 0 is
/// verified numerically, never assumed; lambda0 is computed from the
/// longitude word.
inline KCHRep pretzel_rep(int k, Cplx mu0, int root_index = 0, const PretzelRepOptions& opt = {}) {
    const PretzelRootPoly phi = pretzel_phi_k(k, mu0);
    if (root_index < 0 || root_index >= static_cast<int>(phi.roots.size()))
        throw InvalidParams("pretzel_rep: root_index out of range (roots: " +
                            std::to_string(phi.roots.size()) + ")");
    const Cplx x = phi.roots[static_cast<std::size_t>(root_index)];
    const Matrix W = pretzel_W(mu0, x);
    Matrix M = Matrix::Identity(3, 3);
    M(0, 0) = mu0;
    const Matrix Minv = mat_inverse(M), Winv = mat_inverse(W);
    const Matrix E0 = M * W * Minv * Winv * Minv;
    const Matrix F0 = Minv * Winv * M * W * M * Winv;

    const Matrix R = mat_pow(W, k) * E0 - F0 * mat_pow(W, k);
    if (max_abs(R) > opt.r_tol)
        throw RNotZero("pretzel_rep: R = W^k E0 - F0 W^k has norm " + std::to_string(max_abs(R)));

    const Presentation pres = pretzel_presentation(k);
    KCHRep rep = make_kch_rep(pres, {M, W}, mu0);
    const double res = relator_residual(rep);
    if (res > opt.relator_tol)
        throw NotARepresentation("pretzel_rep: relator residual " + std::to_string(res));
    rep.lambda0 = longitude_eigenvalue(rep).lambda0;
    return rep;
}

/// Residual suite over the identities the pretzel construction must satisfy:
/// F0 M = M F0, E0 W = F0^-1, [w^j m w] = mu^{2j+1} [w^{-j-1} m w] for
/// j = 0..5, mu^{-i} [w^{k+i} m w] + mu^{i} [w^{k-i} m w] = 0 for
/// i = 0..k+1, and the closing values [w^{k+1} m w^k m w] = -mu^{2k+2},
/// [w^k m w^k m w] = -mu^{2k+1}.
struct PretzelIdentityReport {
    double commute = 0.0;   // F0 M - M F0
    double e0w_f0inv = 0.0; // E0 W - F0^-1
    double power_pairs = 0.0;
    double power_sums = 0.0;
    double closing = 0.0;
    double max_residual = 0.0;
};

inline PretzelIdentityReport pretzel_identity_suite(const KCHRep& rep, int k) {
    PretzelIdentityReport out;
    const GroupWord m = GroupWord::gen(0), w = GroupWord::gen(1);
    const GroupWord E = rep.pres.parse_word("m.w.m^-1.w^-1.m^-1");
    const GroupWord F = rep.pres.parse_word("m^-1.w^-1.m.w.m.w^-1");
    const Matrix E0 = eval_word(rep, E);
    const Matrix F0 = eval_word(rep, F);
    const Matrix M = eval_word(rep, m);
    const Matrix W = eval_word(rep, w);
    const Cplx mu0 = rep.mu0;

    out.commute = max_abs(F0 * M - M * F0);
    out.e0w_f0inv = max_abs(E0 * W - mat_inverse(F0));

    auto aug = [&](const GroupWord& g) { return induced_aug(rep, g); };
    for (int j = 0; j <= 5; ++j) {
        const Cplx lhs = aug(w.pow(j) * m * w);
        const Cplx rhs = cpow_int(mu0, 2 * j + 1) * aug(w.pow(-j - 1) * m * w);
        out.power_pairs = std::max(out.power_pairs, std::abs(lhs - rhs));
    }
    for (int i = 0; k >= 1 && i <= k + 1; ++i) {
        const Cplx v = cpow_int(mu0, -i) * aug(w.pow(k + i) * m * w) +
                       cpow_int(mu0, i) * aug(w.pow(k - i) * m * w);
        out.power_sums = std::max(out.power_sums, std::abs(v));
    }
    if (k >= 1) {
        const Cplx c1 = aug(w.pow(k + 1) * m * w.pow(k) * m * w) + cpow_int(mu0, 2 * k + 2);
        const Cplx c2 = aug(w.pow(k) * m * w.pow(k) * m * w) + cpow_int(mu0, 2 * k + 1);
        out.closing = std::max(std::abs(c1), std::abs(c2));
    }
    out.max_residual =
        std::max({out.commute, out.e0w_f0inv, out.power_pairs, out.power_sums, out.closing});
    return out;
}

} // namespace kch
