#pragma once

#include <vector>

#include "kch/linalg.hpp"
#include "kch/reps.hpp"

namespace kch {

/// Riley's conjugated generator images for K(p,q):
///   N = [[mu, 1], [0, 1]],   C = [[mu, 0], [-mu u, 1]].
inline Matrix riley_N(Cplx mu0) {
    Matrix n(2, 2);
    n << mu0, Cplx(1.0, 0.0), Cplx(0.0, 0.0), Cplx(1.0, 0.0);
    return n;
}
inline Matrix riley_C(Cplx mu0, Cplx u) {
    Matrix c(2, 2);
    c << mu0, Cplx(0.0, 0.0), -mu0 * u, Cplx(1.0, 0.0);
    return c;
}

/// W(u) = N^{eps_1} C^{eps_2} ... N^{eps_{2k-1}} C^{eps_{2k}} following the
/// Schubert word of K(p,q).
inline Matrix riley_word_matrix(int p, int q, Cplx mu0, Cplx u) {
    const std::vector<int> eps = schubert_epsilons(p, q);
    const Matrix N = riley_N(mu0), C = riley_C(mu0, u);
    const Matrix Ninv = mat_inverse(N), Cinv = mat_inverse(C);
    Matrix w = Matrix::Identity(2, 2);
    for (std::size_t t = 0; t < eps.size(); ++t) {
        const bool is_m = t % 2 == 0;
        const Matrix& f = eps[t] > 0 ? (is_m ? N : C) : (is_m ? Ninv : Cinv);
        w = w * f;
    }
    return w;
}

/// The non-abelian (Riley) polynomial Phi_W(u) = W_11 + (1 - mu) W_12 of
/// K(p,q) at fixed mu0, with its roots. Degree (p-1)/2; recovered by
/// sampling W at p+1 points and fitting, roots by companion matrix. A root u
/// corresponds to the augmentation value beta = eps([b]) via
/// -mu0 u = eps([m] - [b]) = mu0 (1 - mu0) - beta.
struct RileyPolynomial {
    int p = 0, q = 0;
    Cplx mu0;
    std::vector<Cplx> coeffs; // ascending in u
    std::vector<Cplx> roots;

    Cplx eval(Cplx u) const {
        Cplx acc(0.0, 0.0), pw(1.0, 0.0);
        for (const Cplx& c : coeffs) {
            acc += c * pw;
            pw *= u;
        }
        return acc;
    }
    Cplx beta_of_root(Cplx u) const { return mu0 * (Cplx(1.0, 0.0) - mu0) + mu0 * u; }
};

inline RileyPolynomial riley_polynomial(int p, int q, Cplx mu0) {
    if (std::abs(mu0) < 1e-12 || std::abs(mu0 - Cplx(1.0, 0.0)) < 1e-12)
        throw PreconditionError("riley_polynomial: mu0 must avoid {0, 1}");
    two_bridge_presentation(p, q); // parameter validation
    RileyPolynomial out;
    out.p = p;
    out.q = q;
    out.mu0 = mu0;
    const std::size_t deg = static_cast<std::size_t>((p - 1) / 2);
    const int samples = p + 1;
    std::vector<Cplx> us, vals;
    us.reserve(static_cast<std::size_t>(samples));
    vals.reserve(static_cast<std::size_t>(samples));
    for (int t = 0; t < samples; ++t) {
        const double ang = 6.283185307179586476925286766559 * t / samples + 0.5;
        const Cplx u = 1.7 * Cplx(std::cos(ang), std::sin(ang)) + Cplx(0.31, 0.17);
        const Matrix w = riley_word_matrix(p, q, mu0, u);
        us.push_back(u);
        vals.push_back(w(0, 0) + (Cplx(1.0, 0.0) - mu0) * w(0, 1));
    }
    out.coeffs = poly_fit(us, vals, deg);
    out.roots = poly_roots(out.coeffs, 1e-12);
    const auto deriv = poly_derivative(out.coeffs);
    auto phi_exact = [&](Cplx u) {
        const Matrix w = riley_word_matrix(p, q, mu0, u);
        return w(0, 0) + (Cplx(1.0, 0.0) - mu0) * w(0, 1);
    };
    for (Cplx& root : out.roots) root = polish_root(phi_exact, deriv, root);
    std::sort(out.roots.begin(), out.roots.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

/// Meridian and b-generator images of the 2-bridge representation induced by
/// an augmentation with eps([b]) = beta:
///   M = diag[mu, 1],
///   B = [[ beta/(1-mu),  (beta-(1-mu)) (mu(1-mu)-beta) / (1-mu)^2 ],
///        [ 1,            (1 - mu^2 - beta) / (1-mu)              ]].
inline Matrix two_bridge_B(Cplx mu0, Cplx beta) {
    const Cplx one(1.0, 0.0);
    Matrix b(2, 2);
    b(0, 0) = beta / (one - mu0);
    b(0, 1) = (beta - (one - mu0)) * (mu0 * (one - mu0) - beta) / ((one - mu0) * (one - mu0));
    b(1, 0) = one;
    b(1, 1) = (one - mu0 * mu0 - beta) / (one - mu0);
    return b;
}

struct TwoBridgeRepOptions {
    double relator_tol = 1e-8;
    double exact_tol = 1e-10; // det/trace identities
    double abelian_tol = 1e-10;
};

/// KCH representation of K(p,q) determined by beta = eps([b]). Returned only
/// if the Riley condition holds (relator residual below tolerance). When
/// beta equals eps([m]) = mu0(1 - mu0) the induced augmentation is abelian;
/// callers should use the 1-dimensional representation instead.
inline KCHRep two_bridge_rep(int p, int q, Cplx mu0, Cplx beta,
                             const TwoBridgeRepOptions& opt = {}) {
    if (std::abs(mu0) < 1e-12 || std::abs(mu0 - Cplx(1.0, 0.0)) < 1e-12)
        throw PreconditionError("two_bridge_rep: mu0 must avoid {0, 1}");
    const Presentation pres = two_bridge_presentation(p, q);
    if (std::abs(beta - mu0 * (Cplx(1.0, 0.0) - mu0)) <=
        opt.abelian_tol * std::max(1.0, std::abs(beta)))
        throw AbelianDegenerate("two_bridge_rep: eps([b]) = eps([m]); use the 1-dim rep");

    Matrix M = Matrix::Identity(2, 2);
    M(0, 0) = mu0;
    const Matrix B = two_bridge_B(mu0, beta);

    const Cplx det = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0);
    const Cplx tr = B(0, 0) + B(1, 1);
    if (std::abs(det - mu0) > opt.exact_tol * std::max(1.0, std::abs(mu0)) ||
        std::abs(tr - (Cplx(1.0, 0.0) + mu0)) > opt.exact_tol * std::max(1.0, std::abs(tr)))
        throw NotARepresentation("two_bridge_rep: det/trace identities failed");

    KCHRep rep = make_kch_rep(pres, {M, B}, mu0);
    const double res = relator_residual(rep);
    if (res > opt.relator_tol)
        throw NotARepresentation("two_bridge_rep: Riley condition fails for this beta (residual " +
                                 std::to_string(res) + ")");
    return rep;
}

} // namespace kch
