#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kch/complex.hpp"
#include "kch/errors.hpp"

namespace kch {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Integer matrix power; negative exponents use the inverse.
inline Matrix mat_pow(const Matrix& m, long e) {
    const Eigen::Index n = m.rows();
    Matrix acc = Matrix::Identity(n, n);
    if (e == 0) return acc;
    Matrix base = m;
    if (e < 0) {
        Eigen::FullPivLU<Matrix> lu(m);
        if (!lu.isInvertible()) throw SingularImage("mat_pow: singular matrix with negative power");
        base = lu.inverse();
        e = -e;
    }
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

inline Matrix mat_inverse(const Matrix& m) {
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) throw SingularImage("matrix not invertible");
    return lu.inverse();
}

/// Coefficients (ascending, monic implied: a_0 + a_1 t + ... + t^n) of the
/// polynomial with the given roots.
inline std::vector<std::complex<double>> poly_from_roots(
    const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t t = 0; t < c.size(); ++t) {
            next[t + 1] += c[t];
            next[t] -= r * c[t];
        }
        c = std::move(next);
    }
    return c; // degree n, c.back() == 1
}

/// Roots of a polynomial given by ascending coefficients, via the companion
/// matrix. Leading zeros (within `trim_rel` relative to the largest
/// coefficient) are discarded first.
inline std::vector<std::complex<double>> poly_roots(std::vector<std::complex<double>> coeffs,
                                                    double trim_rel = 0.0) {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw InvalidParams("poly_roots: zero polynomial");
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= trim_rel * scale) coeffs.pop_back();
    const std::size_t deg = coeffs.size() - 1;
    std::vector<std::complex<double>> roots;
    if (deg == 0) return roots;
    Matrix comp = Matrix::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t t = 0; t + 1 < deg; ++t) comp(static_cast<Eigen::Index>(t + 1),
                                                   static_cast<Eigen::Index>(t)) = 1.0;
    for (std::size_t t = 0; t < deg; ++t)
        comp(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(deg - 1)) =
            -coeffs[t] / coeffs.back();
    Eigen::ComplexEigenSolver<Matrix> es(comp);
    if (es.info() != Eigen::Success) throw NoConvergence("poly_roots: eigensolver failed");
    roots.reserve(deg);
    for (Eigen::Index t = 0; t < es.eigenvalues().size(); ++t) roots.push_back(es.eigenvalues()(t));
    // deterministic order
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

/// Newton-polish a root of an analytic function using an explicit derivative
/// polynomial (ascending coefficients) for the slope. Keeps the input root
/// if polishing does not improve the residual.
template <typename Fn>
inline std::complex<double> polish_root(Fn&& f, const std::vector<std::complex<double>>& deriv,
                                        std::complex<double> root, int iters = 8) {
    auto eval_poly = [&](std::complex<double> x) {
        std::complex<double> acc(0.0, 0.0), p(1.0, 0.0);
        for (const auto& c : deriv) {
            acc += c * p;
            p *= x;
        }
        return acc;
    };
    std::complex<double> best = root;
    double best_val = std::abs(f(root));
    std::complex<double> x = root;
    for (int t = 0; t < iters; ++t) {
        const std::complex<double> d = eval_poly(x);
        if (std::abs(d) < 1e-300) break;
        x -= f(x) / d;
        const double v = std::abs(f(x));
        if (v < best_val) {
            best_val = v;
            best = x;
        }
    }
    return best;
}

/// Derivative of an ascending-coefficient polynomial.
inline std::vector<std::complex<double>> poly_derivative(
    const std::vector<std::complex<double>>& coeffs) {
    std::vector<std::complex<double>> d;
    for (std::size_t t = 1; t < coeffs.size(); ++t)
        d.push_back(static_cast<double>(t) * coeffs[t]);
    if (d.empty()) d.push_back({0.0, 0.0});
    return d;
}

/// Least-squares fit of a degree-`deg` polynomial through samples
/// (points[t], values[t]); ascending coefficients.
inline std::vector<std::complex<double>> poly_fit(const std::vector<std::complex<double>>& points,
                                                  const std::vector<std::complex<double>>& values,
                                                  std::size_t deg) {
    if (points.size() != values.size() || points.size() < deg + 1)
        throw InvalidParams("poly_fit: need at least deg+1 samples");
    Matrix vand(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(deg + 1));
    Vector rhs(static_cast<Eigen::Index>(points.size()));
    for (std::size_t r = 0; r < points.size(); ++r) {
        std::complex<double> p = 1.0;
        for (std::size_t c = 0; c <= deg; ++c) {
            vand(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p;
            p *= points[r];
        }
        rhs(static_cast<Eigen::Index>(r)) = values[r];
    }
    Vector sol = vand.colPivHouseholderQr().solve(rhs);
    std::vector<std::complex<double>> coeffs(deg + 1);
    for (std::size_t c = 0; c <= deg; ++c) coeffs[c] = sol(static_cast<Eigen::Index>(c));
    return coeffs;
}

} // namespace kch
