#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kch/groups.hpp"
#include "kch/linalg.hpp"
#include "kch/rng.hpp"

namespace kch {

/// A KCH representation: the meridian image is diagonalizable with
/// eigenvalues {mu0, 1, ..., 1}. Images are stored in the meridian
/// eigenbasis with e1 (the mu0 eigenvector) first, so the induced
/// augmentation reads (1,1) entries directly.
struct KCHRep {
    Presentation pres;
    int dim = 0;
    Cplx mu0{0.0, 0.0};
    std::vector<Matrix> images;   // indexed by generator id, in eigenbasis
    std::vector<Matrix> inverses; // cached inverses
    Matrix basis;                 // original -> eigenbasis change of basis (columns)
    std::optional<Cplx> lambda0;

    const Matrix& image(int gen_id) const { return images.at(static_cast<std::size_t>(gen_id)); }
};

struct RepTolerances {
    double relator = 1e-8;
    double spectrum = 1e-9;
    double eigen_gap = 1e-6;
};

namespace detail {

/// Orthonormal kernel basis of m at the given eigenvalue, via SVD.
inline Matrix eigen_space(const Matrix& m, Cplx eigval, double rank_tol) {
    const Eigen::Index n = m.rows();
    Matrix shifted = m - eigval * Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = sv.size() ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index t = 0; t < sv.size(); ++t)
        if (sv(t) > rank_tol * std::max(scale, 1.0)) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

} // namespace detail

/// Build a KCHRep from raw generator images: locate the meridian eigenbasis,
/// check the spectrum {mu0, 1^(n-1)}, and store transformed images.
inline KCHRep make_kch_rep(const Presentation& pres, const std::vector<Matrix>& raw_images,
                           Cplx mu0, const RepTolerances& tols = {}) {
    if (raw_images.size() != pres.gen_names.size())
        throw InvalidParams("make_kch_rep: one image per presentation generator required");
    const Eigen::Index n = raw_images.empty() ? 0 : raw_images[0].rows();
    for (const Matrix& m : raw_images)
        if (m.rows() != n || m.cols() != n) throw InvalidParams("make_kch_rep: image sizes differ");
    if (std::abs(mu0 - Cplx(1.0, 0.0)) <= tols.eigen_gap)
        throw PreconditionError("make_kch_rep: |mu0 - 1| too small");
    if (std::abs(mu0) <= tols.eigen_gap) throw PreconditionError("make_kch_rep: mu0 near 0");

    // meridian image in the raw basis
    Matrix M = Matrix::Identity(n, n);
    for (const auto& [id, exp] : pres.meridian.letters()) {
        const Matrix& g = raw_images.at(static_cast<std::size_t>(id));
        M = M * (exp > 0 ? g : mat_inverse(g));
    }

    Matrix basis;
    const Matrix diag_target = [&] {
        Vector d = Vector::Ones(n);
        d(0) = mu0;
        return Matrix(d.asDiagonal());
    }();
    if (max_abs(M - diag_target) <= tols.spectrum) {
        basis = Matrix::Identity(n, n); // already in eigenbasis
    } else {
        const Matrix mu_space = detail::eigen_space(M, mu0, 1e-7);
        const Matrix one_space = detail::eigen_space(M, Cplx(1.0, 0.0), 1e-7);
        if (mu_space.cols() != 1 || one_space.cols() != n - 1)
            throw PreconditionError("make_kch_rep: meridian spectrum is not {mu0, 1^(n-1)}");
        basis = Matrix(n, n);
        basis.col(0) = mu_space.col(0);
        basis.rightCols(n - 1) = one_space;
        Eigen::FullPivLU<Matrix> lu(basis);
        if (!lu.isInvertible()) throw PreconditionError("make_kch_rep: meridian not diagonalizable");
        Matrix check = lu.inverse() * M * basis;
        if (max_abs(check - diag_target) > 1e-6)
            throw PreconditionError("make_kch_rep: meridian eigenbasis residual too large");
    }

    KCHRep rep;
    rep.pres = pres;
    rep.dim = static_cast<int>(n);
    rep.mu0 = mu0;
    rep.basis = basis;
    const Matrix basis_inv = mat_inverse(basis);
    for (const Matrix& g : raw_images) rep.images.push_back(basis_inv * g * basis);
    for (const Matrix& g : rep.images) rep.inverses.push_back(mat_inverse(g));
    return rep;
}

/// Product of images along a word.
inline Matrix eval_word(const KCHRep& rep, const GroupWord& u) {
    Matrix acc = Matrix::Identity(rep.dim, rep.dim);
    for (const auto& [id, exp] : u.letters())
        acc = acc * (exp > 0 ? rep.image(id) : rep.inverses.at(static_cast<std::size_t>(id)));
    return acc;
}

/// The induced augmentation on cord-algebra classes:
/// eps([gamma]) = (1 - mu0) * (rho(gamma))_11 in the meridian eigenbasis.
inline Cplx induced_aug(const KCHRep& rep, const GroupWord& u) {
    return (Cplx(1.0, 0.0) - rep.mu0) * eval_word(rep, u)(0, 0);
}

/// Largest relator residual ||rho(relator) - I||.
inline double relator_residual(const KCHRep& rep) {
    double worst = 0.0;
    for (const GroupWord& r : rep.pres.relators)
        worst = std::max(worst, max_abs(eval_word(rep, r) - Matrix::Identity(rep.dim, rep.dim)));
    return worst;
}

/// Eigenvalue of rho(longitude) on e1, plus the defect of e1 actually being
/// an eigenvector.
struct LongitudeEigen {
    Cplx lambda0;
    double defect;
};

inline LongitudeEigen longitude_eigenvalue(const KCHRep& rep) {
    if (!rep.pres.longitude) throw InvalidParams("presentation has no longitude word");
    const Matrix L = eval_word(rep, *rep.pres.longitude);
    Vector e1 = Vector::Zero(rep.dim);
    e1(0) = 1.0;
    const Vector image = L * e1;
    const Cplx lambda0 = image(0);
    return LongitudeEigen{lambda0, (image - lambda0 * e1).norm()};
}

namespace detail {

inline GroupWord random_word(Rng& rng, int num_gens, int max_len) {
    const int len = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_len)));
    std::vector<GroupWord::Letter> ls;
    ls.reserve(static_cast<std::size_t>(len));
    for (int t = 0; t < len; ++t)
        ls.push_back({static_cast<int>(rng.next_below(static_cast<std::uint64_t>(num_gens))),
                      rng.next_below(2) ? 1 : -1});
    return GroupWord(std::move(ls));
}

} // namespace detail

/// Check the three cord-algebra relations on random words:
///   (1) [e] = 1 - mu
///   (2) [m g] = [g m] = mu [g]   (and the lambda analogue when a longitude
///       word and lambda0 are available)
///   (3) [g1 g2] - [g1 m g2] = [g1][g2]
/// Returns the largest residual seen.
inline double cord_relation_check(const KCHRep& rep, int trials, std::uint64_t seed,
                                  int max_len = 12) {
    Rng rng(seed);
    const int ng = static_cast<int>(rep.pres.gen_names.size());
    const GroupWord m = rep.pres.meridian;
    double worst = std::abs(induced_aug(rep, GroupWord{}) - (Cplx(1.0, 0.0) - rep.mu0));
    for (int t = 0; t < trials; ++t) {
        const GroupWord g1 = detail::random_word(rng, ng, max_len);
        const GroupWord g2 = detail::random_word(rng, ng, max_len);
        const Cplx a1 = induced_aug(rep, g1);
        const Cplx a2 = induced_aug(rep, g2);
        worst = std::max(worst, std::abs(induced_aug(rep, m * g1) - rep.mu0 * a1));
        worst = std::max(worst, std::abs(induced_aug(rep, g1 * m) - rep.mu0 * a1));
        if (rep.pres.longitude && rep.lambda0) {
            const GroupWord l = *rep.pres.longitude;
            worst = std::max(worst, std::abs(induced_aug(rep, l * g1) - *rep.lambda0 * a1));
            worst = std::max(worst, std::abs(induced_aug(rep, g1 * l) - *rep.lambda0 * a1));
        }
        worst = std::max(worst,
                         std::abs(induced_aug(rep, g1 * g2) - induced_aug(rep, g1 * m * g2) -
                                  a1 * a2));
    }
    return worst;
}

/// Burnside span criterion: the representation is irreducible iff its images
/// span the full matrix algebra. span_basis holds an orthonormal basis of
/// the span (vectorized matrices).
struct IrreducibilityResult {
    bool irreducible = false;
    int span_dim = 0;
    std::vector<Matrix> span_basis;
};

inline IrreducibilityResult irreducibility(const KCHRep& rep, double tol = 1e-8) {
    const int n = rep.dim;
    const int full = n * n;
    std::vector<Matrix> basis;      // orthonormal (Frobenius) spanning set
    std::vector<Matrix> frontier;   // most recent additions

    auto try_add = [&](Matrix cand) {
        for (const Matrix& b : basis) {
            const Cplx proj = (b.conjugate().cwiseProduct(cand)).sum();
            cand -= proj * b;
        }
        const double norm = cand.norm();
        if (norm <= tol) return false;
        basis.push_back(cand / norm);
        frontier.push_back(basis.back());
        return true;
    };

    try_add(Matrix::Identity(n, n));
    for (const Matrix& g : rep.images) try_add(g);
    while (!frontier.empty() && static_cast<int>(basis.size()) < full) {
        std::vector<Matrix> current;
        current.swap(frontier);
        for (const Matrix& b : current) {
            for (const Matrix& g : rep.images) {
                try_add(b * g);
                try_add(g * b);
                if (static_cast<int>(basis.size()) >= full) break;
            }
            if (static_cast<int>(basis.size()) >= full) break;
        }
    }

    IrreducibilityResult res;
    res.span_dim = static_cast<int>(basis.size());
    res.irreducible = res.span_dim == full;
    res.span_basis = std::move(basis);
    return res;
}

namespace detail {

/// Span of the orbit of v under the algebra generated by the images;
/// returns an orthonormal basis (columns).
inline Matrix orbit_space(const std::vector<Matrix>& gens, const Vector& v, double tol) {
    const Eigen::Index n = v.size();
    std::vector<Vector> basis;
    std::vector<Vector> frontier;
    auto try_add = [&](Vector cand) {
        for (const Vector& b : basis) cand -= b.dot(cand) * b;
        const double norm = cand.norm();
        if (norm <= tol) return false;
        basis.push_back(cand / norm);
        frontier.push_back(basis.back());
        return true;
    };
    try_add(v);
    while (!frontier.empty() && static_cast<Eigen::Index>(basis.size()) < n) {
        std::vector<Vector> current;
        current.swap(frontier);
        for (const Vector& b : current)
            for (const Matrix& g : gens) try_add(g * b);
    }
    Matrix out(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t t = 0; t < basis.size(); ++t) out.col(static_cast<Eigen::Index>(t)) = basis[t];
    return out;
}

/// Search for a proper invariant subspace of a reducible representation:
/// eigenvectors of pseudo-random algebra elements seed orbit computations on
/// the representation and on its transpose (whose orbit complements are
/// invariant).
inline std::optional<Matrix> invariant_subspace(const KCHRep& rep, double tol = 1e-8) {
    const Eigen::Index n = rep.dim;
    std::vector<Matrix> transposed;
    transposed.reserve(rep.images.size());
    for (const Matrix& g : rep.images) transposed.push_back(g.transpose());

    Rng rng(0x5eedu);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Matrix a = Matrix::Zero(n, n);
        for (const Matrix& g : rep.images) a += rng.next_annulus(0.3, 3.0) * g;
        Eigen::ComplexEigenSolver<Matrix> es(a);
        if (es.info() != Eigen::Success) continue;
        for (Eigen::Index t = 0; t < n; ++t) {
            const Vector v = es.eigenvectors().col(t);
            Matrix orbit = orbit_space(rep.images, v, tol);
            if (orbit.cols() < n) return orbit;
            // transpose side: the bilinear complement of a transposed orbit
            // is invariant for the original action
            Matrix torbit = orbit_space(transposed, v, tol);
            if (torbit.cols() < n) {
                Eigen::FullPivLU<Matrix> lu(torbit.transpose()); // rows x^T
                lu.setThreshold(1e-10);
                Matrix kernel = lu.kernel();
                if (kernel.cols() > 0 && kernel.cols() < n) return kernel;
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Reduce a reducible representation to a strictly smaller KCH
/// representation carrying the same (lambda0, mu0): quotient when e1 misses
/// the invariant subspace, restriction when it lies inside.
inline KCHRep reduce_rep(const KCHRep& rep, const RepTolerances& tols = {}) {
    const IrreducibilityResult irr = irreducibility(rep);
    if (irr.irreducible) throw AlreadyIrreducible("reduce_rep: representation is irreducible");
    const auto subspace = detail::invariant_subspace(rep);
    if (!subspace)
        throw NoConvergence("reduce_rep: failed to locate an invariant subspace");
    const Matrix& V = *subspace; // n x d orthonormal columns
    const Eigen::Index n = rep.dim;
    const Eigen::Index d = V.cols();

    Vector e1 = Vector::Zero(n);
    e1(0) = 1.0;
    const Vector proj_e1 = V * (V.adjoint() * e1);
    const bool e1_inside = (e1 - proj_e1).norm() <= 1e-8;

    std::vector<Matrix> small;
    small.reserve(rep.images.size());
    if (e1_inside) {
        // restriction to V
        for (const Matrix& g : rep.images) small.push_back(V.adjoint() * g * V);
    } else {
        // quotient by V: complete [e1 | ... | V] to a full basis with
        // standard vectors, quotient block = top-left of the conjugated
        // images
        std::vector<Vector> front{e1};
        for (Eigen::Index cand = 0; cand < n && static_cast<Eigen::Index>(front.size()) < n - d;
             ++cand) {
            Matrix probe(n, static_cast<Eigen::Index>(front.size()) + 1 + d);
            for (std::size_t t = 0; t < front.size(); ++t)
                probe.col(static_cast<Eigen::Index>(t)) = front[t];
            probe.col(static_cast<Eigen::Index>(front.size())) = Matrix::Identity(n, n).col(cand);
            probe.rightCols(d) = V;
            Eigen::ColPivHouseholderQR<Matrix> qr(probe);
            qr.setThreshold(1e-9);
            if (qr.rank() == probe.cols()) front.push_back(Matrix::Identity(n, n).col(cand));
        }
        if (static_cast<Eigen::Index>(front.size()) != n - d)
            throw NoConvergence("reduce_rep: failed to complete quotient basis");
        Matrix T(n, n);
        for (std::size_t t = 0; t < front.size(); ++t)
            T.col(static_cast<Eigen::Index>(t)) = front[t];
        T.rightCols(d) = V;
        const Matrix Tinv = mat_inverse(T);
        for (const Matrix& g : rep.images)
            small.push_back((Tinv * g * T).topLeftCorner(n - d, n - d));
    }

    KCHRep reduced = make_kch_rep(rep.pres, small, rep.mu0, tols);
    if (reduced.pres.longitude) {
        reduced.lambda0 = longitude_eigenvalue(reduced).lambda0;
    } else if (reduced.dim == 1) {
        reduced.lambda0 = Cplx(1.0, 0.0); // 1-dim KCH reps are abelian; lk(l, K) = 0
    } else {
        reduced.lambda0 = rep.lambda0;
    }
    return reduced;
}

/// Twist an SL2-style representation (meridian eigenvalues mu1^{+-1}) by the
/// abelian representation: rho'(g) = mu1^{lk(g, K)} rho(g), a KCH
/// representation with mu0 = mu1^2.
inline KCHRep sl2_twist(const Presentation& pres, const std::vector<Matrix>& raw_images, Cplx mu1,
                        const RepTolerances& tols = {}) {
    if (std::abs(mu1 - Cplx(1.0, 0.0)) <= tols.eigen_gap ||
        std::abs(mu1 + Cplx(1.0, 0.0)) <= tols.eigen_gap)
        throw PreconditionError("sl2_twist: mu1 = +-1 is not diagonalizable-compatible");
    // verify the input satisfies the relators before twisting
    {
        std::vector<Matrix> inv;
        inv.reserve(raw_images.size());
        for (const Matrix& g : raw_images) inv.push_back(mat_inverse(g));
        for (const GroupWord& r : pres.relators) {
            Matrix acc = Matrix::Identity(raw_images[0].rows(), raw_images[0].cols());
            for (const auto& [id, exp] : r.letters())
                acc = acc * (exp > 0 ? raw_images[static_cast<std::size_t>(id)]
                                     : inv[static_cast<std::size_t>(id)]);
            if (max_abs(acc - Matrix::Identity(acc.rows(), acc.cols())) > tols.relator)
                throw NotARepresentation("sl2_twist: input does not satisfy the relators");
        }
    }
    std::vector<Matrix> twisted;
    twisted.reserve(raw_images.size());
    for (std::size_t t = 0; t < raw_images.size(); ++t)
        twisted.push_back(cpow_int(mu1, pres.weights.at(t)) * raw_images[t]);
    KCHRep rep = make_kch_rep(pres, twisted, mu1 * mu1, tols);
    if (rep.pres.longitude) rep.lambda0 = longitude_eigenvalue(rep).lambda0;
    return rep;
}

/// The 1-dimensional (abelian) KCH representation g -> mu0^{lk(g, K)}.
inline KCHRep abelian_rep(const Presentation& pres, Cplx mu0) {
    std::vector<Matrix> images;
    for (std::size_t t = 0; t < pres.gen_names.size(); ++t) {
        Matrix m(1, 1);
        m(0, 0) = cpow_int(mu0, pres.weights.at(t));
        images.push_back(m);
    }
    KCHRep rep = make_kch_rep(pres, images, mu0);
    rep.lambda0 = Cplx(1.0, 0.0);
    return rep;
}

/// Verification summary for a constructed representation.
struct RepReport {
    double relator_residual = 0.0;
    double meridian_defect = 0.0; // || rho(m) - diag[mu0, 1, ...] ||
    bool irreducible = false;
    int span_dim = 0;
    std::optional<Cplx> lambda0;
    double longitude_defect = 0.0;
    std::string notes;
};

inline RepReport verify_rep(const KCHRep& rep, double tol = 1e-8) {
    RepReport rr;
    rr.relator_residual = relator_residual(rep);
    Vector d = Vector::Ones(rep.dim);
    d(0) = rep.mu0;
    rr.meridian_defect = max_abs(eval_word(rep, rep.pres.meridian) - Matrix(d.asDiagonal()));
    const IrreducibilityResult irr = irreducibility(rep);
    rr.irreducible = irr.irreducible;
    rr.span_dim = irr.span_dim;
    rr.lambda0 = rep.lambda0;
    if (rep.pres.longitude) {
        const LongitudeEigen le = longitude_eigenvalue(rep);
        rr.longitude_defect = le.defect;
        if (!rr.lambda0) rr.lambda0 = le.lambda0;
    }
    if (rr.relator_residual > tol) rr.notes = "relator residual above tolerance";
    return rr;
}

} // namespace kch
