#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "kch/ncpoly.hpp"

namespace kch {

/// A braid word in B_n: strand count plus signed generator letters
/// (k > 0 for sigma_k, k < 0 for its inverse).
struct BraidWord {
    int strands = 0;
    std::vector<int> letters;

    BraidWord(int n, std::vector<int> ls) : strands(n), letters(std::move(ls)) {
        if (strands < 2) throw InvalidBraid("braid needs at least 2 strands");
        if (letters.empty()) throw InvalidBraid("braid word must be nonempty");
        for (int k : letters)
            if (k == 0 || std::abs(k) > strands - 1)
                throw InvalidBraid("braid letter out of range: " + std::to_string(k));
    }

    int writhe() const {
        int w = 0;
        for (int k : letters) w += k > 0 ? 1 : -1;
        return w;
    }

    /// Permutation of strand positions induced by the braid (0-based).
    std::vector<int> permutation() const {
        std::vector<int> perm(strands);
        std::iota(perm.begin(), perm.end(), 0);
        for (int k : letters) std::swap(perm[std::abs(k) - 1], perm[std::abs(k)]);
        return perm;
    }

    /// The closure is a knot iff the permutation is a single cycle.
    bool closure_is_knot() const {
        std::vector<int> perm = permutation();
        int len = 0, at = 0;
        do {
            at = perm[at];
            ++len;
        } while (at != 0);
        return len == strands;
    }

    /// Parse "1,1,1" / "1,-2,1,-2".
    static BraidWord parse(int strands, const std::string& csv) {
        std::vector<int> ls;
        std::size_t pos = 0;
        while (pos < csv.size()) {
            std::size_t next = csv.find(',', pos);
            if (next == std::string::npos) next = csv.size();
            std::string tok = csv.substr(pos, next - pos);
            try {
                ls.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("bad braid letter: '" + tok + "'");
            }
            pos = next + 1;
        }
        return BraidWord(strands, std::move(ls));
    }

    std::string str() const {
        std::string s;
        for (std::size_t t = 0; t < letters.size(); ++t) {
            if (t) s += ",";
            s += std::to_string(letters[t]);
        }
        return s;
    }
};

using SubstMap = std::map<Gen, NcPoly>;

/// Substitution map of the braid-group action phi_{sigma_k} on A_n, for a
/// signed letter k. The positive case is the seven-case table
///
///   a_ij      -> a_ij                        i,j != k,k+1
///   a_{k+1,i} -> a_ki                        i != k,k+1
///   a_{i,k+1} -> a_ik                        i != k,k+1
///   a_{k,k+1} -> -a_{k+1,k}
///   a_{k+1,k} -> -a_{k,k+1}
///   a_ki      -> a_{k+1,i} - a_{k+1,k} a_ki  i != k,k+1
///   a_ik      -> a_{i,k+1} - a_ik a_{k,k+1}  i != k,k+1
///
/// The negative case is its two-sided inverse, obtained by solving the table
/// for preimages; phi_k o phi_{-k} = id is enforced by the test suite.
inline SubstMap phi_letter(int k, int n) {
    const int kk = std::abs(k);
    if (kk < 1 || kk > n - 1)
        throw InvalidParams("phi_letter: index " + std::to_string(k) + " out of range for rank " +
                            std::to_string(n));
    auto a = [n](int i, int j) { return NcPoly::generator(n, i, j); };
    SubstMap map;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const Gen g{i, j};
            const bool ik = i == kk, jk = j == kk, ik1 = i == kk + 1, jk1 = j == kk + 1;
            if (k > 0) {
                if (!ik && !jk && !ik1 && !jk1) map.emplace(g, a(i, j));
                else if (ik1 && jk) map.emplace(g, -a(kk, kk + 1));
                else if (ik && jk1) map.emplace(g, -a(kk + 1, kk));
                else if (ik1) map.emplace(g, a(kk, j));
                else if (jk1) map.emplace(g, a(i, kk));
                else if (ik) map.emplace(g, a(kk + 1, j) - a(kk + 1, kk) * a(kk, j));
                else map.emplace(g, a(i, kk + 1) - a(i, kk) * a(kk, kk + 1));
            } else {
                if (!ik && !jk && !ik1 && !jk1) map.emplace(g, a(i, j));
                else if (ik1 && jk) map.emplace(g, -a(kk, kk + 1));
                else if (ik && jk1) map.emplace(g, -a(kk + 1, kk));
                else if (ik) map.emplace(g, a(kk + 1, j));
                else if (jk) map.emplace(g, a(i, kk + 1));
                else if (ik1) map.emplace(g, a(kk, j) - a(kk, kk + 1) * a(kk + 1, j));
                else map.emplace(g, a(i, kk) - a(i, kk + 1) * a(kk + 1, kk));
            }
        }
    }
    return map;
}

/// Apply phi_B to p. Composition order: the leftmost braid letter acts
/// first, i.e. phi_{b1 b2} = phi_{b2} o phi_{b1}.
inline NcPoly apply_phi(const BraidWord& b, NcPoly p, int rank_override = 0) {
    const int n = rank_override > 0 ? rank_override : b.strands;
    if (p.rank() != n)
        throw RankMismatch("apply_phi: polynomial rank " + std::to_string(p.rank()) +
                           " vs braid rank " + std::to_string(n));
    for (int k : b.letters) p = substitute(p, phi_letter(k, n));
    return p;
}

/// The pair (Phi^L_B, Phi^R_B): n x n matrices over A_n defined by applying
/// the rank-extended action phi*_B (B included into B_{n+1} with a trivial
/// last strand) to the extending generators,
///
///   phi*_B(a_{i,n+1}) = sum_j (Phi^L_B)_{ij} a_{j,n+1}
///   phi*_B(a_{n+1,i}) = sum_j a_{n+1,j} (Phi^R_B)_{ji}.
struct PhiStarMatrices {
    std::vector<std::vector<NcPoly>> left, right;
};

inline PhiStarMatrices phi_star_matrices(const BraidWord& b) {
    const int n = b.strands;
    const int ext = n + 1;
    PhiStarMatrices out;
    out.left.assign(n, std::vector<NcPoly>(n, NcPoly(n)));
    out.right.assign(n, std::vector<NcPoly>(n, NcPoly(n)));

    // Drop a rank-(n+1) polynomial whose letters all live in rank n down to
    // rank n.
    auto restrict_rank = [n](const NcPoly& p) {
        NcPoly r(n);
        for (const auto& [w, c] : p.terms()) r += NcPoly::term(n, c, w);
        return r;
    };

    for (int i = 1; i <= n; ++i) {
        // Left: the extending letter must be the rightmost letter of every
        // monomial.
        NcPoly img = apply_phi(b, NcPoly::generator(ext, i, ext), ext);
        for (const auto& [w, c] : img.terms()) {
            if (w.empty()) throw ExtractionShapeError("phi* image has a scalar term");
            const Gen last = w.back();
            if (last.j != ext)
                throw ExtractionShapeError("phi*(a_{i,n+1}) monomial does not end in a_{j,n+1}");
            NcWord prefix(w.begin(), w.end() - 1);
            for (const Gen& g : prefix)
                if (g.i == ext || g.j == ext)
                    throw ExtractionShapeError("extra extending letter in phi*(a_{i,n+1})");
            out.left[i - 1][last.i - 1] += restrict_rank(NcPoly::term(ext, c, prefix));
        }
        // Right: the extending letter must be the leftmost letter.
        img = apply_phi(b, NcPoly::generator(ext, ext, i), ext);
        for (const auto& [w, c] : img.terms()) {
            if (w.empty()) throw ExtractionShapeError("phi* image has a scalar term");
            const Gen first = w.front();
            if (first.i != ext)
                throw ExtractionShapeError("phi*(a_{n+1,i}) monomial does not start in a_{n+1,j}");
            NcWord suffix(w.begin() + 1, w.end());
            for (const Gen& g : suffix)
                if (g.i == ext || g.j == ext)
                    throw ExtractionShapeError("extra extending letter in phi*(a_{n+1,i})");
            out.right[first.j - 1][i - 1] += restrict_rank(NcPoly::term(ext, c, suffix));
        }
    }
    return out;
}

/// One generating polynomial of the HC_0 ideal, with provenance.
struct IdealGenerator {
    NcPoly poly;
    std::string family; // "phi" | "left" | "right"
    int i = 0, j = 0;   // 1-based matrix entry

    std::string tag() const {
        return family + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
    }
};

/// Generating set of the degree-zero knot-contact-homology ideal of the
/// closure of a braid: the 3n^2 entries of
///
///   A - Lam . phi_B(A) . Lam^-1,   A - Lam . Phi^L_B . A,   A - A . Phi^R_B . Lam^-1
///
/// with A_ij = a_ij (i<j), -mu a_ij (i>j), 1-mu (i=j) and
/// Lam = diag[lambda mu^w, 1, ..., 1], w the writhe.
struct IdealPresentation {
    int n = 0;
    int writhe = 0;
    std::string braid;
    std::vector<IdealGenerator> generators;
};

namespace detail {

using NcMatrix = std::vector<std::vector<NcPoly>>;

inline NcMatrix nc_matmul(const NcMatrix& a, const NcMatrix& b) {
    const std::size_t n = a.size();
    NcMatrix r(n, std::vector<NcPoly>(n, NcPoly(static_cast<int>(a[0][0].rank()))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            NcPoly acc(a[i][j].rank());
            for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

} // namespace detail

inline IdealPresentation ideal_generators(const BraidWord& b) {
    if (!b.closure_is_knot())
        throw MultiComponentClosure("braid closure has more than one component");
    const int n = b.strands;
    const int w = b.writhe();

    // A matrix
    detail::NcMatrix A(n, std::vector<NcPoly>(n, NcPoly(n)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) A[i - 1][j - 1] = NcPoly::scalar(n, LaurentPoly(1) - LaurentPoly::mu());
            else if (i < j) A[i - 1][j - 1] = NcPoly::generator(n, i, j);
            else A[i - 1][j - 1] = NcPoly::generator(n, i, j).scaled_by(-LaurentPoly::mu());
        }

    // phi_B applied entrywise
    detail::NcMatrix phiA(n, std::vector<NcPoly>(n, NcPoly(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) phiA[i][j] = apply_phi(b, A[i][j]);

    const PhiStarMatrices phis = phi_star_matrices(b);

    const LaurentPoly lam_w = LaurentPoly::monomial(1, 1, w);    // lambda mu^w
    const LaurentPoly lam_w_inv = LaurentPoly::monomial(1, -1, -w);
    auto scale_first_row = [&](detail::NcMatrix m, const LaurentPoly& c) {
        for (int j = 0; j < n; ++j) m[0][j] = m[0][j].scaled_by(c);
        return m;
    };
    auto scale_first_col = [&](detail::NcMatrix m, const LaurentPoly& c) {
        for (int i = 0; i < n; ++i) m[i][0] = m[i][0].scaled_by(c);
        return m;
    };

    IdealPresentation out;
    out.n = n;
    out.writhe = w;
    out.braid = b.str();
    out.generators.reserve(static_cast<std::size_t>(3) * n * n);

    auto emit = [&](const detail::NcMatrix& m, const std::string& family) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.generators.push_back(IdealGenerator{A[i][j] - m[i][j], family, i + 1, j + 1});
    };

    // Lam . phi_B(A) . Lam^-1
    emit(scale_first_col(scale_first_row(phiA, lam_w), lam_w_inv), "phi");
    // Lam . Phi^L . A
    emit(scale_first_row(detail::nc_matmul(phis.left, A), lam_w), "left");
    // A . Phi^R . Lam^-1
    emit(scale_first_col(detail::nc_matmul(A, phis.right), lam_w_inv), "right");
    return out;
}

/// Ordered text dump of an ideal presentation, one generator per line.
inline std::string ideal_str(const IdealPresentation& ip) {
    std::string s;
    for (const auto& g : ip.generators) s += g.tag() + " = " + g.poly.str() + "\n";
    return s;
}

} // namespace kch
