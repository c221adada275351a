#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kch/laurent.hpp"

namespace kch {

/// Generator a_ij of the free algebra, 1 <= i != j <= rank.
struct Gen {
    int i = 0;
    int j = 0;
    friend bool operator==(const Gen& a, const Gen& b) { return a.i == b.i && a.j == b.j; }
    friend bool operator<(const Gen& a, const Gen& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
};

/// A word in the generators; the empty word is the unit.
using NcWord = std::vector<Gen>;

/// Length-lexicographic word order: canonical form and golden files stay
/// stable under it.
struct WordLess {
    bool operator()(const NcWord& a, const NcWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t t = 0; t < a.size(); ++t) {
            if (a[t] == b[t]) continue;
            return a[t] < b[t];
        }
        return false;
    }
};

/// Term budget for noncommutative arithmetic. The braid action composes
/// substitutions and can blow up exponentially; operations throw
/// TermBudgetExceeded instead of thrashing.
inline std::size_t& nc_term_budget() {
    static std::size_t budget = 1'000'000;
    return budget;
}

/// Element of A_N (tensored with the Laurent coefficient ring): a finite sum
/// of words with nonzero LaurentPoly coefficients, kept in canonical form.
class NcPoly {
  public:
    using TermMap = std::map<NcWord, LaurentPoly, WordLess>;

    explicit NcPoly(int rank = 0) : rank_(rank) {}

    static NcPoly unit(int rank) { return scalar(rank, LaurentPoly(1)); }
    static NcPoly scalar(int rank, const LaurentPoly& c) {
        NcPoly p(rank);
        if (!c.is_zero()) p.terms_[{}] = c;
        return p;
    }
    static NcPoly generator(int rank, int i, int j) {
        check_letter(rank, {i, j});
        NcPoly p(rank);
        p.terms_[{Gen{i, j}}] = LaurentPoly(1);
        return p;
    }
    static NcPoly term(int rank, const LaurentPoly& c, const NcWord& w) {
        for (const Gen& g : w) check_letter(rank, g);
        NcPoly p(rank);
        if (!c.is_zero()) p.terms_[w] = c;
        return p;
    }

    int rank() const { return rank_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    friend bool operator==(const NcPoly& a, const NcPoly& b) {
        return a.rank_ == b.rank_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

    NcPoly& operator+=(const NcPoly& o) {
        check_rank(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NcPoly& operator-=(const NcPoly& o) {
        check_rank(o);
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator-(const NcPoly& a) {
        NcPoly r(a.rank_);
        for (const auto& [w, c] : a.terms_) r.terms_[w] = -c;
        return r;
    }

    /// Multiplication concatenates words; coefficients commute with words.
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
        a.check_rank(b);
        NcPoly r(a.rank_);
        for (const auto& [wa, ca] : a.terms_) {
            for (const auto& [wb, cb] : b.terms_) {
                NcWord w;
                w.reserve(wa.size() + wb.size());
                w.insert(w.end(), wa.begin(), wa.end());
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(w, ca * cb);
                if (r.terms_.size() > nc_term_budget())
                    throw TermBudgetExceeded("NcPoly multiplication exceeded term budget");
            }
        }
        return r;
    }
    NcPoly& operator*=(const NcPoly& o) { return *this = *this * o; }

    NcPoly scaled_by(const LaurentPoly& c) const {
        NcPoly r(rank_);
        if (c.is_zero()) return r;
        for (const auto& [w, k] : terms_) r.add_term(w, k * c);
        return r;
    }

    /// Numeric evaluation: words become products of commuting complex values.
    Cplx eval(const std::map<Gen, Cplx>& values, Cplx lambda0, Cplx mu0) const {
        Cplx acc(0.0, 0.0);
        for (const auto& [w, c] : terms_) {
            Cplx v = c.eval(lambda0, mu0);
            for (const Gen& g : w) {
                auto it = values.find(g);
                if (it == values.end())
                    throw MissingImage("eval: no value for a" + std::to_string(g.i) +
                                       std::to_string(g.j));
                v *= it->second;
            }
            acc += v;
        }
        if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
            throw NonFiniteValue("NcPoly::eval produced a nonfinite value");
        return acc;
    }

    /// Stable text form, e.g. "(1 - m) + (l*m^3)*a12.a21".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            std::string cs = c.str();
            if (w.empty()) {
                os << (c.term_count() > 1 ? "(" + cs + ")" : cs);
                continue;
            }
            os << "(" << cs << ")*";
            for (std::size_t t = 0; t < w.size(); ++t) {
                if (t) os << ".";
                os << "a" << w[t].i << w[t].j;
            }
        }
        return os.str();
    }

  private:
    friend NcPoly substitute(const NcPoly&, const std::map<Gen, NcPoly>&);

    void check_rank(const NcPoly& o) const {
        if (rank_ != o.rank_)
            throw RankMismatch("NcPoly rank mismatch: " + std::to_string(rank_) + " vs " +
                               std::to_string(o.rank_));
    }
    static void check_letter(int rank, const Gen& g) {
        if (g.i == g.j || g.i < 1 || g.j < 1 || g.i > rank || g.j > rank)
            throw InvalidParams("invalid generator a" + std::to_string(g.i) + "," +
                                std::to_string(g.j) + " at rank " + std::to_string(rank));
    }
    void add_term(const NcWord& w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int rank_ = 0;
    TermMap terms_;
};

/// The unique unital algebra homomorphism extending the generator map.
/// Every generator appearing in `p` must have an image; all images must share
/// one rank, which becomes the rank of the result.
inline NcPoly substitute(const NcPoly& p, const std::map<Gen, NcPoly>& images) {
    int out_rank = p.rank();
    if (!images.empty()) out_rank = images.begin()->second.rank();
    for (const auto& [g, im] : images)
        if (im.rank() != out_rank) throw RankMismatch("substitute: image ranks differ");
    NcPoly acc(out_rank);
    for (const auto& [w, c] : p.terms()) {
        NcPoly prod = NcPoly::scalar(out_rank, c);
        for (const Gen& g : w) {
            auto it = images.find(g);
            if (it == images.end())
                throw MissingImage("substitute: no image for a" + std::to_string(g.i) +
                                   std::to_string(g.j));
            prod = prod * it->second;
        }
        acc += prod;
        if (acc.term_count() > nc_term_budget())
            throw TermBudgetExceeded("substitute exceeded term budget");
    }
    return acc;
}

} // namespace kch
