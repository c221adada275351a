#pragma once

#include <cctype>
#include <complex>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "kch/complex.hpp"
#include "kch/errors.hpp"

namespace kch {

inline mpq_class qpow_int(const mpq_class& base, long e) {
    if (e == 0) return mpq_class(1);
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpq_class acc(1), b = base;
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (neg) {
        if (acc == 0) throw PreconditionError("qpow_int: zero base with negative exponent");
        acc = 1 / acc;
    }
    return acc;
}

/// Exact Laurent polynomial in the commuting variables l (lambda) and m (mu),
/// the coefficient ring of the cord-algebra presentation. Coefficients are
/// arbitrary-precision integers; the stored form is canonical (no zero terms).
class LaurentPoly {
  public:
    /// (e_lambda, e_mu) -> coefficient
    using Exponents = std::pair<long, long>;
    using TermMap = std::map<Exponents, mpz_class>;

    LaurentPoly() = default;
    LaurentPoly(long c) { // NOLINT(google-explicit-constructor)
        if (c != 0) terms_[{0, 0}] = c;
    }
    LaurentPoly(const mpz_class& c) { // NOLINT(google-explicit-constructor)
        if (c != 0) terms_[{0, 0}] = c;
    }

    static LaurentPoly monomial(const mpz_class& c, long el, long em) {
        LaurentPoly p;
        if (c != 0) p.terms_[{el, em}] = c;
        return p;
    }
    static LaurentPoly lambda(long e = 1) { return monomial(1, e, 0); }
    static LaurentPoly mu(long e = 1) { return monomial(1, 0, e); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0} &&
               terms_.begin()->second == 1;
    }
    std::size_t term_count() const { return terms_.size(); }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    /// Total order (term-map lexicographic); used only for deterministic sorting.
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ < b.terms_;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    /// Numeric evaluation at (lambda0, mu0).
    Cplx eval(Cplx lambda0, Cplx mu0) const {
        Cplx acc(0.0, 0.0);
        for (const auto& [e, c] : terms_)
            acc += mpz_get_d(c.get_mpz_t()) * cpow_int(lambda0, e.first) * cpow_int(mu0, e.second);
        return acc;
    }

    /// Exact rational evaluation; lambda0, mu0 must be nonzero whenever a
    /// negative exponent occurs.
    mpq_class eval_exact(const mpq_class& lambda0, const mpq_class& mu0) const {
        mpq_class l = lambda0, m = mu0;
        l.canonicalize(); // gmp arithmetic requires canonical operands
        m.canonicalize();
        mpq_class acc(0);
        for (const auto& [e, c] : terms_)
            acc += mpq_class(c) * qpow_int(l, e.first) * qpow_int(m, e.second);
        return acc;
    }

    long min_exp_lambda() const { return min_exp(0); }
    long min_exp_mu() const { return min_exp(1); }
    long max_exp_lambda() const { return max_exp(0); }
    long max_exp_mu() const { return max_exp(1); }

    /// gcd of all coefficients (positive), 0 for the zero polynomial.
    mpz_class content() const {
        mpz_class g(0);
        for (const auto& [e, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    /// Multiply every exponent pair by l^dl * m^dm.
    LaurentPoly shifted(long dl, long dm) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[{e.first + dl, e.second + dm}] = c;
        return r;
    }

    LaurentPoly divided_by(const mpz_class& d) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
            if (rem != 0) throw InvalidParams("divided_by: coefficient not divisible");
            r.terms_[e] = q;
        }
        return r;
    }

    /// Stable text form, e.g. "1 - m + 2*l*m^3". Terms ascend by (e_l, e_m).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            mpz_class a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            std::string vars = var_str(e);
            if (vars.empty()) {
                os << a.get_str();
            } else {
                if (a != 1) os << a.get_str() << "*";
                os << vars;
            }
        }
        return os.str();
    }

  private:
    void add_term(const Exponents& e, const mpz_class& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    long min_exp(int which) const {
        if (terms_.empty()) return 0;
        long m = 0;
        bool init = false;
        for (const auto& [e, c] : terms_) {
            long v = which == 0 ? e.first : e.second;
            if (!init || v < m) m = v, init = true;
        }
        return m;
    }
    long max_exp(int which) const {
        if (terms_.empty()) return 0;
        long m = 0;
        bool init = false;
        for (const auto& [e, c] : terms_) {
            long v = which == 0 ? e.first : e.second;
            if (!init || v > m) m = v, init = true;
        }
        return m;
    }

    static std::string var_str(const Exponents& e) {
        std::ostringstream os;
        bool any = false;
        if (e.first != 0) {
            os << "l";
            if (e.first != 1) os << "^" << e.first;
            any = true;
        }
        if (e.second != 0) {
            if (any) os << "*";
            os << "m";
            if (e.second != 1) os << "^" << e.second;
        }
        return os.str();
    }

    TermMap terms_;
};

/// Parse a Laurent polynomial from the textual form used by str(), e.g.
/// "l^2*m^3 - 2*m + 1" or "1-l*m^-3". Terms are signed integer monomials in
/// l and m.
inline LaurentPoly parse_laurent(const std::string& text) {
    LaurentPoly out;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw ParseError("empty polynomial");
    bool any = false;
    while (pos < text.size()) {
        skip_ws();
        long sign = 1;
        while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') sign = -sign;
            ++pos;
            skip_ws();
        }
        if (pos == text.size()) throw ParseError("dangling sign in polynomial");
        mpz_class coeff(1);
        bool saw_digits = false;
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string digits;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                digits += text[pos++];
            coeff = mpz_class(digits);
            saw_digits = true;
        }
        long el = 0, em = 0;
        bool saw_var = false;
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
            if (pos >= text.size() || (text[pos] != 'l' && text[pos] != 'm')) break;
            const char var = text[pos++];
            long e = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                long s = 1;
                if (pos < text.size() && text[pos] == '-') s = -1, ++pos;
                std::string digits;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    digits += text[pos++];
                if (digits.empty()) throw ParseError("missing exponent after '^'");
                e = s * std::stol(digits);
            }
            (var == 'l' ? el : em) += e;
            saw_var = true;
        }
        if (!saw_digits && !saw_var) throw ParseError("expected a term in polynomial");
        out += LaurentPoly::monomial(sign * coeff, el, em);
        any = true;
        skip_ws();
    }
    if (!any) throw ParseError("empty polynomial");
    return out;
}

/// Normal form for candidate augmentation-polynomial factors: integer
/// coefficients with content 1, not divisible by l or m, no negative
/// exponents, and the lexicographically-leading coefficient positive.
inline LaurentPoly normalize_candidate(const LaurentPoly& p) {
    if (p.is_zero()) throw InvalidParams("normalize_candidate: zero polynomial");
    LaurentPoly r = p.shifted(-p.min_exp_lambda(), -p.min_exp_mu());
    mpz_class g = r.content();
    if (g > 1) r = r.divided_by(g);
    const auto& lead = *r.terms().rbegin(); // largest (e_l, e_m)
    if (lead.second < 0) r = -r;
    return r;
}

} // namespace kch
