#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kch/errors.hpp"

namespace kch {

/// Freely reduced word over named generators. Letters are (generator id,
/// exponent +-1); the empty word is the identity.
class GroupWord {
  public:
    using Letter = std::pair<int, int>;

    GroupWord() = default;
    explicit GroupWord(std::vector<Letter> letters) {
        for (const Letter& l : letters) push(l);
    }
    static GroupWord gen(int id, int exp = 1) {
        GroupWord w;
        int sign = exp >= 0 ? 1 : -1;
        for (int t = 0; t < std::abs(exp); ++t) w.push({id, sign});
        return w;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }

    friend GroupWord operator*(const GroupWord& a, const GroupWord& b) {
        GroupWord r = a;
        for (const Letter& l : b.letters_) r.push(l);
        return r;
    }
    GroupWord inverse() const {
        GroupWord r;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            r.push({it->first, -it->second});
        return r;
    }
    GroupWord pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        GroupWord r;
        for (int t = 0; t < e; ++t) r = r * *this;
        return r;
    }

    friend bool operator==(const GroupWord& a, const GroupWord& b) {
        return a.letters_ == b.letters_;
    }
    friend bool operator!=(const GroupWord& a, const GroupWord& b) { return !(a == b); }

  private:
    void push(const Letter& l) {
        if (l.second != 1 && l.second != -1)
            throw InvalidParams("GroupWord letter exponent must be +-1");
        if (!letters_.empty() && letters_.back().first == l.first &&
            letters_.back().second == -l.second) {
            letters_.pop_back(); // cancel adjacent inverse pair
        } else {
            letters_.push_back(l);
        }
    }

    std::vector<Letter> letters_;
};

/// Finite presentation of a knot group with peripheral data. Each generator
/// carries its abelianization weight (the linking number of that generator
/// with the knot), which makes linking numbers of arbitrary words a exponent
/// sum.
struct Presentation {
    std::string name;
    std::vector<std::string> gen_names;
    std::vector<int> weights;
    std::vector<GroupWord> relators;
    GroupWord meridian;
    std::optional<GroupWord> longitude;

    int gen_id(const std::string& g) const {
        for (std::size_t t = 0; t < gen_names.size(); ++t)
            if (gen_names[t] == g) return static_cast<int>(t);
        throw InvalidParams("unknown generator '" + g + "' in presentation " + name);
    }

    /// Word literal grammar: dot-separated letters "m.b^-1.m^-1.b"; "e" or ""
    /// is the identity.
    GroupWord parse_word(const std::string& text) const {
        GroupWord w;
        if (text.empty() || text == "e") return w;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t next = text.find('.', pos);
            if (next == std::string::npos) next = text.size();
            std::string tok = text.substr(pos, next - pos);
            std::string base = tok;
            int exp = 1;
            if (auto caret = tok.find('^'); caret != std::string::npos) {
                base = tok.substr(0, caret);
                try {
                    exp = std::stoi(tok.substr(caret + 1));
                } catch (const std::exception&) {
                    throw ParseError("bad exponent in word letter '" + tok + "'");
                }
            }
            w = w * GroupWord::gen(gen_id(base), exp);
            if (next == text.size()) break;
            pos = next + 1;
        }
        return w;
    }

    std::string format_word(const GroupWord& w) const {
        if (w.is_identity()) return "e";
        std::string s;
        for (std::size_t t = 0; t < w.letters().size(); ++t) {
            if (t) s += ".";
            s += gen_names[static_cast<std::size_t>(w.letters()[t].first)];
            if (w.letters()[t].second < 0) s += "^-1";
        }
        return s;
    }
};

/// Linking number of a word with the knot: weighted exponent sum.
inline int linking_number(const GroupWord& u, const Presentation& pres) {
    int lk = 0;
    for (const auto& [id, exp] : u.letters()) lk += exp * pres.weights.at(id);
    return lk;
}

/// <x, y | x^p = y^q> with peripheral data m = x^s y^r (rp + sq = 1,
/// representative fixed by 0 < s <= p) and l = x^p m^{-pq}.
inline Presentation torus_presentation(int p, int q) {
    if (!(1 <= p && p < q) || std::gcd(p, q) != 1)
        throw InvalidParams("torus_presentation requires 1 <= p < q coprime");
    // extended Euclid: r*p + s*q = 1
    long r0 = 0, s0 = 0;
    {
        long a = p, b = q, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b) {
            long t = a / b;
            a -= t * b;
            std::swap(a, b);
            x0 -= t * x1;
            std::swap(x0, x1);
            y0 -= t * y1;
            std::swap(y0, y1);
        }
        r0 = x0;
        s0 = y0; // a == gcd == 1
    }
    // shift representative: (r, s) -> (r - t q, s + t p) with 0 < s <= p
    long s = s0, r = r0;
    while (s <= 0) s += p, r -= q;
    while (s > p) s -= p, r += q;

    Presentation pres;
    pres.name = "torus(" + std::to_string(p) + "," + std::to_string(q) + ")";
    pres.gen_names = {"x", "y"};
    pres.weights = {q, p};
    const GroupWord x = GroupWord::gen(0), y = GroupWord::gen(1);
    pres.relators = {x.pow(p) * y.pow(-q)};
    pres.meridian = x.pow(static_cast<int>(s)) * y.pow(static_cast<int>(r));
    pres.longitude = x.pow(p) * pres.meridian.pow(-p * q);
    return pres;
}

/// Schubert epsilon sequence for K(p,q): eps_i = (-1)^floor(iq/p).
inline std::vector<int> schubert_epsilons(int p, int q) {
    std::vector<int> eps;
    eps.reserve(static_cast<std::size_t>(p - 1));
    for (int i = 1; i <= p - 1; ++i) {
        // floor divide with negative q
        long num = static_cast<long>(i) * q;
        long f = num >= 0 ? num / p : -((-num + p - 1) / p);
        eps.push_back(f % 2 == 0 ? 1 : -1);
    }
    return eps;
}

/// Schubert normal form <m, b | wm = bw> of the 2-bridge knot K(p,q),
/// w = m^{eps_1} b^{eps_2} ... m^{eps_{2k-1}} b^{eps_{2k}}, 2k = p-1.
/// No longitude word is attached.
inline Presentation two_bridge_presentation(int p, int q) {
    if (p < 3 || p % 2 == 0 || std::abs(q) % 2 == 0 || !(-p < q && q < p) ||
        std::gcd(p, std::abs(q)) != 1)
        throw InvalidParams("two_bridge_presentation requires odd coprime p,q, -p<q<p, p>=3");
    Presentation pres;
    pres.name = "twobridge(" + std::to_string(p) + "," + std::to_string(q) + ")";
    pres.gen_names = {"m", "b"};
    pres.weights = {1, 1};
    const GroupWord m = GroupWord::gen(0), b = GroupWord::gen(1);
    const std::vector<int> eps = schubert_epsilons(p, q);
    GroupWord w;
    for (std::size_t t = 0; t < eps.size(); ++t)
        w = w * GroupWord::gen(t % 2 == 0 ? 0 : 1, eps[t]);
    pres.relators = {w * m * w.inverse() * b.inverse()};
    pres.meridian = m;
    return pres;
}

/// Word of the braid-closure element w of the (-2,3,2k+1) pretzel
/// presentation <m, w | w^k E = F w^k>, E = m w m^-1 w^-1 m^-1,
/// F = m^-1 w^-1 m w m w^-1. The longitude is m^{-(2k+6)} L with L the
/// blackboard-framed longitude word.
inline Presentation pretzel_presentation(int k) {
    if (k == -1 || k == 0) throw InvalidParams("pretzel_presentation requires k != -1, 0");
    Presentation pres;
    pres.name = "pretzel(" + std::to_string(k) + ")";
    pres.gen_names = {"m", "w"};
    pres.weights = {1, 2}; // w is a product of two meridians
    const GroupWord m = GroupWord::gen(0), w = GroupWord::gen(1);
    const GroupWord E = m * w * m.inverse() * w.inverse() * m.inverse();
    const GroupWord F = m.inverse() * w.inverse() * m * w * m * w.inverse();
    pres.relators = {w.pow(k) * E * (F * w.pow(k)).inverse()};
    pres.meridian = m;
    const GroupWord Ew = E * w;
    const GroupWord EmE = E.inverse() * m * E;
    const GroupWord conj_m = Ew.inverse() * m * Ew;
    const GroupWord L = Ew * EmE * E.pow(k) * w.pow(k) * conj_m * EmE * Ew.pow(-k) * w.pow(k) *
                        conj_m * E.inverse();
    pres.longitude = m.pow(-(2 * k + 6)) * L;
    return pres;
}

/// Addressing grammar for presentations: "torus:p,q", "twobridge:p,q",
/// "pretzel:k".
inline Presentation presentation_from_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("presentation spec must be family:params, got '" + spec + "'");
    const std::string family = spec.substr(0, colon);
    std::vector<int> args;
    std::size_t pos = colon + 1;
    while (pos <= spec.size()) {
        std::size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        try {
            args.push_back(std::stoi(spec.substr(pos, next - pos)));
        } catch (const std::exception&) {
            throw ParseError("bad parameter in presentation spec '" + spec + "'");
        }
        if (next == spec.size()) break;
        pos = next + 1;
    }
    if (family == "torus" && args.size() == 2) return torus_presentation(args[0], args[1]);
    if (family == "twobridge" && args.size() == 2)
        return two_bridge_presentation(args[0], args[1]);
    if (family == "pretzel" && args.size() == 1) return pretzel_presentation(args[0]);
    throw ParseError("unknown presentation spec '" + spec + "'");
}

} // namespace kch
