#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "elliptica/rational.hpp"

namespace elliptica {

/// The fixed, closed symbol set of the coefficient ring. Any other
/// indeterminate is an error by construction.
enum class Symbol : int { b = 0, chi0 = 1, lambda = 2, mu = 3, nu = 4, kappa = 5 };

inline constexpr int kSymbolCount = 6;

inline const char* symbol_name(Symbol s) {
    switch (s) {
        case Symbol::b: return "b";
        case Symbol::chi0: return "chi0";
        case Symbol::lambda: return "lambda";
        case Symbol::mu: return "mu";
        case Symbol::nu: return "nu";
        case Symbol::kappa: return "kappa";
    }
    throw std::invalid_argument("symbol_name: bad symbol");
}

/// Exponent vector over the symbol set, indexed by Symbol.
using ExpVec = std::array<uint16_t, kSymbolCount>;

inline int total_degree(const ExpVec& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

/// Sparse multivariate polynomial over Rational in the symbols
/// {b, chi0, lambda, mu, nu, kappa}. Canonical: no zero coefficients stored;
/// equality is term-map equality. Immutable in practice (all operations
/// return new values).
class CoeffPoly {
public:
    CoeffPoly() = default;

    static CoeffPoly zero() { return CoeffPoly(); }
    static CoeffPoly one() { return constant(Rational(1)); }
    static CoeffPoly constant(const Rational& r) {
        CoeffPoly p;
        if (!r.is_zero()) p.terms_[ExpVec{}] = r;
        return p;
    }
    static CoeffPoly constant(long n) { return constant(Rational(n)); }
    static CoeffPoly symbol(Symbol s, int power = 1) {
        if (power < 0) throw std::invalid_argument("CoeffPoly: negative exponent");
        CoeffPoly p;
        if (power == 0) return one();
        ExpVec e{};
        e[static_cast<int>(s)] = static_cast<uint16_t>(power);
        p.terms_[e] = Rational(1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ExpVec{});
    }

    /// The value as a Rational; only valid when is_constant().
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::domain_error("CoeffPoly: not a constant");
        return terms_.begin()->second;
    }

    const std::map<ExpVec, Rational>& terms() const { return terms_; }

    CoeffPoly operator-() const {
        CoeffPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    CoeffPoly operator+(const CoeffPoly& o) const {
        CoeffPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    CoeffPoly operator-(const CoeffPoly& o) const {
        CoeffPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    CoeffPoly& operator+=(const CoeffPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    CoeffPoly& operator-=(const CoeffPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    CoeffPoly operator*(const CoeffPoly& o) const {
        CoeffPoly r;
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                ExpVec e{};
                for (int i = 0; i < kSymbolCount; ++i) {
                    unsigned s = unsigned(e1[i]) + unsigned(e2[i]);
                    if (s > 0xffffu) throw std::overflow_error("CoeffPoly: exponent overflow");
                    e[i] = static_cast<uint16_t>(s);
                }
                r.add_term(e, c1 * c2);
            }
        }
        return r;
    }

    CoeffPoly scale(const Rational& r) const {
        CoeffPoly out;
        if (r.is_zero()) return out;
        for (const auto& [e, c] : terms_) out.terms_[e] = c * r;
        return out;
    }

    /// Substitutes rationals for a subset of symbols; unbound symbols remain
    /// symbolic. Result re-canonicalized.
    CoeffPoly specialize(const std::map<Symbol, Rational>& bindings) const {
        CoeffPoly out;
        for (const auto& [e, c] : terms_) {
            Rational coeff = c;
            ExpVec rest{};
            for (int i = 0; i < kSymbolCount; ++i) {
                auto it = bindings.find(static_cast<Symbol>(i));
                if (it == bindings.end()) {
                    rest[i] = e[i];
                } else {
                    for (int k = 0; k < e[i]; ++k) coeff *= it->second;
                }
            }
            out.add_term(rest, coeff);
        }
        return out;
    }

    int degree_in(Symbol s) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max<int>(d, e[static_cast<int>(s)]);
        return d;
    }

    /// Polynomial coefficient of s^k, as a polynomial in the remaining symbols.
    CoeffPoly coefficient_of(Symbol s, int k) const {
        CoeffPoly out;
        for (const auto& [e, c] : terms_) {
            if (e[static_cast<int>(s)] != k) continue;
            ExpVec rest = e;
            rest[static_cast<int>(s)] = 0;
            out.add_term(rest, c);
        }
        return out;
    }

    bool operator==(const CoeffPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const CoeffPoly& o) const { return !(*this == o); }
    bool operator<(const CoeffPoly& o) const { return terms_ < o.terms_; }

    /// Canonical text form, terms in graded-lexicographic order (highest total
    /// degree first), e.g. "(4/5)*b - 4/5".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<const std::pair<const ExpVec, Rational>*> order;
        order.reserve(terms_.size());
        for (const auto& t : terms_) order.push_back(&t);
        std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
            int da = total_degree(a->first), db = total_degree(b->first);
            if (da != db) return da > db;
            return a->first > b->first;
        });
        std::string out;
        bool first = true;
        for (const auto* t : order) {
            const Rational mag = t->second.abs();
            if (first) {
                if (t->second.is_negative()) out += "-";
                first = false;
            } else {
                out += t->second.is_negative() ? " - " : " + ";
            }
            out += term_str(t->first, mag);
        }
        return out;
    }

private:
    static std::string term_str(const ExpVec& e, const Rational& mag) {
        std::string mono;
        for (int i = 0; i < kSymbolCount; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += symbol_name(static_cast<Symbol>(i));
            if (e[i] > 1) mono += "^" + std::to_string(int(e[i]));
        }
        if (mono.empty()) return mag.str();
        if (mag.is_one()) return mono;
        std::string c = mag.is_integer() ? mag.str() : "(" + mag.str() + ")";
        return c + "*" + mono;
    }

    void add_term(const ExpVec& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<ExpVec, Rational> terms_;
};

inline CoeffPoly operator*(const Rational& r, const CoeffPoly& p) { return p.scale(r); }
inline CoeffPoly operator*(long n, const CoeffPoly& p) { return p.scale(Rational(n)); }

}  // namespace elliptica
