#pragma once

#include <map>
#include <string>
#include <utility>

#include "elliptica/coeffpoly.hpp"

namespace elliptica {

/// Which of the two module generators a ring basis monomial carries:
/// t^n (plain) or t^n*u.
enum class Sector : int { plain = 0, u = 1 };

struct RingKey {
    long n = 0;
    Sector sector = Sector::plain;

    bool operator==(const RingKey& o) const { return n == o.n && sector == o.sector; }
    bool operator<(const RingKey& o) const {
        if (n != o.n) return n < o.n;
        return static_cast<int>(sector) < static_cast<int>(o.sector);
    }
};

/// Element of the commutative ring C[t, t^-1, u | u^2 = t^3 - 2b t^2 + t]
/// over CoeffPoly scalars, written on the basis {t^n, t^n u : n in Z}.
/// Finitely supported; no zero coefficients stored.
class RingElement {
public:
    RingElement() = default;

    static RingElement zero() { return RingElement(); }
    static RingElement one() { return monomial(0, Sector::plain); }
    static RingElement t(long n) { return monomial(n, Sector::plain); }
    static RingElement tu(long n) { return monomial(n, Sector::u); }
    static RingElement monomial(long n, Sector s, const CoeffPoly& c = CoeffPoly::one()) {
        RingElement r;
        r.add_term({n, s}, c);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<RingKey, CoeffPoly>& terms() const { return terms_; }

    RingElement operator-() const {
        RingElement r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    RingElement operator+(const RingElement& o) const {
        RingElement r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }
    RingElement operator-(const RingElement& o) const {
        RingElement r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }
    RingElement& operator+=(const RingElement& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }

    RingElement scale(const CoeffPoly& c) const {
        RingElement r;
        for (const auto& [k, v] : terms_) r.add_term(k, v * c);
        return r;
    }

    /// Product in R; u*u is rewritten through u^2 = t^3 - 2b t^2 + t.
    RingElement operator*(const RingElement& o) const {
        RingElement r;
        const CoeffPoly two_b = CoeffPoly::symbol(Symbol::b).scale(Rational(2));
        for (const auto& [k1, c1] : terms_) {
            for (const auto& [k2, c2] : o.terms_) {
                const CoeffPoly c = c1 * c2;
                const long n = k1.n + k2.n;
                if (k1.sector == Sector::plain && k2.sector == Sector::plain) {
                    r.add_term({n, Sector::plain}, c);
                } else if (k1.sector != k2.sector) {
                    r.add_term({n, Sector::u}, c);
                } else {
                    r.add_term({n + 3, Sector::plain}, c);
                    r.add_term({n + 2, Sector::plain}, -(c * two_b));
                    r.add_term({n + 1, Sector::plain}, c);
                }
            }
        }
        return r;
    }

    bool operator==(const RingElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*" + monomial_str(k);
        }
        return out;
    }

    static std::string monomial_str(const RingKey& k) {
        std::string s = "t^" + std::to_string(k.n);
        if (k.sector == Sector::u) s += "*u";
        return s;
    }

private:
    void add_term(const RingKey& k, const CoeffPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<RingKey, CoeffPoly> terms_;
};

/// The ring automorphism tau: t -> t^-1, u -> t^-2 u.
inline RingElement tau(const RingElement& f) {
    RingElement r;
    for (const auto& [k, c] : f.terms()) {
        if (k.sector == Sector::plain) {
            r += RingElement::monomial(-k.n, Sector::plain, c);
        } else {
            r += RingElement::monomial(-k.n - 2, Sector::u, c);
        }
    }
    return r;
}

}  // namespace elliptica
