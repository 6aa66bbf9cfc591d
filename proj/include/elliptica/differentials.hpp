#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "elliptica/ring.hpp"

namespace elliptica {

/// Class in the quotient of Kahler differentials by exact forms, written on
/// the basis w0 = [t^-1 dt], w+ = [t^-1 u dt], w- = [t^-2 u dt].
/// Exactly zero iff all three coordinates are zero.
struct DifferentialClass {
    CoeffPoly c0;      // coefficient of w0
    CoeffPoly cplus;   // coefficient of w+
    CoeffPoly cminus;  // coefficient of w-

    static DifferentialClass zero() { return {}; }
    static DifferentialClass w0(const CoeffPoly& c = CoeffPoly::one()) { return {c, {}, {}}; }
    static DifferentialClass wplus(const CoeffPoly& c = CoeffPoly::one()) { return {{}, c, {}}; }
    static DifferentialClass wminus(const CoeffPoly& c = CoeffPoly::one()) { return {{}, {}, c}; }

    bool is_zero() const { return c0.is_zero() && cplus.is_zero() && cminus.is_zero(); }

    DifferentialClass operator-() const { return {-c0, -cplus, -cminus}; }
    DifferentialClass operator+(const DifferentialClass& o) const {
        return {c0 + o.c0, cplus + o.cplus, cminus + o.cminus};
    }
    DifferentialClass operator-(const DifferentialClass& o) const {
        return {c0 - o.c0, cplus - o.cplus, cminus - o.cminus};
    }
    DifferentialClass& operator+=(const DifferentialClass& o) {
        c0 += o.c0;
        cplus += o.cplus;
        cminus += o.cminus;
        return *this;
    }
    DifferentialClass scale(const CoeffPoly& c) const { return {c0 * c, cplus * c, cminus * c}; }

    bool operator==(const DifferentialClass& o) const {
        return c0 == o.c0 && cplus == o.cplus && cminus == o.cminus;
    }
    bool operator!=(const DifferentialClass& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        auto emit = [&out](const CoeffPoly& c, const char* name) {
            if (c.is_zero()) return;
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")*" + name;
        };
        emit(c0, "w0");
        emit(cplus, "w+");
        emit(cminus, "w-");
        return out;
    }
};

namespace detail {

/// Coordinates (on w+, w-) of the class a_n = [t^n u dt].
///
/// The three-term relation used here is derived from exactness of d(t^k u)
/// together with t^(m-1) u times the relation 2u du = (3t^2 - 4bt + 1) dt:
///
///   (2m+7) a_{m+1} = 4b(m+2) a_m - (2m+1) a_{m-1}.
///
/// Upward and downward reductions both divide by odd integers only, so the
/// reduction is exact and total over all integer exponents.
inline std::pair<CoeffPoly, CoeffPoly> u_dt_class_coords(long n) {
    const CoeffPoly b4 = CoeffPoly::symbol(Symbol::b).scale(Rational(4));
    // prev = a_{j-1}, prev2 = a_{j-2} coordinates while walking j upward,
    // starting from a_{-1} = w+ and a_{-2} = w-.
    if (n == -1) return {CoeffPoly::one(), CoeffPoly::zero()};
    if (n == -2) return {CoeffPoly::zero(), CoeffPoly::one()};
    if (n >= 0) {
        std::pair<CoeffPoly, CoeffPoly> prev{CoeffPoly::one(), CoeffPoly::zero()};   // a_{-1}
        std::pair<CoeffPoly, CoeffPoly> prev2{CoeffPoly::zero(), CoeffPoly::one()};  // a_{-2}
        std::pair<CoeffPoly, CoeffPoly> cur;
        for (long j = 0; j <= n; ++j) {
            // (2j+5) a_j = 4b(j+1) a_{j-1} - (2j-1) a_{j-2}
            const Rational inv(1, 2 * j + 5);
            const CoeffPoly lead = b4.scale(Rational(j + 1));
            cur.first = (lead * prev.first - Rational(2 * j - 1) * prev2.first).scale(inv);
            cur.second = (lead * prev.second - Rational(2 * j - 1) * prev2.second).scale(inv);
            prev2 = prev;
            prev = cur;
        }
        return cur;
    }
    // n <= -3: solve the same relation for the lowest index,
    // a_n = [4b(n+3) a_{n+1} - (2n+9) a_{n+2}] / (2n+3).
    // Walking j downward from -3, next = a_{j+1} and next2 = a_{j+2}.
    std::pair<CoeffPoly, CoeffPoly> next{CoeffPoly::zero(), CoeffPoly::one()};   // a_{-2}
    std::pair<CoeffPoly, CoeffPoly> next2{CoeffPoly::one(), CoeffPoly::zero()};  // a_{-1}
    std::pair<CoeffPoly, CoeffPoly> cur;
    for (long j = -3; j >= n; --j) {
        const Rational inv(1, 2 * j + 3);
        const CoeffPoly lead = b4.scale(Rational(j + 3));
        cur.first = (lead * next.first - Rational(2 * j + 9) * next2.first).scale(inv);
        cur.second = (lead * next.second - Rational(2 * j + 9) * next2.second).scale(inv);
        next2 = next;
        next = cur;
    }
    return cur;
}

}  // namespace detail

/// Class of t^n u dt.
inline DifferentialClass u_dt_class(long n) {
    auto [p, q] = detail::u_dt_class_coords(n);
    return {CoeffPoly::zero(), p, q};
}

/// Class of t^n dt: exact unless n = -1.
inline DifferentialClass t_dt_class(long n) {
    return n == -1 ? DifferentialClass::w0() : DifferentialClass::zero();
}

/// Class of f*dg in the quotient of differentials by exact forms.
///
/// Expansion: dg = G1 dt + G2 du with G1, G2 in R; then
///   t^k dt      -> w0 iff k = -1, else 0           (exactness of d t^{k+1})
///   t^k du      -> -k [t^{k-1} u dt]               (exactness of d(t^k u))
///   t^k u du    -> (1/2) t^k (3t^2 - 4bt + 1) dt   (Kahler relation)
///   t^k u dt    -> reduced to w+/w- by the three-term relation above.
inline DifferentialClass reduce_fdg(const RingElement& f, const RingElement& g) {
    RingElement g1;  // dt coefficient of dg
    RingElement g2;  // du coefficient of dg
    for (const auto& [k, c] : g.terms()) {
        if (k.sector == Sector::plain) {
            if (k.n != 0) g1 += RingElement::monomial(k.n - 1, Sector::plain, c.scale(Rational(k.n)));
        } else {
            if (k.n != 0) g1 += RingElement::monomial(k.n - 1, Sector::u, c.scale(Rational(k.n)));
            g2 += RingElement::monomial(k.n, Sector::plain, c);
        }
    }
    const RingElement h1 = f * g1;
    const RingElement h2 = f * g2;

    DifferentialClass out;
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);
    for (const auto& [k, c] : h1.terms()) {
        if (k.sector == Sector::plain) {
            out += t_dt_class(k.n).scale(c);
        } else {
            out += u_dt_class(k.n).scale(c);
        }
    }
    for (const auto& [k, c] : h2.terms()) {
        if (k.sector == Sector::plain) {
            // t^k du = d(t^k u) - k t^{k-1} u dt
            if (k.n != 0) out += u_dt_class(k.n - 1).scale(c.scale(Rational(-k.n)));
        } else {
            // t^k u du = (1/2)(3 t^{k+2} - 4b t^{k+1} + t^k) dt
            out += t_dt_class(k.n + 2).scale(c.scale(Rational(3, 2)));
            out += t_dt_class(k.n + 1).scale(-(c * b).scale(Rational(2)));
            out += t_dt_class(k.n).scale(c.scale(Rational(1, 2)));
        }
    }
    return out;
}

/// The 2-cocycle of the universal central extension: omega(f, g) = [f dg].
inline DifferentialClass omega_pairing(const RingElement& f, const RingElement& g) {
    return reduce_fdg(f, g);
}

}  // namespace elliptica
