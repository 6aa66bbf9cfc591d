#pragma once

#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

#include "elliptica/fock.hpp"

namespace elliptica {

/// The six free fields entering the realization: two conjugate pairs of
/// oscillators plus the two Heisenberg currents.
enum class FieldGen : int { alpha = 0, alpha_star, alpha1, alpha1_star, beta, beta1 };

inline const char* field_name(FieldGen g) {
    switch (g) {
        case FieldGen::alpha: return "alpha";
        case FieldGen::alpha_star: return "alpha*";
        case FieldGen::alpha1: return "alpha1";
        case FieldGen::alpha1_star: return "alpha1*";
        case FieldGen::beta: return "beta";
        case FieldGen::beta1: return "beta1";
    }
    return "?";
}

/// Conformal-style weight used only for z-power bookkeeping: weight-1 fields
/// expand in z^(-n-1), weight-0 fields in z^(-n).
inline int field_weight(FieldGen g) {
    return (g == FieldGen::alpha_star || g == FieldGen::alpha1_star) ? 0 : 1;
}

/// Choice of module for the Heisenberg currents. "original" is the module as
/// listed; "sigma_twisted_b" conjugates the whole module by the automorphism
/// -sigma (b_n -> b_-n, b1_n -> b1_{-n-2}); "mixed" twists only the b-sector
/// and keeps the b1-sector original.
enum class HeisVariant : int { original = 0, sigma_twisted_b = 1, mixed = 2 };

inline const char* variant_name(HeisVariant v) {
    switch (v) {
        case HeisVariant::original: return "original";
        case HeisVariant::sigma_twisted_b: return "sigma_twisted_b";
        case HeisVariant::mixed: return "mixed";
    }
    return "?";
}

inline HeisVariant parse_variant(const std::string& s) {
    if (s == "original") return HeisVariant::original;
    if (s == "sigma_twisted_b") return HeisVariant::sigma_twisted_b;
    if (s == "mixed") return HeisVariant::mixed;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

/// Module parameters: the oscillator vacuum convention r, the Heisenberg
/// variant, and the scalar parameters, each either symbolic (default) or a
/// bound rational. The central characters on 1+- are identically zero.
struct ModuleParams {
    int r = 1;
    HeisVariant variant = HeisVariant::original;
    CoeffPoly chi0 = CoeffPoly::symbol(Symbol::chi0);
    CoeffPoly lambda = CoeffPoly::symbol(Symbol::lambda);
    CoeffPoly mu = CoeffPoly::symbol(Symbol::mu);
    CoeffPoly nu = CoeffPoly::symbol(Symbol::nu);
    CoeffPoly kappa = CoeffPoly::symbol(Symbol::kappa);

    static ModuleParams make(int r, HeisVariant v) {
        ModuleParams p;
        if (r != 0 && r != 1) throw std::invalid_argument("ModuleParams: r must be 0 or 1");
        p.r = r;
        p.variant = v;
        return p;
    }
};

enum class OpClass : int { creation = 0, annihilation = 1, diagonal = 2 };

/// One monomial-to-monomial piece of a field mode: multiplication by a
/// variable, a scaled derivative, a scalar, or the V-endomorphism attached to
/// the -1 mode of the b1-current.
struct PrimitivePart {
    OpClass cls = OpClass::creation;
    enum class Action { mul_var, derive_var, scalar, vendo } action = Action::scalar;
    VarId var{};
    CoeffPoly coeff = CoeffPoly::one();

    FockState apply(const FockState& s, const ModuleParams& p) const {
        switch (action) {
            case Action::mul_var: return s.mul_var(var).scale(coeff);
            case Action::derive_var: return s.derive(var).scale(coeff);
            case Action::scalar: return s.scale(coeff);
            case Action::vendo:
                // [[mu, kappa], [nu, mu]] acting on (v0, v1)
                return s.apply_vendo(p.mu, p.kappa, p.nu, p.mu).scale(coeff);
        }
        throw std::logic_error("PrimitivePart: bad action");
    }
};

namespace detail {

inline std::vector<PrimitivePart> alpha_mode_parts(VarFamily fam, bool star, long n, int r) {
    using A = PrimitivePart::Action;
    if (!star) {
        if (r == 1 || n < 0) return {{OpClass::creation, A::mul_var, {fam, n}, CoeffPoly::one()}};
        return {{OpClass::annihilation, A::derive_var, {fam, n}, CoeffPoly::one()}};
    }
    if (r == 1 || n > 0)
        return {{OpClass::annihilation, A::derive_var, {fam, -n}, CoeffPoly::constant(-1)}};
    return {{OpClass::creation, A::mul_var, {fam, -n}, CoeffPoly::one()}};
}

inline std::vector<PrimitivePart> beta_mode_parts_original(long n, const ModuleParams& p) {
    using A = PrimitivePart::Action;
    if (n > 0) return {{OpClass::creation, A::mul_var, {VarFamily::y, -n}, CoeffPoly::constant(-1)}};
    if (n == 0) return {{OpClass::diagonal, A::scalar, {}, p.lambda}};
    return {{OpClass::annihilation, A::derive_var, {VarFamily::y, n},
             p.chi0.scale(Rational(2 * n))}};  // -2|n| chi0 * d/dy_n
}

inline std::vector<PrimitivePart> beta1_mode_parts_original(long n, const ModuleParams& p) {
    using A = PrimitivePart::Action;
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);
    if (n <= -2) return {{OpClass::creation, A::mul_var, {VarFamily::y1, n}, CoeffPoly::one()}};
    if (n == -1) {
        return {{OpClass::creation, A::mul_var, {VarFamily::y1, -1}, CoeffPoly::one()},
                {OpClass::annihilation, A::derive_var, {VarFamily::y1, -2}, -p.chi0},
                {OpClass::diagonal, A::vendo, {}, CoeffPoly::one()}};
    }
    // n >= 0: -((2n+1) d_{y1_-n-1} - 4(n+1) b d_{y1_-n-2} + (2n+3) d_{y1_-n-3}) chi0
    return {{OpClass::annihilation, A::derive_var, {VarFamily::y1, -n - 1},
             p.chi0.scale(Rational(-(2 * n + 1)))},
            {OpClass::annihilation, A::derive_var, {VarFamily::y1, -n - 2},
             (p.chi0 * b).scale(Rational(4 * (n + 1)))},
            {OpClass::annihilation, A::derive_var, {VarFamily::y1, -n - 3},
             p.chi0.scale(Rational(-(2 * n + 3)))}};
}

inline bool b_sector_twisted(HeisVariant v) { return v != HeisVariant::original; }
inline bool b1_sector_twisted(HeisVariant v) { return v == HeisVariant::sigma_twisted_b; }

}  // namespace detail

/// The mode-n operator of a field as a sum of classified primitive parts.
inline std::vector<PrimitivePart> field_mode_parts(FieldGen g, long n, const ModuleParams& p) {
    switch (g) {
        case FieldGen::alpha: return detail::alpha_mode_parts(VarFamily::x, false, n, p.r);
        case FieldGen::alpha_star: return detail::alpha_mode_parts(VarFamily::x, true, n, p.r);
        case FieldGen::alpha1: return detail::alpha_mode_parts(VarFamily::x1, false, n, p.r);
        case FieldGen::alpha1_star: return detail::alpha_mode_parts(VarFamily::x1, true, n, p.r);
        case FieldGen::beta:
            return detail::beta_mode_parts_original(detail::b_sector_twisted(p.variant) ? -n : n, p);
        case FieldGen::beta1:
            return detail::beta1_mode_parts_original(
                detail::b1_sector_twisted(p.variant) ? -n - 2 : n, p);
    }
    throw std::invalid_argument("field_mode_parts: unsupported generator/mode combination");
}

/// Applies the full mode-n operator of a field to a state.
inline FockState apply_field_mode(FieldGen g, long n, const FockState& s, const ModuleParams& p) {
    FockState out;
    for (const auto& part : field_mode_parts(g, n, p)) out += part.apply(s, p);
    return out;
}

/// Half-line (or degenerate) descriptor of the modes in which a field acts by
/// creation. Used by the finiteness analysis and the mode enumerator.
struct CreationRange {
    enum class Kind { empty, all, le, ge } kind = Kind::empty;
    long bound = 0;

    bool contains(long n) const {
        switch (kind) {
            case Kind::empty: return false;
            case Kind::all: return true;
            case Kind::le: return n <= bound;
            case Kind::ge: return n >= bound;
        }
        return false;
    }
    bool bounded_above() const { return kind == Kind::le; }
    bool bounded_below() const { return kind == Kind::ge; }

    std::string str() const {
        switch (kind) {
            case Kind::empty: return "empty";
            case Kind::all: return "all of Z";
            case Kind::le: return "n <= " + std::to_string(bound);
            case Kind::ge: return "n >= " + std::to_string(bound);
        }
        return "?";
    }
};

inline CreationRange creation_range(FieldGen g, const ModuleParams& p) {
    using K = CreationRange::Kind;
    switch (g) {
        case FieldGen::alpha:
        case FieldGen::alpha1:
            return p.r == 1 ? CreationRange{K::all, 0} : CreationRange{K::le, -1};
        case FieldGen::alpha_star:
        case FieldGen::alpha1_star:
            return p.r == 1 ? CreationRange{K::empty, 0} : CreationRange{K::le, 0};
        case FieldGen::beta:
            return detail::b_sector_twisted(p.variant) ? CreationRange{K::le, -1}
                                                       : CreationRange{K::ge, 1};
        case FieldGen::beta1:
            return detail::b1_sector_twisted(p.variant) ? CreationRange{K::ge, -1}
                                                        : CreationRange{K::le, -1};
    }
    throw std::invalid_argument("creation_range: bad generator");
}

/// Modes whose annihilation part can act with a nonzero result on a state
/// with the given variable support. A superset is fine; extra modes
/// contribute zero.
inline std::vector<long> usable_ann_modes(FieldGen g, const std::set<VarId>& support,
                                          const ModuleParams& p) {
    std::set<long> modes;
    auto add_if = [&modes](bool cond, long n) {
        if (cond) modes.insert(n);
    };
    for (const auto& v : support) {
        switch (g) {
            case FieldGen::alpha:
                if (v.fam == VarFamily::x && p.r == 0) add_if(v.idx >= 0, v.idx);
                break;
            case FieldGen::alpha1:
                if (v.fam == VarFamily::x1 && p.r == 0) add_if(v.idx >= 0, v.idx);
                break;
            case FieldGen::alpha_star:
                if (v.fam == VarFamily::x) add_if(p.r == 1 || v.idx < 0, -v.idx);
                break;
            case FieldGen::alpha1_star:
                if (v.fam == VarFamily::x1) add_if(p.r == 1 || v.idx < 0, -v.idx);
                break;
            case FieldGen::beta:
                if (v.fam == VarFamily::y) {
                    if (detail::b_sector_twisted(p.variant)) {
                        modes.insert(-v.idx);  // ann at n > 0 via d/dy_{-n}
                    } else {
                        modes.insert(v.idx);  // ann at n < 0 via d/dy_n
                    }
                }
                break;
            case FieldGen::beta1:
                if (v.fam == VarFamily::y1) {
                    for (long k : {-v.idx - 1, -v.idx - 2, -v.idx - 3}) {
                        if (k >= 0) {
                            modes.insert(detail::b1_sector_twisted(p.variant) ? -k - 2 : k);
                        }
                    }
                    if (v.idx == -2) {
                        // the annihilation part of the -1 mode
                        modes.insert(-1);
                    }
                }
                break;
        }
    }
    return {modes.begin(), modes.end()};
}

/// Modes with a diagonal (scalar or V-endomorphism) part.
inline std::vector<long> diag_modes(FieldGen g, const ModuleParams&) {
    if (g == FieldGen::beta) return {0};
    if (g == FieldGen::beta1) return {-1};
    return {};
}

/// --- named operation wrappers ---

enum class OscGen : int { a = 0, a_star, a1, a1_star };

/// Oscillator generator applied in the vacuum convention r.
inline FockState osc_apply(OscGen g, long m, const FockState& s, int r) {
    const ModuleParams p = ModuleParams::make(r, HeisVariant::original);
    static const FieldGen map[] = {FieldGen::alpha, FieldGen::alpha_star, FieldGen::alpha1,
                                   FieldGen::alpha1_star};
    return apply_field_mode(map[static_cast<int>(g)], m, s, p);
}

enum class HeisGen : int { b = 0, b1, one0, one_plus, one_minus };

/// Heisenberg generator applied in the chosen variant. The central elements
/// act by chi0 and by zero respectively.
inline FockState heis_apply(HeisGen g, long m, const FockState& s, const ModuleParams& p) {
    switch (g) {
        case HeisGen::b: return apply_field_mode(FieldGen::beta, m, s, p);
        case HeisGen::b1: return apply_field_mode(FieldGen::beta1, m, s, p);
        case HeisGen::one0: return s.scale(p.chi0);
        case HeisGen::one_plus:
        case HeisGen::one_minus: return {};
    }
    throw std::invalid_argument("heis_apply: unsupported generator/mode combination");
}

}  // namespace elliptica
