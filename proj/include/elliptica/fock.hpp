#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "elliptica/coeffpoly.hpp"

namespace elliptica {

/// Polynomial variable families of the module: x_n, x1_n (n in Z) and
/// y_-m, y1_-m (m >= 1).
enum class VarFamily : int { x = 0, x1 = 1, y = 2, y1 = 3 };

inline const char* family_name(VarFamily f) {
    switch (f) {
        case VarFamily::x: return "x";
        case VarFamily::x1: return "x1";
        case VarFamily::y: return "y";
        case VarFamily::y1: return "y1";
    }
    return "?";
}

inline bool is_y_family(VarFamily f) { return f == VarFamily::y || f == VarFamily::y1; }

struct VarId {
    VarFamily fam = VarFamily::x;
    long idx = 0;

    bool operator==(const VarId& o) const { return fam == o.fam && idx == o.idx; }
    bool operator<(const VarId& o) const {
        if (fam != o.fam) return static_cast<int>(fam) < static_cast<int>(o.fam);
        return idx < o.idx;
    }
    std::string str() const { return std::string(family_name(fam)) + "_" + std::to_string(idx); }
};

inline VarId make_var(VarFamily f, long idx) {
    if (is_y_family(f) && idx > -1) throw std::invalid_argument("VarId: y-family index must be <= -1");
    return {f, idx};
}

/// Multiset of variables as variable -> positive exponent.
using Monomial = std::map<VarId, int>;

struct FockKey {
    Monomial mono;
    int vcomp = 0;  // 0 or 1

    bool operator==(const FockKey& o) const { return vcomp == o.vcomp && mono == o.mono; }
    bool operator<(const FockKey& o) const {
        if (vcomp != o.vcomp) return vcomp < o.vcomp;
        return mono < o.mono;
    }
};

/// Finitely supported polynomial state tensored with the two-dimensional
/// space spanned by v0, v1. Canonical: no zero coefficients stored.
class FockState {
public:
    FockState() = default;

    static FockState vacuum(int vcomp) {
        if (vcomp != 0 && vcomp != 1) throw std::invalid_argument("vacuum: component must be 0 or 1");
        FockState s;
        s.terms_[FockKey{{}, vcomp}] = CoeffPoly::one();
        return s;
    }
    static FockState term(const Monomial& m, int vcomp, const CoeffPoly& c) {
        FockState s;
        s.add_term({m, vcomp}, c);
        return s;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<FockKey, CoeffPoly>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    FockState operator-() const {
        FockState r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    FockState operator+(const FockState& o) const {
        FockState r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }
    FockState operator-(const FockState& o) const { return *this + (-o); }
    FockState& operator+=(const FockState& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    FockState scale(const CoeffPoly& c) const {
        FockState r;
        for (const auto& [k, v] : terms_) r.add_term(k, v * c);
        return r;
    }

    FockState mul_var(const VarId& v) const {
        FockState r;
        for (const auto& [k, c] : terms_) {
            FockKey nk = k;
            nk.mono[v] += 1;
            r.add_term(nk, c);
        }
        return r;
    }

    FockState derive(const VarId& v) const {
        FockState r;
        for (const auto& [k, c] : terms_) {
            auto it = k.mono.find(v);
            if (it == k.mono.end()) continue;
            FockKey nk = k;
            const int e = it->second;
            if (e == 1) {
                nk.mono.erase(v);
            } else {
                nk.mono[v] = e - 1;
            }
            r.add_term(nk, c.scale(Rational(e)));
        }
        return r;
    }

    /// Action of a 2x2 matrix [[m00, m01], [m10, m11]] on (v0, v1):
    /// v0 -> m00 v0 + m10 v1, v1 -> m01 v0 + m11 v1.
    FockState apply_vendo(const CoeffPoly& m00, const CoeffPoly& m01, const CoeffPoly& m10,
                          const CoeffPoly& m11) const {
        FockState r;
        for (const auto& [k, c] : terms_) {
            const CoeffPoly& to0 = k.vcomp == 0 ? m00 : m01;
            const CoeffPoly& to1 = k.vcomp == 0 ? m10 : m11;
            r.add_term({k.mono, 0}, c * to0);
            r.add_term({k.mono, 1}, c * to1);
        }
        return r;
    }

    std::set<VarId> var_support() const {
        std::set<VarId> s;
        for (const auto& [k, c] : terms_) {
            for (const auto& [v, e] : k.mono) s.insert(v);
        }
        return s;
    }

    static int y_degree(const Monomial& m) {
        int d = 0;
        for (const auto& [v, e] : m) {
            if (is_y_family(v.fam)) d += e;
        }
        return d;
    }

    int max_y_degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, y_degree(k.mono));
        return d;
    }

    /// Projection onto the y-degree-zero component.
    FockState project_y_free() const {
        FockState r;
        for (const auto& [k, c] : terms_) {
            if (y_degree(k.mono) == 0) r.add_term(k, c);
        }
        return r;
    }

    bool uses_only_x_sector() const {
        for (const auto& [k, c] : terms_) {
            if (y_degree(k.mono) != 0) return false;
        }
        return true;
    }

    bool operator==(const FockState& o) const { return terms_ == o.terms_; }
    bool operator!=(const FockState& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (const auto& [v, e] : k.mono) {
                out += "*" + v.str();
                if (e > 1) out += "^" + std::to_string(e);
            }
            out += "*v" + std::to_string(k.vcomp);
        }
        return out;
    }

    void add_term(const FockKey& k, const CoeffPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    std::map<FockKey, CoeffPoly> terms_;
};

}  // namespace elliptica
