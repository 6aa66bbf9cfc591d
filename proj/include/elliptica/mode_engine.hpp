#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "elliptica/field_expr.hpp"

namespace elliptica {

/// Static well-definedness analysis of the mode operators of an expression:
/// for every normal-ordered monomial, every way of classifying its factors
/// into creation/annihilation/diagonal roles must leave the creation-assigned
/// index tuples finite once the total index is fixed. Annihilation and
/// diagonal indices are pinned by any polynomial state, so only the
/// creation-range directions matter.
struct MonomialVerdict {
    std::string desc;
    bool finite = true;
    std::string witness;  // description of an infinite creation family
};

struct FinitenessVerdict {
    bool finite = true;
    std::vector<MonomialVerdict> monomials;
    std::string witness;  // first infinite witness

    void note(MonomialVerdict v) {
        if (!v.finite && finite) {
            finite = false;
            witness = v.desc + ": " + v.witness;
        }
        monomials.push_back(std::move(v));
    }
};

namespace detail {

inline bool has_ann_class(FieldGen g, const ModuleParams& p) {
    switch (g) {
        case FieldGen::alpha:
        case FieldGen::alpha1: return p.r == 0;
        default: return true;
    }
}
inline bool has_diag_class(FieldGen g) {
    return g == FieldGen::beta || g == FieldGen::beta1;
}

inline std::string monomial_desc(const std::vector<FieldGen>& fs) {
    std::string out = ":";
    for (const FieldGen g : fs) out += std::string(" ") + field_name(g);
    return out + " :";
}

/// Finiteness of the creation-assigned sub-tuple under a fixed total sum.
inline bool creation_set_finite(const std::vector<CreationRange>& ranges, std::string* witness,
                                const std::vector<std::string>& names) {
    if (ranges.size() <= 1) return true;
    bool any_all = false, any_le = false, any_ge = false;
    for (const auto& r : ranges) {
        any_all |= r.kind == CreationRange::Kind::all;
        any_le |= r.kind == CreationRange::Kind::le;
        any_ge |= r.kind == CreationRange::Kind::ge;
    }
    if (!any_all && !(any_le && any_ge)) return true;
    if (witness) {
        std::string w = "creation-classified factors {";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) w += ", ";
            w += names[i] + " (" + ranges[i].str() + ")";
        }
        w += "} admit index tuples of unbounded size at fixed total index";
        *witness = w;
    }
    return false;
}

/// Enumerates one classification assignment of a monomial; calls check on the
/// creation ranges of each assignment.
inline void for_each_assignment(const std::vector<FieldGen>& fs, const ModuleParams& p,
                                const std::function<void(const std::vector<OpClass>&)>& fn) {
    std::vector<OpClass> cls(fs.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == fs.size()) {
            fn(cls);
            return;
        }
        if (creation_range(fs[i], p).kind != CreationRange::Kind::empty) {
            cls[i] = OpClass::creation;
            rec(i + 1);
        }
        if (has_ann_class(fs[i], p)) {
            cls[i] = OpClass::annihilation;
            rec(i + 1);
        }
        if (has_diag_class(fs[i])) {
            cls[i] = OpClass::diagonal;
            rec(i + 1);
        }
    };
    rec(0);
}

inline MonomialVerdict analyze_monomial(const std::vector<FieldGen>& fs, const ModuleParams& p) {
    MonomialVerdict v;
    v.desc = monomial_desc(fs);
    if (fs.size() <= 1) return v;
    for_each_assignment(fs, p, [&](const std::vector<OpClass>& cls) {
        if (!v.finite) return;
        std::vector<CreationRange> ranges;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (cls[i] == OpClass::creation) {
                ranges.push_back(creation_range(fs[i], p));
                names.push_back(field_name(fs[i]));
            }
        }
        std::string w;
        if (!creation_set_finite(ranges, &w, names)) {
            v.finite = false;
            v.witness = w;
        }
    });
    return v;
}

inline void analyze_expr(const FieldExprPtr& e, const ModuleParams& p, FinitenessVerdict& out) {
    switch (e->node) {
        case FieldExpr::Node::gen: {
            MonomialVerdict v;
            v.desc = std::string(field_name(e->gen)) + " (single field)";
            out.note(std::move(v));
            return;
        }
        case FieldExpr::Node::norm_prod: {
            std::vector<FieldGen> fs;
            flatten_nprod(e, fs);
            out.note(analyze_monomial(fs, p));
            return;
        }
        case FieldExpr::Node::zpoly_mul:
        case FieldExpr::Node::dz:
        case FieldExpr::Node::scale:
            analyze_expr(e->child, p, out);
            return;
        case FieldExpr::Node::sum:
            for (const auto& part : e->parts) analyze_expr(part, p, out);
            return;
    }
    throw std::logic_error("analyze_expr: bad node");
}

/// Applies one fully classified index tuple, placing creation-classified
/// parts left of annihilation-classified ones and preserving relative order
/// within each class (well-defined because same-class mode pairs commute).
/// Diagonal parts commute with everything and sit in the middle.
inline FockState apply_classified_tuple(const std::vector<FieldGen>& fs,
                                        const std::vector<long>& modes,
                                        const std::vector<OpClass>& cls, const FockState& s,
                                        const ModuleParams& p) {
    std::vector<std::size_t> order;  // operator product, left to right
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (cls[i] == OpClass::creation) order.push_back(i);
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (cls[i] == OpClass::diagonal) order.push_back(i);
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (cls[i] == OpClass::annihilation) order.push_back(i);

    FockState cur = s;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t i = *it;
        FockState next;
        for (const auto& part : field_mode_parts(fs[i], modes[i], p)) {
            if (part.cls == cls[i]) next += part.apply(cur, p);
        }
        cur = std::move(next);
        if (cur.is_zero()) return cur;
    }
    return cur;
}

/// Enumerates creation tuples with a fixed sum when all ranges point the same
/// way. `ranges` must be all bounded above or all bounded below (or contain a
/// single element).
inline void enum_creation_tuples(const std::vector<CreationRange>& ranges, long target,
                                 const std::function<void(const std::vector<long>&)>& fn) {
    const std::size_t c = ranges.size();
    if (c == 0) {
        if (target == 0) fn({});
        return;
    }
    if (c == 1) {
        if (ranges[0].contains(target)) fn({target});
        return;
    }
    bool all_le = true, all_ge = true;
    for (const auto& r : ranges) {
        all_le &= r.bounded_above();
        all_ge &= r.bounded_below();
    }
    if (!all_le && !all_ge)
        throw std::domain_error("mode engine: infinite creation family (finiteness precondition violated)");

    // Reduce the bounded-below case to bounded-above by negating.
    std::vector<long> ub(c);
    for (std::size_t i = 0; i < c; ++i) ub[i] = all_le ? ranges[i].bound : -ranges[i].bound;
    const long tgt = all_le ? target : -target;

    std::vector<long> suffix_ub(c + 1, 0);
    for (std::size_t i = c; i-- > 0;) suffix_ub[i] = suffix_ub[i + 1] + ub[i];

    std::vector<long> cur(c);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rem) {
        if (i == c - 1) {
            if (rem <= ub[i]) {
                cur[i] = rem;
                if (all_le) {
                    fn(cur);
                } else {
                    std::vector<long> neg(cur);
                    for (auto& v : neg) v = -v;
                    fn(neg);
                }
            }
            return;
        }
        const long hi = ub[i];
        const long lo = rem - suffix_ub[i + 1];
        for (long n = lo; n <= hi; ++n) {
            cur[i] = n;
            rec(i + 1, rem - n);
        }
    };
    rec(0, tgt);
}

/// Mode application of one normal-ordered monomial: sums over all classified
/// index tuples with total generator index T that can act nonzero on s.
inline FockState nprod_mode_apply(const std::vector<FieldGen>& fs, long total, const FockState& s,
                                  const ModuleParams& p) {
    {
        const MonomialVerdict v = analyze_monomial(fs, p);
        if (!v.finite) {
            throw std::domain_error("mode engine: infinite sum in " + v.desc + ": " + v.witness);
        }
    }
    FockState out;
    const auto support = s.var_support();

    for_each_assignment(fs, p, [&](const std::vector<OpClass>& cls) {
        // candidate modes for annihilation/diagonal factors
        std::vector<std::vector<long>> fixed_choices(fs.size());
        std::vector<std::size_t> fixed_idx, cre_idx;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (cls[i] == OpClass::annihilation) {
                fixed_choices[i] = usable_ann_modes(fs[i], support, p);
                fixed_idx.push_back(i);
            } else if (cls[i] == OpClass::diagonal) {
                fixed_choices[i] = diag_modes(fs[i], p);
                fixed_idx.push_back(i);
            } else {
                cre_idx.push_back(i);
            }
        }
        std::vector<CreationRange> cre_ranges;
        for (const std::size_t i : cre_idx) cre_ranges.push_back(creation_range(fs[i], p));

        std::vector<long> modes(fs.size(), 0);
        std::function<void(std::size_t, long)> rec_fixed = [&](std::size_t fi, long rem) {
            if (fi == fixed_idx.size()) {
                enum_creation_tuples(cre_ranges, rem, [&](const std::vector<long>& cre_modes) {
                    for (std::size_t ci = 0; ci < cre_idx.size(); ++ci)
                        modes[cre_idx[ci]] = cre_modes[ci];
                    out += apply_classified_tuple(fs, modes, cls, s, p);
                });
                return;
            }
            const std::size_t i = fixed_idx[fi];
            for (const long n : fixed_choices[i]) {
                modes[i] = n;
                rec_fixed(fi + 1, rem - n);
            }
        };
        rec_fixed(0, total);
    });
    return out;
}

}  // namespace detail

inline FinitenessVerdict analyze_finiteness(const FieldExprPtr& expr, const ModuleParams& p) {
    FinitenessVerdict out;
    detail::analyze_expr(expr, p, out);
    return out;
}

/// Coefficient of z^(-k-1) of the fully expanded expression, applied to a
/// state. Weight-0 generators expand in z^-n, so their mode k is the
/// generator index k+1; z-polynomial factors shift the mode; d/dz maps the
/// mode-k coefficient to -k times the mode-(k-1) coefficient.
inline FockState mode_apply(const FieldExprPtr& expr, long k, const FockState& s,
                            const ModuleParams& p) {
    using Node = FieldExpr::Node;
    switch (expr->node) {
        case Node::gen:
            return apply_field_mode(expr->gen, k + 1 - field_weight(expr->gen), s, p);
        case Node::scale:
            return mode_apply(expr->child, k, s, p).scale(expr->coeff);
        case Node::sum: {
            FockState out;
            for (const auto& part : expr->parts) out += mode_apply(part, k, s, p);
            return out;
        }
        case Node::zpoly_mul: {
            FockState out;
            for (const auto& [j, c] : expr->zpoly) out += mode_apply(expr->child, k + j, s, p).scale(c);
            return out;
        }
        case Node::dz:
            return mode_apply(expr->child, k - 1, s, p).scale(CoeffPoly::constant(-k));
        case Node::norm_prod: {
            std::vector<FieldGen> fs;
            flatten_nprod(expr, fs);
            long wsum = 0;
            for (const FieldGen g : fs) wsum += field_weight(g);
            return detail::nprod_mode_apply(fs, k + 1 - wsum, s, p);
        }
    }
    throw std::logic_error("mode_apply: bad node");
}

/// Deliberately naive reference enumerator: sums over every index tuple with
/// |index| <= window, with no use of the state's support or creation bounds.
/// Must agree with mode_apply for any window large enough, and its result
/// must be invariant under further widening.
inline FockState naive_mode_apply(const FieldExprPtr& expr, long k, const FockState& s,
                                  const ModuleParams& p, long window) {
    using Node = FieldExpr::Node;
    switch (expr->node) {
        case Node::gen:
            return apply_field_mode(expr->gen, k + 1 - field_weight(expr->gen), s, p);
        case Node::scale:
            return naive_mode_apply(expr->child, k, s, p, window).scale(expr->coeff);
        case Node::sum: {
            FockState out;
            for (const auto& part : expr->parts) out += naive_mode_apply(part, k, s, p, window);
            return out;
        }
        case Node::zpoly_mul: {
            FockState out;
            for (const auto& [j, c] : expr->zpoly)
                out += naive_mode_apply(expr->child, k + j, s, p, window).scale(c);
            return out;
        }
        case Node::dz:
            return naive_mode_apply(expr->child, k - 1, s, p, window).scale(CoeffPoly::constant(-k));
        case Node::norm_prod: {
            std::vector<FieldGen> fs;
            flatten_nprod(expr, fs);
            long wsum = 0;
            for (const FieldGen g : fs) wsum += field_weight(g);
            const long total = k + 1 - wsum;
            FockState out;
            std::vector<long> modes(fs.size(), 0);
            std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rem) {
                if (i == fs.size() - 1) {
                    if (std::labs(rem) > window) return;
                    modes[i] = rem;
                    // every combination of classes available at these modes
                    std::vector<std::vector<OpClass>> avail(fs.size());
                    for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                        std::vector<OpClass> cs;
                        bool c = false, a = false, d = false;
                        for (const auto& part : field_mode_parts(fs[fi], modes[fi], p)) {
                            c |= part.cls == OpClass::creation;
                            a |= part.cls == OpClass::annihilation;
                            d |= part.cls == OpClass::diagonal;
                        }
                        if (c) cs.push_back(OpClass::creation);
                        if (a) cs.push_back(OpClass::annihilation);
                        if (d) cs.push_back(OpClass::diagonal);
                        avail[fi] = cs;
                    }
                    std::vector<OpClass> cls(fs.size());
                    std::function<void(std::size_t)> pick = [&](std::size_t fi) {
                        if (fi == fs.size()) {
                            out += detail::apply_classified_tuple(fs, modes, cls, s, p);
                            return;
                        }
                        for (const OpClass oc : avail[fi]) {
                            cls[fi] = oc;
                            pick(fi + 1);
                        }
                    };
                    pick(0);
                    return;
                }
                for (long n = -window; n <= window; ++n) {
                    modes[i] = n;
                    rec(i + 1, rem - n);
                }
            };
            if (!fs.empty()) rec(0, total);
            return out;
        }
    }
    throw std::logic_error("naive_mode_apply: bad node");
}

}  // namespace elliptica
