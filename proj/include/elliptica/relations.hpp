#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "elliptica/mode_engine.hpp"
#include "elliptica/parallel.hpp"

namespace elliptica {

/// Cached current expressions for one module, plus the scalar carried by the
/// derivative terms (equal to the module level symbol unless split off for
/// diagnosis).
class ThetaContext {
public:
    static ThetaContext make(const ModuleParams& p,
                             const CoeffPoly& level = CoeffPoly::symbol(Symbol::chi0)) {
        ThetaContext ctx;
        ctx.params_ = p;
        ctx.level_ = level;
        for (const ThetaGen g : kAllThetaGens) {
            ctx.exprs_[static_cast<int>(g)] = build_theta(g, p.r, level);
        }
        return ctx;
    }

    const ModuleParams& params() const { return params_; }
    const CoeffPoly& level() const { return level_; }
    const FieldExprPtr& expr(ThetaGen g) const { return exprs_[static_cast<int>(g)]; }

    FockState apply(ThetaGen g, long m, const FockState& s) const {
        return mode_apply(expr(g), m, s, params_);
    }

    /// Applies theta to the non-central part of a Lie element.
    FockState apply_body(const LieElement& body, const FockState& s) const {
        FockState out;
        for (const auto& [k, c] : body.body()) {
            out += apply(theta_from_target(k.x, k.sector), k.n, s).scale(c);
        }
        return out;
    }

    /// Finiteness verdicts for all six currents.
    FinitenessVerdict analyze_all() const {
        FinitenessVerdict out;
        for (const ThetaGen g : kAllThetaGens) {
            FinitenessVerdict v = analyze_finiteness(expr(g), params_);
            for (auto& m : v.monomials) {
                m.desc = std::string(theta_name(g)) + ": " + m.desc;
                out.note(std::move(m));
            }
        }
        return out;
    }

private:
    ModuleParams params_;
    CoeffPoly level_;
    std::array<FieldExprPtr, 6> exprs_{};
};

/// If r == c * s for a scalar polynomial c, returns c. States must have
/// rational coefficients (sampled states and vacua do).
inline std::optional<CoeffPoly> scalar_ratio(const FockState& r, const FockState& s) {
    if (s.is_zero()) return std::nullopt;
    const auto& [key0, c0] = *s.terms().begin();
    if (!c0.is_constant()) {
        throw std::invalid_argument("scalar_ratio: state coefficients must be rational");
    }
    CoeffPoly cand;
    const auto it = r.terms().find(key0);
    if (it != r.terms().end()) cand = it->second.scale(c0.constant_value().inverse());
    if (r == s.scale(cand)) return cand;
    return std::nullopt;
}

struct RelationCase {
    ThetaGen x, y;
    long m = 0, n = 0;
    bool scalar_ok = true;
    CoeffPoly scalar;         // the measured central scalar
    std::string certificate;  // set when scalar_ok is false
};

struct RelationReport {
    bool all_scalar = true;
    long cases = 0;
    std::vector<RelationCase> results;
    std::string first_failure;
};

/// Measures R = [theta(X_m), theta(Y_n)] s - theta([X_m, Y_n]-body) s over
/// all |m|, |n| <= window and every sample state, and requires R to be one
/// state-independent scalar multiple of s per (m, n). The scalar is the
/// measured image of the bracket's central part.
inline RelationReport relation_check(ThetaGen x, ThetaGen y, long window, const ThetaContext& ctx,
                                     const std::vector<FockState>& states) {
    RelationReport rep;
    const auto [gx, sx] = theta_target(x);
    const auto [gy, sy] = theta_target(y);
    for (long m = -window; m <= window; ++m) {
        for (long n = -window; n <= window; ++n) {
            RelationCase rc;
            rc.x = x;
            rc.y = y;
            rc.m = m;
            rc.n = n;
            const LieElement bk = bracket(LieElement::basis(gx, m, sx),
                                          LieElement::basis(gy, n, sy), ConstantsSource::oracle);
            bool have = false;
            for (const FockState& s : states) {
                ++rep.cases;
                const FockState comm = ctx.apply(x, m, ctx.apply(y, n, s)) -
                                       ctx.apply(y, n, ctx.apply(x, m, s));
                const FockState residual = comm - ctx.apply_body(bk, s);
                const auto c = scalar_ratio(residual, s);
                if (!c) {
                    rc.scalar_ok = false;
                    rc.certificate = "residual of [" + std::string(theta_name(x)) + "_" +
                                     std::to_string(m) + ", " + theta_name(y) + "_" +
                                     std::to_string(n) + "] on state " + s.str() +
                                     " is not a scalar multiple: " + residual.str();
                    break;
                }
                if (!have) {
                    rc.scalar = *c;
                    have = true;
                } else if (rc.scalar != *c) {
                    rc.scalar_ok = false;
                    rc.certificate = "central scalar of [" + std::string(theta_name(x)) + "_" +
                                     std::to_string(m) + ", " + theta_name(y) + "_" +
                                     std::to_string(n) + "] depends on the state: " +
                                     rc.scalar.str() + " vs " + c->str();
                    break;
                }
            }
            if (!rc.scalar_ok && rep.all_scalar) {
                rep.all_scalar = false;
                rep.first_failure = rc.certificate;
            }
            rep.results.push_back(std::move(rc));
        }
    }
    return rep;
}

constexpr std::pair<ThetaGen, ThetaGen> kGeneratorPairs[] = {
    {ThetaGen::e, ThetaGen::e},   {ThetaGen::e, ThetaGen::f},   {ThetaGen::e, ThetaGen::h},
    {ThetaGen::e, ThetaGen::e1},  {ThetaGen::e, ThetaGen::f1},  {ThetaGen::e, ThetaGen::h1},
    {ThetaGen::f, ThetaGen::f},   {ThetaGen::f, ThetaGen::h},   {ThetaGen::f, ThetaGen::e1},
    {ThetaGen::f, ThetaGen::f1},  {ThetaGen::f, ThetaGen::h1},  {ThetaGen::h, ThetaGen::h},
    {ThetaGen::h, ThetaGen::e1},  {ThetaGen::h, ThetaGen::f1},  {ThetaGen::h, ThetaGen::h1},
    {ThetaGen::e1, ThetaGen::e1}, {ThetaGen::e1, ThetaGen::f1}, {ThetaGen::e1, ThetaGen::h1},
    {ThetaGen::f1, ThetaGen::f1}, {ThetaGen::f1, ThetaGen::h1}, {ThetaGen::h1, ThetaGen::h1},
};

struct CalibrationConflict {
    std::string where;   // pair and modes
    std::string detail;  // implied value or mismatch description
};

struct CalibrationReport {
    bool finite = true;
    std::string finiteness_witness;
    bool consistent = false;
    bool split_level = false;
    long equations = 0;
    std::string c0 = "unresolved", cplus = "unresolved", cminus = "unresolved";
    std::vector<CalibrationConflict> conflicts;  // minimal conflicting implications
    std::vector<std::string> nonscalar;          // non-scalar residual certificates
};

/// Solves for a single assignment (w0, w+, w-) -> scalars consistent with
/// every measured central term across all generator pairs at once. The w0
/// image is anchored by an equation with rational expected coefficient and
/// cross-checked everywhere; the w+/w- images are solved from two rows with
/// rational determinant (the Casoratian 1/35 scaled by mode factors).
/// Inconsistency is a report outcome, never an error.
inline CalibrationReport calibrate_center(long window, const ThetaContext& ctx,
                                          const std::vector<FockState>& states,
                                          int threads = 0) {
    CalibrationReport rep;
    rep.split_level = !(ctx.level() == CoeffPoly::symbol(Symbol::chi0));

    const FinitenessVerdict fv = ctx.analyze_all();
    if (!fv.finite) {
        rep.finite = false;
        rep.finiteness_witness = fv.witness;
        return rep;
    }

    struct Equation {
        std::string where;
        CoeffPoly c0, cp, cm;  // expected center coordinates
        CoeffPoly measured;
    };
    std::vector<Equation> eqs;

    constexpr long kNumPairs = sizeof(kGeneratorPairs) / sizeof(kGeneratorPairs[0]);
    std::vector<RelationReport> sweep(kNumPairs);
    parallel_for(
        kNumPairs,
        [&](long i) {
            sweep[i] = relation_check(kGeneratorPairs[i].first, kGeneratorPairs[i].second, window,
                                      ctx, states);
        },
        threads);

    for (long pi = 0; pi < kNumPairs; ++pi) {
        const auto& [x, y] = kGeneratorPairs[pi];
        const RelationReport& rel = sweep[pi];
        const auto [gx, sx] = theta_target(x);
        const auto [gy, sy] = theta_target(y);
        for (const auto& rc : rel.results) {
            if (!rc.scalar_ok) {
                rep.nonscalar.push_back(rc.certificate);
                continue;
            }
            const DifferentialClass ctr =
                bracket(LieElement::basis(gx, rc.m, sx), LieElement::basis(gy, rc.n, sy),
                        ConstantsSource::oracle)
                    .center();
            if (ctr.is_zero() && rc.scalar.is_zero()) continue;  // vacuously consistent
            Equation e;
            e.where = "(" + std::string(theta_name(x)) + "," + theta_name(y) + ") m=" +
                      std::to_string(rc.m) + " n=" + std::to_string(rc.n);
            e.c0 = ctr.c0;
            e.cp = ctr.cplus;
            e.cm = ctr.cminus;
            e.measured = rc.scalar;
            eqs.push_back(std::move(e));
        }
    }
    rep.equations = static_cast<long>(eqs.size());

    // Zero-expected equations: measured must vanish.
    for (const auto& e : eqs) {
        if (e.c0.is_zero() && e.cp.is_zero() && e.cm.is_zero() && !e.measured.is_zero()) {
            rep.conflicts.push_back({e.where, "nonzero scalar " + e.measured.str() +
                                                  " with zero expected center"});
        }
    }

    // w0 assignment.
    CoeffPoly c0_assign;
    bool have_c0 = false;
    for (const auto& e : eqs) {
        if (!e.cp.is_zero() || !e.cm.is_zero() || e.c0.is_zero()) continue;
        if (!e.c0.is_constant()) continue;
        c0_assign = e.measured.scale(e.c0.constant_value().inverse());
        have_c0 = true;
        break;
    }
    if (have_c0) {
        rep.c0 = c0_assign.str();
        for (const auto& e : eqs) {
            if (e.cp.is_zero() && e.cm.is_zero() && !e.c0.is_zero()) {
                if (e.measured != e.c0 * c0_assign) {
                    std::string implied = e.c0.is_constant()
                                              ? e.measured.scale(e.c0.constant_value().inverse()).str()
                                              : "measured " + e.measured.str() + " vs expected " +
                                                    (e.c0 * c0_assign).str();
                    bool seen = false;
                    for (const auto& c : rep.conflicts) {
                        if (c.detail == "w0 -> " + implied) seen = true;
                    }
                    if (!seen) rep.conflicts.push_back({e.where, "w0 -> " + implied});
                }
            }
        }
        if (!rep.conflicts.empty()) {
            // surface the anchor implication alongside the conflicting ones
            rep.conflicts.insert(rep.conflicts.begin(),
                                 {"anchor", "w0 -> " + c0_assign.str()});
        }
    }

    // w+/w- assignment from two rows with rational determinant.
    CoeffPoly cp_assign, cm_assign;
    bool have_pm = false;
    for (std::size_t i = 0; i < eqs.size() && !have_pm; ++i) {
        if (!eqs[i].c0.is_zero()) continue;
        if (eqs[i].cp.is_zero() && eqs[i].cm.is_zero()) continue;
        for (std::size_t j = i + 1; j < eqs.size() && !have_pm; ++j) {
            if (!eqs[j].c0.is_zero()) continue;
            const CoeffPoly det = eqs[i].cp * eqs[j].cm - eqs[j].cp * eqs[i].cm;
            if (det.is_zero() || !det.is_constant()) continue;
            const Rational dinv = det.constant_value().inverse();
            cp_assign = (eqs[i].measured * eqs[j].cm - eqs[j].measured * eqs[i].cm).scale(dinv);
            cm_assign = (eqs[i].cp * eqs[j].measured - eqs[j].cp * eqs[i].measured).scale(dinv);
            have_pm = true;
        }
    }
    if (have_pm) {
        rep.cplus = cp_assign.str();
        rep.cminus = cm_assign.str();
        for (const auto& e : eqs) {
            if (!e.c0.is_zero() || (e.cp.is_zero() && e.cm.is_zero())) continue;
            if (e.measured != e.cp * cp_assign + e.cm * cm_assign) {
                rep.conflicts.push_back(
                    {e.where, "w+/w- equation violated: measured " + e.measured.str()});
            }
        }
    }

    rep.consistent = rep.conflicts.empty() && rep.nonscalar.empty() && have_c0 &&
                     c0_assign.degree_in(Symbol::chi0) <= 1;
    return rep;
}

}  // namespace elliptica
