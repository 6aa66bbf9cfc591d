#pragma once

#include <string>
#include <vector>

#include "elliptica/oscillator.hpp"
#include "elliptica/pollaczek.hpp"

namespace elliptica {

/// Expected level of the b-sector central element in a variant: the -sigma
/// twist flips the sign of the 1_0 action on the twisted sector.
inline CoeffPoly b_sector_level(const ModuleParams& p) {
    return detail::b_sector_twisted(p.variant) ? -p.chi0 : p.chi0;
}
inline CoeffPoly b1_sector_level(const ModuleParams& p) {
    return detail::b1_sector_twisted(p.variant) ? -p.chi0 : p.chi0;
}

struct HeisCheckReport {
    bool pass = true;
    long cases = 0;
    std::string first_failure;
    std::string b_level, b1_level;  // rendered expected levels

    void fail(const std::string& what) {
        if (pass) first_failure = what;
        pass = false;
    }
};

/// Verifies the commutation relations of the two Heisenberg currents on the
/// module: for all |m|, |n| <= window and every sample state s,
///   [rho(b_m), rho(b_n)] s   = 2n delta_{m+n,0} L_b s
///   [rho(b1_m), rho(b1_n)] s = (n-m)(d_{m+n+2,-1} - 2b d_{m+n+2,0}
///                              + d_{m+n+2,1}) L_b1 s
///   [rho(b1_m), rho(b_n)] s  = 0            (the 1+- characters vanish)
/// where L_b, L_b1 are the per-sector levels of the chosen variant.
inline HeisCheckReport heis_relation_check(long window, const ModuleParams& p,
                                           const std::vector<FockState>& states) {
    HeisCheckReport rep;
    rep.b_level = b_sector_level(p).str();
    rep.b1_level = b1_sector_level(p).str();
    const CoeffPoly bsym = CoeffPoly::symbol(Symbol::b);

    auto comm = [&](HeisGen g, long m, HeisGen h, long n, const FockState& s) {
        return heis_apply(g, m, heis_apply(h, n, s, p), p) -
               heis_apply(h, n, heis_apply(g, m, s, p), p);
    };

    for (long m = -window; m <= window; ++m) {
        for (long n = -window; n <= window; ++n) {
            for (const FockState& s : states) {

                // b with b
                {
                    CoeffPoly c;
                    if (m + n == 0) c = b_sector_level(p).scale(Rational(2 * n));
                    const FockState lhs = comm(HeisGen::b, m, HeisGen::b, n, s);
                    ++rep.cases;
                    if (lhs != s.scale(c)) {
                        rep.fail("[b_" + std::to_string(m) + ", b_" + std::to_string(n) +
                                 "] on state " + s.str());
                        return rep;
                    }
                }
                // b1 with b1
                {
                    CoeffPoly c;
                    if (m + n + 2 == -1 || m + n + 2 == 1) c += CoeffPoly::constant(n - m);
                    if (m + n + 2 == 0) c += bsym.scale(Rational(-2 * (n - m)));
                    const FockState lhs = comm(HeisGen::b1, m, HeisGen::b1, n, s);
                    ++rep.cases;
                    if (lhs != s.scale(c * b1_sector_level(p))) {
                        rep.fail("[b1_" + std::to_string(m) + ", b1_" + std::to_string(n) +
                                 "] on state " + s.str());
                        return rep;
                    }
                }
                // b1 with b: central multiple of 1+-, which act by zero
                {
                    const FockState lhs = comm(HeisGen::b1, m, HeisGen::b, n, s);
                    ++rep.cases;
                    if (!lhs.is_zero()) {
                        rep.fail("[b1_" + std::to_string(m) + ", b_" + std::to_string(n) +
                                 "] on state " + s.str() + " nonzero: " + lhs.str());
                        return rep;
                    }
                }
                // centers commute with everything
                {
                    const FockState lhs = comm(HeisGen::one0, 0, HeisGen::b, n, s);
                    const FockState lhs2 = comm(HeisGen::one_plus, 0, HeisGen::b1, n, s);
                    ++rep.cases;
                    if (!lhs.is_zero() || !lhs2.is_zero()) {
                        rep.fail("central element fails to commute at n = " + std::to_string(n));
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

/// Outcome of the two-dimensional-module constraint computation: the linear
/// system chi+ p_k + chi- q_k = 0 accumulated from [b1_m, b_n] acting on V
/// for (m, n) in {(0,1),(0,2),(1,1),(1,2)} (k = m+n+1 in {2,3,3,4}).
struct ConstraintVerdict {
    CoeffPoly det23;                      // p2 q3 - p3 q2
    int solution_dim = -1;                // 0 => chi+ = chi- = 0 forced
    std::vector<std::string> rows;        // rendered constraint rows
    std::string kernel_basis;             // rendered basis when dim = 1
    bool chi_pm_forced_zero() const { return solution_dim == 0; }
};

/// control_zero_k3: degenerate control case replacing the k = 3 rows by zero
/// and keeping only k in {2, 3}; the solution space becomes 1-dimensional.
inline ConstraintVerdict twodim_constraints(bool control_zero_k3 = false) {
    ConstraintVerdict v;
    const PollaczekPair r2 = pollaczek_pq(2);
    const PollaczekPair r3 = pollaczek_pq(3);
    const PollaczekPair r4 = pollaczek_pq(4);
    v.det23 = r2.p * r3.q - r3.p * r2.q;

    std::vector<std::pair<CoeffPoly, CoeffPoly>> rows;
    if (control_zero_k3) {
        rows = {{r2.p, r2.q}, {CoeffPoly::zero(), CoeffPoly::zero()}};
    } else {
        rows = {{r2.p, r2.q}, {r3.p, r3.q}, {r3.p, r3.q}, {r4.p, r4.q}};
    }
    for (const auto& [p, q] : rows) {
        v.rows.push_back("chi+ * (" + p.str() + ") + chi- * (" + q.str() + ") = 0");
    }

    // Rank over the fraction field of the coefficient ring: rank 2 iff some
    // 2x2 minor is nonzero; rank 1 iff some row is nonzero.
    bool any_nonzero_row = false;
    bool rank2 = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].first.is_zero() || !rows[i].second.is_zero()) any_nonzero_row = true;
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (!(rows[i].first * rows[j].second - rows[j].first * rows[i].second).is_zero())
                rank2 = true;
        }
    }
    if (rank2) {
        v.solution_dim = 0;
    } else if (any_nonzero_row) {
        v.solution_dim = 1;
        // kernel of a single row (p, q) is spanned by (q, -p)
        for (const auto& [p, q] : rows) {
            if (!p.is_zero() || !q.is_zero()) {
                v.kernel_basis = "(chi+, chi-) = t * (" + q.str() + ", " + (-p).str() + ")";
                break;
            }
        }
    } else {
        v.solution_dim = 2;
    }
    return v;
}

}  // namespace elliptica
