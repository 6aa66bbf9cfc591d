#pragma once

#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elliptica/differentials.hpp"

namespace elliptica {

/// The pair (p_k, q_k) of coefficient polynomials in b expressing the class
/// of t^(k-2) u dt on the basis (w+, w-).
struct PollaczekPair {
    long k = 0;
    CoeffPoly p;
    CoeffPoly q;

    bool degree_bounds_ok() const {
        if (k == 0) return true;
        return p.degree_in(Symbol::b) <= std::max<long>(k - 1, 0) &&
               q.degree_in(Symbol::b) <= std::max<long>(k - 2, 0);
    }
};

/// Parameters of the three-term recurrence
///   (k+gamma) P_k = 2[(k+lambda+alpha+gamma-1) b + beta] P_{k-1}
///                   - (k+2 lambda+gamma-2) P_{k-2}.
struct RecurrenceParams {
    Rational lambda, alpha, beta, gamma;

    /// Parameter set used by the published structure-constant tables.
    static RecurrenceParams standard() { return {Rational(-1, 2), Rational(0), Rational(-1), Rational(1, 2)}; }
    /// Parameter set matching the differential reduction oracle (beta = 0).
    static RecurrenceParams reduction_fit() { return {Rational(-1, 2), Rational(0), Rational(0), Rational(1, 2)}; }
};

/// One recurrence step with initial values (P0, P1).
inline std::vector<CoeffPoly> recurrence_table(long kmax, const RecurrenceParams& pr,
                                               const CoeffPoly& p0, const CoeffPoly& p1) {
    if (kmax < 0) throw std::invalid_argument("recurrence_table: kmax < 0");
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);
    std::vector<CoeffPoly> out;
    out.push_back(p0);
    if (kmax >= 1) out.push_back(p1);
    for (long k = 2; k <= kmax; ++k) {
        const Rational kg = Rational(k) + pr.gamma;
        if (kg.is_zero()) throw std::domain_error("recurrence_table: singular step k+gamma=0");
        const CoeffPoly mid =
            b.scale(Rational(2) * (Rational(k) + pr.lambda + pr.alpha + pr.gamma - Rational(1))) +
            CoeffPoly::constant(Rational(2) * pr.beta);
        const Rational tail = Rational(k) + Rational(2) * pr.lambda + pr.gamma - Rational(2);
        CoeffPoly next = mid * out[k - 1] - out[k - 2].scale(tail);
        out.push_back(next.scale(kg.inverse()));
    }
    out.resize(kmax + 1);
    return out;
}

namespace detail {

class PollaczekCache {
public:
    static PollaczekPair get(long k) {
        if (k < 0) throw std::invalid_argument("pollaczek_pq: k < 0");
        static PollaczekCache cache;
        std::lock_guard<std::mutex> lock(cache.mu_);
        cache.extend(k);
        return {k, cache.p_[k], cache.q_[k]};
    }

private:
    void extend(long k) {
        if (static_cast<long>(p_.size()) > k) return;
        const auto pr = RecurrenceParams::standard();
        p_ = recurrence_table(k, pr, CoeffPoly::zero(), CoeffPoly::one());
        q_ = recurrence_table(k, pr, CoeffPoly::one(), CoeffPoly::zero());
    }

    std::mutex mu_;
    std::vector<CoeffPoly> p_;
    std::vector<CoeffPoly> q_;
};

}  // namespace detail

/// (p_k, q_k) from the published recursion, exact and memoized.
inline PollaczekPair pollaczek_pq(long k) { return detail::PollaczekCache::get(k); }

/// (p_k, q_k) as computed by the independent differential reduction oracle.
inline PollaczekPair oracle_pq(long k) {
    if (k < 0) throw std::invalid_argument("oracle_pq: k < 0");
    const DifferentialClass c = u_dt_class(k - 2);
    return {k, c.cplus, c.cminus};
}

struct CrosscheckRow {
    long k = 0;
    CoeffPoly p, q;              // recursion values
    CoeffPoly oracle_p, oracle_q;  // reduction-oracle values
    bool agree = false;
};

struct DiscrepancyReport {
    std::vector<CrosscheckRow> rows;
    long first_divergent = -1;  // -1 when all rows agree
    bool all_agree() const { return first_divergent < 0; }
};

/// Compares the recursion against the reduction oracle for 0 <= k <= kmax.
/// Report-only by design: the two sources are not assumed to coincide.
inline DiscrepancyReport crosscheck_oracle(long kmax) {
    if (kmax < 0) throw std::invalid_argument("crosscheck_oracle: kmax < 0");
    DiscrepancyReport rep;
    for (long k = 0; k <= kmax; ++k) {
        CrosscheckRow row;
        row.k = k;
        const PollaczekPair a = pollaczek_pq(k);
        const PollaczekPair b = oracle_pq(k);
        row.p = a.p;
        row.q = a.q;
        row.oracle_p = b.p;
        row.oracle_q = b.q;
        row.agree = (a.p == b.p) && (a.q == b.q);
        if (!row.agree && rep.first_divergent < 0) rep.first_divergent = k;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

/// Truncated power series in x with CoeffPoly coefficients; length N+1.
struct SeriesPoly {
    long order = 0;  // truncation order N
    std::vector<CoeffPoly> coeff;

    static SeriesPoly zeros(long n) {
        SeriesPoly s;
        s.order = n;
        s.coeff.assign(n + 1, CoeffPoly::zero());
        return s;
    }

    bool is_zero() const {
        for (const auto& c : coeff) {
            if (!c.is_zero()) return false;
        }
        return true;
    }

    long first_nonzero_order() const {
        for (long i = 0; i <= order; ++i) {
            if (!coeff[i].is_zero()) return i;
        }
        return -1;
    }
};

enum class GfWhich { P, Q };

/// Residual of the generating-function ODE
///   x (x^2 - 2bx + cubic_constant) S' + [(2L+G) x^2 - 2((L+A+G) b + B) x + G] S - rhs
/// truncated at order N, where S is built from the recurrence with the given
/// parameters and rhs is G for the Q-series and (1+G) x for the P-series.
/// The cubic's constant term is a caller choice so both printed sign variants
/// can be probed.
inline SeriesPoly gf_ode_residual(GfWhich which, long n, const RecurrenceParams& pr,
                                  const Rational& cubic_constant) {
    if (n < 2) throw std::invalid_argument("gf_ode_residual: order must be >= 2");
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);
    const CoeffPoly p0 = which == GfWhich::Q ? CoeffPoly::one() : CoeffPoly::zero();
    const CoeffPoly p1 = which == GfWhich::Q ? CoeffPoly::zero() : CoeffPoly::one();
    // One extra coefficient so the derivative is exact through order n.
    const std::vector<CoeffPoly> s = recurrence_table(n + 1, pr, p0, p1);

    SeriesPoly r = SeriesPoly::zeros(n);
    // x(x^2 - 2bx + c) S' = sum_k k s_k (x^{k+2} - 2b x^{k+1} + c x^k)
    for (long k = 1; k <= n + 1; ++k) {
        const CoeffPoly ks = s[k].scale(Rational(k));
        if (k + 2 <= n) r.coeff[k + 2] += ks;
        if (k + 1 <= n) r.coeff[k + 1] -= (ks * b).scale(Rational(2));
        if (k <= n) r.coeff[k] += ks.scale(cubic_constant);
    }
    // [(2L+G) x^2 - 2((L+A+G)b + B) x + G] S
    const Rational c2 = Rational(2) * pr.lambda + pr.gamma;
    const CoeffPoly c1 = b.scale(Rational(-2) * (pr.lambda + pr.alpha + pr.gamma)) +
                         CoeffPoly::constant(Rational(-2) * pr.beta);
    for (long k = 0; k <= n; ++k) {
        if (k + 2 <= n) r.coeff[k + 2] += s[k].scale(c2);
        if (k + 1 <= n) r.coeff[k + 1] += s[k] * c1;
        r.coeff[k] += s[k].scale(pr.gamma);
    }
    // right-hand side
    if (which == GfWhich::Q) {
        r.coeff[0] -= CoeffPoly::constant(pr.gamma);
    } else {
        r.coeff[1] -= CoeffPoly::constant(Rational(1) + pr.gamma);
    }
    return r;
}

}  // namespace elliptica
