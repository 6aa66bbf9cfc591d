#include <catch2/catch_amalgamated.hpp>

#include "elliptica/numeric_spotcheck.hpp"
#include "elliptica/pollaczek.hpp"
#include "test_support.hpp"

using namespace elliptica;

namespace {
const CoeffPoly kB = CoeffPoly::symbol(Symbol::b);
}

TEST_CASE("recursion initial conditions and low-order values") {
    CHECK(pollaczek_pq(0).p.is_zero());
    CHECK(pollaczek_pq(0).q == CoeffPoly::one());
    CHECK(pollaczek_pq(1).p == CoeffPoly::one());
    CHECK(pollaczek_pq(1).q.is_zero());

    // k = 2: ( (4/5)(b-1), 1/5 )
    CHECK(pollaczek_pq(2).p == Rational(4, 5) * (kB - CoeffPoly::one()));
    CHECK(pollaczek_pq(2).q == CoeffPoly::constant(Rational(1, 5)));

    // k = 3: ( (1/35)(32 b^2 - 48 b + 11), (4/35)(2b - 1) )
    const CoeffPoly p3 = (32 * (kB * kB) - 48 * kB + CoeffPoly::constant(11)).scale(Rational(1, 35));
    const CoeffPoly q3 = (2 * kB - CoeffPoly::one()).scale(Rational(4, 35));
    CHECK(pollaczek_pq(3).p == p3);
    CHECK(pollaczek_pq(3).q == q3);
}

TEST_CASE("determinant identity p2 q3 - p3 q2 = 1/35") {
    const PollaczekPair a = pollaczek_pq(2);
    const PollaczekPair b = pollaczek_pq(3);
    CHECK(a.p * b.q - b.p * a.q == CoeffPoly::constant(Rational(1, 35)));

    // the same Casoratian is 1/35 for the reduction oracle values
    const PollaczekPair oa = oracle_pq(2);
    const PollaczekPair ob = oracle_pq(3);
    CHECK(oa.p * ob.q - ob.p * oa.q == CoeffPoly::constant(Rational(1, 35)));
}

TEST_CASE("degree bounds hold for k <= 32") {
    for (long k = 0; k <= 32; ++k) {
        CHECK(pollaczek_pq(k).degree_bounds_ok());
    }
}

TEST_CASE("memoized table agrees with a fresh recurrence run") {
    const auto pr = RecurrenceParams::standard();
    const auto p = recurrence_table(12, pr, CoeffPoly::zero(), CoeffPoly::one());
    const auto q = recurrence_table(12, pr, CoeffPoly::one(), CoeffPoly::zero());
    for (long k = 0; k <= 12; ++k) {
        CHECK(pollaczek_pq(k).p == p[k]);
        CHECK(pollaczek_pq(k).q == q[k]);
    }
}

TEST_CASE("crosscheck against the reduction oracle") {
    const DiscrepancyReport rep = crosscheck_oracle(10);
    REQUIRE(rep.rows.size() == 11);

    // k = 0, 1 are forced by the basis definition and must agree.
    CHECK(rep.rows[0].agree);
    CHECK(rep.rows[1].agree);

    // The verdict beyond k = 1 is intentionally unasserted; record both
    // candidate pairs instead. The oracle gives p2 = (4/5) b while the
    // recursion gives (4/5)(b - 1); the report must expose exactly that.
    CHECK(rep.rows[2].p == Rational(4, 5) * (kB - CoeffPoly::one()));
    CHECK(rep.rows[2].oracle_p == Rational(4, 5) * kB);
    CHECK(rep.rows[2].q == rep.rows[2].oracle_q);
    if (!rep.all_agree()) {
        CHECK(rep.first_divergent >= 2);
    }
}

TEST_CASE("ODE residual order-0 coefficient vanishes for Q") {
    for (const auto& pr : {RecurrenceParams::standard(), RecurrenceParams::reduction_fit()}) {
        for (const Rational c : {Rational(1), Rational(-1)}) {
            const SeriesPoly r = gf_ode_residual(GfWhich::Q, 8, pr, c);
            CHECK(r.coeff[0].is_zero());
        }
    }
}

TEST_CASE("float spot check of the closed form (optional, non-gating)") {
    // x0 = 0: both sides are exactly 1 for the Q-series.
    const auto fit = RecurrenceParams::reduction_fit();
    const FloatReport zero = numeric_gf_spotcheck(GfWhich::Q, Rational(0), Rational(2), 1e-9, fit);
    CHECK(zero.quadrature_converged);
    CHECK(std::abs(zero.series_value - 1.0) < 1e-12);
    CHECK(zero.abs_diff < 1e-9);

    // at x0 = 1/10, b0 = 2 the beta = 0 series matches its closed form and
    // the truncation error shrinks with the order
    const FloatReport r = numeric_gf_spotcheck(GfWhich::Q, Rational(1, 10), Rational(2), 1e-6, fit);
    CHECK(r.quadrature_converged);
    CHECK(r.within_tol);
    CHECK(r.abs_diff <= r.coarse_order_diff);
}

TEST_CASE("ODE residuals resolve the printed sign ambiguity") {
    // With the reduction-fit parameters and cubic constant +1 both series
    // satisfy their ODEs identically; the printed cubic constant -1 does not.
    const auto fit = RecurrenceParams::reduction_fit();
    CHECK(gf_ode_residual(GfWhich::Q, 10, fit, Rational(1)).is_zero());
    CHECK(gf_ode_residual(GfWhich::P, 10, fit, Rational(1)).is_zero());
    CHECK_FALSE(gf_ode_residual(GfWhich::Q, 10, fit, Rational(-1)).is_zero());
    CHECK_FALSE(gf_ode_residual(GfWhich::P, 10, fit, Rational(-1)).is_zero());

    // With the standard parameters (beta = -1) the P-series still satisfies
    // its ODE at cubic +1 (the beta term is killed by p0 = 0), while the
    // Q-series picks up a residual 2x from the k = 1 boundary.
    const auto std_pr = RecurrenceParams::standard();
    CHECK(gf_ode_residual(GfWhich::P, 10, std_pr, Rational(1)).is_zero());
    const SeriesPoly rq = gf_ode_residual(GfWhich::Q, 10, std_pr, Rational(1));
    CHECK(rq.first_nonzero_order() == 1);
    CHECK(rq.coeff[1] == CoeffPoly::constant(2));
}
