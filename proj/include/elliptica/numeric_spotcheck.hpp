#pragma once

// The only floating-point code in the artifact: an optional, non-gating
// numerical comparison of the truncated generating series against adaptive
// quadrature of the closed-form solution of the +1-cubic ODE.

#include <cmath>
#include <functional>
#include <string>

#include "elliptica/pollaczek.hpp"

namespace elliptica {

struct FloatReport {
    double series_value = 0.0;
    double integral_value = 0.0;
    double abs_diff = 0.0;
    bool quadrature_converged = true;
    bool within_tol = false;
    double coarse_order_diff = 0.0;  // |series(order/4) - integral|
    std::string note;
};

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps, int depth, bool* converged) {
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double x0, double x2, double f0, double f1, double f2, double whole, int d) -> double {
        const double x01 = 0.5 * (x0 + 0.5 * (x0 + x2));
        const double xm = 0.5 * (x0 + x2);
        const double x12 = 0.5 * (xm + x2);
        const double fl = f(x01), fr = f(x12);
        const double left = (xm - x0) / 6.0 * (f0 + 4 * fl + f1);
        const double right = (x2 - xm) / 6.0 * (f1 + 4 * fr + f2);
        if (d <= 0) {
            if (converged) *converged = false;
            return left + right;
        }
        if (std::fabs(left + right - whole) < 15 * eps) return left + right;
        return rec(x0, xm, f0, fl, f1, left, d - 1) + rec(xm, x2, f1, fr, f2, right, d - 1);
    };
    const double whole = (b - a) / 6.0 * (fa + 4 * fc + fb);
    return rec(a, b, fa, fc, fb, whole, depth);
}

inline double eval_at_b(const CoeffPoly& p, double b0) {
    double acc = 0.0;
    for (const auto& [e, c] : p.terms()) {
        double term = c.to_double();
        for (int k = 0; k < e[static_cast<int>(Symbol::b)]; ++k) term *= b0;
        acc += term;
    }
    return acc;
}

inline double series_eval(GfWhich which, const RecurrenceParams& pr, long order, double x0,
                          double b0) {
    const CoeffPoly p0 = which == GfWhich::Q ? CoeffPoly::one() : CoeffPoly::zero();
    const CoeffPoly p1 = which == GfWhich::Q ? CoeffPoly::zero() : CoeffPoly::one();
    const auto table = recurrence_table(order, pr, p0, p1);
    double acc = 0.0, xp = 1.0;
    for (long k = 0; k <= order; ++k) {
        acc += eval_at_b(table[k], b0) * xp;
        xp *= x0;
    }
    return acc;
}

}  // namespace detail

/// Compares the order-N truncation of the chosen series at (x0, b0) against
/// quadrature of the closed-form integral. Requires |x0| < 1/4 and b0^2 != 1.
/// Quadrature non-convergence is reported, never fatal.
inline FloatReport numeric_gf_spotcheck(GfWhich which, const Rational& x0r, const Rational& b0r,
                                        double tol, const RecurrenceParams& pr, long order = 40) {
    FloatReport rep;
    const double x0 = x0r.to_double();
    const double b0 = b0r.to_double();
    if (std::fabs(x0) >= 0.25 || b0 * b0 == 1.0) {
        rep.note = "outside the validated domain (|x0| < 1/4, b0^2 != 1)";
        rep.quadrature_converged = false;
        return rep;
    }

    rep.series_value = detail::series_eval(which, pr, order, x0, b0);
    rep.coarse_order_diff = detail::series_eval(which, pr, std::max<long>(order / 4, 2), x0, b0);

    // closed form with gamma = 1/2, after xi = x t^2:
    //   Q = int_0^1 r1^A+ r2^A- / ((x t^2 - a1)(x t^2 - a2)) dt
    //   P = 3 x int_0^1 t^2 r1^A+ r2^A- / ((x t^2 - a1)(x t^2 - a2)) dt
    // with ri = (x t^2 - ai)/(x - ai), a{1,2} = b -+ sqrt(b^2-1).
    const double disc = std::sqrt(b0 * b0 - 1.0);
    const double a1 = b0 + disc, a2 = b0 - disc;
    const double lam = pr.lambda.to_double(), alp = pr.alpha.to_double(),
                 bet = pr.beta.to_double();
    const double ap = lam - (alp * b0 + bet) / disc;
    const double am = lam + (alp * b0 + bet) / disc;
    const auto integrand = [&](double t) {
        const double xi = x0 * t * t;
        const double r1 = (xi - a1) / (x0 - a1);
        const double r2 = (xi - a2) / (x0 - a2);
        const double base = std::pow(r1, ap) * std::pow(r2, am) / ((xi - a1) * (xi - a2));
        return which == GfWhich::Q ? base : 3.0 * x0 * t * t * base;
    };
    bool conv = true;
    rep.integral_value = detail::adaptive_simpson(integrand, 0.0, 1.0, 1e-12, 40, &conv);
    rep.quadrature_converged = conv;
    rep.abs_diff = std::fabs(rep.series_value - rep.integral_value);
    rep.coarse_order_diff = std::fabs(rep.coarse_order_diff - rep.integral_value);
    rep.within_tol = rep.abs_diff < tol;
    return rep;
}

}  // namespace elliptica
