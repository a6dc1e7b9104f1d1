#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "xmjacobi/errors.hpp"
#include "xmjacobi/family.hpp"
#include "xmjacobi/polynomial.hpp"

namespace xmjacobi {

namespace detail {

/// Generalized binomial coefficient C(x, j) for real x, integer j >= 0.
inline double binomial_real(double x, int j) {
    double acc = 1.0;
    for (int i = 0; i < j; ++i) acc *= (x - i) / (j - i);
    return acc;
}

}  // namespace detail

/// Classical Jacobi polynomial P_n^{(a,b)} as an explicit finite sum,
///
///   P_n^{(a,b)}(y) = 2^{-n} sum_s C(n+a, s) C(n+b, n-s) (y-1)^{n-s} (y+1)^s,
///
/// valid for arbitrary real a, b (no denominators that can vanish). Used as
/// the fallback when the three-term recurrence is singular and as an
/// independent construction in cross-checks.
inline Polynomial jacobi_explicit_sum(int n, double a, double b) {
    if (n < 0) return {};
    Polynomial acc;
    const Polynomial ym1 = Polynomial::linear(-1.0, 1.0);
    const Polynomial yp1 = Polynomial::linear(1.0, 1.0);
    for (int s = 0; s <= n; ++s) {
        const double w = detail::binomial_real(n + a, s) * detail::binomial_real(n + b, n - s);
        if (w == 0.0) continue;
        acc += w * (pow(ym1, n - s) * pow(yp1, s));
    }
    return acc * std::pow(0.5, n);
}

/// Classical Jacobi polynomial P_n^{(a,b)} by the three-term recurrence
///
///   2n(n+a+b)(2n+a+b-2) P_n = (2n+a+b-1)[(2n+a+b)(2n+a+b-2) y + a^2-b^2] P_{n-1}
///                             - 2(n+a-1)(n+b-1)(2n+a+b) P_{n-2}.
///
/// Negative parameters are allowed. When an intermediate recurrence
/// denominator vanishes (possible for negative integer a+b), that P_k is
/// rebuilt from the explicit sum and the recurrence continues.
inline Polynomial jacobi_classical(int n, double a, double b) {
    if (n < 0) return {};
    if (n == 0) return Polynomial::constant(1.0);

    Polynomial pm2 = Polynomial::constant(1.0);
    Polynomial pm1 = Polynomial::linear(0.5 * (a - b), 0.5 * (a + b + 2.0));
    if (n == 1) return pm1;

    for (int k = 2; k <= n; ++k) {
        const double kd = k;
        const double den = 2.0 * kd * (kd + a + b) * (2.0 * kd + a + b - 2.0);
        Polynomial pk;
        if (std::abs(den) < 1e-12) {
            pk = jacobi_explicit_sum(k, a, b);
            if (pk.is_zero() && k == n)
                throw DegenerateRecurrenceError(
                    "jacobi_classical: recurrence and explicit sum both singular at n=" +
                    std::to_string(k));
        } else {
            const double c1 = (2.0 * kd + a + b - 1.0) * (2.0 * kd + a + b) *
                              (2.0 * kd + a + b - 2.0) / den;
            const double c0 = (2.0 * kd + a + b - 1.0) * (a * a - b * b) / den;
            const double c2 = 2.0 * (kd + a - 1.0) * (kd + b - 1.0) * (2.0 * kd + a + b) / den;
            pk = Polynomial::linear(c0, c1) * pm1 - c2 * pm2;
        }
        pm2 = std::move(pm1);
        pm1 = std::move(pk);
    }
    return pm1;
}

/// Denominator polynomial xi_m(y; g, h) = P_m^{(-g-m-1/2, -h+m-3/2)}(y),
/// in the variable y = cosh(2r). Nodeless on (1, inf) for admissible
/// parameters; xi_0 = 1 and xi_m = 0 for m < 0 by convention.
inline Polynomial xi_poly(int m, double g, double h) {
    if (m < 0) return {};
    if (m == 0) return Polynomial::constant(1.0);
    return jacobi_classical(m, -g - m - 0.5, -h + m - 1.5);
}

inline Polynomial xi_m(const FamilyParams& p) { return xi_poly(p.m, p.g, p.h); }

namespace detail {

inline void check_coeff_denominator(double value, const char* factor_name) {
    if (std::abs(value) < 1e-10) {
        std::ostringstream msg;
        msg << "coefficient denominator " << factor_name << " = " << value
            << " is within 1e-10 of zero";
        throw CoefficientSingularityError(msg.str());
    }
}

}  // namespace detail

/// Degree-(nu+m) deformed Jacobi polynomial, assembled from classical Jacobi
/// pieces in the (alpha, beta) parametrization:
///
///   [ P_m^{(-a-2,b)} + c1 P_{m-1}^{(-a,b)} - c2 P_{m-2}^{(-a,b)} ] P_nu^{(a,b)}
///     + c3 P_{m-1}^{(-a,b)} P_{nu-1}^{(a,b)},     (a,b) = (alpha, beta),
///
///   c1 = 2 nu (m-a+b-1) / ((2m-a+b-2)(2nu+a+b)),
///   c2 = nu (b+m-1) / ((a+nu-m+1)(2m-a+b-2)),
///   c3 = (m-a+b-1)(a+nu) / ((a+nu-m+1)(2nu+a+b)),
///
/// with P_{-1} = P_{-2} = 0. Coefficient denominators within 1e-10 of zero
/// raise CoefficientSingularityError naming the offending factor.
inline Polynomial xm_jacobi(int nu, const FamilyParams& p) {
    if (nu < 0) throw ParameterError("xm_jacobi: nu must be >= 0");
    const double a = p.alpha();
    const double b = p.beta();
    const int m = p.m;

    Polynomial bracket = jacobi_classical(m, -a - 2.0, b);
    Polynomial tail;

    if (nu >= 1 && m >= 1) {
        const double d_2m = 2.0 * m - a + b - 2.0;
        const double d_nu = 2.0 * nu + a + b;
        const double d_am = a + nu - m + 1.0;
        detail::check_coeff_denominator(d_2m, "(2m-alpha+beta-2)");
        detail::check_coeff_denominator(d_nu, "(2nu+alpha+beta)");
        detail::check_coeff_denominator(d_am, "(alpha+nu-m+1)");

        const Polynomial pm1 = jacobi_classical(m - 1, -a, b);
        const double c1 = 2.0 * nu * (m - a + b - 1.0) / (d_2m * d_nu);
        bracket += c1 * pm1;
        if (m >= 2) {
            const double c2 = nu * (b + m - 1.0) / (d_am * d_2m);
            bracket -= c2 * jacobi_classical(m - 2, -a, b);
        }
        const double c3 = (m - a + b - 1.0) * (a + nu) / (d_am * d_nu);
        tail = c3 * (pm1 * jacobi_classical(nu - 1, a, b));
    }

    return bracket * jacobi_classical(nu, a, b) + tail;
}

/// The same polynomial family assembled through the lambda-shifted route:
///
///   P_{m,nu}(y) = a_{m,nu}(y) P_nu(y; g+m, h-m) + b_{m,nu}(y) P_{nu-1}(y; g+m, h-m)
///
/// where P_nu(y; g, h) = P_nu^{(g-1/2, -h-1/2)}(y) is the undeformed family,
///
///   a_{m,nu} = xi_m(y; g+1, h-1)
///            + 2 nu (-g-h+m-1) xi_{m-1}(y; g, h-2) / ((-g-h+2m-2)(g-h+2nu+2m-1))
///            - nu (-2h+4m-3) xi_{m-2}(y; g+1, h-3) / ((2g+2nu+1)(-g-h+2m-2)),
///   b_{m,nu} = (-g-h+m-1)(2g+2nu+2m-1) xi_{m-1}(y; g, h-2)
///              / ((2g+2nu+1)(g-h+2nu+2m-1)),
///
/// with xi_{-1} = xi_{-2} = 0 and P_{-1} = 0. Requires nu <= nu_B - m.
inline Polynomial pmn_via_ab(int nu, const FamilyParams& p) {
    if (nu < 0) throw ParameterError("pmn_via_ab: nu must be >= 0");
    if (nu > p.max_nu())
        throw ParameterError("pmn_via_ab: nu exceeds the admissible range nu <= nu_B - m");
    const double g = p.g;
    const double h = p.h;
    const int m = p.m;

    Polynomial a_co = xi_poly(m, g + 1.0, h - 1.0);
    Polynomial b_co;

    if (nu >= 1 && m >= 1) {
        const double d_gh = -g - h + 2.0 * m - 2.0;
        const double d_sh = g - h + 2.0 * nu + 2.0 * m - 1.0;
        const double d_gn = 2.0 * g + 2.0 * nu + 1.0;
        detail::check_coeff_denominator(d_gh, "(-g-h+2m-2)");
        detail::check_coeff_denominator(d_sh, "(g-h+2nu+2m-1)");
        detail::check_coeff_denominator(d_gn, "(2g+2nu+1)");

        const Polynomial xi_m1 = xi_poly(m - 1, g, h - 2.0);
        a_co += (2.0 * nu * (-g - h + m - 1.0) / (d_gh * d_sh)) * xi_m1;
        if (m >= 2)
            a_co -= (nu * (-2.0 * h + 4.0 * m - 3.0) / (d_gn * d_gh)) *
                    xi_poly(m - 2, g + 1.0, h - 3.0);
        b_co = ((-g - h + m - 1.0) * (2.0 * g + 2.0 * nu + 2.0 * m - 1.0) / (d_gn * d_sh)) * xi_m1;
    }

    const double gs = g + m, hs = h - m;
    Polynomial out = a_co * jacobi_classical(nu, gs - 0.5, -hs - 0.5);
    if (nu >= 1 && !b_co.is_zero())
        out += b_co * jacobi_classical(nu - 1, gs - 0.5, -hs - 0.5);
    return out;
}

}  // namespace xmjacobi
