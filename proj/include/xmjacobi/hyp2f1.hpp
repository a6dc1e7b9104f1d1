#pragma once

#include <cmath>
#include <complex>
#include <sstream>

#include "xmjacobi/errors.hpp"
#include "xmjacobi/gamma.hpp"

namespace xmjacobi {

/// Truncation policy for hypergeometric series.
struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 10000;

    void validate() const {
        if (!(rel_tol > 0.0)) throw ParameterError("SeriesControl: rel_tol must be positive");
        if (max_terms < 1) throw ParameterError("SeriesControl: max_terms must be >= 1");
    }
};

namespace detail {

/// -n when z is within tol of the non-positive integer -n, otherwise -1.
inline int nonpositive_integer_order(Complex z, double tol = 1e-12) {
    if (std::abs(z.imag()) > tol) return -1;
    const double r = std::round(z.real());
    if (r > 0.0 || std::abs(z.real() - r) > tol) return -1;
    return static_cast<int>(-r);
}

}  // namespace detail

/// Gauss hypergeometric series F(a,b;c;z) = sum_q (a)_q (b)_q / ((c)_q q!) z^q.
///
/// A terminating series (a or b a non-positive integer) is summed exactly over
/// its finite support for any z. Otherwise |z| < 1 is required and the series
/// is summed with compensated accumulation until three consecutive terms fall
/// below rel_tol relative to the running sum (three, to survive an incidental
/// zero term).
inline Complex hyp2f1(Complex a, Complex b, Complex c, Complex z, SeriesControl ctl = {}) {
    ctl.validate();

    const int na = detail::nonpositive_integer_order(a);
    const int nb = detail::nonpositive_integer_order(b);
    int n_stop = -1;  // index of the last nonzero term for terminating series
    if (na >= 0 && nb >= 0)
        n_stop = std::min(na, nb);
    else if (na >= 0)
        n_stop = na;
    else if (nb >= 0)
        n_stop = nb;

    const int nc = detail::nonpositive_integer_order(c);
    if (nc >= 0 && !(n_stop >= 0 && n_stop < nc))
        throw ParameterError("hyp2f1: c is a non-positive integer and the series does not "
                             "terminate before the pole");
    if (n_stop < 0) {
        const double az = std::abs(z);
        if (az > 1.0)
            throw ParameterError("hyp2f1: |z| > 1 and the series does not terminate");
        // on the unit circle itself convergence needs Re(c-a-b) > 0
        if (az == 1.0 && !((c - a - b).real() > 0.0))
            throw ParameterError("hyp2f1: |z| = 1 requires Re(c-a-b) > 0");
    }

    Complex sum(1.0, 0.0);
    Complex comp(0.0, 0.0);  // Kahan correction
    Complex term(1.0, 0.0);
    int below_count = 0;
    const int limit = n_stop >= 0 ? n_stop : ctl.max_terms;

    for (int q = 0; q < limit; ++q) {
        const double qd = static_cast<double>(q);
        term *= (a + qd) * (b + qd) / ((c + qd) * (qd + 1.0)) * z;

        const Complex yk = term - comp;
        const Complex tk = sum + yk;
        comp = (tk - sum) - yk;
        sum = tk;

        if (n_stop < 0) {
            if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
                if (++below_count >= 3) return sum;
            } else {
                below_count = 0;
            }
        }
    }
    if (n_stop >= 0) return sum;

    std::ostringstream msg;
    msg << "hyp2f1: no convergence after " << ctl.max_terms << " terms at |z| = " << std::abs(z);
    throw ConvergenceError(msg.str());
}

/// Large-argument connection formula:
///
///   F(a,b;c;z) = (1-z)^(-a) G(c)G(b-a)/(G(b)G(c-a)) F(a, c-b; a-b+1; 1/(1-z))
///              + (1-z)^(-b) G(c)G(a-b)/(G(a)G(c-b)) F(b, c-a; b-a+1; 1/(1-z))
///
/// with principal-branch powers. Valid where |1/(1-z)| < 1; degenerate when
/// a-b is an integer (the right side develops log terms this formula cannot
/// represent), signalled as DegenerateError at tolerance 1e-10.
inline Complex hyp2f1_connect(Complex a, Complex b, Complex c, Complex z, SeriesControl ctl = {}) {
    ctl.validate();

    const Complex ab = a - b;
    if (std::abs(ab.imag()) < 1e-10 && std::abs(ab.real() - std::round(ab.real())) < 1e-10)
        throw DegenerateError("hyp2f1_connect: a-b within 1e-10 of an integer");

    const Complex one_minus_z = 1.0 - z;
    const Complex w = 1.0 / one_minus_z;
    const int na = detail::nonpositive_integer_order(a);
    const int nb = detail::nonpositive_integer_order(b);
    if (std::abs(w) >= 1.0 && na < 0 && nb < 0)
        throw ParameterError("hyp2f1_connect: |1/(1-z)| >= 1, outside the convergence domain");

    const Complex log1mz = std::log(one_minus_z);
    const Complex coef_a = gamma_ratio({c, b - a}, {b, c - a});
    const Complex coef_b = gamma_ratio({c, a - b}, {a, c - b});

    Complex out(0.0, 0.0);
    if (coef_a != Complex(0.0, 0.0))
        out += std::exp(-a * log1mz) * coef_a * hyp2f1(a, c - b, a - b + 1.0, w, ctl);
    if (coef_b != Complex(0.0, 0.0))
        out += std::exp(-b * log1mz) * coef_b * hyp2f1(b, c - a, b - a + 1.0, w, ctl);
    return out;
}

}  // namespace xmjacobi
