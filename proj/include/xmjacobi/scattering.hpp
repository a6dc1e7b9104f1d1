#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "xmjacobi/errors.hpp"
#include "xmjacobi/family.hpp"
#include "xmjacobi/gamma.hpp"

namespace xmjacobi {

namespace detail {

inline void require_physical_k(double k) {
    if (!(k >= 1e-4))
        throw DomainError("wavenumber must be >= 1e-4 (threshold k = 0 is excluded)");
}

/// 2^(-4ik) = exp(-4ik ln 2); the log of a positive real, so unambiguous.
inline Complex two_pow_m4ik(Complex k) {
    const Complex ik(-k.imag(), k.real());
    return std::exp(-4.0 * ik * std::numbers::ln2);
}

}  // namespace detail

/// s-wave scattering amplitude of the undeformed base potential,
///
///   S(k) = - Gamma(2ik) Gamma(-A-ik) Gamma(B-ik+1/2) 2^(-4ik)
///            / [Gamma(-A+ik) Gamma(-2ik) Gamma(B+ik+1/2)],
///
/// evaluated in log space. The overall sign makes S the coefficient of
/// e^{ikr} relative to -e^{-ikr}, i.e. S = e^{2 i delta} with psi ~
/// sin(kr + delta); this is certified against the integrated ODE (a bare
/// gamma-ratio product without the sign reproduces -e^{2 i delta}).
///
/// Complex k is accepted so pole structure on the imaginary axis can be
/// probed; the real-k overload enforces k >= 1e-4.
inline Complex s_gpt(double a_par, double b_par, Complex k) {
    const Complex ik(-k.imag(), k.real());
    const Complex ratio = gamma_ratio({2.0 * ik, -a_par - ik, b_par - ik + 0.5},
                                      {-a_par + ik, -2.0 * ik, b_par + ik + 0.5});
    return -ratio * detail::two_pow_m4ik(k);
}

inline Complex s_gpt(double a_par, double b_par, double k) {
    detail::require_physical_k(k);
    return s_gpt(a_par, b_par, Complex(k, 0.0));
}

/// The m-dependent rational deformation factor, in factorized form
///
///   [(B-ik+1/2)(B+ik+1/2-m)] / [(B+ik+1/2)(B-ik+1/2-m)].
///
/// Algebraically identical to the expanded bracket
///   [{B^2-(ik-1/2)^2} + (B-ik+1/2)(1-m)] / [{B^2-(ik+1/2)^2} + (B+ik+1/2)(1-m)];
/// the factorization avoids the cancellation in the expanded form and makes
/// the m = 0 collapse to exactly 1. The expanded variant is kept for
/// cross-checking.
inline Complex xm_bracket(const FamilyParams& p, Complex k) {
    const Complex ik(-k.imag(), k.real());
    const double b = p.B();
    const Complex num = (b - ik + 0.5) * (b + ik + 0.5 - static_cast<double>(p.m));
    const Complex den = (b + ik + 0.5) * (b - ik + 0.5 - static_cast<double>(p.m));
    if (std::abs(den) < 1e-12 * (1.0 + std::abs(num)))
        throw BracketZeroError("xm_bracket: denominator bracket vanished");
    return num / den;
}

inline Complex xm_bracket_expanded(const FamilyParams& p, Complex k) {
    const Complex ik(-k.imag(), k.real());
    const double b = p.B();
    const double om = 1.0 - p.m;
    const Complex num = (b * b - (ik - 0.5) * (ik - 0.5)) + (b - ik + 0.5) * om;
    const Complex den = (b * b - (ik + 0.5) * (ik + 0.5)) + (b + ik + 0.5) * om;
    if (std::abs(den) < 1e-12 * (1.0 + std::abs(num)))
        throw BracketZeroError("xm_bracket_expanded: denominator bracket vanished");
    return num / den;
}

/// Closed-form s-wave amplitude of the deformed family: the base amplitude
/// times the m-dependent bracket. Reduces exactly to s_gpt at m = 0.
inline Complex s_xm(const FamilyParams& p, Complex k) {
    return s_gpt(p.A(), p.B(), k) * xm_bracket(p, k);
}

inline Complex s_xm(const FamilyParams& p, double k) {
    detail::require_physical_k(k);
    return s_xm(p, Complex(k, 0.0));
}

/// The constants of the large-r asymptotic matching. p_coef is the m = 2
/// combination, q_coef the general-m one; both routes must reproduce the
/// closed form, which is the production path.
struct AsymptoticCoefficients {
    Complex a, b, c, d, e;
    Complex p_coef;
    Complex q_coef;
};

/// Reading of the general-m asymptotic combination Q.
///
/// The corrected reading
///   Q = ab + m (B+ik-1/2) / [(B+ik-m+1/2)(2ik-1)] (ed)
/// is the one consistent with the m = 2 route and the closed form (it is the
/// unique coefficient for which (ac/Q) 2^(-4ik) factorizes onto the bracket).
/// The two printed variants carry a spurious (m-2B-1) factor, one of them
/// also an imaginary shift i*m; they are retained as diagnostics only and
/// fail the route-equivalence certification.
enum class QReading { corrected, printed_real_shift, printed_imag_shift };

namespace detail {

inline AsymptoticCoefficients base_coeffs(double a_par, double b_par, double k) {
    const Complex ik(0.0, k);
    AsymptoticCoefficients co;
    co.a = gamma_ratio({b_par + ik + 0.5}, {a_par + ik + 1.0, b_par - a_par + 0.5});
    co.b = gamma_ratio({b_par - a_par + 0.5, -2.0 * ik}, {-a_par - ik, b_par - ik + 0.5});
    co.c = gamma_ratio({b_par - a_par + 0.5, 2.0 * ik}, {-a_par + ik, b_par + ik + 0.5});
    co.d = gamma_ratio({b_par + ik - 0.5}, {a_par + ik, b_par - a_par + 0.5});
    co.e = gamma_ratio({b_par - a_par + 0.5, -2.0 * ik + 2.0},
                       {-a_par - ik + 1.0, b_par - ik + 1.5});
    return co;
}

}  // namespace detail

/// Coefficients of the m = 2 asymptotic route,
///   P = [(B+ik-3/2)(2ik-1)(ab) + 2(B+ik-1/2)(ed)] / [(B+ik-3/2)(2ik-1)].
/// Requires params.m == 2.
inline AsymptoticCoefficients asymptotic_coeffs_x2(const FamilyParams& p, double k) {
    detail::require_physical_k(k);
    if (p.m != 2) throw ParameterError("asymptotic_coeffs_x2: params.m must be 2");
    const Complex ik(0.0, k);
    const double b_par = p.B();
    AsymptoticCoefficients co = detail::base_coeffs(p.A(), b_par, k);
    const Complex pref = (b_par + ik - 1.5) * (2.0 * ik - 1.0);
    co.p_coef = (pref * (co.a * co.b) + 2.0 * (b_par + ik - 0.5) * (co.e * co.d)) / pref;
    co.q_coef = co.a * co.b +
                2.0 * (b_par + ik - 0.5) / ((b_par + ik - 1.5) * (2.0 * ik - 1.0)) *
                    (co.e * co.d);
    return co;
}

/// Coefficients of the general-m asymptotic route; q_coef per the selected
/// QReading. p_coef is filled only when m == 2.
inline AsymptoticCoefficients asymptotic_coeffs_xm(const FamilyParams& p, double k,
                                                   QReading reading = QReading::corrected) {
    detail::require_physical_k(k);
    const Complex ik(0.0, k);
    const double b_par = p.B();
    const double md = p.m;
    AsymptoticCoefficients co = detail::base_coeffs(p.A(), b_par, k);

    Complex coeff;
    switch (reading) {
        case QReading::corrected:
            coeff = md * (b_par + ik - 0.5) / ((b_par + ik - md + 0.5) * (2.0 * ik - 1.0));
            break;
        case QReading::printed_real_shift:
            coeff = md * (md - 2.0 * b_par - 1.0) * (b_par + ik - 0.5) /
                    ((b_par + ik - md + 0.5) * (2.0 * ik - 1.0));
            break;
        case QReading::printed_imag_shift:
            coeff = md * (md - 2.0 * b_par - 1.0) * (b_par + ik - 0.5) /
                    ((b_par + ik - Complex(0.0, md) + 0.5) * (2.0 * ik - 1.0));
            break;
    }
    co.q_coef = co.a * co.b + coeff * (co.e * co.d);
    if (p.m == 2) co.p_coef = asymptotic_coeffs_x2(p, k).p_coef;
    return co;
}

/// S = -(ac/P) 2^(-4ik): the m = 2 route (same e^{2 i delta} sign
/// convention as s_gpt).
inline Complex s_from_p_route(const AsymptoticCoefficients& co, double k) {
    return -co.a * co.c / co.p_coef * detail::two_pow_m4ik(Complex(k, 0.0));
}

/// S = -(ac/Q) 2^(-4ik): the general-m route.
inline Complex s_from_q_route(const AsymptoticCoefficients& co, double k) {
    return -co.a * co.c / co.q_coef * detail::two_pow_m4ik(Complex(k, 0.0));
}

/// Phase shift from S = e^(2 i delta): delta = arg(S)/2 in (-pi/2, pi/2].
/// Winding across a k-sweep is the caller's business (see unwrap_phase).
/// Throws NonUnitaryError when |S| strays from 1 by more than 1e-6.
inline double phase_shift(Complex s) {
    if (std::abs(std::abs(s) - 1.0) > 1e-6)
        throw NonUnitaryError("phase_shift: |S| deviates from 1 beyond 1e-6");
    return 0.5 * std::arg(s);
}

/// (k, S(k)) sample with the canonical phase shift.
struct SMatrixSample {
    double k = 0.0;
    Complex s;
    double delta = 0.0;
};

inline SMatrixSample make_smatrix_sample(const FamilyParams& p, double k) {
    const Complex s = s_xm(p, k);
    return SMatrixSample{k, s, phase_shift(s)};
}

/// Unwrapped delta(k) along an ordered sweep: accumulate the circular
/// increment of arg S and halve, starting from arg(S_0)/2.
inline std::vector<double> unwrap_phase(const std::vector<Complex>& s_values) {
    std::vector<double> out(s_values.size());
    if (s_values.empty()) return out;
    double theta = std::arg(s_values.front());
    out[0] = 0.5 * theta;
    for (std::size_t i = 1; i < s_values.size(); ++i) {
        const double step =
            std::remainder(std::arg(s_values[i]) - std::arg(s_values[i - 1]), 2.0 * std::numbers::pi);
        theta += step;
        out[i] = 0.5 * theta;
    }
    return out;
}

}  // namespace xmjacobi
