#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <span>
#include <sstream>
#include <string>

#include "xmjacobi/errors.hpp"

namespace xmjacobi {

using Complex = std::complex<double>;

namespace detail {

/// True when z sits within tol of a non-positive integer (a gamma pole).
inline bool near_gamma_pole(Complex z, double tol = 1e-12) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

/// log(sin(z)) evaluated through the dominant exponential so large |Im z|
/// neither overflows nor loses the branch structure.
inline Complex log_sin(Complex z) {
    const Complex i(0.0, 1.0);
    const double half_pi = 0.5 * std::numbers::pi;
    if (z.imag() > 0.0)
        return -i * half_pi - std::numbers::ln2 - i * z + std::log(std::exp(2.0 * i * z) - 1.0);
    return -i * half_pi - std::numbers::ln2 + i * z + std::log(1.0 - std::exp(-2.0 * i * z));
}

}  // namespace detail

/// Log of the gamma function for complex argument.
///
/// Lanczos approximation (the 14-coefficient fit, accurate to ~1e-15 relative
/// for Re z >= 0.5) with the reflection formula
///   ln Gamma(z) = ln pi - ln sin(pi z) - ln Gamma(1 - z)
/// for Re z < 0.5. The imaginary part is defined modulo 2*pi: exp(ln_gamma(z))
/// is the gamma function, which is all downstream ratio work requires.
///
/// Throws PoleError when z is within 1e-12 of a non-positive integer.
inline Complex ln_gamma(Complex z) {
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   3.39946499848118887e-5,  4.65236289270485756e-5,
        -9.83744753048795646e-5, 1.58088703224912494e-4,  -2.10264441724104883e-4,
        2.17439618115212643e-4,  -1.64318106536763890e-4, 8.44182239838527433e-5,
        -2.61908384015814087e-5, 3.68991826595316234e-6};

    if (detail::near_gamma_pole(z)) {
        std::ostringstream msg;
        msg << "ln_gamma pole at z = (" << z.real() << ", " << z.imag() << ")";
        throw PoleError(msg.str());
    }

    // evaluate in the upper half plane only; conjugation symmetry then holds
    // by construction
    if (z.imag() < 0.0) return std::conj(ln_gamma(std::conj(z)));

    if (z.real() < 0.5)
        return std::log(std::numbers::pi) - detail::log_sin(std::numbers::pi * z) -
               ln_gamma(1.0 - z);

    Complex x = z;
    Complex tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    Complex ser(0.999999999999997092, 0.0);
    Complex y = x;
    for (const double c : cof) ser += c / (y += 1.0);
    return tmp + std::log(2.5066282746310005 * ser / x);
}

/// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1), exact product; (a)_0 = 1.
inline Complex pochhammer(Complex a, int n) {
    Complex acc(1.0, 0.0);
    for (int q = 0; q < n; ++q) acc *= a + static_cast<double>(q);
    return acc;
}

/// Product of gamma functions over a product of gamma functions, evaluated in
/// log space so individually huge factors cannot overflow.
///
/// Pole handling: a pole among the denominators with no pole among the
/// numerators means the ratio vanishes, so 0 is returned. A pole among the
/// numerators alone diverges (InfinityError). Poles on both sides would need a
/// limit analysis this routine does not attempt (PoleError).
inline Complex gamma_ratio(std::span<const Complex> numerators,
                           std::span<const Complex> denominators) {
    int num_poles = 0, den_poles = 0;
    for (const Complex& z : numerators) num_poles += detail::near_gamma_pole(z) ? 1 : 0;
    for (const Complex& z : denominators) den_poles += detail::near_gamma_pole(z) ? 1 : 0;

    if (num_poles > 0 && den_poles > 0)
        throw PoleError("gamma_ratio: poles in both numerator and denominator; refusing to cancel");
    if (num_poles > 0) throw InfinityError("gamma_ratio: unmatched pole in a numerator argument");
    if (den_poles > 0) return {0.0, 0.0};

    Complex log_acc(0.0, 0.0);
    for (const Complex& z : numerators) log_acc += ln_gamma(z);
    for (const Complex& z : denominators) log_acc -= ln_gamma(z);
    return std::exp(log_acc);
}

inline Complex gamma_ratio(std::initializer_list<Complex> numerators,
                           std::initializer_list<Complex> denominators) {
    return gamma_ratio(std::span<const Complex>(numerators.begin(), numerators.size()),
                       std::span<const Complex>(denominators.begin(), denominators.size()));
}

}  // namespace xmjacobi
