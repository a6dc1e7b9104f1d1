#pragma once

#include <cmath>

#include "xmjacobi/errors.hpp"

namespace xmjacobi {

/// Base prepotential omega_0(r; g, h) = g ln sinh r - h ln cosh r and its
/// first two derivatives. Raw (g, h) arguments: callers shift parameters
/// themselves.
inline double omega0(double g, double h, double r) {
    if (!(r > 0.0)) throw DomainError("omega0: r must be positive");
    return g * std::log(std::sinh(r)) - h * std::log(std::cosh(r));
}

inline double omega0_d1(double g, double h, double r) {
    return g / std::tanh(r) - h * std::tanh(r);
}

inline double omega0_d2(double g, double h, double r) {
    const double sh = std::sinh(r), ch = std::cosh(r);
    return -g / (sh * sh) - h / (ch * ch);
}

}  // namespace xmjacobi
