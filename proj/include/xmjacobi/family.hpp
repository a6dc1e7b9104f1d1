#pragma once

#include <cmath>
#include <string>

#include "xmjacobi/errors.hpp"

namespace xmjacobi {

/// Model parameters (g, h, m) for the deformed hyperbolic family.
///
/// Conventions (single source of truth; everything else is derived):
///   lambda = (g, h) with h > g > 0, shift delta = (1, -1),
///   admissibility  h - g > 2m  (guarantees at least one bound state),
///   A = (h - g - 2m)/2,  B = (g + h)/2,
///   alpha = g + m - 1/2,  beta = -h + m - 1/2,  nu_B = (h - g)/2.
/// Identities alpha = B - A - 1/2 and beta = -B - A - 1/2 hold by construction.
struct FamilyParams {
    double g = 0.0;
    double h = 0.0;
    int m = 0;

    FamilyParams(double g_in, double h_in, int m_in) : g(g_in), h(h_in), m(m_in) {
        if (!(std::isfinite(g) && std::isfinite(h)))
            throw ParameterError("g and h must be finite");
        if (m < 0) throw ParameterError("m must be a non-negative integer");
        if (!(g > 0.0)) throw ParameterError("g must be positive");
        if (!(h > g)) throw ParameterError("h must exceed g");
        if (!(h - g > 2.0 * m)) throw ParameterError("h-g must exceed 2m");
    }

    double A() const { return 0.5 * (h - g) - m; }
    double B() const { return 0.5 * (g + h); }
    double alpha() const { return g + m - 0.5; }
    double beta() const { return -h + m - 0.5; }
    double nu_b() const { return 0.5 * (h - g); }

    /// Largest admissible state index: floor(nu_B - m), with a guard so an
    /// exactly-integer nu_B - m is kept (threshold state).
    int max_nu() const { return static_cast<int>(std::floor(nu_b() - m + 1e-12)); }

    /// Number of discrete levels, max_nu() + 1.
    int level_count() const { return max_nu() + 1; }

    /// lambda + n*delta with the same m. Throws if the shift leaves the
    /// admissible region.
    FamilyParams shifted(int n) const { return FamilyParams(g + n, h - n, m); }
};

}  // namespace xmjacobi
