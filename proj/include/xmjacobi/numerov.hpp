#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "xmjacobi/errors.hpp"
#include "xmjacobi/family.hpp"
#include "xmjacobi/potential.hpp"
#include "xmjacobi/scattering.hpp"

namespace xmjacobi {

/// Uniform radial grid. The span must be an integer number of steps (at
/// least 100 of them).
struct RadialGrid {
    double r_min = 1e-3;
    double r_max = 35.0;
    double step = 1e-3;

    int count() const {
        return static_cast<int>(std::lround((r_max - r_min) / step)) + 1;
    }

    double r(int i) const { return r_min + i * step; }

    void validate() const {
        if (!(r_min > 0.0)) throw ParameterError("RadialGrid: r_min must be positive");
        if (!(r_min < r_max)) throw ParameterError("RadialGrid: r_min must be below r_max");
        if (!(step > 0.0)) throw ParameterError("RadialGrid: step must be positive");
        const double n = (r_max - r_min) / step;
        if (std::abs(n - std::lround(n)) > 1e-6)
            throw ParameterError("RadialGrid: (r_max - r_min)/step must be an integer");
        if (std::lround(n) < 100)
            throw ParameterError("RadialGrid: at least 100 steps required");
    }
};

/// Sampled radial function.
struct GridFunction {
    RadialGrid grid;
    std::vector<double> values;
};

/// Where and how well a phase shift was read off the plateau.
struct PhaseExtraction {
    double r1 = 0.0;
    double r2 = 0.0;
    double delta = 0.0;
    double condition_number = 0.0;  // 1/|sin(k (r2-r1))|, must stay < 100
};

/// The oracle-convention potential U(r) = V_m(r/2)/4 - A^2 sampled on a grid.
inline std::vector<double> scattering_potential_on_grid(const FamilyParams& p,
                                                        const RadialGrid& grid) {
    grid.validate();
    const ScatteringPotential pot(p);
    std::vector<double> u(grid.count());
    for (int i = 0; i < grid.count(); ++i) u[i] = pot(grid.r(i));
    return u;
}

namespace detail {

/// Rescale the whole prefix whenever the running amplitude passes 1e80, so
/// deep classically-forbidden growth cannot overflow. Node structure and
/// phase information are invariant under the positive rescale. Checked every
/// 100 steps, which tolerates local growth rates up to ~1800 per unit r at
/// the default step.
inline void renormalize_if_needed(std::vector<double>& values, int upto, double& scale_guard) {
    double peak = 0.0;
    for (int j = std::max(0, upto - 2); j <= upto; ++j) peak = std::max(peak, std::abs(values[j]));
    if (peak > 1e80) {
        for (int j = 0; j <= upto; ++j) values[j] /= peak;
        scale_guard = 1.0;
    }
}

}  // namespace detail

/// Integrates psi'' = (U(r) - E) psi outward on the grid with the Numerov
/// three-term scheme (fourth-order local accuracy). Starting values follow
/// the regular branch psi ~ r^s with the supplied indicial exponent.
///
/// Throws OverflowError only if renormalization itself fails (non-finite
/// values), which indicates a broken potential rather than a stiff run.
inline GridFunction numerov_integrate(const std::vector<double>& u_grid, double energy,
                                      const RadialGrid& grid, double indicial_exponent) {
    grid.validate();
    const int n = grid.count();
    if (static_cast<int>(u_grid.size()) != n)
        throw ParameterError("numerov_integrate: potential samples do not match the grid");
    if (std::pow(grid.r_min, indicial_exponent) < 1e-280)
        throw ParameterError("numerov_integrate: r_min^s underflows; enlarge r_min");

    const double h2_12 = grid.step * grid.step / 12.0;
    GridFunction out{grid, std::vector<double>(n)};
    std::vector<double>& psi = out.values;
    psi[0] = std::pow(grid.r(0), indicial_exponent);
    psi[1] = std::pow(grid.r(1), indicial_exponent);

    auto t_of = [&](int i) { return h2_12 * (u_grid[i] - energy); };
    double guard = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double tp = t_of(i + 1), t0 = t_of(i), tm = t_of(i - 1);
        psi[i + 1] = (2.0 * (1.0 + 5.0 * t0) * psi[i] - (1.0 - tm) * psi[i - 1]) / (1.0 - tp);
        if (i % 100 == 0) detail::renormalize_if_needed(psi, i + 1, guard);
        if (!std::isfinite(psi[i + 1]))
            throw OverflowError("numerov_integrate: non-finite value despite renormalization");
    }
    return out;
}

/// Family-potential front end: U = V^ - A^2, indicial exponent s = g + m.
/// The exponent is cross-checked at startup against a fit of the indicial
/// equation to U(r_min) (a wrong s would bias extracted phases at the 1e-3
/// level).
inline GridFunction numerov_integrate(const FamilyParams& p, double energy,
                                      const RadialGrid& grid) {
    const std::vector<double> u = scattering_potential_on_grid(p, grid);
    const double s = p.g + p.m;
    const double a2 = p.A() * p.A();
    const double r0 = grid.r_min;
    const double fitted = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * r0 * r0 * (u[0] + a2)));
    if (std::abs(fitted - s) > 1e-3) {
        std::ostringstream msg;
        msg << "numerov_integrate: indicial fit " << fitted << " disagrees with s = g+m = " << s;
        throw Error(msg.str());
    }
    return numerov_integrate(u, energy, grid, s);
}

namespace detail {

inline int count_nodes(const std::vector<double>& psi) {
    int nodes = 0;
    double prev = 0.0;
    for (const double v : psi) {
        if (v == 0.0) continue;
        if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) ++nodes;
        prev = v;
    }
    return nodes;
}

/// Outward/inward matching Wronskian at the matching index: continuous in E,
/// vanishing at eigenvalues of the truncated problem.
inline double matching_wronskian(const std::vector<double>& u_grid, double energy,
                                 const RadialGrid& grid, double s, int i_match) {
    const int n = grid.count();
    const double h2_12 = grid.step * grid.step / 12.0;

    // outward sweep to i_match+1
    std::vector<double> out(i_match + 2);
    out[0] = std::pow(grid.r(0), s);
    out[1] = std::pow(grid.r(1), s);
    double guard = 0.0;
    for (int i = 1; i <= i_match; ++i) {
        const double tp = h2_12 * (u_grid[i + 1] - energy);
        const double t0 = h2_12 * (u_grid[i] - energy);
        const double tm = h2_12 * (u_grid[i - 1] - energy);
        out[i + 1] = (2.0 * (1.0 + 5.0 * t0) * out[i] - (1.0 - tm) * out[i - 1]) / (1.0 - tp);
        if (i % 100 == 0) renormalize_if_needed(out, i + 1, guard);
    }

    // inward sweep from r_max with the decaying tail seed
    const double kappa = std::sqrt(std::max(1e-15, -energy));
    std::vector<double> inw(n);
    inw[n - 1] = 1e-200;
    inw[n - 2] = 1e-200 * std::exp(kappa * grid.step);
    for (int i = n - 2; i > i_match - 2 && i > 0; --i) {
        const double tp = h2_12 * (u_grid[i - 1] - energy);
        const double t0 = h2_12 * (u_grid[i] - energy);
        const double tm = h2_12 * (u_grid[i + 1] - energy);
        inw[i - 1] = (2.0 * (1.0 + 5.0 * t0) * inw[i] - (1.0 - tm) * inw[i + 1]) / (1.0 - tp);
        if (i % 100 == 0) {
            const double peak = std::abs(inw[i - 1]);
            if (peak > 1e80)
                for (int j = n - 1; j >= i - 1; --j) inw[j] /= peak;
        }
    }

    const double so = std::max({std::abs(out[i_match - 1]), std::abs(out[i_match]),
                                std::abs(out[i_match + 1]), 1e-300});
    const double si = std::max({std::abs(inw[i_match - 1]), std::abs(inw[i_match]),
                                std::abs(inw[i_match + 1]), 1e-300});
    const double dout = (out[i_match + 1] - out[i_match - 1]) / (2.0 * grid.step * so);
    const double dinw = (inw[i_match + 1] - inw[i_match - 1]) / (2.0 * grid.step * si);
    return dout * (inw[i_match] / si) - dinw * (out[i_match] / so);
}

}  // namespace detail

/// Bound-state search on (e_lo, e_hi), a sub-window of (-A^2, 0).
///
/// Strategy: the node count of the outward (regular) solution on the full
/// grid is a staircase in E that steps by one at each eigenvalue of the
/// r_max-truncated problem, so bisection on the count brackets every level
/// with certainty. Each bracket is then refined on the sign of the
/// outward/inward matching Wronskian; if the Wronskian refuses to change
/// sign across the (already tight) bracket the node-count bisection simply
/// continues to tol, so every level in the window is always located.
/// Energies are returned ascending, to absolute accuracy tol.
inline std::vector<double> shoot_bound_states(const FamilyParams& p, double e_lo, double e_hi,
                                              double tol, const RadialGrid& grid = {}) {
    grid.validate();
    if (!(tol > 0.0)) throw ParameterError("shoot_bound_states: tol must be positive");
    if (!(e_lo < e_hi) || e_hi >= 0.0)
        throw ParameterError("shoot_bound_states: window must satisfy e_lo < e_hi < 0");

    const std::vector<double> u = scattering_potential_on_grid(p, grid);
    // The ground level sits exactly at -A^2, so the window may reach below
    // it; it just must not cut under the well bottom.
    const double u_min = *std::min_element(u.begin(), u.end());
    if (e_lo < u_min)
        throw ParameterError("shoot_bound_states: window extends below the potential minimum");
    const double s = p.g + p.m;

    auto nodes_at = [&](double energy) {
        return detail::count_nodes(numerov_integrate(u, energy, grid, s).values);
    };

    int i_match = 0;
    for (int i = 1; i < grid.count(); ++i)
        if (u[i] < u[i_match]) i_match = i;
    i_match = std::max(2, std::min(grid.count() - 3, i_match));

    const int n_lo = nodes_at(e_lo);
    const int n_hi = nodes_at(e_hi);

    std::vector<double> found;
    for (int target = n_lo + 1; target <= n_hi; ++target) {
        double lo = e_lo, hi = e_hi;
        // bracket by node count: nodes(lo) < target <= nodes(hi)
        while (hi - lo > std::max(tol, 1e-12)) {
            const double mid = 0.5 * (lo + hi);
            if (nodes_at(mid) >= target)
                hi = mid;
            else
                lo = mid;
            if (hi - lo < 1e-3) break;
        }
        // refine on the matching Wronskian when it brackets a sign change
        double wl = detail::matching_wronskian(u, lo, grid, s, i_match);
        double wh = detail::matching_wronskian(u, hi, grid, s, i_match);
        if (std::signbit(wl) != std::signbit(wh)) {
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const double wm = detail::matching_wronskian(u, mid, grid, s, i_match);
                if (std::signbit(wm) == std::signbit(wl)) {
                    lo = mid;
                    wl = wm;
                } else {
                    hi = mid;
                }
            }
        } else {
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                if (nodes_at(mid) >= target)
                    hi = mid;
                else
                    lo = mid;
            }
        }
        found.push_back(0.5 * (lo + hi));
    }
    std::sort(found.begin(), found.end());
    return found;
}

/// Reads delta from psi ~ sin(kr + delta) at two plateau points,
///
///   tan delta = [psi1 sin(k r2) - psi2 sin(k r1)]
///               / [psi2 cos(k r1) - psi1 cos(k r2)],
///
/// reduced to (-pi/2, pi/2] (the wavefunction fixes delta modulo pi; the
/// comparison against arg S is circular on 2 delta). A third checkpoint
/// between r1 and r2 must reproduce the fitted amplitude to 0.1%, otherwise
/// the pair is rejected as inconsistent.
inline PhaseExtraction extract_phase_shift(const GridFunction& psi, double k, double r1,
                                           double r2) {
    if (!(k > 0.0)) throw ParameterError("extract_phase_shift: k must be positive");
    const RadialGrid& grid = psi.grid;
    auto index_of = [&](double r) {
        const int i = static_cast<int>(std::lround((r - grid.r_min) / grid.step));
        if (i < 0 || i >= grid.count())
            throw ParameterError("extract_phase_shift: matching point off the grid");
        return i;
    };
    const int i1 = index_of(r1), i2 = index_of(r2);
    const double x1 = grid.r(i1), x2 = grid.r(i2);

    PhaseExtraction pe;
    pe.r1 = x1;
    pe.r2 = x2;
    const double sin_sep = std::sin(k * (x2 - x1));
    pe.condition_number = 1.0 / std::max(std::abs(sin_sep), 1e-300);
    if (pe.condition_number >= 100.0)
        throw IllConditionedError("extract_phase_shift: sin(k (r2-r1)) too small; move r1, r2");

    const double p1 = psi.values[i1], p2 = psi.values[i2];
    const double num = p1 * std::sin(k * x2) - p2 * std::sin(k * x1);
    const double den = p2 * std::cos(k * x1) - p1 * std::cos(k * x2);
    double delta = std::atan2(num, den);
    if (delta <= -0.5 * std::numbers::pi) delta += std::numbers::pi;
    if (delta > 0.5 * std::numbers::pi) delta -= std::numbers::pi;
    pe.delta = delta;

    const int i3 = (i1 + i2) / 2;
    const double x3 = grid.r(i3);
    const double s1 = std::sin(k * x1 + delta);
    if (std::abs(s1) > 1e-8) {
        const double amp = p1 / s1;
        const double predicted = amp * std::sin(k * x3 + delta);
        const double scale = std::max({std::abs(p1), std::abs(p2), std::abs(amp)});
        if (std::abs(predicted - psi.values[i3]) > 1e-3 * scale)
            throw IllConditionedError(
                "extract_phase_shift: third checkpoint disagrees with the sinusoid fit");
    }
    return pe;
}

/// Automatic plateau point selection: r2 a few steps inside r_max and r1 a
/// quarter wavelength below (snapped to the grid) so the pair is optimally
/// conditioned.
inline PhaseExtraction extract_phase_shift(const GridFunction& psi, double k) {
    const RadialGrid& grid = psi.grid;
    const double r2 = grid.r(grid.count() - 5);
    double sep = 0.5 * std::numbers::pi / k;
    sep = std::max(grid.step, std::round(sep / grid.step) * grid.step);
    double r1 = r2 - sep;
    const double r_floor = grid.r_min + 0.7 * (grid.r_max - grid.r_min);
    while (r1 < r_floor) r1 += sep * 0.5;  // keep both points deep in the tail
    return extract_phase_shift(psi, k, r1, r2);
}

/// One wavenumber of the closed-form-versus-oracle comparison.
struct VerifyRecord {
    double k = 0.0;
    double delta_numeric = 0.0;
    double delta_analytic = 0.0;
    double circular_diff = 0.0;  // half the circular distance between 2*deltas
};

struct VerifyReport {
    double g = 0.0, h = 0.0;
    int m = 0;
    RadialGrid grid;
    std::vector<VerifyRecord> records;
    double max_diff = 0.0;
};

/// Certifies the closed-form amplitude against the integrated ODE: for each
/// k, the Numerov phase shift and arg(S)/2 are compared on the circle. Also
/// asserts that the potential has actually reached its plateau (|U| tiny at
/// the matching radius) — this is the tripwire for a broken energy-shift
/// convention.
inline VerifyReport verify_s_matrix(const FamilyParams& p, const std::vector<double>& k_list,
                                    const RadialGrid& grid = {}) {
    grid.validate();
    for (const double k : k_list)
        if (!(k >= 0.1))
            throw ParameterError("verify_s_matrix: k below 0.1 converges too slowly");

    const std::vector<double> u = scattering_potential_on_grid(p, grid);
    if (std::abs(u.back()) > 1e-8)
        throw Error("verify_s_matrix: potential plateau differs from A^2; convention broken");

    VerifyReport report;
    report.g = p.g;
    report.h = p.h;
    report.m = p.m;
    report.grid = grid;

    const double s = p.g + p.m;
    for (const double k : k_list) {
        GridFunction psi{grid, {}};
        psi = numerov_integrate(u, k * k, grid, s);
        const PhaseExtraction pe = extract_phase_shift(psi, k);
        const double arg_s = std::arg(s_xm(p, k));
        const double diff = 0.5 * std::abs(std::remainder(2.0 * pe.delta - arg_s, 2.0 * std::numbers::pi));
        VerifyRecord rec;
        rec.k = k;
        rec.delta_numeric = pe.delta;
        rec.delta_analytic = 0.5 * arg_s;
        rec.circular_diff = diff;
        report.records.push_back(rec);
        report.max_diff = std::max(report.max_diff, diff);
    }
    return report;
}

}  // namespace xmjacobi
