#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "xmjacobi/errors.hpp"
#include "xmjacobi/family.hpp"
#include "xmjacobi/jacobi.hpp"
#include "xmjacobi/prepotential.hpp"

namespace xmjacobi {

/// Panel-wise Gauss-Legendre configuration for the orthogonality integrals.
/// r_max <= 0 requests an automatic cutoff from the integrand's decay rate.
struct QuadratureConfig {
    double r_max = 0.0;
    int panels = 32;
    int nodes_per_panel = 24;

    void validate() const {
        if (panels < 1) throw ParameterError("QuadratureConfig: panels must be >= 1");
        if (nodes_per_panel < 2)
            throw ParameterError("QuadratureConfig: nodes_per_panel must be >= 2");
    }
};

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
/// Cached per order; thread-safe.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        rule.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - i] = rule.weights[i - 1];
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// Panel-wise Gauss-Legendre with compensated (Kahan) accumulation in a fixed
/// deterministic order. Also accumulates the L1 norm of the integrand, used
/// as the scale for stability decisions.
struct PanelIntegral {
    double value = 0.0;
    double l1 = 0.0;
};

inline PanelIntegral integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                                      int panels, int nodes_per_panel) {
    const GaussLegendreRule& rule = gauss_legendre(nodes_per_panel);
    const double width = (hi - lo) / panels;
    double sum = 0.0, comp = 0.0;
    double l1 = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double mid = a + 0.5 * width;
        const double half = 0.5 * width;
        for (int j = 0; j < nodes_per_panel; ++j) {
            const double x = mid + half * rule.nodes[j];
            const double fx = half * rule.weights[j] * f(x);
            const double y = fx - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            l1 += std::abs(fx);
        }
    }
    return {sum, l1};
}

}  // namespace detail

/// Squared ground-measure weight phi_m(r)^2 = exp(2 omega_0(r; g+m, h-m)) /
/// xi_m(cosh 2r; g, h)^2. Strictly positive on r > 0. Note the polynomial
/// denominator: for m >= 1 the large-r decay rate is 2(h-g), not the bare
/// exponential rate 2(h-g-2m) of the numerator alone.
inline double weight_phi_squared(const FamilyParams& p, double r) {
    if (!(r > 0.0)) throw DomainError("weight_phi_squared: r must be positive");
    const double u = std::cosh(2.0 * r);
    const double xi = xi_m(p)(u);
    if (xi == 0.0) throw DenominatorZeroError("weight_phi_squared: xi_m vanished at r");
    const double w = std::exp(2.0 * omega0(p.g + p.m, p.h - p.m, r));
    return w / (xi * xi);
}

/// Norm of the undeformed family,
///   h_nu(g, h) = Gamma(nu+g+1/2) Gamma(h-g-nu+1)
///                / (2 nu! (h-g-2nu) Gamma(h-nu+1/2)).
inline double norm_h_undeformed(int nu, double g, double h) {
    if (std::abs(h - g - 2.0 * nu) < 1e-12)
        throw PoleError("norm_h: h-g-2nu = 0 (threshold state has no finite norm)");
    const double lg = std::lgamma(nu + g + 0.5) + std::lgamma(h - g - nu + 1.0) -
                      std::lgamma(nu + 1.0) - std::lgamma(h - nu + 0.5);
    return std::exp(lg) / (2.0 * (h - g - 2.0 * nu));
}

/// Closed-form norm of the deformed polynomials under the phi_m^2 measure:
///
///   h_{m,nu}(g,h) = h_nu(g+m, h-m) (nu+g+m+1/2)(h-nu-2m+1/2)
///                   / ((nu+g+1/2)(h-nu-m+1/2)).
///
/// The shifted argument pair is (g+m, h-m); it reduces to h_nu(g,h) at m = 0
/// and is certified against the quadrature of the orthogonality integral.
inline double norm_h(int nu, const FamilyParams& p) {
    if (nu < 0 || nu > p.max_nu())
        throw ParameterError("norm_h: nu outside the admissible range");
    const double base = norm_h_undeformed(nu, p.g + p.m, p.h - p.m);
    const double corr = (nu + p.g + p.m + 0.5) * (p.h - nu - 2.0 * p.m + 0.5) /
                        ((nu + p.g + 0.5) * (p.h - nu - p.m + 0.5));
    return base * corr;
}

/// Scalar integral plus the quadrature-stability diagnostics the caller may
/// inspect. refinement_warning is set when doubling the panel count moved the
/// result by more than 1e-9 relative to its scale.
struct IntegralResult {
    double value = 0.0;
    bool refinement_warning = false;
    double refinement_delta = 0.0;
};

/// Orthogonality integral int_0^inf phi_m^2 P_{m,nu} P_{m,q} dr by panel-wise
/// Gauss-Legendre on [0, r_max]. The automatic cutoff accounts for both the
/// weight decay and the polynomial growth of the integrand (net rate
/// 2(h-g-2m-nu-q)); panels are doubled until the value is stable to 1e-10
/// relative.
inline IntegralResult orthogonality_integral(int nu, int q, const FamilyParams& p,
                                             QuadratureConfig quad = {}) {
    quad.validate();
    if (nu < 0 || q < 0 || nu > p.max_nu() || q > p.max_nu())
        throw ParameterError("orthogonality_integral: index outside the admissible range");

    const Polynomial pn = pmn_via_ab(nu, p);
    const Polynomial pq = pmn_via_ab(q, p);
    const Polynomial xi = xi_m(p);
    const double gs = p.g + p.m, hs = p.h - p.m;

    auto integrand = [&](double r) {
        const double u = std::cosh(2.0 * r);
        const double xv = xi(u);
        const double w = std::exp(2.0 * omega0(gs, hs, r));
        return w / (xv * xv) * pn(u) * pq(u);
    };

    double r_max = quad.r_max;
    if (!(r_max > 0.0)) {
        const double rate = 2.0 * (p.h - p.g - 2.0 * p.m - nu - q);
        r_max = std::min(40.0, std::max(15.0, 42.0 / rate + 10.0));
    }

    int panels = quad.panels;
    detail::PanelIntegral cur = detail::integrate_panels(integrand, 0.0, r_max, panels,
                                                         quad.nodes_per_panel);
    double delta = 0.0;
    for (int round = 0; round < 6; ++round) {
        panels *= 2;
        const detail::PanelIntegral next =
            detail::integrate_panels(integrand, 0.0, r_max, panels, quad.nodes_per_panel);
        delta = std::abs(next.value - cur.value);
        const double scale = std::max(std::abs(next.value), next.l1);
        cur = next;
        if (delta <= 1e-10 * scale) break;
    }

    IntegralResult out;
    out.value = cur.value;
    out.refinement_delta = delta;
    out.refinement_warning = delta > 1e-9 * std::max(std::abs(cur.value), cur.l1);
    return out;
}

/// Full Gram matrix of the admissible deformed polynomials under phi_m^2.
inline std::vector<std::vector<double>> gram_matrix(const FamilyParams& p,
                                                    QuadratureConfig quad = {}) {
    const int n = p.level_count();
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = orthogonality_integral(i, j, p, quad).value;
            gram[i][j] = v;
            gram[j][i] = v;
        }
    return gram;
}

}  // namespace xmjacobi
