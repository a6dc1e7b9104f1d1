#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "xmjacobi/jacobi.hpp"

using namespace xmjacobi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double binom(double x, int j) {
    double acc = 1.0;
    for (int i = 0; i < j; ++i) acc *= (x - i) / (j - i);
    return acc;
}

// Relative spread of the pointwise ratio p/q over sample points.
double ratio_spread(const Polynomial& p, const Polynomial& q, double lo, double hi, int n) {
    std::vector<double> ratios;
    for (int i = 0; i < n; ++i) {
        const double y = lo + (hi - lo) * i / (n - 1);
        const double qv = q(y);
        if (std::abs(qv) < 1e-12) continue;
        ratios.push_back(p(y) / qv);
    }
    REQUIRE(ratios.size() >= 10);
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= ratios.size();
    double var = 0.0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    var /= ratios.size();
    return std::sqrt(var) / std::abs(mean);
}

bool nodeless_on_physical_domain(const Polynomial& p) {
    // 1e5-point log grid on y in (1, cosh(40)]
    const double lo = std::log(1e-8), hi = std::log(std::cosh(40.0) - 1.0);
    double prev = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double y = 1.0 + std::exp(lo + (hi - lo) * i / 99999.0);
        const double v = p(y);
        if (v == 0.0) return false;
        if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) return false;
        prev = v;
    }
    return true;
}

}  // namespace

TEST_CASE("classical Jacobi base cases") {
    CHECK(jacobi_classical(0, 0.3, -0.7).coeffs() == std::vector<double>{1.0});

    const Polynomial p1 = jacobi_classical(1, 2.0, 1.0);  // ((a+b+2)y + (a-b))/2
    REQUIRE(p1.degree() == 1);
    CHECK_THAT(p1.coeff(1), WithinRel(2.5, 1e-15));
    CHECK_THAT(p1.coeff(0), WithinRel(0.5, 1e-15));
    CHECK_THAT(p1(1.0), WithinRel(3.0, 1e-15));  // binomial(n+a, n)
}

TEST_CASE("value at y = 1 is binomial(n+a, n) for arbitrary real parameters") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const double a = uni(rng), b = uni(rng);
        const double expected = binom(n + a, n);
        CHECK(std::abs(jacobi_classical(n, a, b)(1.0) - expected) <
              1e-11 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("recurrence equals the explicit sum") {
    const Polynomial rec = jacobi_classical(3, 0.5, -0.25);
    const Polynomial sum = jacobi_explicit_sum(3, 0.5, -0.25);
    CHECK_THAT(rec(0.7), WithinRel(sum(0.7), 1e-12));

    std::mt19937 rng(909);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng() % 6);
        const double a = uni(rng), b = uni(rng);
        const Polynomial r = jacobi_classical(n, a, b);
        const Polynomial s = jacobi_explicit_sum(n, a, b);
        for (double y : {-0.9, 0.3, 1.8, 7.0}) {
            const double scale = std::max(1.0, std::abs(s(y)));
            CHECK(std::abs(r(y) - s(y)) < 1e-11 * scale);
        }
    }
}

TEST_CASE("singular recurrence step falls back to the explicit sum") {
    // a+b = -3 makes the k = 3 recurrence denominator vanish
    const Polynomial rec = jacobi_classical(4, -1.5, -1.5);
    const Polynomial sum = jacobi_explicit_sum(4, -1.5, -1.5);
    for (double y : {0.4, 2.2, 11.0}) CHECK_THAT(rec(y), WithinRel(sum(y), 1e-11));
}

TEST_CASE("xi_m base cases and closed form") {
    CHECK(xi_m(FamilyParams(1.0, 10.0, 0)).coeffs() == std::vector<double>{1.0});
    CHECK(xi_poly(-1, 1.0, 10.0).is_zero());

    // Degree-1 closed form: with (a,b) = (-g-3/2, -h-1/2),
    // xi_1 = ((a+b+2)y + (a-b))/2 = (-(g+h) y + (h-g-1))/2.
    const double g = 1.0, h = 3.0;
    const Polynomial x1 = xi_poly(1, g, h);
    REQUIRE(x1.degree() == 1);
    CHECK_THAT(x1.coeff(1), WithinRel(-(g + h) / 2.0, 1e-14));
    CHECK_THAT(x1.coeff(0), WithinRel((h - g - 1.0) / 2.0, 1e-14));
}

TEST_CASE("xi_m is nodeless on the physical domain") {
    CHECK(nodeless_on_physical_domain(xi_m(FamilyParams(1.0, 10.0, 2))));
    for (const auto& gh : std::vector<std::pair<double, double>>{{1.0, 10.0}, {2.0, 9.0},
                                                                 {0.5, 8.5}})
        for (int m : {1, 2, 3})
            CHECK(nodeless_on_physical_domain(xi_m(FamilyParams(gh.first, gh.second, m))));
}

TEST_CASE("deformed polynomial has degree nu + m") {
    for (int m : {0, 1, 2, 3})
        for (int nu : {0, 1, 2, 3, 4}) {
            const FamilyParams p(1.0, 13.6, m);
            CHECK(xm_jacobi(nu, p).degree() == nu + m);
        }
}

TEST_CASE("m = 2 composition equals its expanded quadratic form") {
    // Independent transcription: bracket = q2 x^2 + q1 x + q0 multiplying
    // P_nu, plus a linear coefficient on P_{nu-1}.
    const FamilyParams p(1.0, 10.0, 2);
    const int nu = 1;
    const double a = p.alpha(), b = p.beta();
    const double q2 = (b - a + 1.0) * (b - a + 2.0) / 8.0;
    const double q1 = -(b - a + 1.0) * (a + b + 2.0) / 4.0 + nu * (b - a + 1.0) / (2.0 * nu + a + b);
    const double q0 = a * (b + 2.0) / 2.0 + (b - a + 1.0) * (b - a + 2.0) / 8.0 -
                      nu * (b - a + 1.0) * (a + b) / ((b - a + 2.0) * (2.0 * nu + a + b)) -
                      nu * (b + 1.0) / ((a + nu - 1.0) * (b - a + 2.0));
    const double l1 = (b - a + 1.0) * (a + nu) / ((a + nu - 1.0) * (2.0 * nu + a + b));

    const Polynomial expanded =
        Polynomial{{q0, q1, q2}} * jacobi_classical(nu, a, b) +
        l1 * (Polynomial{{-(a + b) / 2.0, (b - a + 2.0) / 2.0}} * jacobi_classical(nu - 1, a, b));

    const Polynomial composed = xm_jacobi(nu, p);
    REQUIRE(composed.degree() == expanded.degree());
    double peak = 0.0;
    for (double c : expanded.coeffs()) peak = std::max(peak, std::abs(c));
    for (int q = 0; q <= expanded.degree(); ++q)
        CHECK(std::abs(composed.coeff(q) - expanded.coeff(q)) < 1e-11 * peak);
}

TEST_CASE("both constructions agree: spot checks") {
    {
        const FamilyParams p(1.0, 10.0, 1);
        CHECK(ratio_spread(xm_jacobi(0, p), pmn_via_ab(0, p), 1.2, 8.0, 20) < 1e-10);
    }
    {
        const FamilyParams p(1.0, 10.0, 2);
        CHECK(ratio_spread(xm_jacobi(1, p), pmn_via_ab(1, p), 1.2, 8.0, 20) < 1e-9);
    }
}

TEST_CASE("both constructions agree: all admissible nu, m = 1..3") {
    for (int m : {1, 2, 3}) {
        const FamilyParams p(1.0, 10.0, m);
        for (int nu = 0; nu <= p.max_nu(); ++nu)
            CHECK(ratio_spread(xm_jacobi(nu, p), pmn_via_ab(nu, p), 1.1, 9.0, 50) < 1e-9);
    }
}

TEST_CASE("shifted-route structure at the edges") {
    // nu = 0: the second branch is empty, result is xi_m at the shifted
    // parameter set
    const FamilyParams p(1.0, 10.0, 2);
    const Polynomial p0 = pmn_via_ab(0, p);
    const Polynomial xi_shift = xi_poly(2, 2.0, 9.0);
    CHECK(ratio_spread(p0, xi_shift, 1.2, 6.0, 20) < 1e-12);

    // m = 0: classical family polynomial
    const FamilyParams q(1.0, 10.0, 0);
    for (int nu : {0, 1, 3}) {
        const Polynomial lhs = pmn_via_ab(nu, q);
        const Polynomial rhs = jacobi_classical(nu, q.g - 0.5, -q.h - 0.5);
        CHECK(ratio_spread(lhs, rhs, 1.2, 6.0, 20) < 1e-13);
        CHECK(ratio_spread(xm_jacobi(nu, q), rhs, 1.2, 6.0, 20) < 1e-13);
    }
}

TEST_CASE("coefficient singularities are reported") {
    // 2nu + alpha + beta = 2nu + g - h + 2m - 1 vanishes at (g,h,m,nu) = (1,6,1,2)
    CHECK_THROWS_AS(xm_jacobi(2, FamilyParams(1.0, 6.0, 1)), CoefficientSingularityError);
    // pmn_via_ab rejects inadmissible nu outright
    CHECK_THROWS_AS(pmn_via_ab(5, FamilyParams(1.0, 10.0, 2)), ParameterError);
}
