#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "xmjacobi/gamma.hpp"
#include "xmjacobi/hyp2f1.hpp"

using namespace xmjacobi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("empty sum and a degree-1 terminating case") {
    CHECK(hyp2f1({0.7, 0.1}, {1.2, 0.0}, {2.5, 0.0}, {0.0, 0.0}) == Complex(1.0, 0.0));
    const Complex f = hyp2f1({-1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {0.5, 0.0});
    CHECK_THAT(f.real(), WithinRel(2.0 / 3.0, 1e-15));
}

TEST_CASE("terminating series evaluates outside the unit disk") {
    // F(-2,b;c;z) = 1 - 2bz/c + b(b+1) z^2 / (c(c+1))
    const double b = 1.3, c = 2.7, z = 3.7;
    const double exact = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
    CHECK_THAT(hyp2f1({-2.0, 0.0}, {b, 0.0}, {c, 0.0}, {z, 0.0}).real(), WithinRel(exact, 1e-14));
}

TEST_CASE("Gauss summation at z = 1") {
    // F(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)) for Re(c-a-b) > 0. The
    // algebraically-decaying tail needs a deep sum, hence the loose control.
    const Complex a(0.2, 0.0), b(0.3, 0.0), c(2.0, 0.0);
    SeriesControl ctl;
    ctl.rel_tol = 1e-16;
    ctl.max_terms = 4'000'000;
    const Complex series = hyp2f1(a, b, c, {1.0, 0.0}, ctl);
    const Complex closed = gamma_ratio({c, c - a - b}, {c - a, c - b});
    CHECK(std::abs(series / closed - 1.0) < 1e-10);
}

TEST_CASE("contiguous relation in a") {
    // (c-a) F(a-1,b;c;z) + (2a-c+(b-a)z) F(a,b;c;z) + a(z-1) F(a+1,b;c;z) = 0
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> uni(0.1, 2.0);
    std::uniform_real_distribution<double> zdist(-0.8, 0.8);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex a(uni(rng), 0.3 * uni(rng));
        const Complex b(uni(rng), 0.0);
        const Complex c(uni(rng) + 2.0, 0.0);
        const Complex z(zdist(rng), 0.0);
        const Complex lhs = (c - a) * hyp2f1(a - 1.0, b, c, z) +
                            (2.0 * a - c + (b - a) * z) * hyp2f1(a, b, c, z) +
                            a * (z - 1.0) * hyp2f1(a + 1.0, b, c, z);
        const double scale = std::abs(hyp2f1(a, b, c, z));
        CHECK(std::abs(lhs) < 1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("series failure modes") {
    SeriesControl tiny;
    tiny.max_terms = 3;
    CHECK_THROWS_AS(hyp2f1({0.5, 0.0}, {0.5, 0.0}, {1.5, 0.0}, {0.9, 0.0}, tiny),
                    ConvergenceError);
    CHECK_THROWS_AS(hyp2f1({0.5, 0.0}, {0.5, 0.0}, {-2.0, 0.0}, {0.5, 0.0}), ParameterError);
    CHECK_THROWS_AS(hyp2f1({0.5, 0.0}, {0.5, 0.0}, {1.5, 0.0}, {1.2, 0.0}), ParameterError);
    // c at a non-positive integer is fine when the series stops first
    CHECK_NOTHROW(hyp2f1({-1.0, 0.0}, {0.5, 0.0}, {-2.0, 0.0}, {0.5, 0.0}));
    SeriesControl bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("connection formula agrees with the direct series") {
    const Complex a(0.3, 0.0), b(0.7, 0.0), c(1.1, 0.0);
    const Complex z(-0.5, 0.0);
    const Complex direct = hyp2f1(a, b, c, z);
    const Complex connected = hyp2f1_connect(a, b, c, z);
    CHECK(std::abs(connected / direct - 1.0) < 1e-11);
}

TEST_CASE("connection formula, terminating case against exact polynomial") {
    const double b = 0.45, c = 1.9, z = -3.0;
    const double exact = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
    const Complex got = hyp2f1_connect({-2.0, 0.0}, {b, 0.0}, {c, 0.0}, {z, 0.0});
    CHECK_THAT(got.real(), WithinRel(exact, 1e-12));
    CHECK_THAT(got.imag(), WithinAbs(0.0, 1e-12));
}

TEST_CASE("connection formula tends to 1 as z -> 0-") {
    SeriesControl ctl;
    ctl.max_terms = 200000;
    const Complex f = hyp2f1_connect({0.3, 0.0}, {0.7, 0.0}, {1.1, 0.0}, {-0.002, 0.0}, ctl);
    const Complex direct = hyp2f1({0.3, 0.0}, {0.7, 0.0}, {1.1, 0.0}, {-0.002, 0.0});
    CHECK(std::abs(f - direct) < 1e-10);
    CHECK(std::abs(f - 1.0) < 1e-3);
}

TEST_CASE("connection consistency across z in [-0.9, -0.1]") {
    const Complex a(0.32, 0.0), b(1.17, 0.0), c(2.4, 0.0);
    for (double z = -0.9; z <= -0.1 + 1e-12; z += 0.1) {
        const Complex direct = hyp2f1(a, b, c, {z, 0.0});
        const Complex connected = hyp2f1_connect(a, b, c, {z, 0.0});
        CHECK(std::abs(connected / direct - 1.0) < 1e-10);
    }
}

TEST_CASE("degenerate connection is refused") {
    CHECK_THROWS_AS(hyp2f1_connect({0.5, 0.0}, {2.5, 0.0}, {3.0, 0.0}, {-0.5, 0.0}),
                    DegenerateError);
}
