#include "doctest.h"

#include <cmath>

#include "cknorm/errors.hpp"
#include "cknorm/rng.hpp"
#include "cknorm/smooth.hpp"

using namespace cknorm;

TEST_CASE("sigma basics") {
    CHECK(sigma(0.5) == 0.5);
    CHECK(sigma(-1.0) == 0.0);
    CHECK(sigma(2.0) == 1.0);
    CHECK(sigma(0.0) == 0.0);
    CHECK(sigma(1.0) == 1.0);
    rng r(401);
    for (int i = 0; i < 100; ++i) {
        const double u = r.real01();
        CHECK(sigma(u) + sigma(1.0 - u) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sigma(u) >= 0.0);
        CHECK(sigma(u) <= 1.0);
    }
}

TEST_CASE("sigma derivative matches finite differences") {
    rng r(403);
    for (int i = 0; i < 50; ++i) {
        const double u = r.real_in(0.05, 0.95);
        const double h = 1e-6;
        const double fd = (sigma(u + h) - sigma(u - h)) / (2.0 * h);
        const double d = sigma_deriv(u);
        REQUIRE(d > 0.0);
        CHECK(std::fabs(fd - d) / d <= 1e-6);
    }
    CHECK(sigma_deriv(-0.5) == 0.0);
    CHECK(sigma_deriv(1.5) == 0.0);
}

TEST_CASE("smooth step plateaus and midpoint") {
    const smooth_step s(0.5, 0.75);
    CHECK(s.eval(1.0) == 1.0);
    CHECK(s.eval(0.25) == 0.0);
    CHECK(s.eval(0.625) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.eval(-1.0) == 1.0);   // two-sided in |x|
    CHECK(s.eval(-0.25) == 0.0);
    CHECK_THROWS_AS(smooth_step(0.75, 0.5), input_error);
    CHECK_THROWS_AS(smooth_step(-0.1, 0.5), input_error);

    // Derivative against finite differences away from the edges.
    rng r(405);
    for (int i = 0; i < 50; ++i) {
        const double x = r.real_in(0.55, 0.72);
        const double h = 1e-7;
        const double fd = (s.eval(x + h) - s.eval(x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(s.deriv(x)).epsilon(1e-5));
    }
}

TEST_CASE("adaptive simpson") {
    const double v = adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(adaptive_simpson(sigma, 0.0, 1.0, 1e-13) == doctest::Approx(0.5).epsilon(1e-12));
    // Unreachable tolerance raises.
    CHECK_THROWS_AS(adaptive_simpson([](double x) { return x > 0.31830988 ? 1.0 : 0.0; },
                                     0.0, 1.0, 1e-18),
                    numeric_error);
}

TEST_CASE("orlicz template plateaus, threshold, convexity") {
    const double margin = 0.5;
    const orlicz_function phi(0.6, 0.8, margin);
    CHECK(phi.eval(0.0) == 0.0);
    CHECK(phi.eval(0.6) == 0.0);
    CHECK(phi.eval(0.8) == 1.0 + margin);
    CHECK(phi.eval(1.0) > 1.0 + margin);
    CHECK_THROWS_AS(phi.eval(-0.1), input_error);
    CHECK_THROWS_AS(orlicz_function(0.0, 0.8, margin), input_error);
    CHECK_THROWS_AS(orlicz_function(0.8, 0.6, margin), input_error);

    // Independent quadrature oracle (Romberg-style refinement of the
    // trapezoid rule) confirms the interior values and the threshold.
    auto romberg = [&](double a, double b) {
        auto f = [&](double x) { return phi.normalizer() * sigma((x - phi.alpha()) /
                                                                 (phi.beta() - phi.alpha())); };
        const int levels = 18;
        std::vector<double> row(levels, 0.0);
        double h = b - a;
        row[0] = 0.5 * h * (f(a) + f(b));
        long n = 1;
        for (int k = 1; k < levels; ++k) {
            h *= 0.5;
            n *= 2;
            double s = 0.0;
            for (long i = 1; i < n; i += 2) s += f(a + static_cast<double>(i) * h);
            std::vector<double> next(levels, 0.0);
            next[0] = 0.5 * row[0] + h * s;
            double p4 = 4.0;
            for (int m = 1; m <= k; ++m) {
                next[m] = (p4 * next[m - 1] - row[m - 1]) / (p4 - 1.0);
                p4 *= 4.0;
            }
            row = next;
        }
        return row[levels - 1];
    };
    CHECK(romberg(phi.alpha(), phi.beta()) == doctest::Approx(1.0 + margin).epsilon(1e-10));
    rng r(407);
    for (int i = 0; i < 20; ++i) {
        const double x = r.real_in(0.6, 0.8);
        CHECK(phi.eval(x) == doctest::Approx(romberg(phi.alpha(), x)).epsilon(1e-10));
    }

    // Convexity: derivative nondecreasing on a grid, for fuzzed parameters.
    for (int i = 0; i < 30; ++i) {
        const double alpha = r.real_in(0.1, 0.7);
        const double beta = r.real_in(alpha + 0.05, 1.0);
        const orlicz_function p(alpha, beta, margin);
        double prev = -1.0;
        for (int g = 0; g <= 100; ++g) {
            const double x = 1.2 * g / 100.0;
            const double d = p.deriv(x);
            CHECK(d >= prev - 1e-15);
            prev = d;
            // Non-degeneracy: positive slope wherever the value is positive.
            if (p.eval(x) > 0.0) CHECK(d > 0.0);
        }
    }
}

TEST_CASE("orlicz derivative matches finite differences away from edges") {
    const orlicz_function phi(0.5, 0.9, 0.5);
    rng r(409);
    const double width = phi.beta() - phi.alpha();
    for (int i = 0; i < 60; ++i) {
        const double x = r.real_in(phi.alpha() + 0.05 * width, phi.beta() - 0.05 * width);
        const double h = 1e-6;
        const double fd = (phi.eval(x + h) - phi.eval(x - h)) / (2.0 * h);
        const double d = phi.deriv(x);
        REQUIRE(d > 0.0);
        CHECK(std::fabs(fd - d) / d <= 1e-6);
    }
}
