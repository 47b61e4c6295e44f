#include "doctest.h"

#include <cmath>
#include <vector>

#include "cknorm/errors.hpp"
#include "cknorm/rng.hpp"
#include "cknorm/smooth.hpp"
#include "cknorm/step_function.hpp"

using namespace cknorm;

namespace {

const ordinal w = ordinal::omega();
ordinal lit(const char* s) { return parse_ordinal(s); }

step_function random_step(rng& r, const ordinal_space& k, int max_pieces) {
    // Random successor boundaries below gamma.
    std::vector<ordinal> bounds;
    const int cuts = static_cast<int>(r.int_in(0, max_pieces - 1));
    for (int i = 0; i < cuts; ++i) {
        ordinal u;
        for (int e = 2; e >= 1; --e)
            if (r.chance(0.4))
                u = u + ordinal::omega_power(ordinal(static_cast<std::uint64_t>(e)),
                                             nat(r.int_in(1, 3)));
        u = u + ordinal(static_cast<std::uint64_t>(r.int_in(0, 6)));
        if (u < k.max_point()) bounds.push_back(std::move(u));
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    bounds.push_back(k.max_point());
    std::vector<double> vals;
    for (std::size_t i = 0; i < bounds.size(); ++i) vals.push_back(r.real_in(-2.0, 2.0));
    return step_function::from_bounds(k, bounds, vals);
}

std::vector<ordinal> sample_points(rng& r, const ordinal_space& k, int n) {
    std::vector<ordinal> pts;
    for (int i = 0; i < n; ++i) {
        ordinal t;
        for (int e = 2; e >= 1; --e)
            if (r.chance(0.4))
                t = t + ordinal::omega_power(ordinal(static_cast<std::uint64_t>(e)),
                                             nat(r.int_in(1, 3)));
        t = t + ordinal(static_cast<std::uint64_t>(r.int_in(0, 6)));
        if (k.contains(t)) pts.push_back(std::move(t));
    }
    pts.push_back(ordinal());
    pts.push_back(k.max_point());
    return pts;
}

} // namespace

TEST_CASE("construction and validation") {
    const ordinal_space k(lit("w^2"));
    const auto f = step_function::from_bounds(k, {w, lit("w^2")}, {2.0, -1.0});
    CHECK(f.eval(w) == 2.0);
    CHECK(f.eval(lit("w+1")) == -1.0);
    CHECK(f.sup_norm() == 2.0);

    // A piece beginning at a limit point is rejected with the boundary named.
    CHECK_THROWS_WITH_AS(
        step_function::from_pieces(k, {{ordinal(), ordinal(5), 1.0}, {w, lit("w^2"), 2.0}}),
        doctest::Contains("expected successor boundary"), input_error);
    // Last piece must reach the maximum.
    CHECK_THROWS_AS(step_function::from_bounds(k, {w}, {1.0}), input_error);
    // Equal-valued neighbors merge.
    const auto g = step_function::from_bounds(k, {ordinal(3), w, lit("w^2")}, {1.0, 1.0, 0.0});
    CHECK(g.pieces().size() == 2);
}

TEST_CASE("algebra: add, scale, sup_norm") {
    const ordinal_space k(lit("w^2"));
    const auto f = step_function::from_bounds(k, {w, lit("w^2")}, {2.0, -1.0});
    const auto z = f.add(f.scale(-1.0));
    CHECK(z.is_zero());
    CHECK(z.sup_norm() == 0.0);

    rng r(301);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_step(r, k, 5);
        const auto b = random_step(r, k, 5);
        const auto s = a.add(b);
        for (const auto& t : sample_points(r, k, 8))
            CHECK(s.eval(t) == doctest::Approx(a.eval(t) + b.eval(t)).epsilon(1e-12));
        CHECK(s.sup_norm() <= a.sup_norm() + b.sup_norm() + 1e-12);
        const double c = r.real_in(-3.0, 3.0);
        CHECK(a.scale(c).sup_norm() == doctest::Approx(std::fabs(c) * a.sup_norm()));
    }
}

TEST_CASE("level sets") {
    const ordinal_space k(lit("w^2"));
    const auto f = step_function::from_bounds(k, {w, lit("w^2")}, {2.0, -1.0});
    const auto ls = f.level_set(1.5);
    REQUIRE(ls.intervals().size() == 1);
    CHECK(ls.intervals()[0] == closed_set::interval{ordinal(), w});
    const auto lm = f.level_set(0.0, step_function::level_mode::at_max);
    CHECK(lm == ls);
    CHECK(f.level_set(5.0).is_empty());
    CHECK_THROWS_AS(f.level_set(0.0), input_error);
    CHECK_THROWS_AS(step_function::constant(k, 0.0)
                        .level_set(0.0, step_function::level_mode::at_max),
                    input_error);

    rng r(303);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_step(r, k, 6);
        const double eta = r.real_in(0.05, 2.2);
        const auto set = g.level_set(eta);
        for (const auto& t : sample_points(r, k, 8))
            CHECK(set.contains(t) == (std::fabs(g.eval(t)) >= eta));
        CHECK(set.is_empty() == (g.sup_norm() < eta));
    }
}

TEST_CASE("indicator multiplication") {
    const ordinal_space k(lit("w^2"));
    const auto one = step_function::constant(k, 1.0);

    // Complement of (0, w^2] is {0}.
    const auto chi0 = one.multiply_indicator({clopen_interval{ordinal(), lit("w^2")}}, true);
    CHECK(chi0.eval(ordinal()) == 1.0);
    CHECK(chi0.eval(ordinal(1)) == 0.0);
    CHECK(chi0.eval(lit("w^2")) == 0.0);

    // V_{{0, w^2}} covers the space, so the complement kills everything.
    const auto vs = v_of_set(k, {ordinal(), lit("w^2")});
    CHECK(one.multiply_indicator(vs, true).is_zero());

    rng r(305);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_step(r, k, 5);
        std::vector<clopen_interval> u;
        const int n = static_cast<int>(r.int_in(1, 3));
        for (int j = 0; j < n; ++j) {
            const auto pts = sample_points(r, k, 1);
            u.push_back(canonical_vt(k, pts[0]));
        }
        for (bool complement : {false, true}) {
            const auto g = f.multiply_indicator(u, complement);
            for (const auto& t : sample_points(r, k, 10)) {
                const bool inside = vt_union_contains(u, t);
                const double expect = (inside != complement) ? f.eval(t) : 0.0;
                CHECK(g.eval(t) == expect);
            }
        }
    }
}

TEST_CASE("scalar composition and its derivative") {
    const ordinal_space k(lit("w^2"));
    const auto f = step_function::from_bounds(k, {w, lit("w^2")}, {2.0, -1.0});
    const auto sq = f.compose_scalar([](double x) { return x * x; });
    CHECK(sq.eval(ordinal()) == 4.0);
    CHECK(sq.eval(lit("w^2")) == 1.0);
    const auto id = f.compose_scalar([](double x) { return x; });
    CHECK(id.pieces().size() == f.pieces().size());
    CHECK(sup_distance(id, f) == 0.0);

    // Directional derivative of theta-composition: finite differences of
    // s -> theta o (f + s h) against (theta' o f) * h, pointwise.
    rng r(307);
    int checked = 0;
    for (int i = 0; i < 60 || checked < 50; ++i) {
        REQUIRE(i < 500);
        const auto base = random_step(r, k, 5);
        const auto part = base.partition();
        const auto vals = base.values();
        std::vector<double> dir;
        for (std::size_t j = 0; j < vals.size(); ++j) dir.push_back(r.real_in(-1.5, 1.5));
        const smooth_step theta(r.real_in(0.1, 0.6), r.real_in(0.9, 1.6));
        // Keep every value at a safe distance from the transition edges;
        // derivative magnitudes blow up close to them.
        bool safe = true;
        const double wdt = theta.b - theta.a;
        for (double v : vals) {
            const double d = std::fabs(v);
            if (std::fabs(d - theta.a) < 0.12 * wdt || std::fabs(d - theta.b) < 0.12 * wdt)
                safe = false;
        }
        if (!safe) continue;
        ++checked;
        const double s = 1e-5;
        for (std::size_t j = 0; j < vals.size(); ++j) {
            std::vector<double> up = vals, dn = vals;
            for (std::size_t m = 0; m < vals.size(); ++m) {
                up[m] += s * dir[m];
                dn[m] -= s * dir[m];
            }
            const double fd =
                (theta.eval(up[j]) - theta.eval(dn[j])) / (2.0 * s);
            const double exact = theta.deriv(vals[j]) * dir[j];
            if (exact == 0.0)
                CHECK(std::fabs(fd) <= 1e-9);
            else
                CHECK(std::fabs(fd - exact) / std::fabs(exact) <= 1e-6);
        }
    }
}

TEST_CASE("coordinate view round trip") {
    const ordinal_space k(lit("w^2"));
    rng r(309);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_step(r, k, 6);
        const auto part = f.partition();
        const auto vals = f.values();
        const auto back = step_function::rebuild(part, vals);
        CHECK(sup_distance(back, f) == 0.0);
        CHECK(back.pieces().size() == f.pieces().size());
        // Perturbed values still rebuild into a valid function.
        std::vector<double> pert = vals;
        for (auto& v : pert) v += r.real_in(-0.1, 0.1);
        const auto g = step_function::rebuild(part, pert);
        CHECK(g.pieces().size() <= part.bounds.size());
    }
    const auto f = step_function::constant(k, 1.0);
    CHECK_THROWS_AS(step_function::rebuild(f.partition(), {1.0, 2.0}), input_error);
}
