#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "bessel_hardy/maximal.hpp"
#include "bessel_hardy/quadrature.hpp"

using namespace bessel_hardy;

namespace {

GridFunction indicator_1d(double a, double b, double nu, int cells = 32) {
    GridFunction f(Cuboid::from_corners({a}, {b}), {cells},
                   NuVector::classical({nu}));
    for (auto& v : f.values) v = 1.0;
    return f;
}

// brute-force oracle for T_t f in one classical dimension
double semigroup_oracle(double nu, double t, const GridFunction& f, double x) {
    auto breaks =
        semigroup_breaks(x, t, f.domain.lower(0), f.domain.upper(0), 40, 10);
    // f jumps at its cell edges; panels must not straddle them
    for (int c = 0; c <= f.cells[0]; ++c)
        breaks.push_back(f.axis_lower(0, c));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return integrate_panels(
        [&](double y) {
            return w_classical_1d(nu, t, x, y) * f.value_at({y}) *
                   std::pow(y, 2.0 * nu + 1.0);
        },
        breaks, 16);
}

}  // namespace

TEST_CASE("semigroup application matches the quadrature oracle") {
    const double nu = 0.5;
    GridFunction f = indicator_1d(1.0, 2.0, nu);
    for (std::size_t c = 0; c < f.size(); ++c)
        f.values[c] = std::sin(3.0 * f.cell_center(c)[0]);
    const KernelSpec spec = KernelSpec::classical_1d(nu);
    for (double t : {0.01, 0.2, 4.0})
        for (double x : {0.5, 1.3, 2.5, 8.0}) {
            const double got = apply_semigroup(spec, t, f, {x});
            const double want = semigroup_oracle(nu, t, f, x);
            REQUIRE(got == Catch::Approx(want).epsilon(1e-8).margin(1e-13));
        }
}

TEST_CASE("small-time limit recovers the function") {
    const double nu = 1.0;
    GridFunction f(Cuboid::from_corners({0.5}, {4.0}), {256},
                   NuVector::classical({nu}));
    for (std::size_t c = 0; c < f.size(); ++c) {
        const double x = f.cell_center(c)[0];
        f.values[c] = std::exp(-(x - 2.0) * (x - 2.0));
    }
    const KernelSpec spec = KernelSpec::classical_1d(nu);
    for (double x : {1.5, 2.0, 2.7})
        REQUIRE(apply_semigroup(spec, 1e-5, f, {x}) ==
                Catch::Approx(f.value_at({x})).epsilon(2e-2));
}

TEST_CASE("mass conservation under the semigroup") {
    // integrating T_t f against mu equals the mass of f (self-adjointness +
    // conservation), checked through the maximal machinery's meshes
    const double nu = 0.5;
    GridFunction f = indicator_1d(1.0, 2.0, nu, 16);
    const KernelSpec spec = KernelSpec::classical_1d(nu);
    const double t = 0.3;
    const auto breaks = semigroup_breaks(1.5, t, 1e-6, 2.0 + 12.0, 30, 12);
    const double mass = integrate_panels(
        [&](double x) {
            return apply_semigroup(spec, t, f, {x}) *
                   std::pow(x, 2.0 * nu + 1.0);
        },
        breaks, 12);
    REQUIRE(mass == Catch::Approx(f.integral_mu()).epsilon(1e-6));
}

TEST_CASE("maximal function dominates any fixed time") {
    const double nu = 0.5;
    GridFunction f = indicator_1d(1.0, 2.0, nu, 16);
    const KernelSpec spec = KernelSpec::classical_1d(nu);
    const Point x{3.0};
    const auto mx = maximal_function(spec, f, x);
    REQUIRE(mx.value > 0.0);
    for (double t : {0.5, 1.0, 2.0})
        REQUIRE(mx.value >= apply_semigroup(spec, t, f, x) - 1e-12);
}

TEST_CASE("capped maximal L1 norm of a bump is finite and certified") {
    const double nu = 0.5;
    GridFunction f = indicator_1d(1.0, 2.0, nu, 16);
    const double m = f.integral_mu();
    for (auto& v : f.values) v = 1.0 / m;  // local-atom normalization
    const auto r = maximal_l1_norm(direct_route(f.nu), f, {}, 1.0);
    REQUIRE(r.converged);
    REQUIRE(r.value > 0.1);
    REQUIRE(r.value < 100.0);
}

TEST_CASE("direct and conjugated routes agree on mixed products") {
    // classical x exotic: the conjugated route folds the y^{-4 nu_e}
    // transform into its weights, so pointwise values differ by x^{4 nu_e}
    // and the L1 norms coincide
    NuVector nv({{0.5, AxisFlavor::Classical}, {1.0, AxisFlavor::Exotic}});
    GridFunction f(Cuboid::from_corners({1.0, 1.0}, {2.0, 2.0}), {6, 6}, nv);
    for (std::size_t c = 0; c < f.size(); ++c) {
        const Point p = f.cell_center(c);
        f.values[c] = p[0] + std::cos(2.0 * p[1]);
    }
    const Route dir = direct_route(nv);
    const Route con = conjugated_route(nv);
    for (double t : {0.05, 0.5})
        for (double x2 : {0.8, 1.5, 3.0}) {
            const Point x{1.3, x2};
            const double vd = apply_semigroup(dir, t, f, x);
            const double vc = apply_semigroup(con, t, f, x);
            REQUIRE(vd == Catch::Approx(std::pow(x2, 4.0) * vc)
                              .epsilon(1e-10)
                              .margin(1e-300));
        }

    QuadratureSpec quad;
    quad.t_min_factor = 1e-3;
    quad.t_max_factor = 1e3;
    quad.t_per_decade = 8;
    const auto nd = maximal_l1_norm(dir, f, quad);
    const auto nc = maximal_l1_norm(con, f, quad);
    REQUIRE(nd.value == Catch::Approx(nc.value).epsilon(1e-6));
    REQUIRE(nd.converged);
    REQUIRE(nc.converged);
}

TEST_CASE("h1 estimate runs both routes only when an exotic axis exists") {
    GridFunction f = indicator_1d(1.0, 2.0, 0.5, 8);
    QuadratureSpec quad;
    quad.t_min_factor = 1e-3;
    quad.t_max_factor = 1e3;
    quad.t_per_decade = 6;
    const auto est = h1_norm_estimate(f, quad);
    REQUIRE_FALSE(est.has_conjugated);
    REQUIRE(est.direct.value > 0.0);
}
