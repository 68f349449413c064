#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bessel_hardy/atoms.hpp"
#include "bessel_hardy/covering.hpp"

using namespace bessel_hardy;

namespace {

GridFunction random_grid(std::mt19937_64& rng, std::size_t d) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.2, 3.0);
    const double a = pos(rng);
    const double w = pos(rng);
    std::vector<int> cells(d, d == 1 ? 16 : 8);
    GridFunction f(Cuboid::from_corners(Point(d, a), Point(d, a + w)), cells,
                   d == 1 ? NuVector::classical({0.5})
                          : NuVector::classical({0.5, 1.0}));
    for (auto& v : f.values) v = u(rng);
    return f;
}

}  // namespace

TEST_CASE("mean split contract") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        GridFunction f = random_grid(rng, rep % 2 ? 2 : 1);
        auto [lambda0, g] = mean_split(f, f.domain);
        REQUIRE(lambda0 == Catch::Approx(f.integral_mu()).margin(1e-14));
        REQUIRE(std::abs(lambda0) <= f.l1_mu() + 1e-12);
        REQUIRE(std::abs(g.integral_mu()) <= 1e-12 * std::max(f.l1_mu(), 1.0));
    }
}

TEST_CASE("mean split rejects unaligned boxes") {
    std::mt19937_64 rng(4);
    GridFunction f = random_grid(rng, 1);
    Cuboid q = f.domain;
    q.center[0] += 0.3 * f.axis_width(0);
    REQUIRE_THROWS_AS(mean_split(f, q), std::invalid_argument);
}

TEST_CASE("martingale decomposition reconstructs exactly") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 40; ++rep) {
        GridFunction f = random_grid(rng, rep % 2 ? 2 : 1);
        auto [lambda0, g] = mean_split(f, f.domain);
        auto dec = haar_decompose(g);
        const double scale = std::max(g.sup_norm(), 1e-300);
        for (std::size_t c = 0; c < g.size(); ++c) {
            const Point x = g.cell_center(c);
            REQUIRE(std::abs(dec.evaluate(x) - g.values[c]) <= 1e-12 * scale);
        }
        for (const auto& [lambda, atom] : dec.terms) {
            REQUIRE(lambda > 0.0);
            const auto cert = validate_atom(atom, 17.0 / 16.0);
            CAPTURE(cert.violations);
            REQUIRE(cert.valid());
        }
    }
}

TEST_CASE("local atom validates and cancellation violations are caught") {
    const NuVector nv = NuVector::classical({0.5});
    const Cuboid q = Cuboid::from_corners({1.0}, {2.0});
    const Atom loc = Atom::local(q, nv);
    REQUIRE(validate_atom(loc, 17.0 / 16.0).valid());
    REQUIRE(loc.evaluate({1.5}) ==
            Catch::Approx(1.0 / measure_cuboid(nv, q)).epsilon(1e-13));
    REQUIRE(loc.evaluate({2.5}) == 0.0);

    // a constant block has no cancellation and too much mass
    GridFunction bad(q, {4}, nv);
    for (auto& v : bad.values) v = 1.0;
    const auto cert = validate_atom(Atom::cancellative(q, bad), 17.0 / 16.0);
    REQUIRE_FALSE(cert.valid());

    // support outside Q* is flagged
    GridFunction far(Cuboid::from_corners({4.0}, {5.0}), {4}, nv);
    far.values = {1e-3, -1e-3, 1e-3, -1e-3};
    const auto cert2 = validate_atom(Atom::cancellative(q, far), 17.0 / 16.0);
    REQUIRE_FALSE(cert2.valid());
}

TEST_CASE("aligned cell count honors the collar") {
    const double kappa = 17.0 / 16.0;
    const int n = aligned_cell_count(kappa, 5);
    const double collar = n * (kappa - 1.0) / (2.0 * kappa);
    REQUIRE(std::abs(collar - std::round(collar)) < 1e-9);
    REQUIRE(n - 2 * static_cast<int>(std::round(collar)) >= 32);
}

TEST_CASE("localization produces valid atoms and approximates f") {
    auto cov = dyadic_covering_1d();
    GridFunction f(Cuboid::from_corners({1.0}, {4.0}), {192},
                   NuVector::classical({0.5}));
    for (std::size_t c = 0; c < f.size(); ++c) {
        const double x = f.cell_center(c)[0];
        f.values[c] = std::exp(-(x - 2.0) * (x - 2.0));
    }
    auto dec = localize_and_decompose(f, *cov, 8);
    REQUIRE_FALSE(dec.terms.empty());
    REQUIRE(dec.total_l1() < 1e4);
    for (const auto& [lambda, atom] : dec.terms) {
        const auto cert = validate_atom(atom, cov->kappa());
        CAPTURE(cert.violations);
        REQUIRE(cert.valid());
    }
    // piecewise-constant localization error is O(h); verify a loose bound
    double worst = 0.0;
    for (int i = 0; i <= 300; ++i) {
        const double x = 1.05 + (3.95 - 1.05) * i / 300.0;
        worst = std::max(worst, std::abs(dec.evaluate({x}) - f.value_at({x})));
    }
    REQUIRE(worst < 0.1);
}

TEST_CASE("conjugation transport keeps cancellation and a bounded factor") {
    // atom for the conjugated measure (nu_c classical, +nu_e), exotic axis 1
    const NuVector nv = NuVector::classical({0.5, 1.0});
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GridFunction g(Cuboid::from_corners({1.0, 2.0}, {2.0, 4.0}), {8, 8}, nv);
    for (auto& v : g.values) v = u(rng);
    const double mean = g.integral_mu() / measure_cuboid(nv, g.domain);
    for (auto& v : g.values) v -= mean;
    const double m = measure_cuboid(nv, g.domain) * g.sup_norm();
    for (auto& v : g.values) v /= m;

    Atom a = Atom::cancellative(g.domain, g);
    REQUIRE(validate_atom(a, 17.0 / 16.0).valid());

    const ConjugatedAtom ca = conjugate_atom(a, 1);
    REQUIRE(ca.integral_residual <= 1e-14);
    REQUIRE(ca.factor_min > 0.0);
    REQUIRE(ca.factor_max / ca.factor_min <= std::pow(4.0 / 2.0, 4.0) + 1e-9);
    // pointwise: conjugated evaluation is y^{4 nu_e} times the base
    const Point y{1.5, 3.0};
    REQUIRE(ca.evaluate(y) ==
            Catch::Approx(std::pow(3.0, 4.0) * a.evaluate(y)).epsilon(1e-12));

    // numerically: int (y^{4nu} a) dmu_{-nu_e} telescopes back to the
    // +nu_e integral, cell by cell
    double s = 0.0;
    const NuVector exo({{0.5, AxisFlavor::Classical}, {1.0, AxisFlavor::Exotic}});
    for (std::size_t c = 0; c < g.size(); ++c) {
        const auto idx = g.unflat(c);
        double cell = g.values[c];
        for (std::size_t ax = 0; ax < 2; ++ax) {
            const Interval iv{g.axis_lower(ax, idx[ax]),
                              g.axis_lower(ax, idx[ax] + 1)};
            // midpoint approximation of the extra y^{4nu_e} factor
            cell *= ax == 0 ? measure_interval(0.5, iv)
                            : std::pow(0.5 * (iv.a + iv.b), 4.0) *
                                  measure_interval(-1.0, iv);
        }
        s += cell;
    }
    REQUIRE(std::abs(s) < 1e-3 * std::abs(g.l1_mu()));
    (void)exo;
}

TEST_CASE("conjugation requires an exotic axis") {
    const NuVector nv = NuVector::classical({0.5});
    REQUIRE_THROWS_AS(
        conjugate_atom(Atom::local(Cuboid::from_corners({1.0}, {2.0}), nv), 1),
        std::invalid_argument);
}
