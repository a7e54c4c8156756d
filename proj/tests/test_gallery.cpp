#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "covlab/gallery.hpp"
#include "covlab/metric_ops.hpp"
#include "covlab/profile.hpp"

using namespace covlab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTau = 2.0 * kPi;

RevolutionSample cylinder(double height, double radius, double mesh) {
    RevolutionOptions o;
    o.mesh = mesh;
    o.name = "cylinder";
    return sample_surface_of_revolution(PiecewiseProfile::start(0.0).constant(height, radius), o);
}

RevolutionSample sphere(double mesh, bool mirror) {
    RevolutionOptions o;
    o.mesh = mesh;
    o.mirror_symmetric = mirror;
    o.name = "sphere";
    PiecewiseProfile f = PiecewiseProfile::start(0.0).sinusoid(kPi, 1.0, 1.0, 0.0);
    return sample_surface_of_revolution(f, o);
}

// Shared across the quotient tests: mirror layout with an odd row count, so
// the middle row sits exactly on the equator.
const RevolutionSample& mirror_sphere() {
    static RevolutionSample smp = sphere(0.12, true);
    return smp;
}

}  // namespace

TEST_CASE("cylinder sample: meridians and rings are chart exact") {
    RevolutionSample smp = cylinder(2.0, 1.0, 0.1);
    const FiniteMetricSpace& s = smp.space;
    REQUIRE(smp.rows.size() >= 20);

    // Index 0 of every row sits at theta = 0: the meridian through them is a
    // straight chain, and no edge beats its vertical component.
    for (const auto& row : smp.rows)
        CHECK(s.d(smp.rows.front().start, row.start) == doctest::Approx(row.r).epsilon(1e-10));

    // Ring distances: radius * angle gap; detours through other rows only add
    // vertical length.
    const RowInfo& mid = smp.rows[smp.rows.size() / 2];
    for (int i : {1, mid.count / 4, mid.count / 2, mid.count - 2}) {
        double gap = kTau * std::min(i, mid.count - i) / mid.count;
        CHECK(s.d(mid.start, mid.start + i) == doctest::Approx(1.0 * gap).epsilon(1e-10));
    }

    // Lateral area 2 pi r h.
    CHECK(s.total_weight() == doctest::Approx(kTau * 1.0 * 2.0).epsilon(1e-9));
    CHECK(s.mesh <= 0.1 + 1e-12);
}

TEST_CASE("sphere sample: poles collapse, meridian distances are exact, area is 4 pi") {
    RevolutionSample smp = sphere(0.12, false);
    const FiniteMetricSpace& s = smp.space;

    REQUIRE(smp.rows.front().count == 1);
    REQUIRE(smp.rows.back().count == 1);
    int pole_n = smp.rows.front().start;
    int pole_s = smp.rows.back().start;

    CHECK(s.d(pole_n, pole_s) == doctest::Approx(kPi).epsilon(1e-10));
    for (const auto& row : smp.rows)
        CHECK(s.d(pole_n, row.start) == doctest::Approx(row.r).epsilon(1e-10));

    CHECK(s.total_weight() == doctest::Approx(4.0 * kPi).epsilon(1e-9));

    // Sampled area equals the warped-volume quadrature of the same profile.
    FiberFactor f{PiecewiseProfile::start(0.0).sinusoid(kPi, 1.0, 1.0, 0.0), 1.0, 1.0};
    CHECK(s.total_weight() == doctest::Approx(warped_volume(kTau, {f}, 0.0, kPi)).epsilon(1e-8));

    CHECK(s.coords.size() == static_cast<std::size_t>(s.n));
    CHECK_NOTHROW(check_metric_axioms(s, 1e-9));
}

TEST_CASE("sphere sample: equator antipodes sit near distance pi") {
    const RevolutionSample& smp = mirror_sphere();
    const RowInfo& eq = smp.rows[smp.rows.size() / 2];
    REQUIRE(eq.count % 2 == 0);
    REQUIRE(std::abs(eq.r - kPi / 2.0) < 1e-9);
    double d = smp.space.d(eq.start, eq.start + eq.count / 2);
    CHECK(d == doctest::Approx(kPi).epsilon(0.02));
}

TEST_CASE("sampling is deterministic bit for bit") {
    RevolutionSample a = cylinder(1.0, 0.7, 0.15);
    RevolutionSample b = cylinder(1.0, 0.7, 0.15);
    REQUIRE(a.space.n == b.space.n);
    CHECK(std::memcmp(a.space.dist.data(), b.space.dist.data(),
                      a.space.dist.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.space.weights.data(), b.space.weights.data(),
                      a.space.weights.size() * sizeof(double)) == 0);
}

TEST_CASE("mirror involution: order two, free, isometric") {
    RevolutionSample smp = sphere(0.15, true);
    const FiniteMetricSpace& s = smp.space;
    std::vector<int> sigma = mirror_rotation_involution(smp);

    for (int i = 0; i < s.n; ++i) {
        CHECK(sigma[sigma[i]] == i);
        CHECK(sigma[i] != i);
    }
    double worst = 0.0;
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j)
            worst = std::max(worst, std::abs(s.d(sigma[i], sigma[j]) - s.d(i, j)));
    CHECK(worst <= 1e-9);
}

TEST_CASE("mirror involution rejects layouts whose rows do not pair up") {
    // Cone-to-cylinder: the first row collapses, the last does not.
    RevolutionOptions o;
    o.mesh = 0.15;
    PiecewiseProfile f = PiecewiseProfile::start(0.0).linear(1.0, 0.0, 1.0).constant(2.0, 1.0);
    RevolutionSample smp = sample_surface_of_revolution(f, o);
    REQUIRE(smp.rows.front().count == 1);
    REQUIRE(smp.rows.back().count > 1);
    CHECK_THROWS_WITH_AS(mirror_rotation_involution(smp), doctest::Contains("mirror"),
                         std::runtime_error);
}

TEST_CASE("antipodal quotient of the sphere sample is a genuine metric space") {
    const RevolutionSample& smp = mirror_sphere();
    std::vector<int> sigma = mirror_rotation_involution(smp);
    FiniteMetricSpace q = quotient_by_involution(smp.space, sigma, 1e-9);

    CHECK(q.n == smp.space.n / 2);
    CHECK(q.total_weight() == doctest::Approx(smp.space.total_weight() / 2).epsilon(1e-12));
    // The min-over-lifts formula must still satisfy the axioms at test scale.
    CHECK_NOTHROW(check_metric_axioms(q, 1e-6));
    // Quotient diameter: half the great circle.
    CHECK(q.diameter() == doctest::Approx(kPi / 2.0).epsilon(0.03));
}

TEST_CASE("profile collapse produces cone points inside the surface") {
    // Barbell: two bulges joined by a waist thinner than the collapse scale,
    // with the waist plateau wider than the row spacing.
    RevolutionOptions o;
    o.mesh = 0.25;
    PiecewiseProfile f = PiecewiseProfile::start(0.0)
                             .bridge(1.0, 0.0, 1.0)
                             .constant(2.5, 1.0)
                             .bridge(3.0, 1.0, 0.005)
                             .constant(3.6, 0.005)
                             .bridge(4.1, 0.005, 1.0)
                             .constant(5.0, 1.0)
                             .bridge(6.0, 1.0, 0.0);
    RevolutionSample smp = sample_surface_of_revolution(f, o);

    bool found_cone = false;
    for (const auto& row : smp.rows)
        if (row.r > 3.0 && row.r < 3.6 && row.count == 1) found_cone = true;
    CHECK(found_cone);
    // Still connected through the cone points, and still a metric.
    CHECK(smp.space.diameter() < 7.0);
    CHECK_NOTHROW(check_metric_axioms(smp.space, 1e-9));
}

TEST_CASE("fiber factors ride on the cell weights") {
    RevolutionOptions o;
    o.mesh = 0.1;
    o.fiber = {{PiecewiseProfile::start(0.0).linear(1.0, 1.0, 3.0), 2.0, 1.0}};
    o.fiber_scale = 5.0;
    PiecewiseProfile base = PiecewiseProfile::start(0.0).constant(1.0, 0.5);
    RevolutionSample smp = sample_surface_of_revolution(base, o);
    // total = 5 * 2 pi * integral of 0.5 (1 + 2r)^2 = 5 pi * 13/3.
    double expect = 5.0 * kPi * (13.0 / 3.0);
    CHECK(smp.space.total_weight() == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("revolution sampler validates input") {
    RevolutionOptions o;
    o.mesh = -1.0;
    PiecewiseProfile f = PiecewiseProfile::start(0.0).constant(1.0, 1.0);
    CHECK_THROWS_AS(sample_surface_of_revolution(f, o), std::invalid_argument);
    o.mesh = 0.1;
    PiecewiseProfile bad = PiecewiseProfile::start(0.0).linear(1.0, 1.0, -0.5);
    CHECK_THROWS_WITH_AS(sample_surface_of_revolution(bad, o), doctest::Contains("negative"),
                         std::runtime_error);
}

TEST_CASE("nearest_index resolves chart coordinates") {
    const RevolutionSample& smp = mirror_sphere();
    int p = smp.nearest_index(kPi / 2.0, 0.0);
    const RowInfo& eq = smp.rows[smp.rows.size() / 2];
    CHECK(p == eq.start);
    int q = smp.nearest_index(0.0, 1.3);
    CHECK(q == smp.rows.front().start);
    std::vector<int> idx = smp.row_indices(static_cast<int>(smp.rows.size()) / 2);
    REQUIRE(static_cast<int>(idx.size()) == eq.count);
    CHECK(idx.front() == eq.start);
    CHECK(idx.back() == eq.start + eq.count - 1);
}
