#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "covlab/examples.hpp"
#include "covlab/metric_ops.hpp"
#include "covlab/profile.hpp"

using namespace covlab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTau = 2.0 * kPi;

ExampleParams params(Family f, int j, double mesh) {
    ExampleParams p;
    p.family = f;
    p.j = j;
    p.mesh = mesh;
    return p;
}

PiecewiseProfile cos_band(double lo, double hi) {
    return PiecewiseProfile::start(lo).sinusoid(hi, 1.0, 1.0, kPi / 2.0);
}

}  // namespace

TEST_CASE("circle member: length, diameter, features") {
    auto e = build_example(params(Family::Circle, 1, 0.2));
    CHECK(e.volume == doctest::Approx(kTau).epsilon(1e-9));
    CHECK(e.diameter == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(e.features.at("circumference") == kTau);
    CHECK(e.features.at("essential_half_length") == kPi);
    CHECK(e.marks.count("basepoint") == 1);
}

TEST_CASE("sphere and projective plane members") {
    auto s = build_example(params(Family::Sphere2, 1, 0.2));
    CHECK(s.volume == doctest::Approx(4.0 * kPi).epsilon(1e-8));
    CHECK(s.space.d(s.marks.at("pole_n"), s.marks.at("pole_s")) ==
          doctest::Approx(kPi).epsilon(1e-10));

    auto q = build_example(params(Family::RP2, 1, 0.12));
    CHECK(q.volume == doctest::Approx(2.0 * kPi).epsilon(1e-8));
    CHECK(q.features.at("essential_half_length") == doctest::Approx(kPi / 2.0));
    CHECK(q.space.d(q.marks.at("basepoint"), q.marks.at("pole")) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-10));
    CHECK(q.diameter == doctest::Approx(kPi / 2.0).epsilon(0.03));
}

TEST_CASE("two-spheres members match the closed-form warped volume") {
    double vol[2];
    for (int j : {2, 3}) {
        auto e = build_example(params(Family::TwoSpheresReduced, j, 0.25));
        // Weight density on the double is 16 pi^2 cos^2 r * fiber^2; the
        // quotient halves it.
        double oracle = warped_volume(8.0 * kPi * kPi,
                                      {{cos_band(-kPi / 2.0, kPi / 2.0), 2.0, 1.0},
                                       {two_spheres_fiber(j), 2.0, 1.0}},
                                      -kPi / 2.0, kPi / 2.0);
        CHECK(e.volume == doctest::Approx(oracle).epsilon(1e-7));
        CHECK(e.features.at("fiber_plateau") == doctest::Approx(1.0 / j));
        CHECK(e.space.d(e.marks.at("basepoint"), e.marks.at("pole")) ==
              doctest::Approx(kPi / 2.0).epsilon(1e-10));
        vol[j - 2] = e.volume;
    }
    CHECK(vol[1] < vol[0]);
}

TEST_CASE("hole members match the closed-form warped volume and shrink with j") {
    PiecewiseProfile radial = PiecewiseProfile::start(0.0).linear(1.0, 0.0, 1.0);
    double prev = 0.0;
    for (int j : {2, 4}) {
        auto e = build_example(params(Family::HoleReduced, j, 0.2));
        double oracle = warped_volume(
            8.0 * kPi * kPi, {{radial, 1.0, 1.0}, {hole_fiber(j), 2.0, 1.0}}, 0.0, 1.0);
        CHECK(e.volume == doctest::Approx(oracle).epsilon(1e-7));
        CHECK(e.space.d(e.marks.at("center"), e.marks.at("rim")) ==
              doctest::Approx(1.0).epsilon(1e-10));
        double db = e.space.d(e.marks.at("center"), e.marks.at("basepoint"));
        CHECK(std::abs(db - 0.75) <= 0.1);
        if (j > 2) CHECK(e.volume < prev);
        prev = e.volume;
    }
}

TEST_CASE("hole limit is the annulus") {
    auto e = limit_space(params(Family::HoleReduced, 8, 0.1));
    double oracle = warped_volume(8.0 * kPi * kPi,
                                  {{PiecewiseProfile::start(0.5).linear(1.0, 0.5, 1.0), 1.0, 1.0},
                                   {hole_fiber_limit(), 2.0, 1.0}},
                                  0.5, 1.0);
    CHECK(e.volume == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(e.features.at("inner_rim_length") == doctest::Approx(kPi));
    CHECK(e.features.at("essential_half_length") == doctest::Approx(kPi / 2.0));
    CHECK(e.space.d(e.marks.at("inner_rim"), e.marks.at("outer_rim")) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(e.space.d(e.marks.at("inner_rim"), e.marks.at("basepoint")) ==
          doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("product members multiply factor measures") {
    auto p = params(Family::ProductReduced, 2, 0.1);
    auto e = build_example(p);
    CHECK(e.volume == doctest::Approx(kTau * kPi).epsilon(1e-9));
    CHECK(e.features.at("circumference_b") == doctest::Approx(kPi));
    CHECK(e.features.at("essential_half_length_a") == doctest::Approx(kPi));
    CHECK(e.features.at("essential_half_length_b") == doctest::Approx(kPi / 2.0));
    CHECK(e.diameter <= std::hypot(kPi, kPi / 2.0) + 1e-9);
    CHECK(e.diameter >= std::hypot(kPi - 0.1, kPi / 2.0 - 0.1));
}

TEST_CASE("tunnel members freeze the derived shape") {
    auto p = params(Family::Tunnels, 2, 0.15);
    p.cap_radius = 0.5;
    auto e = build_example(p);
    double r = (0.15 / 2.5) / 4.0;
    CHECK(e.features.at("tunnel_pairs_per_cap") == doctest::Approx(1.0));
    CHECK(e.features.at("tunnel_radius") == doctest::Approx(r).epsilon(1e-12));
    double len = 2.0 * kTau * std::sin(r);
    CHECK(e.features.at("boundary_length") == doctest::Approx(len).epsilon(1e-12));
    double h = 0.95 * std::min(1.0 / len, 0.5);
    CHECK(e.features.at("tunnel_height") == doctest::Approx(h).epsilon(1e-12));
    CHECK(e.features.at("essential_half_length") == doctest::Approx(kPi + h).epsilon(1e-12));
    CHECK(e.features.at("cap_mass") == doctest::Approx(4.0 * r * (1.0 + h)).epsilon(1e-12));
    // Two unit spheres minus most of the cap mass.
    CHECK(e.volume < 8.0 * kPi);
    CHECK(e.volume > 8.0 * kPi - 4.0);

    auto p6 = p;
    p6.j = 6;
    auto e6 = build_example(p6);
    CHECK(e6.features.at("tunnel_radius") == doctest::Approx(r / 9.0).epsilon(1e-12));
    CHECK(e6.features.at("cap_mass") < 0.25 * e.features.at("cap_mass"));
}

TEST_CASE("tunnel limit is the glued capless double") {
    auto p = params(Family::Tunnels, 2, 0.15);
    p.cap_radius = 0.5;
    auto e = limit_space(p);
    CHECK(e.features.at("seam_defect") == 0.0);
    CHECK(e.features.at("rim_length") == doctest::Approx(kTau * std::sin(0.5)));
    CHECK(e.features.at("essential_half_length") == doctest::Approx(kPi * std::sin(0.5)));
    CHECK(e.features.at("essential_half_length_2") == doctest::Approx(kPi - 1.0));
    // Both sheets keep their area; rims are identified, weights summed.
    CHECK(e.volume == doctest::Approx(8.0 * kPi * std::cos(0.5)).epsilon(1e-8));
}

TEST_CASE("handle members freeze the mouth geometry") {
    auto p = params(Family::Handles, 2, 0.1);
    auto e = build_example(p);
    double eps = 0.01;
    double eps_prime = 0.1 / (2.0 * 100.0);
    double arc = kPi - 2.0 * eps;
    CHECK(e.features.at("mouth_radius") == doctest::Approx(eps));
    CHECK(e.features.at("handle_width") == doctest::Approx(eps_prime).epsilon(1e-12));
    CHECK(e.features.at("handle_collar") == doctest::Approx(std::asin(eps) / 4.0));
    CHECK(e.features.at("handle_area") == doctest::Approx(2.0 * kTau * eps_prime * arc));
    CHECK(e.features.at("handle_area_bound") >= e.features.at("handle_area"));

    double d1 = e.features.at("mouth_distance_1");
    double d2 = e.features.at("mouth_distance_2");
    CHECK(std::abs(d1 - 1.0) <= 0.1);
    CHECK(std::abs(d2 - 1.4) <= 0.1);
    CHECK(e.space.d(e.marks.at("mouth_1_a"), e.marks.at("mouth_1_b")) == doctest::Approx(d1));
    CHECK(e.features.at("delta_claim_1") ==
          doctest::Approx((kPi + d1 - 2.0 * eps) / 2.0).epsilon(1e-12));
    CHECK(e.features.at("seam_defect") ==
          doctest::Approx(arc - std::min(d1, d2)).epsilon(1e-9));
    CHECK(e.volume == doctest::Approx(4.0 * kPi).epsilon(0.03));

    auto lim = limit_space(p);
    CHECK(lim.family == Family::Handles);
    CHECK(lim.volume == doctest::Approx(4.0 * kPi).epsilon(1e-8));
}

TEST_CASE("sequence enforces the uniform bounds and attaches the limit") {
    auto base = params(Family::Handles, 1, 0.2);
    auto seq = sequence(base, {1, 2}, 20.0, 6.0);
    REQUIRE(seq.members.size() == 2);
    CHECK(seq.members[0].j == 1);
    CHECK(seq.members[1].j == 2);
    CHECK_FALSE(seq.limit_is_zero);
    REQUIRE(seq.limit.has_value());
    CHECK(seq.limit->volume == doctest::Approx(4.0 * kPi).epsilon(1e-8));

    CHECK_THROWS_WITH_AS(sequence(base, {1}, 10.0, 6.0),
                         doctest::Contains("certification failure"), std::runtime_error);
    CHECK_THROWS_WITH_AS(sequence(base, {1}, 20.0, 3.0), doctest::Contains("diameter"),
                         std::runtime_error);
}

TEST_CASE("the thin product sequence records a zero limit") {
    auto base = params(Family::ProductReduced, 1, 0.15);
    auto seq = sequence(base, {1, 2, 4}, 50.0, 6.0);
    CHECK(seq.limit_is_zero);
    CHECK_FALSE(seq.limit.has_value());
    CHECK(seq.members[2].features.at("circumference_b") == doctest::Approx(kPi / 2.0));
    CHECK_THROWS_WITH_AS(limit_space(base), doctest::Contains("zero space"), std::runtime_error);
}

TEST_CASE("builders reject parameters their features cannot survive") {
    CHECK_THROWS_WITH_AS(build_example(params(Family::TwoSpheresReduced, 1, 0.1)),
                         doctest::Contains("j >= 2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_example(params(Family::HoleReduced, 2, 0.6)),
                         doctest::Contains("need mesh <="), std::invalid_argument);

    auto tun = params(Family::Tunnels, 2, 0.2);
    tun.cap_radius = 1.0;
    CHECK_THROWS_WITH_AS(build_example(tun), doctest::Contains("pi/4"), std::invalid_argument);
    tun.cap_radius = 0.5;
    tun.mesh = 0.3;
    CHECK_THROWS_WITH_AS(build_example(tun), doctest::Contains("polar caps"),
                         std::invalid_argument);

    CHECK_THROWS_WITH_AS(build_example(params(Family::Handles, 5, 0.05)),
                         doctest::Contains("j <= 4"), std::invalid_argument);
    auto han = params(Family::Handles, 1, 0.1);
    han.handle_eps = 0.2;
    CHECK_THROWS_WITH_AS(build_example(han), doctest::Contains("mesh/2"), std::invalid_argument);
}

TEST_CASE("family names round-trip") {
    for (Family f : {Family::Circle, Family::Sphere2, Family::RP2, Family::Revolution,
                     Family::TwoSpheresReduced, Family::ProductReduced, Family::HoleReduced,
                     Family::Tunnels, Family::Handles})
        CHECK(family_from_string(family_name(f)) == f);
    CHECK_THROWS_WITH_AS(family_from_string("klein"), doctest::Contains("unknown family"),
                         std::invalid_argument);
}

TEST_CASE("revolution family passes profile and marks through") {
    PiecewiseProfile prof = PiecewiseProfile::start(0.0).constant(1.0, 1.0);
    auto p = params(Family::Revolution, 1, 0.2);
    p.profile = &prof;
    auto e = build_example(p);
    CHECK(e.volume == doctest::Approx(kTau).epsilon(1e-8));
    CHECK(e.space.d(e.marks.at("first"), e.marks.at("last")) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_WITH_AS(build_example(params(Family::Revolution, 1, 0.2)),
                         doctest::Contains("needs a profile"), std::invalid_argument);
}

TEST_CASE("chain cycle rank counts independent loops at the chain scale") {
    MetricGraph circle{1, {{0, 0, kTau}}};
    CHECK(chain_cycle_rank(metric_from_graph(circle, 0.2)) == 1);

    MetricGraph segment{2, {{0, 1, 1.0}}};
    CHECK(chain_cycle_rank(metric_from_graph(segment, 0.2)) == 0);

    MetricGraph eight{1, {{0, 0, 2.0}, {0, 0, 6.0}}};
    CHECK(chain_cycle_rank(metric_from_graph(eight, 0.2)) == 2);

    auto sphere = build_example(params(Family::Sphere2, 1, 0.35));
    CHECK(chain_cycle_rank(sphere.space) == 0);
}

TEST_CASE("chain cycle rank separates tunnels, handles and the torus limit") {
    auto tun = params(Family::Tunnels, 2, 0.16);
    tun.cap_radius = 0.5;
    CHECK(chain_cycle_rank(build_example(tun).space) == 1);
    CHECK(chain_cycle_rank(limit_space(tun).space) == 2);

    auto han = params(Family::Handles, 2, 0.16);
    CHECK(chain_cycle_rank(build_example(han).space) == 2);
}
