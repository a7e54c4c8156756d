#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "covlab/convergence.hpp"
#include "covlab/examples.hpp"
#include "covlab/metric_ops.hpp"

using namespace covlab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTau = 2.0 * kPi;

FiniteMetricSpace circle(double circumference, double sub) {
    MetricGraph g{1, {{0, 0, circumference}}};
    return metric_from_graph(g, sub);
}

FiniteMetricSpace random_euclidean(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> coord(0.0, 2.0);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = coord(rng);
        y[i] = coord(rng);
    }
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d[static_cast<std::size_t>(i) * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
    return make_space(n, std::move(d));
}

// Reference: minimum over all total correspondences, enumerated as bitmasks
// over the n*m pair grid.
double brute_gh(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    const int n = a.n, m = b.n, bits = n * m;
    REQUIRE(bits <= 16);
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << bits); ++mask) {
        unsigned rows = 0, cols = 0;
        for (int p = 0; p < bits; ++p)
            if (mask & (1u << p)) {
                rows |= 1u << (p / m);
                cols |= 1u << (p % m);
            }
        if (rows != (1u << n) - 1 || cols != (1u << m) - 1) continue;
        double dis = 0.0;
        for (int p = 0; p < bits; ++p) {
            if (!(mask & (1u << p))) continue;
            for (int q = p; q < bits; ++q) {
                if (!(mask & (1u << q))) continue;
                double da = a.d(p / m, q / m), db = b.d(p % m, q % m);
                dis = std::max(dis, std::abs(da - db));
            }
        }
        best = std::min(best, dis);
    }
    return best / 2.0;
}

SpaceSequence synthetic_sequence(const std::vector<int>& js, const std::vector<double>& mass) {
    SpaceSequence seq;
    seq.family = Family::Circle;
    seq.j_list = js;
    for (std::size_t k = 0; k < js.size(); ++k) {
        ExampleSpace e;
        e.j = js[k];
        e.space = make_space(2, {0.0, 2.0, 2.0, 0.0}, {mass[k], 1.0});
        e.volume = e.space.total_weight();
        e.diameter = 2.0;
        seq.members.push_back(std::move(e));
    }
    return seq;
}

}  // namespace

TEST_CASE("almost isometry: identity, dilation, collapse") {
    FiniteMetricSpace a = circle(kTau, kTau / 99.5);
    REQUIRE(a.n == 100);

    PointMap id{&a, &a, {}};
    id.map.resize(a.n);
    for (int i = 0; i < a.n; ++i) id.map[i] = i;
    auto r = almost_isometry_eps(id);
    CHECK(r.distortion == 0.0);
    CHECK(r.covering_defect == 0.0);
    CHECK(r.eps == 0.0);

    // 10% dilation with matching layouts: distortion is 10% of the diameter.
    FiniteMetricSpace b = circle(1.1 * kTau, 1.1 * kTau / 99.5);
    REQUIRE(b.n == 100);
    PointMap dil{&a, &b, id.map};
    auto rd = almost_isometry_eps(dil);
    CHECK(rd.distortion == doctest::Approx(0.1 * kPi).epsilon(1e-9));
    CHECK(rd.covering_defect == 0.0);
    CHECK(rd.eps == doctest::Approx(0.1 * kPi).epsilon(1e-9));

    // Constant map: defect reaches the farthest point.
    PointMap coll{&a, &a, std::vector<int>(a.n, 0)};
    auto rc = almost_isometry_eps(coll);
    CHECK(rc.distortion == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(rc.covering_defect == doctest::Approx(kPi).epsilon(1e-9));

    PointMap broken{&a, nullptr, id.map};
    CHECK_THROWS_WITH_AS(almost_isometry_eps(broken), doctest::Contains("source and target"),
                         std::invalid_argument);
    PointMap partial{&a, &a, {0, 1}};
    CHECK_THROWS_WITH_AS(almost_isometry_eps(partial), doctest::Contains("total"),
                         std::invalid_argument);
}

TEST_CASE("gh bound: exact on two points, equal to brute force on small instances") {
    auto two = [](double d) { return make_space(2, {0.0, d, d, 0.0}); };
    auto g = gh_lower_bound(two(1.0), two(3.0));
    CHECK(g.exhaustive);
    CHECK(g.bound == doctest::Approx(1.0).epsilon(1e-12));

    auto same = gh_lower_bound(two(2.0), two(2.0));
    CHECK(same.bound == doctest::Approx(0.0));

    std::mt19937 rng(424242);
    for (int trial = 0; trial < 4; ++trial) {
        int n = 3 + (trial % 2), m = 3 + (trial / 2) % 2;
        FiniteMetricSpace a = random_euclidean(n, rng);
        FiniteMetricSpace b = random_euclidean(m, rng);
        auto got = gh_lower_bound(a, b);
        CHECK(got.exhaustive);
        CHECK(got.bound == doctest::Approx(brute_gh(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("gh bound: heuristic above the exhaustive size, deterministic") {
    std::mt19937 rng(7);
    FiniteMetricSpace a = random_euclidean(8, rng);
    FiniteMetricSpace b = random_euclidean(9, rng);
    auto g1 = gh_lower_bound(a, b);
    auto g2 = gh_lower_bound(a, b);
    CHECK_FALSE(g1.exhaustive);
    CHECK(g1.bound >= 0.0);
    CHECK(g1.bound == g2.bound);
    CHECK(g1.evaluations == g2.evaluations);
}

TEST_CASE("flat bound reproduces its composed formula") {
    FlatBoundInputs in;
    in.eps = 0.1;
    in.d_u1 = 2.0;
    in.d_u2 = 3.0;
    in.lambda = 0.2;
    in.vol_u1 = 5.0;
    in.vol_u2 = 6.0;
    in.vol_bd1 = 1.0;
    in.vol_bd2 = 1.2;
    in.vol_rest1 = 0.3;
    in.vol_rest2 = 0.4;
    in.margin = 1.01;

    auto r = flat_bound(in);
    double a = 1.01 * (std::acos(1.0 / 1.1) / kPi) * 3.0;
    double h = std::sqrt(0.2 * (3.0 + 0.05));
    double hb = std::max({h, std::sqrt(0.01 + 0.2) * 2.0, std::sqrt(0.01 + 0.2) * 3.0});
    double expect = (2.0 * hb + a) * (5.0 + 6.0 + 1.0 + 1.2) + 0.3 + 0.4;
    CHECK(r.a == doctest::Approx(a).epsilon(1e-12));
    CHECK(r.h == doctest::Approx(h).epsilon(1e-12));
    CHECK(r.hbar == doctest::Approx(hb).epsilon(1e-12));
    CHECK(r.bound == doctest::Approx(expect).epsilon(1e-12));

    // Perfectly matched regions cost nothing beyond the leftovers.
    FlatBoundInputs zero;
    zero.d_u1 = zero.d_u2 = 2.0;
    zero.vol_u1 = zero.vol_u2 = 5.0;
    zero.vol_rest1 = 0.25;
    zero.vol_rest2 = 0.5;
    auto rz = flat_bound(zero);
    CHECK(rz.bound == doctest::Approx(0.75).epsilon(1e-12));

    // Growing any discrepancy grows the bound once its term dominates the
    // height competition.
    FlatBoundInputs worse = in;
    worse.lambda = 1.0;
    CHECK(flat_bound(worse).bound > r.bound);
    worse = in;
    worse.eps = 0.3;
    CHECK(flat_bound(worse).bound > r.bound);
    worse = in;
    worse.vol_rest2 = 1.4;
    CHECK(flat_bound(worse).bound > r.bound);
}

TEST_CASE("flat bound validates inputs") {
    FlatBoundInputs in;
    in.margin = 1.0;
    CHECK_THROWS_WITH_AS(flat_bound(in), doctest::Contains("margin must exceed 1"),
                         std::invalid_argument);
    in.margin = 1.01;
    in.vol_u1 = -1.0;
    CHECK_THROWS_WITH_AS(flat_bound(in), doctest::Contains("vol_u1"), std::invalid_argument);
    in.vol_u1 = 0.0;
    in.eps = -0.1;
    CHECK_THROWS_WITH_AS(flat_bound(in), doctest::Contains("eps"), std::invalid_argument);
}

TEST_CASE("ball volume trend verdicts") {
    std::vector<int> track = {0, 0, 0};

    auto fade = synthetic_sequence({1, 2, 4}, {1.0, 0.3, 0.05});
    auto rf = ball_volume_trend(fade, track, 1.0);
    CHECK(rf.verdict == TrendVerdict::Disappears);
    CHECK(rf.volumes.size() == 3);
    CHECK(rf.volumes[2] == doctest::Approx(0.05));
    CHECK(rf.slope < -0.5);

    auto stay = synthetic_sequence({1, 2, 4}, {1.0, 1.0, 1.0});
    auto rs = ball_volume_trend(stay, track, 1.0);
    CHECK(rs.verdict == TrendVerdict::Persists);
    CHECK(rs.slope == doctest::Approx(0.0));

    auto mid = synthetic_sequence({1, 2, 4}, {1.0, 0.5, 0.3});
    CHECK(ball_volume_trend(mid, track, 1.0).verdict == TrendVerdict::Inconclusive);

    // Global weight rescaling changes nothing but the raw volumes.
    auto scaled = synthetic_sequence({1, 2, 4}, {7.0, 2.1, 0.35});
    auto rr = ball_volume_trend(scaled, track, 1.0);
    CHECK(rr.verdict == TrendVerdict::Disappears);
    CHECK(rr.slope == doctest::Approx(rf.slope).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(ball_volume_trend(fade, {0, 0}, 1.0),
                         doctest::Contains("one tracked point per member"), std::invalid_argument);
    auto one = synthetic_sequence({1}, {1.0});
    CHECK_THROWS_WITH_AS(ball_volume_trend(one, {0}, 1.0),
                         doctest::Contains("at least two members"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(ball_volume_trend(fade, {0, 0, 99}, 1.0),
                         doctest::Contains("out of range"), std::invalid_argument);
}

TEST_CASE("sequence invariants audit without throwing") {
    ExampleParams base;
    base.family = Family::ProductReduced;
    base.mesh = 0.3;
    auto seq = sequence(base, {1, 2}, 50.0, 6.0);

    auto ok = sequence_invariants(seq, 50.0, 6.0);
    CHECK(ok.all_ok);
    CHECK(ok.limit_is_zero);
    REQUIRE(ok.rows.size() == 2);
    CHECK(ok.rows[0].j == 1);
    CHECK(ok.rows[0].ok_volume);
    CHECK(ok.rows[0].ok_diameter);
    CHECK(ok.rows[0].volume == doctest::Approx(kTau * kTau).epsilon(1e-9));

    auto tight = sequence_invariants(seq, 20.0, 6.0);
    CHECK_FALSE(tight.all_ok);
    CHECK_FALSE(tight.rows[0].ok_volume);
    CHECK(tight.rows[1].ok_volume);
}
