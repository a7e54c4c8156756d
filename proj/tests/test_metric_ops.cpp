#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

#include "covlab/metric_ops.hpp"
#include "covlab/metric_space.hpp"

using namespace covlab;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Independent all-pairs oracle: Floyd-Warshall over the explicit edge list.
std::vector<double> fw_oracle(int n, const std::vector<MetricGraph::Edge>& edges) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0.0;
    for (const auto& e : edges) {
        auto& uv = d[static_cast<std::size_t>(e.u) * n + e.v];
        auto& vu = d[static_cast<std::size_t>(e.v) * n + e.u];
        uv = std::min(uv, e.len);
        vu = std::min(vu, e.len);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[static_cast<std::size_t>(i) * n + j] =
                    std::min(d[static_cast<std::size_t>(i) * n + j],
                             d[static_cast<std::size_t>(i) * n + k] +
                                 d[static_cast<std::size_t>(k) * n + j]);
    return d;
}

FiniteMetricSpace circle(double circumference, double subdivision) {
    MetricGraph g;
    g.vertices = 1;
    g.edges = {{0, 0, circumference}};
    return metric_from_graph(g, subdivision);
}

FiniteMetricSpace segment(double len, double subdivision) {
    MetricGraph g;
    g.vertices = 2;
    g.edges = {{0, 1, len}};
    return metric_from_graph(g, subdivision);
}

}  // namespace

TEST_CASE("metric_from_edges equals the dense shortest-path oracle") {
    // 6 points, a cycle with two chords and a pendant.
    std::vector<MetricGraph::Edge> edges = {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.5},
                                            {3, 4, 1.0}, {4, 0, 2.5}, {1, 3, 0.8},
                                            {0, 2, 4.0}, {4, 5, 0.3}};
    std::vector<double> oracle = fw_oracle(6, edges);
    FiniteMetricSpace s = metric_from_edges(6, edges, std::vector<double>(6, 1.0));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(s.d(i, j) == doctest::Approx(oracle[static_cast<std::size_t>(i) * 6 + j]).epsilon(1e-12));
    CHECK_NOTHROW(check_metric_axioms(s, 1e-9));
}

TEST_CASE("metric_from_edges rejects disconnected graphs") {
    std::vector<MetricGraph::Edge> edges = {{0, 1, 1.0}, {2, 3, 1.0}};
    CHECK_THROWS_WITH_AS(metric_from_edges(4, edges, std::vector<double>(4, 1.0)),
                         doctest::Contains("disconnected"), std::runtime_error);
}

TEST_CASE("segment subdivision: chain distances and half-segment weights") {
    FiniteMetricSpace s = segment(1.0, 0.25);
    REQUIRE(s.n == 5);  // 2 vertices + 3 interior points
    // Vertices keep indices 0 and 1; interior points 2, 3, 4 run from 0 to 1.
    CHECK(s.d(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.d(0, 2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.d(2, 4) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.d(4, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.weights[0] == doctest::Approx(0.125));
    CHECK(s.weights[3] == doctest::Approx(0.25));
    CHECK(s.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.mesh == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("circle sampling: index i sits at arc position i * seg") {
    FiniteMetricSpace s = circle(kTau, 0.1);
    int n = s.n;
    double seg = kTau / n;
    for (int i = 0; i < n; ++i) {
        double arc = i * seg;
        double expect = std::min(arc, kTau - arc);
        CHECK(s.d(0, i) == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(s.total_weight() == doctest::Approx(kTau).epsilon(1e-12));
    CHECK_NOTHROW(check_metric_axioms(s, 1e-9));
}

TEST_CASE("theta graph: parallel edges realize the shortest loop") {
    MetricGraph g;
    g.vertices = 2;
    g.edges = {{0, 1, 1.0}, {0, 1, 2.0}, {0, 1, 3.0}};
    FiniteMetricSpace s = metric_from_graph(g, 0.5);
    CHECK(s.d(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    // Midpoint of the length-3 edge: 1.5 from both endpoints.
    int mid3 = -1;
    for (int i = 2; i < s.n; ++i)
        if (std::abs(s.d(0, i) - 1.5) < 1e-9 && std::abs(s.d(1, i) - 1.5) < 1e-9) mid3 = i;
    REQUIRE(mid3 >= 0);
    CHECK_NOTHROW(check_metric_axioms(s, 1e-9));
}

TEST_CASE("glue two segments at both ends into a circle") {
    FiniteMetricSpace a = segment(1.0, 0.125);
    FiniteMetricSpace b = segment(3.0, 0.125);
    double seam = -1.0;
    std::vector<int> map_b;
    FiniteMetricSpace c = glue(a, b, {0, 1}, {0, 1}, &seam, &map_b);

    // The junction pair disagrees by |1 - 3| on the two sides.
    CHECK(seam == doctest::Approx(2.0));
    CHECK(c.n == a.n + b.n - 2);
    CHECK(c.total_weight() == doctest::Approx(4.0).epsilon(1e-12));
    // Junction distance is the shorter way around.
    CHECK(c.d(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_NOTHROW(check_metric_axioms(c, 1e-9));

    // Junction points map onto their partners in a; the rest are appended.
    CHECK(map_b[0] == 0);
    CHECK(map_b[1] == 1);
    for (int j = 2; j < b.n; ++j) CHECK(map_b[j] >= a.n);

    // Circle of circumference 4: distances from junction 0 follow min(arc, 4 - arc).
    for (int j = 2; j < b.n; ++j) {
        double arc = b.d(0, j);
        double expect = std::min(arc, 4.0 - arc);
        CHECK(c.d(0, map_b[j]) == doctest::Approx(expect).epsilon(1e-10));
    }

    // Junction weights are summed: half-segments from both sides.
    CHECK(c.weights[0] == doctest::Approx(0.125 / 2 + 0.125 / 2));
}

TEST_CASE("glue validates junction lists") {
    FiniteMetricSpace a = segment(1.0, 0.5);
    FiniteMetricSpace b = segment(1.0, 0.5);
    CHECK_THROWS_AS(glue(a, b, {}, {}, nullptr, nullptr), std::runtime_error);
    CHECK_THROWS_AS(glue(a, b, {0, 1}, {0}, nullptr, nullptr), std::runtime_error);
    CHECK_THROWS_AS(glue(a, b, {0, 99}, {0, 1}, nullptr, nullptr), std::runtime_error);
    CHECK_THROWS_WITH_AS(glue(a, b, {0, 0}, {0, 1}, nullptr, nullptr),
                         doctest::Contains("at most one junction"), std::runtime_error);
}

TEST_CASE("product_l2: metric, weights, mesh and indexing") {
    FiniteMetricSpace a = circle(2.0, 0.25);
    FiniteMetricSpace b = circle(6.0, 0.5);
    FiniteMetricSpace p = product_l2(a, b);
    REQUIRE(p.n == a.n * b.n);

    // Factor-slice distances embed isometrically.
    CHECK(p.d(0 * b.n + 0, 0 * b.n + 3) == doctest::Approx(b.d(0, 3)).epsilon(1e-12));
    CHECK(p.d(0 * b.n + 2, 1 * b.n + 2) == doctest::Approx(a.d(0, 1)).epsilon(1e-12));
    // Generic pair: the l2 combination.
    CHECK(p.d(2 * b.n + 5, 4 * b.n + 1) ==
          doctest::Approx(std::hypot(a.d(2, 4), b.d(5, 1))).epsilon(1e-12));

    // diam^2 = diam_a^2 + diam_b^2 (hypot is monotone in both arguments).
    double expect_diam = std::hypot(a.diameter(), b.diameter());
    CHECK(p.diameter() == doctest::Approx(expect_diam).epsilon(1e-12));

    CHECK(p.total_weight() == doctest::Approx(a.total_weight() * b.total_weight()).epsilon(1e-12));
    CHECK(p.mesh == doctest::Approx(std::hypot(a.mesh, b.mesh)).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(product_l2(a, b, 10), doctest::Contains("exceeds budget"),
                         std::runtime_error);
}

TEST_CASE("quotient of a circle by the antipodal map is the half circle") {
    FiniteMetricSpace s = circle(4.0, 0.25);
    REQUIRE(s.n == 16);
    std::vector<int> sigma(16);
    for (int i = 0; i < 16; ++i) sigma[i] = (i + 8) % 16;
    FiniteMetricSpace q = quotient_by_involution(s, sigma, 1e-9);
    REQUIRE(q.n == 8);

    // Representatives are 0..7 in index order, at arc positions i * 0.25 on a
    // circle of circumference 2.
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double arc = std::abs(i - j) * 0.25;
            double expect = std::min(arc, 2.0 - arc);
            CHECK(q.d(i, j) == doctest::Approx(expect).epsilon(1e-12));
        }
    CHECK(q.total_weight() == doctest::Approx(s.total_weight() / 2).epsilon(1e-12));
    CHECK_NOTHROW(check_metric_axioms(q, 1e-9));
}

TEST_CASE("quotient validates freeness, order two and isometry") {
    FiniteMetricSpace s = circle(4.0, 0.25);
    SUBCASE("fixed point") {
        std::vector<int> sigma(16);
        for (int i = 0; i < 16; ++i) sigma[i] = i;
        CHECK_THROWS_WITH_AS(quotient_by_involution(s, sigma), doctest::Contains("fixed point"),
                             std::runtime_error);
    }
    SUBCASE("not an involution") {
        std::vector<int> sigma(16);
        for (int i = 0; i < 16; ++i) sigma[i] = (i + 1) % 16;
        CHECK_THROWS_WITH_AS(quotient_by_involution(s, sigma),
                             doctest::Contains("not an involution"), std::runtime_error);
    }
    SUBCASE("distorting map") {
        // Swapping adjacent pairs is an involution but not an isometry.
        std::vector<int> sigma(16);
        for (int i = 0; i < 16; ++i) sigma[i] = i ^ 1;
        CHECK_THROWS_WITH_AS(quotient_by_involution(s, sigma), doctest::Contains("distorts"),
                             std::runtime_error);
    }
}
