#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "covlab/metric_space.hpp"

namespace covlab {

// Weighted multigraph used to realize 1-dimensional length spaces (circles,
// wedges, handle skeletons). Self-loops and parallel edges are allowed.
struct MetricGraph {
    struct Edge {
        int u = 0, v = 0;
        double len = 0.0;
    };
    int vertices = 0;
    std::vector<Edge> edges;
};

// Samples the length space realized by `g`: every edge is subdivided into
// segments of length at most `subdivision`, and pairwise distances are the
// shortest-path distances in the subdivided graph. Point weights are half the
// total incident segment length (1-dimensional volume). Throws if the graph
// is disconnected or an edge is degenerate.
FiniteMetricSpace metric_from_graph(const MetricGraph& g, double subdivision);

// Shortest-path metric on a fixed point set with explicit edges and point
// weights (no subdivision). Used by samplers that lay out their own points.
FiniteMetricSpace metric_from_edges(int n, const std::vector<MetricGraph::Edge>& edges,
                                    std::vector<double> weights);

// Identifies point `first[i]` of `a` with point `second[i]` of `b` (zero
// distance) and returns the resulting length-space metric on the merged point
// set. Junction weights are summed. Paths may alternate between the two
// sides arbitrarily often. If `seam_mismatch` is given, it receives the
// largest disagreement |d_a(first_p, first_q) - d_b(second_p, second_q)| over
// junction pairs, a gauge of how isometric the seam is. Points of `a` keep
// their indices; if `map_b` is given it receives the output index of every
// point of `b` (junction points map onto their partner in `a`).
FiniteMetricSpace glue(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                       const std::vector<int>& first, const std::vector<int>& second,
                       double* seam_mismatch = nullptr, std::vector<int>* map_b = nullptr);

// l2 product: d((x,y),(x',y')) = sqrt(d_a(x,x')^2 + d_b(y,y')^2). The point
// (i,j) has index i * b.n + j and weight w_a(i) * w_b(j). The product mesh is
// pinned to sqrt(mesh_a^2 + mesh_b^2). Throws if a.n * b.n exceeds
// `max_points`.
FiniteMetricSpace product_l2(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                             std::size_t max_points = 2'000'000);

// Quotient by a free isometric involution given as an index permutation.
// Validates that sigma has order two with no fixed point and preserves
// distances within `isometry_tol`; throws otherwise. Representatives are the
// indices i < sigma[i]; the quotient distance is min(d(i,j), d(i,sigma[j]))
// and quotient weights are the orbit average, so total weight halves.
FiniteMetricSpace quotient_by_involution(const FiniteMetricSpace& a,
                                         const std::vector<int>& sigma,
                                         double isometry_tol = 1e-9);

}  // namespace covlab
