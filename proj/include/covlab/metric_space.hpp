#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace covlab {

// A finite metric space with a measure. `dist` is the full n*n matrix in
// row-major order. `mesh` is the sampling resolution: the largest
// nearest-neighbour distance over all points. `weights` carry the measure
// (cell volumes for sampled surfaces); `coords` are an optional embedding
// kept for export and are never consulted by metric algorithms.
struct FiniteMetricSpace {
    int n = 0;
    std::vector<double> dist;
    double mesh = 0.0;
    std::vector<double> weights;
    std::vector<std::array<double, 3>> coords;
    std::string name;

    double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
    double& d_mut(int i, int j) { return dist[static_cast<std::size_t>(i) * n + j]; }

    double diameter() const;
    double total_weight() const;
};

// Builds a space from a distance matrix, validating shape. Weights default
// to 1. Mesh is computed as the max nearest-neighbour distance unless a
// positive override is given.
FiniteMetricSpace make_space(int n, std::vector<double> dist,
                             std::vector<double> weights = {},
                             double mesh_override = 0.0);

// Max over points of the distance to the nearest other point.
double compute_mesh(const FiniteMetricSpace& s);

// Indices of the open ball { j : d(center, j) < radius }, ascending.
std::vector<int> ball(const FiniteMetricSpace& s, int center, double radius);

// Total weight of the open ball around `center`.
double ball_weight(const FiniteMetricSpace& s, int center, double radius);

// Verifies symmetry, zero diagonal, positivity off the diagonal and the
// triangle inequality over all (ordered) triples. Throws std::runtime_error
// naming the first violated axiom and the offending indices.
void check_metric_axioms(const FiniteMetricSpace& s, double tol = 1e-9);

}  // namespace covlab
