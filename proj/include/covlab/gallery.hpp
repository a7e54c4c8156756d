#pragma once

#include <string>
#include <vector>

#include "covlab/metric_ops.hpp"
#include "covlab/metric_space.hpp"
#include "covlab/profile.hpp"

namespace covlab {

struct RevolutionOptions {
    double mesh = 0.05;
    // Mirror-symmetric layout: row k and row N-k get identical point counts
    // (forced even) and bitwise-equal profile values, so maps of the form
    // (r, theta) -> (mirrored r, theta + pi) act as exact permutations.
    bool mirror_symmetric = false;
    // Rows whose circumference falls below this fraction of the mesh
    // collapse to a single point (profile zeros become genuine cone points).
    double collapse_frac = 0.9;
    // Point weight = cell area times fiber_scale * prod (scale*prof)^exp,
    // for warped-product volumes carried as weights on the 2d sample.
    std::vector<FiberFactor> fiber;
    double fiber_scale = 1.0;
    std::string name;
};

struct RowInfo {
    double r = 0.0;
    int start = 0;
    int count = 0;
};

// Structured sample of the surface of revolution with profile f over
// [f.lo(), f.hi()]: rows of points at constant r, chart-exact short edges,
// shortest-path metric, cell-area weights. Row metadata supports building
// involutions and locating boundary rims.
struct RevolutionSample {
    FiniteMetricSpace space;
    std::vector<RowInfo> rows;
    double row_spacing = 0.0;

    int index_of(int row, int i) const { return rows[row].start + i; }
    std::vector<int> row_indices(int row) const;
    int nearest_index(double r, double theta) const;
};

RevolutionSample sample_surface_of_revolution(const PiecewiseProfile& f,
                                              const RevolutionOptions& opts);

// The permutation (r, theta) -> (lo + hi - r, theta + pi) on a
// mirror-symmetric sample. Used for antipodal and sheet-swap involutions.
std::vector<int> mirror_rotation_involution(const RevolutionSample& sample);

}  // namespace covlab
