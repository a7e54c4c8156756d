#pragma once

#include <vector>

#include "covlab/metric_space.hpp"

namespace covlab {

// Sparse undirected graph in CSR form. For a sampled space the chain graph
// connects points at distance <= step; loops in the space correspond to
// cycles here once step exceeds the sampling mesh.
struct ChainGraph {
    int n = 0;
    std::vector<int> off;    // size n + 1
    std::vector<int> nbr;    // size off[n]
    std::vector<double> len; // parallel to nbr
    std::vector<int> eid;    // parallel to nbr: undirected edge id
    double step = 0.0;
    // Canonical undirected edge list (u < v), indexed by edge id.
    std::vector<std::pair<int, int>> edges;
    std::vector<double> edge_len;

    int degree(int v) const { return off[v + 1] - off[v]; }
    int edge_count() const { return static_cast<int>(edges.size()); }
};

// Connection radius used to turn a sample into a chain graph. Comfortably
// above the mesh so that every geodesic is shadowed by a chain, and well
// below any scale the algorithms are asked to resolve.
inline double chain_step(double mesh) { return 2.5 * mesh; }

// Chain graph with an edge (i, j) whenever d(i, j) <= step, i != j.
ChainGraph build_chain_graph(const FiniteMetricSpace& s, double step);

// Single-source shortest paths along chain edges (binary heap Dijkstra).
std::vector<double> chain_distances(const ChainGraph& g, int source);

// Component label per vertex, labels are 0..k-1 in order of first vertex.
std::vector<int> connected_components(const ChainGraph& g, int* count = nullptr);

}  // namespace covlab
