#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "covlab/chain_graph.hpp"
#include "covlab/metric_space.hpp"

namespace covlab {

// Chain graph at a relator scale delta. Ball relators are the cycles of the
// subgraph of edges whose realized geodesic segments certifiably lie in an
// open ball B(w, delta): edge (u, v) qualifies for witness w when
// (d(w,u) + d(w,v) + len(u,v)) / 2 < delta. Witnesses are all points.
struct ChainComplexAtScale {
    ChainGraph graph;
    double delta = 0.0;
    // Undirected edge list (u < v) parallel to edge ids used by covers.
    std::vector<std::pair<int, int>> edges;
    std::vector<double> edge_len;
};

// Validates delta > 4 * step (step = 2.5 * mesh) and connectivity, then
// builds the chain graph. Throws with the minimum resolvable delta when the
// scale is too small for the sample.
ChainComplexAtScale chain_complex(const FiniteMetricSpace& s, double delta);

struct CoverBudget {
    std::size_t max_nodes = 1'500'000;
    unsigned long long max_steps = 6'000'000'000ULL;
    // Nonzero: process ball-relator tasks in a seeded shuffled order instead
    // of the canonical sorted order. The fixpoint is order-independent, so
    // finished covers must agree; used to assert merge confluence.
    unsigned task_order_seed = 0;
};

// The ball of radius R around a basepoint lift in the cover of the chain
// graph whose deck group kills exactly the cycle classes lying in open
// delta-balls. Nodes are lift classes; `adjacency` entries pair a neighbour
// node with the base edge id it lifts.
struct TruncatedCover {
    double delta = 0.0;
    double R = 0.0;
    double step = 0.0;
    int basepoint = 0;
    int basepoint_node = 0;
    std::vector<int> base;
    std::vector<double> dist;
    std::vector<std::vector<std::pair<int, int>>> adjacency;
    std::vector<double> edge_len;  // indexed by base edge id
    std::vector<int> profile;      // lifts of each base vertex within R
    bool complete_within_R = false;
    bool closed = false;  // the whole (finite) cover was enumerated
    bool budget_hit = false;
    double base_diameter = 0.0;

    int nodes() const { return static_cast<int>(base.size()); }
};

// Builds the truncated delta-cover by breadth-first lifting with
// union-find identification of lift nodes joined inside ball relators,
// iterated to a fixpoint. Counts are exact within R unless budget_hit.
TruncatedCover truncated_cover(const FiniteMetricSpace& s, double delta, int basepoint,
                               double R, const CoverBudget& budget = {});

// Number of lifts of base vertex q within radius R.
int lift_count(const TruncatedCover& c, int q);

// Whether the count is a certified deck-orbit size rather than a lower
// bound: the cover must be complete within R and R must leave room for one
// more base diameter beyond the counted lifts.
bool lift_count_is_exact(const TruncatedCover& c, int q);

enum class Verdict { True, False, Unknown };

struct DifferReport {
    Verdict verdict = Verdict::Unknown;
    int witness = -1;          // base vertex whose lift counts differ
    int count_low = 0;         // lift count at delta1
    int count_high = 0;        // lift count at delta2
    bool monotone_violation = false;
    TruncatedCover cover_low, cover_high;
};

// Compares lift-count profiles of the delta1- and delta2-covers at equal
// truncation. False verdicts require both covers complete within R; budget
// exhaustion yields Unknown. Also checks count monotonicity (counts at
// delta1 must dominate counts at delta2 for points within R/2).
DifferReport covers_differ(const FiniteMetricSpace& s, double delta1, double delta2,
                           int basepoint, double R, const CoverBudget& budget = {});

// Shortest lifted path between two cover nodes, searching up to `cutoff`
// (returns infinity if not reached). Used by the local-isometry checks.
double lifted_distance(const TruncatedCover& c, int node_u, int node_v, double cutoff);

// Re-scans every ball relator of a finished cover and reports whether any
// would still merge or extend lift nodes (a branched lift). A sound cover
// returns false.
bool has_branched_relator(const FiniteMetricSpace& s, const TruncatedCover& c);

// A space with explicitly tracked components (covers of a disconnected
// space are per-component covers).
struct DisjointSpace {
    std::vector<FiniteMetricSpace> components;
};

struct ComponentCovers {
    int component_count = 0;             // N1
    std::vector<int> per_component;      // N2 per component: basepoint lift counts
    long long total = 0;                 // N = sum over components of N2? see below
};

// Grows one truncated cover per component from the given basepoints and
// reports the component count N1, the per-component basepoint lift counts
// N2, and, when all N2 agree and are exact, the product N = N1 * N2.
ComponentCovers cover_components(const DisjointSpace& ds, double delta,
                                 const std::vector<int>& basepoints, double R,
                                 const CoverBudget& budget = {});

}  // namespace covlab
