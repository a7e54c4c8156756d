#pragma once

#include <cstdint>
#include <vector>

#include "covlab/examples.hpp"
#include "covlab/metric_space.hpp"

namespace covlab {

// Total map between sampled spaces, candidate almost-isometry.
struct PointMap {
    const FiniteMetricSpace* source = nullptr;
    const FiniteMetricSpace* target = nullptr;
    std::vector<int> map;  // source id -> target id
};

struct AlmostIsometryCheck {
    double distortion = 0.0;       // sup |d2(phi x, phi y) - d1(x, y)|
    double covering_defect = 0.0;  // smallest eps with X2 inside T_eps(phi(X1))
    double eps = 0.0;              // max of the two
};

// Exact sups over all sampled pairs (lower estimates of the continuum sups;
// the caller can bound the gap by 2 * Lipschitz * mesh).
AlmostIsometryCheck almost_isometry_eps(const PointMap& m);

struct GHBound {
    double bound = 0.0;  // half the smallest correspondence distortion found
    bool exhaustive = false;  // true only when the search provably covered all correspondences
    std::uint64_t evaluations = 0;
};

// Lower bound for the Gromov-Hausdorff distance via correspondence
// distortion. Exhaustive (certified) when both spaces have at most 6 points
// and the budget suffices; otherwise multi-start local search, labeled
// heuristic. Minimal correspondences are graphs of a function pair (f, g),
// so the search runs over those.
GHBound gh_lower_bound(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                       std::uint64_t budget = 50'000'000);

struct FlatBoundInputs {
    double eps = 0.0;           // metric-distortion factor between the regions
    double d_u1 = 0.0, d_u2 = 0.0;  // intrinsic region diameters
    double lambda = 0.0;        // sup distance discrepancy over the regions
    double vol_u1 = 0.0, vol_u2 = 0.0;
    double vol_bd1 = 0.0, vol_bd2 = 0.0;    // boundary volumes
    double vol_rest1 = 0.0, vol_rest2 = 0.0;  // volumes outside the regions
    double margin = 1.01;  // strict-width factor, must be > 1
};

struct FlatBoundReport {
    double a = 0.0, h = 0.0, hbar = 0.0, bound = 0.0;
    FlatBoundInputs inputs;
};

// Flat-distance upper bound between spaces sharing almost-isometric regions:
//   a    = margin * (arccos(1/(1+eps)) / pi) * max(D_U1, D_U2)
//   h    = sqrt(lambda * (max(D_U1, D_U2) + lambda / 4))
//   hbar = max(h, sqrt(eps^2 + 2 eps) * D_U1, sqrt(eps^2 + 2 eps) * D_U2)
//   bound = (2 hbar + a)(Vol U1 + Vol U2 + Vol dU1 + Vol dU2) + rest1 + rest2.
FlatBoundReport flat_bound(const FlatBoundInputs& in);

enum class TrendVerdict { Disappears, Persists, Inconclusive };
const char* trend_name(TrendVerdict v);

struct TrendReport {
    std::vector<double> volumes;  // weighted ball volume per member
    double slope = 0.0;           // least-squares slope of log volume vs log j
    TrendVerdict verdict = TrendVerdict::Inconclusive;
};

// Tracks the weighted volume of B(p_j, r) along the sequence; `track` gives
// the tracked point id in each member. Verdicts depend only on volume ratios,
// so they are invariant under global weight rescaling.
TrendReport ball_volume_trend(const SpaceSequence& seq, const std::vector<int>& track, double r);

struct SequenceRow {
    int j = 0;
    double volume = 0.0, diameter = 0.0, mesh = 0.0;
    bool ok_volume = false, ok_diameter = false;
};

struct SequenceReport {
    std::vector<SequenceRow> rows;
    bool all_ok = false;
    double V0 = 0.0, D0 = 0.0;
    bool limit_is_zero = false;
};

// Non-throwing uniform-bound audit of a sequence.
SequenceReport sequence_invariants(const SpaceSequence& seq, double V0, double D0);

}  // namespace covlab
