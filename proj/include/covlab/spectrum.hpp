#pragma once

#include <limits>
#include <string>
#include <vector>

#include "covlab/cover.hpp"
#include "covlab/metric_space.hpp"

namespace covlab {

struct SpectrumOptions {
    double refine_tol = 0.05;
    double R = 0.0;  // hard truncation radius; 0 = automatic per probe interval
    int basepoint = 0;
    int grid = 8;  // coarse probes guarding against non-cycle-seeded changes
    CoverBudget budget;
    // The bisection interval brackets the critical value of the sampled
    // space exactly; the reported bracket widens it on both sides by
    // pad_mesh_frac * mesh to absorb the sampling offset of that critical
    // value relative to the space the sample discretizes.
    double pad_mesh_frac = 0.15;
};

struct SpectrumBracket {
    double delta_low = 0.0;   // reported bracket (bisection interval + pads)
    double delta_high = 0.0;
    double detect_low = 0.0;  // raw bisection interval around the transition
    double detect_high = 0.0;
    int witness = -1;  // base vertex whose lift count changes
    int evidence_below = 0;
    int evidence_above = 0;
    double candidate = std::numeric_limits<double>::quiet_NaN();  // seeding cycle half-length
    bool certified = true;
};

struct UncertifiedRegion {
    double lo = 0.0;
    double hi = 0.0;
    std::string reason;
};

struct CovSpecReport {
    double scan_lo = 0.0;
    double scan_hi = 0.0;
    double refine_tol = 0.0;
    double floor = 0.0;  // smallest certifiable delta: 4 * chain step
    double mesh = 0.0;
    double diameter = 0.0;
    std::vector<SpectrumBracket> brackets;
    std::vector<UncertifiedRegion> uncertified;
    int builds = 0;

    bool value_near(double v, double tol) const {
        for (const auto& b : brackets)
            if (v >= b.delta_low - tol && v <= b.delta_high + tol) return true;
        return false;
    }
};

// Candidate critical values: half-lengths of short cycle representatives,
// one per chain edge (shortest corner cycle through the edge over all apex
// vertices), deduplicated into mesh-width clusters and clipped to the scan
// window. Contractible clutter falls below the resolvable floor.
std::vector<double> cycle_candidates(const FiniteMetricSpace& s, double lo, double hi);

// Scans [lo, hi] for the critical values at which the delta-cover changes.
// Lift-count profiles are monotone in delta, so equal profiles at the ends
// of an interval certify it empty; changes are isolated by bisection with
// covers_differ down to brackets of width <= refine_tol. Regions where the
// scale or budget prevents a verdict are reported as uncertified.
CovSpecReport covering_spectrum(const FiniteMetricSpace& s, double lo, double hi,
                                const SpectrumOptions& opts = {});

}  // namespace covlab
