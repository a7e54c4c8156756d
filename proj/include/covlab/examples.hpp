#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covlab/gallery.hpp"
#include "covlab/metric_space.hpp"
#include "covlab/profile.hpp"

namespace covlab {

// Example families. The 5- and 8-dimensional constructions ship as
// 2-dimensional reductions that keep the covering-theoretic content: the
// suppressed fibers are simply connected and ride along as point weights.
enum class Family {
    Circle,
    Sphere2,
    RP2,
    Revolution,
    TwoSpheresReduced,
    ProductReduced,
    HoleReduced,
    Tunnels,
    Handles,
};

const char* family_name(Family f);
Family family_from_string(const std::string& name);

struct ExampleParams {
    Family family = Family::Circle;
    int j = 1;
    double mesh = 0.08;
    unsigned seed = 1;  // reserved; all families are deterministic

    double circumference = 6.283185307179586;  // Circle, ProductReduced first factor
    double circumference_b = 6.283185307179586;  // ProductReduced second factor at j = 1

    double cap_radius = 0.3141592653589793;  // Tunnels: polar cap radius
    double tunnel_height = 0.0;  // 0 = derive 0.95 * min(1 / L(boundary), 1 / j)
    double tunnel_radius = 0.0;  // 0 = derive (mesh / 2.5) / j^2 (kept below collapse scale)

    double handle_eps = 0.01;  // Handles: mouth radius (below mesh, mouths collapse)

    const PiecewiseProfile* profile = nullptr;  // Revolution
    std::vector<FiberFactor> fiber;             // Revolution
    double fiber_scale = 1.0;                   // Revolution
};

struct ExampleSpace {
    FiniteMetricSpace space;
    Family family = Family::Circle;
    int j = 1;
    double volume = 0.0;
    double diameter = 0.0;
    std::map<std::string, double> features;  // named feature sizes and claims
    std::map<std::string, int> marks;        // named point indices
};

// Builds the j-th member of the family. Deterministic; throws when the mesh
// cannot resolve the family's features (message names the required mesh).
ExampleSpace build_example(const ExampleParams& params);

// Builds the claimed limit space of the family. Families collapsing to the
// zero space throw, directing the caller to the sequence descriptor.
ExampleSpace limit_space(const ExampleParams& params);

struct SpaceSequence {
    Family family = Family::Circle;
    std::vector<int> j_list;
    std::vector<ExampleSpace> members;
    bool limit_is_zero = false;
    std::optional<ExampleSpace> limit;
    double V0 = 0.0, D0 = 0.0;
};

// Builds all members, attaches the claimed limit (or the zero marker), and
// enforces the uniform volume/diameter bounds, naming the offending j.
SpaceSequence sequence(const ExampleParams& base, const std::vector<int>& j_list, double V0,
                       double D0);

// Warping profiles of the sampled families.
PiecewiseProfile sphere_profile();                       // sin on [0, pi]
PiecewiseProfile metric2_profile(double eps, double L);  // two bulbs joined by a tube
PiecewiseProfile metric2_limit_profile(double L);        // tube pinched to a segment
PiecewiseProfile two_spheres_fiber(int j);  // 1/j plateau, bridges, |cos 2r| flanks
PiecewiseProfile hole_fiber(int j);         // 1/j plateau, bridge, |cos((2r-3/2)pi)| rim
PiecewiseProfile hole_fiber_limit();

// First Betti number of the 2-complex with edges at the chain scale and all
// triangles of pairwise-close samples: E - V + C - rank(boundary). The
// collapsed tunnel and handle models reduce to wedges of circles, so this is
// the genus-proxy oracle. Intended for coarse samples (GF(2) elimination).
int chain_cycle_rank(const FiniteMetricSpace& s);

}  // namespace covlab
