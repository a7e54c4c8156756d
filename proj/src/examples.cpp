#include "covlab/examples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "covlab/chain_graph.hpp"
#include "covlab/metric_ops.hpp"

namespace covlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTau = 2.0 * kPi;

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

ExampleSpace finish(Family family, int j, FiniteMetricSpace s) {
    ExampleSpace out;
    out.family = family;
    out.j = j;
    out.space = std::move(s);
    out.volume = out.space.total_weight();
    out.diameter = out.space.diameter();
    return out;
}

PiecewiseProfile cos_profile(double lo, double hi) {
    return PiecewiseProfile::start(lo).sinusoid(hi, 1.0, 1.0, kPi / 2.0);
}

// Maps an index of the doubled space to its index in the quotient, given the
// involution: representatives are the indices i < sigma[i], kept in order.
std::vector<int> quotient_index_map(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<int> map(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i)
        if (i < sigma[i]) {
            map[i] = next;
            map[sigma[i]] = next;
            ++next;
        }
    return map;
}

FiniteMetricSpace arc_space(double len, double mesh) {
    MetricGraph g;
    g.vertices = 2;
    g.edges = {{0, 1, len}};
    return metric_from_graph(g, mesh);
}

FiniteMetricSpace circle_space(double circumference, double subdivision) {
    MetricGraph g;
    g.vertices = 1;
    g.edges = {{0, 0, circumference}};
    return metric_from_graph(g, subdivision);
}

ExampleSpace build_circle(const ExampleParams& p) {
    require(p.circumference > 0.0, "circle needs a positive circumference");
    auto s = circle_space(p.circumference, p.mesh);
    s.name = "circle";
    auto out = finish(p.family, p.j, std::move(s));
    out.marks["basepoint"] = 0;
    out.features["circumference"] = p.circumference;
    out.features["essential_half_length"] = p.circumference / 2.0;
    return out;
}

RevolutionSample sphere_sample(double mesh, bool mirror, const std::string& name) {
    RevolutionOptions o;
    o.mesh = mesh;
    o.mirror_symmetric = mirror;
    o.name = name;
    return sample_surface_of_revolution(sphere_profile(), o);
}

ExampleSpace build_sphere2(const ExampleParams& p) {
    require(p.mesh <= 0.5, "mesh = " + fmt(p.mesh) + " is too coarse for a unit sphere; need mesh <= 0.5");
    auto smp = sphere_sample(p.mesh, false, "sphere2");
    auto out = finish(p.family, p.j, std::move(smp.space));
    out.marks["pole_n"] = smp.rows.front().start;
    out.marks["pole_s"] = smp.rows.back().start;
    out.marks["equator"] = smp.nearest_index(kPi / 2.0, 0.0);
    out.features["area"] = 4.0 * kPi;
    return out;
}

ExampleSpace build_rp2(const ExampleParams& p) {
    require(p.mesh <= 0.5, "mesh = " + fmt(p.mesh) + " is too coarse for a unit sphere; need mesh <= 0.5");
    auto smp = sphere_sample(p.mesh, true, "rp2-double");
    int equator = smp.nearest_index(kPi / 2.0, 0.0);
    auto sigma = mirror_rotation_involution(smp);
    auto qmap = quotient_index_map(sigma);
    auto q = quotient_by_involution(smp.space, sigma, 1e-9);
    q.name = "rp2";
    auto out = finish(p.family, p.j, std::move(q));
    out.marks["basepoint"] = qmap[equator];
    out.marks["pole"] = qmap[smp.rows.front().start];
    out.features["essential_half_length"] = kPi / 2.0;
    return out;
}

ExampleSpace build_revolution(const ExampleParams& p) {
    require(p.profile != nullptr, "the revolution family needs a profile");
    RevolutionOptions o;
    o.mesh = p.mesh;
    o.fiber = p.fiber;
    o.fiber_scale = p.fiber_scale;
    o.name = "revolution";
    auto smp = sample_surface_of_revolution(*p.profile, o);
    auto out = finish(p.family, p.j, std::move(smp.space));
    out.marks["first"] = smp.rows.front().start;
    out.marks["last"] = smp.rows.back().start;
    return out;
}

ExampleSpace build_two_spheres(const ExampleParams& p) {
    require(p.j >= 2, "the two-spheres family needs j >= 2 (the fiber plateau ends at pi/4 - 1/j)");
    require(p.mesh <= 1.0 / p.j + 1e-12,
            "mesh = " + fmt(p.mesh) + " cannot resolve the fiber bridge of half-width 1/j; need mesh <= " +
                fmt(1.0 / p.j));
    RevolutionOptions o;
    o.mesh = p.mesh;
    o.mirror_symmetric = true;
    o.fiber = {{cos_profile(-kPi / 2.0, kPi / 2.0), 1.0, 1.0}, {two_spheres_fiber(p.j), 2.0, 1.0}};
    o.fiber_scale = 8.0 * kPi;
    o.name = "two-spheres-double";
    auto smp = sample_surface_of_revolution(cos_profile(-kPi / 2.0, kPi / 2.0), o);
    int waist = smp.nearest_index(0.0, 0.0);
    int rim = smp.nearest_index(kPi / 4.0, 0.0);
    auto sigma = mirror_rotation_involution(smp);
    auto qmap = quotient_index_map(sigma);
    auto q = quotient_by_involution(smp.space, sigma, 1e-9);
    q.name = "two-spheres-j" + std::to_string(p.j);
    auto out = finish(p.family, p.j, std::move(q));
    out.marks["basepoint"] = qmap[waist];
    out.marks["band_rim"] = qmap[rim];
    out.marks["pole"] = qmap[smp.rows.back().start];
    out.features["fiber_plateau"] = 1.0 / p.j;
    out.features["bridge_half_width"] = 1.0 / p.j;
    out.features["essential_half_length"] = kPi / 2.0;
    return out;
}

ExampleSpace limit_two_spheres(const ExampleParams& p) {
    RevolutionOptions o;
    o.mesh = p.mesh;
    o.fiber = {{cos_profile(kPi / 4.0, kPi / 2.0), 1.0, 1.0},
               {PiecewiseProfile::start(kPi / 4.0).sinusoid(kPi / 2.0, 1.0, 2.0, kPi / 2.0, true), 2.0, 1.0}};
    o.fiber_scale = 8.0 * kPi;
    o.name = "two-spheres-limit";
    auto smp = sample_surface_of_revolution(cos_profile(kPi / 4.0, kPi / 2.0), o);
    auto out = finish(p.family, p.j, std::move(smp.space));
    out.marks["band_rim"] = smp.rows.front().start;
    out.marks["pole"] = smp.rows.back().start;
    out.features["band_rim_length"] = kTau * std::cos(kPi / 4.0);
    return out;
}

ExampleSpace build_product(const ExampleParams& p) {
    require(p.j >= 1, "the product family needs j >= 1");
    require(p.circumference > 0.0 && p.circumference_b > 0.0,
            "the product family needs positive factor circumferences");
    double cb = p.circumference_b / p.j;
    double sub = p.mesh / std::sqrt(2.0);
    auto a = circle_space(p.circumference, sub);
    auto b = circle_space(cb, sub);
    auto s = product_l2(a, b);
    s.name = "product-j" + std::to_string(p.j);
    auto out = finish(p.family, p.j, std::move(s));
    out.marks["basepoint"] = 0;
    out.features["circumference_a"] = p.circumference;
    out.features["circumference_b"] = cb;
    out.features["essential_half_length_a"] = p.circumference / 2.0;
    out.features["essential_half_length_b"] = cb / 2.0;
    return out;
}

ExampleSpace build_hole(const ExampleParams& p) {
    require(p.j >= 2, "the hole family needs j >= 2 (the fiber plateau ends at 1/2 - 1/j)");
    require(p.mesh <= 1.0 / p.j + 1e-12,
            "mesh = " + fmt(p.mesh) + " cannot resolve the fiber bridge of half-width 1/j; need mesh <= " +
                fmt(1.0 / p.j));
    RevolutionOptions o;
    o.mesh = p.mesh;
    o.fiber = {{hole_fiber(p.j), 2.0, 1.0}};
    o.fiber_scale = 4.0 * kPi;
    o.name = "hole-j" + std::to_string(p.j);
    auto smp = sample_surface_of_revolution(PiecewiseProfile::start(0.0).linear(1.0, 0.0, 1.0), o);
    auto out = finish(p.family, p.j, std::move(smp.space));
    out.marks["center"] = smp.rows.front().start;
    out.marks["rim"] = smp.nearest_index(1.0, 0.0);
    out.marks["basepoint"] = smp.nearest_index(0.75, 0.0);
    out.features["fiber_plateau"] = 1.0 / p.j;
    out.features["bridge_half_width"] = 1.0 / p.j;
    return out;
}

ExampleSpace limit_hole(const ExampleParams& p) {
    RevolutionOptions o;
    o.mesh = p.mesh;
    o.fiber = {{hole_fiber_limit(), 2.0, 1.0}};
    o.fiber_scale = 4.0 * kPi;
    o.name = "hole-limit-annulus";
    auto smp = sample_surface_of_revolution(PiecewiseProfile::start(0.5).linear(1.0, 0.5, 1.0), o);
    auto out = finish(p.family, p.j, std::move(smp.space));
    out.marks["inner_rim"] = smp.rows.front().start;
    out.marks["outer_rim"] = smp.nearest_index(1.0, 0.0);
    out.marks["basepoint"] = smp.nearest_index(0.75, 0.0);
    out.features["inner_rim_length"] = kPi;
    out.features["essential_half_length"] = kPi / 2.0;
    return out;
}

struct TunnelShape {
    int pairs_per_cap = 1;  // smallest count whose balls of radius 10/j cover each cap
    double radius = 0.0;
    double height = 0.0;
    double boundary_length = 0.0;
};

TunnelShape tunnel_shape(const ExampleParams& p) {
    require(p.j >= 1, "the tunnels family needs j >= 1");
    require(p.cap_radius > 0.0 && p.cap_radius < kPi / 4.0,
            "the polar cap radius must lie in (0, pi/4)");
    require(p.mesh <= p.cap_radius / 3.0 + 1e-12,
            "mesh = " + fmt(p.mesh) + " cannot resolve the polar caps; need mesh <= cap_radius/3 = " +
                fmt(p.cap_radius / 3.0));
    TunnelShape t;
    double covering_radius = 10.0 / p.j;
    require(p.cap_radius <= covering_radius,
            "j = " + std::to_string(p.j) + " needs more than one tunnel pair per cap to satisfy the "
            "covering constraint; this reduced model supports j <= " + fmt(10.0 / p.cap_radius));
    t.pairs_per_cap = 1;
    // Derived radius decays like 1/j^2, capped so the tube collapses to its
    // core at every j (the cap only binds at j = 1).
    t.radius = p.tunnel_radius > 0.0
                   ? p.tunnel_radius
                   : std::min((p.mesh / 2.5) / (p.j * p.j), 0.85 * 0.9 * p.mesh / kTau);
    require(kTau * t.radius <= 0.9 * p.mesh + 1e-12,
            "tunnel radius r = " + fmt(t.radius) + " does not collapse at mesh " + fmt(p.mesh) +
                "; the reduced model needs 2*pi*r <= 0.9*mesh (r <= " + fmt(0.9 * p.mesh / kTau) + ")");
    t.boundary_length = 2.0 * t.pairs_per_cap * kTau * std::sin(t.radius);
    t.height = p.tunnel_height > 0.0
                   ? p.tunnel_height
                   : 0.95 * std::min(1.0 / t.boundary_length, 1.0 / p.j);
    require(t.height > 0.0, "tunnel height must be positive");
    return t;
}

ExampleSpace build_tunnels(const ExampleParams& p) {
    TunnelShape t = tunnel_shape(p);
    auto smp = sphere_sample(p.mesh, false, "tunnels-sheet");
    const FiniteMetricSpace& sphere = smp.space;
    int pole_n = smp.rows.front().start;
    int pole_s = smp.rows.back().start;
    int equator = smp.nearest_index(kPi / 2.0, 0.0);

    auto arc = arc_space(t.height, p.mesh);
    std::vector<int> map_n, map_s, map_b;
    auto x1 = glue(sphere, arc, {pole_n}, {0}, nullptr, &map_n);
    auto x2 = glue(x1, arc, {pole_s}, {0}, nullptr, &map_s);
    double seam = 0.0;
    auto s = glue(x2, sphere, {map_n[1], map_s[1]}, {pole_n, pole_s}, &seam, &map_b);
    s.name = "tunnels-j" + std::to_string(p.j);

    // Tunnel walls carry area 2 pi r h; the 1-dimensional arc weights are h.
    for (std::size_t k = 2; k < map_n.size(); ++k) s.weights[map_n[k]] *= kTau * t.radius;
    for (std::size_t k = 2; k < map_s.size(); ++k) s.weights[map_s[k]] *= kTau * t.radius;

    // Cap regions lose almost all mass to cancellation between the two
    // sheets; what survives is the boundary-collar mass of order r (1 + h).
    std::set<int> cap;
    for (int i = 0; i < sphere.n; ++i)
        if (sphere.d(i, pole_n) < p.cap_radius || sphere.d(i, pole_s) < p.cap_radius) {
            cap.insert(i);
            cap.insert(map_b[i]);
        }
    double cap_mass = 4.0 * t.pairs_per_cap * t.radius * (1.0 + t.height);
    double current = 0.0;
    for (int i : cap) current += s.weights[i];
    double scale = cap_mass / current;
    for (int i : cap) s.weights[i] *= scale;

    auto out = finish(p.family, p.j, std::move(s));
    out.marks["pole_a"] = pole_n;
    out.marks["pole_a_south"] = pole_s;
    out.marks["pole_b"] = map_b[pole_n];
    out.marks["equator_a"] = equator;
    out.marks["equator_b"] = map_b[equator];
    out.features["tunnel_pairs_per_cap"] = t.pairs_per_cap;
    out.features["tunnel_radius"] = t.radius;
    out.features["tunnel_height"] = t.height;
    out.features["cap_radius"] = p.cap_radius;
    out.features["boundary_length"] = t.boundary_length;
    out.features["cap_mass"] = cap_mass;
    out.features["seam_defect"] = seam;
    out.features["essential_half_length"] = kPi + t.height;
    return out;
}

ExampleSpace limit_tunnels(const ExampleParams& p) {
    require(p.cap_radius > 0.0 && p.cap_radius < kPi / 4.0,
            "the polar cap radius must lie in (0, pi/4)");
    require(p.mesh <= p.cap_radius / 3.0 + 1e-12,
            "mesh = " + fmt(p.mesh) + " cannot resolve the cap rims; need mesh <= cap_radius/3 = " +
                fmt(p.cap_radius / 3.0));
    RevolutionOptions o;
    o.mesh = p.mesh;
    o.name = "tunnels-limit-sheet";
    auto smp = sample_surface_of_revolution(
        PiecewiseProfile::start(p.cap_radius).sinusoid(kPi - p.cap_radius, 1.0, 1.0, 0.0), o);
    const FiniteMetricSpace& sheet = smp.space;
    int equator = smp.nearest_index(kPi / 2.0, 0.0);

    auto rim_n = smp.row_indices(0);
    auto rim_s = smp.row_indices(static_cast<int>(smp.rows.size()) - 1);
    std::vector<int> first = rim_n;
    first.insert(first.end(), rim_s.begin(), rim_s.end());
    double seam = 0.0;
    std::vector<int> map_b;
    auto s = glue(sheet, sheet, first, first, &seam, &map_b);
    s.name = "tunnels-limit-torus";
    auto out = finish(p.family, p.j, std::move(s));
    out.marks["rim_n"] = rim_n.front();
    out.marks["equator_a"] = equator;
    out.marks["equator_b"] = map_b[equator];
    out.features["rim_length"] = kTau * std::sin(p.cap_radius);
    out.features["seam_defect"] = seam;
    out.features["essential_half_length"] = kPi * std::sin(p.cap_radius);
    out.features["essential_half_length_2"] = kPi - 2.0 * p.cap_radius;
    return out;
}

// Mouth anchor angles on the equator, one pair per handle.
const std::vector<std::pair<double, double>>& handle_anchors() {
    static const std::vector<std::pair<double, double>> table = {
        {0.0, 1.0}, {3.0, 4.4}, {1.9, 2.4}, {5.2, 5.9}};
    return table;
}

double handle_anchor_gap(int j) {
    std::vector<double> angles;
    for (int i = 0; i < j; ++i) {
        angles.push_back(handle_anchors()[i].first);
        angles.push_back(handle_anchors()[i].second);
    }
    std::sort(angles.begin(), angles.end());
    double gap = kTau + angles.front() - angles.back();
    for (std::size_t k = 1; k < angles.size(); ++k) gap = std::min(gap, angles[k] - angles[k - 1]);
    return gap;
}

ExampleSpace build_handles(const ExampleParams& p) {
    require(p.j >= 1, "the handles family needs j >= 1");
    require(p.j <= static_cast<int>(handle_anchors().size()),
            "the mouth placement table supports j <= " + std::to_string(handle_anchors().size()));
    double gap = handle_anchor_gap(p.j);
    require(p.mesh <= gap / 4.0 + 1e-12,
            "mesh = " + fmt(p.mesh) + " cannot separate the handle mouths; need mesh <= " + fmt(gap / 4.0));
    require(p.handle_eps > 0.0 && p.handle_eps <= p.mesh / 2.0,
            "the mouth radius eps = " + fmt(p.handle_eps) +
                " must lie in (0, mesh/2]; mouths collapse to marked points at this scale");

    auto smp = sphere_sample(p.mesh, false, "handles-core");
    double arc_len = kPi - 2.0 * p.handle_eps;
    double eps_prime = 0.1 / (p.j * std::pow(10.0, p.j));

    FiniteMetricSpace s = smp.space;
    std::vector<int> mouths;
    std::vector<std::vector<int>> arc_maps;
    double worst_seam = 0.0;
    for (int i = 0; i < p.j; ++i) {
        int m1 = smp.nearest_index(kPi / 2.0, handle_anchors()[i].first);
        int m2 = smp.nearest_index(kPi / 2.0, handle_anchors()[i].second);
        mouths.push_back(m1);
        mouths.push_back(m2);
        double seam = 0.0;
        std::vector<int> map_arc;
        s = glue(s, arc_space(arc_len, p.mesh), {m1, m2}, {0, 1}, &seam, &map_arc);
        worst_seam = std::max(worst_seam, seam);
        arc_maps.push_back(std::move(map_arc));
    }
    s.name = "handles-j" + std::to_string(p.j);
    for (const auto& m : arc_maps)
        for (std::size_t k = 2; k < m.size(); ++k) s.weights[m[k]] *= kTau * eps_prime;

    auto out = finish(p.family, p.j, std::move(s));
    out.marks["pole_n"] = smp.rows.front().start;
    out.marks["basepoint"] = mouths[0];
    for (int i = 0; i < p.j; ++i) {
        out.marks["mouth_" + std::to_string(i + 1) + "_a"] = mouths[2 * i];
        out.marks["mouth_" + std::to_string(i + 1) + "_b"] = mouths[2 * i + 1];
        double d = out.space.d(mouths[2 * i], mouths[2 * i + 1]);
        out.features["mouth_distance_" + std::to_string(i + 1)] = d;
        out.features["delta_claim_" + std::to_string(i + 1)] =
            (kPi + d - 2.0 * p.handle_eps) / 2.0;
    }
    out.features["mouth_radius"] = p.handle_eps;
    out.features["handle_width"] = eps_prime;
    out.features["handle_collar"] = std::asin(p.handle_eps) / 4.0;
    out.features["handle_area"] = p.j * kTau * eps_prime * arc_len;
    out.features["handle_area_bound"] = 2.0 * kPi * kPi * p.j * eps_prime;
    out.features["seam_defect"] = worst_seam;
    return out;
}

ExampleSpace limit_handles(const ExampleParams& p) {
    auto out = build_sphere2(p);
    out.family = Family::Handles;
    out.j = p.j;
    out.space.name = "handles-limit-sphere";
    return out;
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Circle: return "circle";
        case Family::Sphere2: return "sphere2";
        case Family::RP2: return "rp2";
        case Family::Revolution: return "revolution";
        case Family::TwoSpheresReduced: return "two_spheres_reduced";
        case Family::ProductReduced: return "product_reduced";
        case Family::HoleReduced: return "hole_reduced";
        case Family::Tunnels: return "tunnels";
        case Family::Handles: return "handles";
    }
    throw std::logic_error("unknown family");
}

Family family_from_string(const std::string& name) {
    for (Family f : {Family::Circle, Family::Sphere2, Family::RP2, Family::Revolution,
                     Family::TwoSpheresReduced, Family::ProductReduced, Family::HoleReduced,
                     Family::Tunnels, Family::Handles})
        if (name == family_name(f)) return f;
    throw std::invalid_argument("unknown family \"" + name + "\"");
}

PiecewiseProfile sphere_profile() { return PiecewiseProfile::start(0.0).sinusoid(kPi, 1.0, 1.0, 0.0); }

PiecewiseProfile metric2_profile(double eps, double L) {
    require(eps > 0.0 && eps < kPi / 2.0, "metric2 needs 0 < eps < pi/2");
    require(L > 0.0, "metric2 needs a positive tube length");
    return PiecewiseProfile::start(0.0)
        .sinusoid(kPi - eps, 1.0, 1.0, 0.0)
        .constant(L + kPi - eps, std::sin(eps))
        .sinusoid(L + kTau - 2.0 * eps, 1.0, 1.0, -(L + kPi - 2.0 * eps));
}

PiecewiseProfile metric2_limit_profile(double L) {
    require(L > 0.0, "metric2 needs a positive tube length");
    return PiecewiseProfile::start(0.0)
        .sinusoid(kPi, 1.0, 1.0, 0.0)
        .constant(L + kPi, 0.0)
        .sinusoid(L + kTau, 1.0, 1.0, -(L + kPi));
}

PiecewiseProfile two_spheres_fiber(int j) {
    require(j >= 2, "the two-spheres fiber needs j >= 2");
    double w = 1.0 / j;
    double v = std::sin(2.0 * w);
    return PiecewiseProfile::start(-kPi / 2.0)
        .sinusoid(-kPi / 4.0 - w, 1.0, 2.0, kPi / 2.0, true)
        .bridge(-kPi / 4.0 + w, v, w)
        .constant(kPi / 4.0 - w, w)
        .bridge(kPi / 4.0 + w, w, v)
        .sinusoid(kPi / 2.0, 1.0, 2.0, kPi / 2.0, true);
}

PiecewiseProfile hole_fiber(int j) {
    require(j >= 2, "the hole fiber needs j >= 2");
    double w = 1.0 / j;   // density left inside the hole
    double h = 0.5 / j;   // transition half-width around the rim at 1/2
    double v = std::abs(std::sin(kTau * h));
    return PiecewiseProfile::start(0.0)
        .constant(0.5 - h, w)
        .bridge(0.5 + h, w, v)
        .sinusoid(1.0, 1.0, kTau, -kPi, true);
}

PiecewiseProfile hole_fiber_limit() {
    return PiecewiseProfile::start(0.5).sinusoid(1.0, 1.0, kTau, -kPi, true);
}

ExampleSpace build_example(const ExampleParams& params) {
    require(params.mesh > 0.0, "mesh must be positive");
    switch (params.family) {
        case Family::Circle: return build_circle(params);
        case Family::Sphere2: return build_sphere2(params);
        case Family::RP2: return build_rp2(params);
        case Family::Revolution: return build_revolution(params);
        case Family::TwoSpheresReduced: return build_two_spheres(params);
        case Family::ProductReduced: return build_product(params);
        case Family::HoleReduced: return build_hole(params);
        case Family::Tunnels: return build_tunnels(params);
        case Family::Handles: return build_handles(params);
    }
    throw std::logic_error("unknown family");
}

ExampleSpace limit_space(const ExampleParams& params) {
    require(params.mesh > 0.0, "mesh must be positive");
    switch (params.family) {
        case Family::Circle:
        case Family::Sphere2:
        case Family::RP2:
        case Family::Revolution:
            return build_example(params);
        case Family::TwoSpheresReduced: return limit_two_spheres(params);
        case Family::ProductReduced:
            throw std::runtime_error(
                "the thin product family collapses to the zero space; there is no limit sample. "
                "sequence() records limit_is_zero for it");
        case Family::HoleReduced: return limit_hole(params);
        case Family::Tunnels: return limit_tunnels(params);
        case Family::Handles: return limit_handles(params);
    }
    throw std::logic_error("unknown family");
}

SpaceSequence sequence(const ExampleParams& base, const std::vector<int>& j_list, double V0,
                       double D0) {
    require(!j_list.empty(), "sequence needs at least one index");
    SpaceSequence seq;
    seq.family = base.family;
    seq.j_list = j_list;
    seq.V0 = V0;
    seq.D0 = D0;
    for (int j : j_list) {
        ExampleParams p = base;
        p.j = j;
        seq.members.push_back(build_example(p));
        const ExampleSpace& m = seq.members.back();
        if (m.volume > V0 + 1e-9)
            throw std::runtime_error("certification failure: sequence member j = " +
                                     std::to_string(j) + " has volume " + fmt(m.volume) +
                                     ", above the uniform bound V0 = " + fmt(V0));
        if (m.diameter > D0 + 1e-9)
            throw std::runtime_error("certification failure: sequence member j = " +
                                     std::to_string(j) + " has diameter " + fmt(m.diameter) +
                                     ", above the uniform bound D0 = " + fmt(D0));
    }
    if (base.family == Family::ProductReduced) {
        seq.limit_is_zero = true;
    } else {
        ExampleParams p = base;
        p.j = j_list.back();
        seq.limit = limit_space(p);
    }
    return seq;
}

int chain_cycle_rank(const FiniteMetricSpace& s) {
    ChainGraph g = build_chain_graph(s, chain_step(s.mesh));
    const int n = g.n;
    const int ecount = static_cast<int>(g.edges.size());
    int components = 0;
    connected_components(g, &components);

    std::unordered_map<std::int64_t, int> edge_id;
    edge_id.reserve(static_cast<std::size_t>(ecount) * 2);
    for (int e = 0; e < ecount; ++e)
        edge_id[static_cast<std::int64_t>(g.edges[e].first) * n + g.edges[e].second] = e;

    // Triangles (i < j < k pairwise adjacent), as boundary columns over GF(2).
    std::vector<std::vector<int>> pivot_col(ecount);
    std::vector<char> claimed(ecount, 0);
    int rank = 0;
    std::vector<int> cur, tmp;
    for (int e = 0; e < ecount; ++e) {
        int i = g.edges[e].first, j = g.edges[e].second;
        const int* bi = g.nbr.data() + g.off[i];
        const int* ei = g.nbr.data() + g.off[i + 1];
        const int* bj = g.nbr.data() + g.off[j];
        const int* ej = g.nbr.data() + g.off[j + 1];
        while (bi != ei && bj != ej) {
            if (*bi < *bj) {
                ++bi;
            } else if (*bj < *bi) {
                ++bj;
            } else {
                int k = *bi;
                ++bi, ++bj;
                if (k <= j) continue;
                cur = {e, edge_id.at(static_cast<std::int64_t>(i) * n + k),
                       edge_id.at(static_cast<std::int64_t>(j) * n + k)};
                std::sort(cur.begin(), cur.end());
                while (!cur.empty()) {
                    int pivot = cur.back();
                    if (!claimed[pivot]) {
                        claimed[pivot] = 1;
                        pivot_col[pivot] = cur;
                        ++rank;
                        break;
                    }
                    const auto& other = pivot_col[pivot];
                    tmp.clear();
                    std::set_symmetric_difference(cur.begin(), cur.end(), other.begin(),
                                                  other.end(), std::back_inserter(tmp));
                    cur.swap(tmp);
                }
            }
        }
    }
    return ecount - n + components - rank;
}

}  // namespace covlab
