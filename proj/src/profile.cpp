#include "covlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace covlab {

namespace {

double eval_segment(const PiecewiseProfile::Segment& s, double r) {
    switch (s.kind) {
        case PiecewiseProfile::Kind::Constant:
            return s.a;
        case PiecewiseProfile::Kind::Linear:
            return s.a + s.b * (r - s.r0);
        case PiecewiseProfile::Kind::Sinusoid: {
            double v = s.a * std::sin(s.b * r + s.c);
            return s.absolute ? std::abs(v) : v;
        }
        case PiecewiseProfile::Kind::Bridge: {
            double t = (r - s.r0) / (s.r1 - s.r0);
            double h = t * t * (3 - 2 * t);  // smoothstep: zero slope at both ends
            return s.a + (s.b - s.a) * h;
        }
    }
    return 0.0;
}

}  // namespace

double PiecewiseProfile::eval(double r) const {
    if (segments.empty()) throw std::runtime_error("profile: empty");
    // Clamp to the domain; callers sample right at the endpoints.
    if (r <= segments.front().r0) return eval_segment(segments.front(), segments.front().r0);
    if (r >= segments.back().r1) return eval_segment(segments.back(), segments.back().r1);
    int lo = 0, hi = static_cast<int>(segments.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (segments[mid].r1 < r)
            lo = mid + 1;
        else
            hi = mid;
    }
    return eval_segment(segments[lo], r);
}

PiecewiseProfile::Segment& PiecewiseProfile::append(double r1) {
    if (r1 <= cursor) throw std::runtime_error("profile: segments must advance");
    Segment s;
    s.r0 = cursor;
    s.r1 = r1;
    cursor = r1;
    segments.push_back(s);
    return segments.back();
}

PiecewiseProfile& PiecewiseProfile::constant(double r1, double value) {
    Segment& s = append(r1);
    s.kind = Kind::Constant;
    s.a = value;
    return *this;
}

PiecewiseProfile& PiecewiseProfile::linear(double r1, double v0, double v1) {
    Segment& s = append(r1);
    s.kind = Kind::Linear;
    s.a = v0;
    s.b = (v1 - v0) / (s.r1 - s.r0);
    return *this;
}

PiecewiseProfile& PiecewiseProfile::sinusoid(double r1, double amp, double freq, double phase,
                                             bool absolute) {
    Segment& s = append(r1);
    s.kind = Kind::Sinusoid;
    s.a = amp;
    s.b = freq;
    s.c = phase;
    s.absolute = absolute;
    return *this;
}

PiecewiseProfile& PiecewiseProfile::bridge(double r1, double v0, double v1) {
    Segment& s = append(r1);
    s.kind = Kind::Bridge;
    s.a = v0;
    s.b = v1;
    return *this;
}

void validate_profile(const PiecewiseProfile& p) {
    if (p.segments.empty()) throw std::runtime_error("profile: empty");
    for (std::size_t i = 0; i < p.segments.size(); ++i) {
        const auto& s = p.segments[i];
        if (!(s.r1 > s.r0)) throw std::runtime_error("profile: segment " + std::to_string(i) + " has no width");
        if (i > 0) {
            const auto& prev = p.segments[i - 1];
            if (std::abs(prev.r1 - s.r0) > 1e-12)
                throw std::runtime_error("profile: gap before segment " + std::to_string(i));
            double left = eval_segment(prev, prev.r1);
            double right = eval_segment(s, s.r0);
            if (std::abs(left - right) > 1e-9)
                throw std::runtime_error("profile: discontinuity of " + std::to_string(std::abs(left - right)) +
                                         " at r = " + std::to_string(s.r0));
        }
        for (int k = 0; k <= 1000; ++k) {
            double r = s.r0 + (s.r1 - s.r0) * k / 1000.0;
            if (eval_segment(s, r) < -1e-12)
                throw std::runtime_error("profile: negative value at r = " + std::to_string(r));
        }
    }
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    if (depth > 48 || std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, fa, m, fm, lm, flm, left, tol / 2, depth + 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, tol / 2, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    double m = (a + b) / 2;
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    // Probe a few interior points for the magnitude; the three Simpson nodes
    // alone can all land on zeros of f and starve the tolerance.
    double mag = 0.0;
    for (int k = 0; k <= 8; ++k) mag = std::max(mag, std::abs(f(a + (b - a) * k / 8.0)));
    double scale = std::max({std::abs(whole), std::abs(b - a) * mag, 1e-30});
    return adaptive(f, a, fa, b, fb, m, fm, whole, rel_tol * scale, 0);
}

double warped_volume(double constant, const std::vector<FiberFactor>& factors, double lo, double hi,
                     double rel_tol) {
    for (const auto& f : factors) validate_profile(f.profile);
    auto integrand = [&](double r) {
        double v = 1.0;
        for (const auto& f : factors) {
            double base = f.scale * f.profile.eval(r);
            v *= f.exponent == 1.0 ? base : std::pow(base, f.exponent);
        }
        return v;
    };
    // Split at every breakpoint of every factor so each panel is smooth.
    std::set<double> cuts{lo, hi};
    for (const auto& f : factors)
        for (const auto& s : f.profile.segments) {
            if (s.r0 > lo && s.r0 < hi) cuts.insert(s.r0);
            if (s.r1 > lo && s.r1 < hi) cuts.insert(s.r1);
        }
    double total = 0.0;
    auto it = cuts.begin();
    double prev = *it;
    for (++it; it != cuts.end(); ++it) {
        total += adaptive_simpson(integrand, prev, *it, rel_tol);
        prev = *it;
    }
    return constant * total;
}

}  // namespace covlab
