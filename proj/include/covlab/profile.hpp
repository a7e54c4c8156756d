#pragma once

#include <functional>
#include <vector>

namespace covlab {

// Piecewise warping function r -> f(r) >= 0 on an interval. Surfaces of
// revolution use it as the circumference profile; volume formulas use it as
// a density factor. Segment kinds:
//   Constant  f(r) = a
//   Linear    f(r) = a + b (r - r0)
//   Sinusoid  f(r) = a sin(b r + c), optionally |a sin(b r + c)|
//   Bridge    cubic Hermite from (r0, a) to (r1, b) with zero end slopes
struct PiecewiseProfile {
    enum class Kind { Constant, Linear, Sinusoid, Bridge };
    struct Segment {
        double r0 = 0.0, r1 = 0.0;
        Kind kind = Kind::Constant;
        double a = 0.0, b = 0.0, c = 0.0;
        bool absolute = false;
    };
    std::vector<Segment> segments;

    double lo() const { return segments.front().r0; }
    double hi() const { return segments.back().r1; }
    double eval(double r) const;

    PiecewiseProfile& constant(double r1, double value);
    PiecewiseProfile& linear(double r1, double v0, double v1);
    PiecewiseProfile& sinusoid(double r1, double amp, double freq, double phase, bool absolute = false);
    PiecewiseProfile& bridge(double r1, double v0, double v1);

    static PiecewiseProfile start(double r0) {
        PiecewiseProfile p;
        p.cursor = r0;
        return p;
    }

  private:
    double cursor = 0.0;
    Segment& append(double r1);
};

// Checks that segments tile an interval in order, the function is continuous
// at interior breakpoints (within 1e-9) and nonnegative (sampled densely).
// Throws std::runtime_error on the first violation.
void validate_profile(const PiecewiseProfile& p);

// Adaptive Simpson quadrature to relative tolerance `rel_tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-8);

// One multiplicative density factor (scale * profile(r)) ^ exponent.
struct FiberFactor {
    PiecewiseProfile profile;
    double exponent = 1.0;
    double scale = 1.0;
};

// constant * integral over [lo, hi] of the product of all fiber factors,
// integrated piecewise between profile breakpoints so kinks cost nothing.
double warped_volume(double constant, const std::vector<FiberFactor>& factors,
                     double lo, double hi, double rel_tol = 1e-8);

}  // namespace covlab
