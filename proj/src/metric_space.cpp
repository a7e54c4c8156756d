#include "covlab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace covlab {

double FiniteMetricSpace::diameter() const {
    double m = 0.0;
    for (double v : dist) m = std::max(m, v);
    return m;
}

double FiniteMetricSpace::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

FiniteMetricSpace make_space(int n, std::vector<double> dist,
                             std::vector<double> weights, double mesh_override) {
    if (n <= 0) throw std::runtime_error("make_space: need at least one point");
    if (dist.size() != static_cast<std::size_t>(n) * n)
        throw std::runtime_error("make_space: distance matrix has " +
                                 std::to_string(dist.size()) + " entries, expected " +
                                 std::to_string(static_cast<std::size_t>(n) * n));
    if (weights.empty()) weights.assign(n, 1.0);
    if (weights.size() != static_cast<std::size_t>(n))
        throw std::runtime_error("make_space: weight count does not match point count");
    FiniteMetricSpace s;
    s.n = n;
    s.dist = std::move(dist);
    s.weights = std::move(weights);
    s.mesh = mesh_override > 0.0 ? mesh_override : compute_mesh(s);
    return s;
}

double compute_mesh(const FiniteMetricSpace& s) {
    if (s.n < 2) return 0.0;
    double mesh = 0.0;
    for (int i = 0; i < s.n; ++i) {
        double nn = std::numeric_limits<double>::infinity();
        const double* row = s.dist.data() + static_cast<std::size_t>(i) * s.n;
        for (int j = 0; j < s.n; ++j)
            if (j != i) nn = std::min(nn, row[j]);
        mesh = std::max(mesh, nn);
    }
    return mesh;
}

std::vector<int> ball(const FiniteMetricSpace& s, int center, double radius) {
    if (center < 0 || center >= s.n) throw std::runtime_error("ball: center out of range");
    std::vector<int> out;
    const double* row = s.dist.data() + static_cast<std::size_t>(center) * s.n;
    for (int j = 0; j < s.n; ++j)
        if (row[j] < radius) out.push_back(j);
    return out;
}

double ball_weight(const FiniteMetricSpace& s, int center, double radius) {
    if (center < 0 || center >= s.n) throw std::runtime_error("ball_weight: center out of range");
    double total = 0.0;
    const double* row = s.dist.data() + static_cast<std::size_t>(center) * s.n;
    for (int j = 0; j < s.n; ++j)
        if (row[j] < radius) total += s.weights[j];
    return total;
}

void check_metric_axioms(const FiniteMetricSpace& s, double tol) {
    const int n = s.n;
    auto fail = [](const std::string& what) { throw std::runtime_error("metric axiom violated: " + what); };
    for (int i = 0; i < n; ++i) {
        if (std::abs(s.d(i, i)) > tol)
            fail("d(" + std::to_string(i) + "," + std::to_string(i) + ") = " +
                 std::to_string(s.d(i, i)) + " is not zero");
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(s.d(i, j) - s.d(j, i)) > tol)
                fail("asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (s.d(i, j) <= tol)
                fail("d(" + std::to_string(i) + "," + std::to_string(j) +
                     ") is not positive; points coincide");
            if (!std::isfinite(s.d(i, j)))
                fail("d(" + std::to_string(i) + "," + std::to_string(j) +
                     ") is not finite; space is disconnected");
        }
    }
    // d(i,j) <= d(i,k) + d(k,j). Outer loop over k so the two row pointers
    // stay hot while i, j sweep.
    for (int k = 0; k < n; ++k) {
        const double* rk = s.dist.data() + static_cast<std::size_t>(k) * n;
        for (int i = 0; i < n; ++i) {
            const double* ri = s.dist.data() + static_cast<std::size_t>(i) * n;
            const double dik = ri[k];
            for (int j = 0; j < n; ++j) {
                if (ri[j] > dik + rk[j] + tol)
                    fail("triangle inequality at (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(k) + "): " +
                         std::to_string(ri[j]) + " > " + std::to_string(dik + rk[j]));
            }
        }
    }
}

}  // namespace covlab
