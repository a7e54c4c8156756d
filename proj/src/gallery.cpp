#include "covlab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covlab {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

double wrap_angle(double t) {
    t = std::fmod(t, kTau);
    if (t < 0) t += kTau;
    return t;
}

}  // namespace

std::vector<int> RevolutionSample::row_indices(int row) const {
    std::vector<int> out(rows[row].count);
    for (int i = 0; i < rows[row].count; ++i) out[i] = rows[row].start + i;
    return out;
}

int RevolutionSample::nearest_index(double r, double theta) const {
    int best_row = 0;
    double best_gap = std::abs(rows[0].r - r);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        double g = std::abs(rows[k].r - r);
        if (g < best_gap) {
            best_gap = g;
            best_row = static_cast<int>(k);
        }
    }
    const RowInfo& row = rows[best_row];
    if (row.count == 1) return row.start;
    int i = static_cast<int>(std::llround(wrap_angle(theta) / kTau * row.count)) % row.count;
    return row.start + i;
}

RevolutionSample sample_surface_of_revolution(const PiecewiseProfile& f,
                                              const RevolutionOptions& opts) {
    validate_profile(f);
    if (opts.mesh <= 0.0) throw std::invalid_argument("revolution sample: mesh must be positive");
    const double lo = f.lo(), hi = f.hi();
    if (!(hi > lo)) throw std::invalid_argument("revolution sample: empty profile domain");

    const double target = 0.95 * opts.mesh;
    const int nseg = std::max(1, static_cast<int>(std::ceil((hi - lo) / target)));
    const double dr = (hi - lo) / nseg;
    const int nrows = nseg + 1;

    // Profile values per row; in mirror mode row N-k reuses row k's bits so
    // mirrored edges get exactly equal lengths.
    std::vector<double> fv(nrows);
    for (int k = 0; k < nrows; ++k) fv[k] = f.eval(lo + k * dr);
    if (opts.mirror_symmetric)
        for (int k = 0; k < nrows / 2; ++k) {
            double v = std::max(fv[k], fv[nrows - 1 - k]);
            fv[k] = fv[nrows - 1 - k] = v;
        }

    RevolutionSample out;
    out.row_spacing = dr;
    out.rows.resize(nrows);
    int next = 0;
    for (int k = 0; k < nrows; ++k) {
        double circ = kTau * fv[k];
        int count;
        if (circ < opts.collapse_frac * opts.mesh) {
            count = 1;
        } else {
            count = std::max(3, static_cast<int>(std::ceil(circ / target)));
            if (opts.mirror_symmetric && count % 2 != 0) ++count;
        }
        out.rows[k] = {lo + k * dr, next, count};
        next += count;
    }
    if (opts.mirror_symmetric)
        for (int k = 0; k < nrows / 2; ++k) {
            int c = std::max(out.rows[k].count, out.rows[nrows - 1 - k].count);
            out.rows[k].count = out.rows[nrows - 1 - k].count = c;
        }
    if (opts.mirror_symmetric) {
        next = 0;
        for (int k = 0; k < nrows; ++k) {
            out.rows[k].start = next;
            next += out.rows[k].count;
        }
    }
    const int n = next;

    const double step = 2.5 * opts.mesh;
    std::vector<MetricGraph::Edge> edges;

    // Same-row arcs up to the chain step.
    for (int k = 0; k < nrows; ++k) {
        const RowInfo& row = out.rows[k];
        if (row.count == 1) continue;
        double arc = kTau * fv[k] / row.count;
        int max_hop = std::min(static_cast<int>(step / arc), row.count / 2);
        for (int hop = 1; hop <= max_hop; ++hop) {
            double len = arc * hop;
            if (len > step) break;
            bool half_turn = 2 * hop == row.count;
            int limit = half_turn ? row.count / 2 : row.count;
            for (int i = 0; i < limit; ++i)
                edges.push_back({row.start + i, row.start + (i + hop) % row.count, len});
        }
    }

    // Cross-row edges for every pair of rows within the chain step.
    const int max_dk = static_cast<int>(step / dr);
    for (int k = 0; k < nrows; ++k) {
        for (int dk = 1; dk <= max_dk && k + dk < nrows; ++dk) {
            int k2 = k + dk;
            double vertical = dk * dr;
            if (vertical > step) break;
            const RowInfo& ra = out.rows[k];
            const RowInfo& rb = out.rows[k2];
            if (ra.count == 1 && rb.count == 1) {
                edges.push_back({ra.start, rb.start, vertical});
                continue;
            }
            if (ra.count == 1 || rb.count == 1) {
                // Meridian edges out of a cone point reach every direction.
                const RowInfo& ring = ra.count == 1 ? rb : ra;
                int apex = ra.count == 1 ? ra.start : rb.start;
                for (int i = 0; i < ring.count; ++i)
                    edges.push_back({apex, ring.start + i, vertical});
                continue;
            }
            double fmid = 0.5 * (fv[k] + fv[k2]);
            // Angle gap via integer index offsets over the common denominator,
            // so mirrored pairs (i + ca/2, j + cb/2) get bitwise equal lengths
            // and the edge cutoff cannot split a mirror orbit.
            const long long ca = ra.count, cb = rb.count, cab = ca * cb;
            for (int i = 0; i < ra.count; ++i) {
                for (int j = 0; j < rb.count; ++j) {
                    long long off = ((static_cast<long long>(i) * cb - static_cast<long long>(j) * ca) % cab + cab) % cab;
                    double gap = kTau * static_cast<double>(std::min(off, cab - off)) / static_cast<double>(cab);
                    double len = std::hypot(vertical, fmid * gap);
                    if (len <= step) edges.push_back({ra.start + i, rb.start + j, len});
                }
            }
        }
    }

    // Cell weights: each row owns the band of half spacing on either side;
    // band area integrates 2*pi*f, fiber factors ride on top.
    auto fm = [&](double r) {
        double m = opts.fiber_scale;
        for (const auto& fac : opts.fiber) m *= std::pow(fac.scale * fac.profile.eval(r), fac.exponent);
        return m;
    };
    std::vector<double> weights(n, 0.0);
    for (int k = 0; k < nrows; ++k) {
        double band_lo = std::max(lo, out.rows[k].r - dr / 2);
        double band_hi = std::min(hi, out.rows[k].r + dr / 2);
        double area = adaptive_simpson(
            [&](double r) { return kTau * f.eval(r) * fm(r); }, band_lo, band_hi, 1e-10);
        for (int i = 0; i < out.rows[k].count; ++i)
            weights[out.rows[k].start + i] = area / out.rows[k].count;
    }

    out.space = metric_from_edges(n, edges, std::move(weights));
    out.space.name = opts.name.empty() ? "revolution" : opts.name;
    out.space.coords.resize(n);
    for (int k = 0; k < nrows; ++k)
        for (int i = 0; i < out.rows[k].count; ++i) {
            double t = kTau * i / out.rows[k].count;
            out.space.coords[out.rows[k].start + i] = {fv[k] * std::cos(t), fv[k] * std::sin(t),
                                                       out.rows[k].r};
        }
    return out;
}

std::vector<int> mirror_rotation_involution(const RevolutionSample& sample) {
    const auto& rows = sample.rows;
    const int nrows = static_cast<int>(rows.size());
    std::vector<int> sigma(sample.space.n, -1);
    for (int k = 0; k < nrows; ++k) {
        int km = nrows - 1 - k;
        if (rows[k].count != rows[km].count)
            throw std::runtime_error("mirror involution needs a mirror-symmetric layout");
        int c = rows[k].count;
        for (int i = 0; i < c; ++i) {
            int j = c == 1 ? 0 : (i + c / 2) % c;
            sigma[rows[k].start + i] = rows[km].start + j;
        }
    }
    return sigma;
}

}  // namespace covlab
