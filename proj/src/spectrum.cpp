#include "covlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "covlab/chain_graph.hpp"

namespace covlab {

namespace {

struct Probe {
    std::vector<int> profile;
    bool complete = false;
};

class Scanner {
  public:
    Scanner(const FiniteMetricSpace& s, double lo, double hi, const SpectrumOptions& opts)
        : s_(s), opts_(opts) {
        rep_.scan_lo = lo;
        rep_.scan_hi = hi;
        rep_.refine_tol = opts.refine_tol;
        rep_.mesh = s.mesh;
        rep_.diameter = s.diameter();
        step_ = chain_step(s.mesh);
        rep_.floor = 4.0 * step_;
    }

    CovSpecReport run() {
        double lo = rep_.scan_lo, hi = rep_.scan_hi;
        if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("bad spectrum scan range");
        pad_lo_ = opts_.pad_mesh_frac * s_.mesh;
        pad_hi_ = opts_.pad_mesh_frac * s_.mesh;
        inner_tol_ = opts_.refine_tol - pad_lo_ - pad_hi_;
        if (inner_tol_ <= 1e-6) {
            std::ostringstream msg;
            msg << "refine_tol = " << opts_.refine_tol
                << " is below the sampling uncertainty of this mesh; smallest achievable is "
                << pad_lo_ + pad_hi_ + 1e-6;
            throw std::invalid_argument(msg.str());
        }

        double lo_eff = std::max(lo, rep_.floor * (1.0 + 1e-9) + 1e-12);
        if (lo < lo_eff) {
            rep_.uncertified.push_back(
                {lo, std::min(lo_eff, hi), "below resolvable scale (4 * chain step)"});
        }
        if (lo_eff >= hi) return finish();

        std::vector<double> probes = {lo_eff, hi};
        for (int k = 1; k < opts_.grid; ++k)
            probes.push_back(lo_eff + (hi - lo_eff) * k / opts_.grid);
        for (double c : cycle_candidates(s_, lo_eff, hi)) {
            probes.push_back(std::clamp(c - 2.5 * s_.mesh, lo_eff, hi));
            probes.push_back(std::clamp(c + 2.5 * s_.mesh, lo_eff, hi));
            candidates_.push_back(c);
        }
        std::sort(probes.begin(), probes.end());
        probes.erase(std::unique(probes.begin(), probes.end(),
                                 [&](double a, double b) { return b - a < inner_tol_ * 0.25; }),
                     probes.end());
        if (probes.back() < hi) probes.push_back(hi);

        for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
            double a = probes[i], b = probes[i + 1];
            double R = effective_R(b);
            find_changes(a, b, R, get(a, R), get(b, R));
        }
        return finish();
    }

  private:
    double effective_R(double upper) const {
        double autoR = rep_.diameter + 2.0 * upper + 4.0 * step_;
        if (opts_.R > 0.0) return std::min(opts_.R, autoR);
        return autoR;
    }

    const Probe& get(double delta, double R) {
        auto key = std::make_pair(quantize(delta), quantize(R));
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        TruncatedCover c = truncated_cover(s_, delta, opts_.basepoint, R, opts_.budget);
        ++rep_.builds;
        Probe p;
        p.profile = std::move(c.profile);
        p.complete = c.complete_within_R;
        return cache_.emplace(key, std::move(p)).first->second;
    }

    static long long quantize(double x) { return static_cast<long long>(std::llround(x * 1e9)); }

    // Equal profiles certify an interval empty (profile monotone in delta);
    // differing profiles are bisected. Incomplete covers leave the interval
    // uncertified.
    void find_changes(double a, double b, double R, const Probe& pa, const Probe& pb) {
        if (!pa.complete || !pb.complete) {
            rep_.uncertified.push_back({a, b, "cover truncated by budget"});
            return;
        }
        check_monotone(a, b, R, pa, pb);
        int witness = -1;
        for (int q = 0; q < s_.n; ++q) {
            if (pa.profile[q] != pb.profile[q]) {
                witness = q;
                break;
            }
        }
        if (witness < 0) return;
        if (b - a <= inner_tol_) {
            emit_bracket(a, b, witness, pa.profile[witness], pb.profile[witness]);
            return;
        }
        double m = 0.5 * (a + b);
        const Probe& pm = get(m, R);
        find_changes(a, m, R, pa, pm);
        find_changes(m, b, R, pm, pb);
    }

    void check_monotone(double a, double b, double R, const Probe& pa, const Probe& pb) {
        const double* drow = &s_.dist[static_cast<std::size_t>(opts_.basepoint) * s_.n];
        for (int q = 0; q < s_.n; ++q) {
            if (drow[q] < R / 2.0 && pa.profile[q] < pb.profile[q]) {
                std::ostringstream msg;
                msg << "certification failure: lift-count monotonicity violated at base point "
                    << q << " between delta " << a << " (count " << pa.profile[q] << ") and "
                    << b << " (count " << pb.profile[q] << ")";
                throw std::runtime_error(msg.str());
            }
        }
    }

    void emit_bracket(double a, double b, int witness, int below, int above) {
        SpectrumBracket br;
        br.detect_low = a;
        br.detect_high = b;
        br.delta_low = std::max(a - pad_lo_, 1e-12);
        br.delta_high = b + pad_hi_;
        br.witness = witness;
        br.evidence_below = below;
        br.evidence_above = above;
        double best = std::numeric_limits<double>::quiet_NaN();
        double bestgap = 5.0 * s_.mesh + opts_.refine_tol;
        for (double c : candidates_) {
            double gap = std::abs(c - 0.5 * (a + b));
            if (gap < bestgap) {
                bestgap = gap;
                best = c;
            }
        }
        br.candidate = best;
        raw_.push_back(br);
    }

    CovSpecReport finish() {
        std::sort(raw_.begin(), raw_.end(),
                  [](const SpectrumBracket& x, const SpectrumBracket& y) {
                      return x.detect_low < y.detect_low;
                  });
        for (const auto& br : raw_) {
            if (!rep_.brackets.empty() &&
                br.delta_low <= rep_.brackets.back().delta_high + 1e-12) {
                // Same transition seen from adjacent segments: widen.
                auto& prev = rep_.brackets.back();
                prev.detect_high = std::max(prev.detect_high, br.detect_high);
                prev.delta_high = std::max(prev.delta_high, br.delta_high);
                prev.evidence_above = br.evidence_above;
            } else {
                rep_.brackets.push_back(br);
            }
        }
        for (const auto& br : rep_.brackets) {
            if (br.detect_high > rep_.diameter + 3.0 * s_.mesh) {
                std::ostringstream msg;
                msg << "certification failure: detected value near " << br.detect_high
                    << " exceeds the diameter " << rep_.diameter << " of the space";
                throw std::runtime_error(msg.str());
            }
        }
        std::sort(rep_.uncertified.begin(), rep_.uncertified.end(),
                  [](const UncertifiedRegion& x, const UncertifiedRegion& y) {
                      return x.lo < y.lo;
                  });
        return rep_;
    }

    const FiniteMetricSpace& s_;
    SpectrumOptions opts_;
    CovSpecReport rep_;
    double step_ = 0.0;
    double pad_lo_ = 0.0, pad_hi_ = 0.0, inner_tol_ = 0.0;
    std::map<std::pair<long long, long long>, Probe> cache_;
    std::vector<double> candidates_;
    std::vector<SpectrumBracket> raw_;
};

}  // namespace

std::vector<double> cycle_candidates(const FiniteMetricSpace& s, double lo, double hi) {
    double step = chain_step(s.mesh);
    ChainGraph g = build_chain_graph(s, step);
    std::vector<double> values;
    const double slack = 1e-9;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [x, y] = g.edges[e];
        double len = g.edge_len[e];
        double best = std::numeric_limits<double>::infinity();
        for (int v = 0; v < s.n; ++v) {
            double a = s.d(v, x), b = s.d(v, y);
            // Skip apexes whose geodesics run through the edge itself: the
            // corner walk degenerates to a backtracking path.
            if (a + len <= b + slack || b + len <= a + slack) continue;
            // Skip apexes sitting on the edge's own geodesic: the corner is a
            // flat detour, not a loop. Any essential corner above the floor
            // clears the edge by several steps.
            if (a + b <= len + g.step) continue;
            best = std::min(best, a + b + len);
        }
        if (std::isfinite(best)) values.push_back(0.5 * best);
    }
    std::sort(values.begin(), values.end());
    // Cluster to mesh resolution; keep each cluster's minimum.
    std::vector<double> reps;
    for (double v : values) {
        if (v <= 4.0 * step + s.mesh) continue;  // contractible clutter below the floor
        if (v > hi + 2.5 * s.mesh) break;
        if (reps.empty() || v > reps.back() + s.mesh) reps.push_back(v);
    }
    std::vector<double> out;
    for (double v : reps)
        if (v >= lo - 2.5 * s.mesh) out.push_back(v);
    return out;
}

CovSpecReport covering_spectrum(const FiniteMetricSpace& s, double lo, double hi,
                                const SpectrumOptions& opts) {
    Scanner scanner(s, lo, hi, opts);
    return scanner.run();
}

}  // namespace covlab
