#include "covlab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace covlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_map(const PointMap& m) {
    if (!m.source || !m.target) throw std::invalid_argument("point map needs source and target spaces");
    if (static_cast<int>(m.map.size()) != m.source->n)
        throw std::invalid_argument("point map must be total on the source");
    for (int t : m.map)
        if (t < 0 || t >= m.target->n) throw std::invalid_argument("point map hits an invalid target id");
}

// Search state for the correspondence minimum: a correspondence is minimal
// exactly when it is graph(f) together with graph(g), so the distortion
// minimum runs over function pairs. Slots interleave f and g to make the
// running-max prune bite early.
struct GhSearch {
    const FiniteMetricSpace& a;
    const FiniteMetricSpace& b;
    std::uint64_t budget;
    std::uint64_t evals = 0;
    bool aborted = false;
    double best;
    std::vector<int> f, g, best_f, best_g;
    std::vector<std::pair<char, int>> slots;

    GhSearch(const FiniteMetricSpace& a_, const FiniteMetricSpace& b_, std::uint64_t budget_)
        : a(a_), b(b_), budget(budget_), f(a_.n, -1), g(b_.n, -1) {
        for (int k = 0; k < std::max(a.n, b.n); ++k) {
            if (k < a.n) slots.push_back({'f', k});
            if (k < b.n) slots.push_back({'g', k});
        }
        best = dis(std::vector<int>(a.n, 0), std::vector<int>(b.n, 0));
    }

    // Full distortion of a complete assignment.
    double dis(const std::vector<int>& fv, const std::vector<int>& gv) {
        double m = 0.0;
        for (int i = 0; i < a.n; ++i)
            for (int k = i + 1; k < a.n; ++k)
                m = std::max(m, std::abs(a.d(i, k) - b.d(fv[i], fv[k])));
        for (int i = 0; i < b.n; ++i)
            for (int k = i + 1; k < b.n; ++k)
                m = std::max(m, std::abs(b.d(i, k) - a.d(gv[i], gv[k])));
        for (int i = 0; i < a.n; ++i)
            for (int k = 0; k < b.n; ++k)
                m = std::max(m, std::abs(a.d(i, gv[k]) - b.d(fv[i], k)));
        evals += static_cast<std::uint64_t>(a.n) * a.n + static_cast<std::uint64_t>(b.n) * b.n +
                 static_cast<std::uint64_t>(a.n) * b.n;
        return m;
    }

    double grow_f(int i, int t, double run) {
        for (int k = 0; k < a.n && run < best; ++k)
            if (f[k] >= 0 && k != i) run = std::max(run, std::abs(a.d(i, k) - b.d(t, f[k])));
        for (int k = 0; k < b.n && run < best; ++k)
            if (g[k] >= 0) run = std::max(run, std::abs(a.d(i, g[k]) - b.d(t, k)));
        evals += static_cast<std::uint64_t>(a.n) + b.n;
        return run;
    }

    double grow_g(int i, int t, double run) {
        for (int k = 0; k < b.n && run < best; ++k)
            if (g[k] >= 0 && k != i) run = std::max(run, std::abs(b.d(i, k) - a.d(t, g[k])));
        for (int k = 0; k < a.n && run < best; ++k)
            if (f[k] >= 0) run = std::max(run, std::abs(b.d(i, f[k]) - a.d(t, k)));
        evals += static_cast<std::uint64_t>(a.n) + b.n;
        return run;
    }

    void rec(std::size_t pos, double run) {
        if (evals > budget) {
            aborted = true;
            return;
        }
        if (pos == slots.size()) {
            best = run;  // run < best guaranteed by pruning
            best_f = f;
            best_g = g;
            return;
        }
        auto [side, idx] = slots[pos];
        int targets = side == 'f' ? b.n : a.n;
        for (int t = 0; t < targets && !aborted; ++t) {
            double next = side == 'f' ? grow_f(idx, t, run) : grow_g(idx, t, run);
            if (next >= best) continue;
            (side == 'f' ? f[idx] : g[idx]) = t;
            rec(pos + 1, next);
            (side == 'f' ? f[idx] : g[idx]) = -1;
        }
    }
};

double trend_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) xm += xs[i], ym += ys[i];
    xm /= xs.size(), ym /= ys.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xm) * (ys[i] - ym);
        den += (xs[i] - xm) * (xs[i] - xm);
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

AlmostIsometryCheck almost_isometry_eps(const PointMap& m) {
    check_map(m);
    const FiniteMetricSpace& s = *m.source;
    const FiniteMetricSpace& t = *m.target;
    AlmostIsometryCheck out;
    for (int x = 0; x < s.n; ++x)
        for (int y = x + 1; y < s.n; ++y)
            out.distortion = std::max(out.distortion, std::abs(t.d(m.map[x], m.map[y]) - s.d(x, y)));
    for (int y = 0; y < t.n; ++y) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int x = 0; x < s.n; ++x) nearest = std::min(nearest, t.d(y, m.map[x]));
        out.covering_defect = std::max(out.covering_defect, nearest);
    }
    out.eps = std::max(out.distortion, out.covering_defect);
    return out;
}

GHBound gh_lower_bound(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                       std::uint64_t budget) {
    if (a.n <= 0 || b.n <= 0) throw std::invalid_argument("gh_lower_bound needs nonempty spaces");
    GHBound out;
    if (a.n <= 6 && b.n <= 6) {
        GhSearch search(a, b, budget);
        search.rec(0, 0.0);
        out.bound = search.best / 2.0;
        out.exhaustive = !search.aborted;
        out.evaluations = search.evals;
        if (out.exhaustive) return out;
    }
    // Multi-start local search; valid correspondence values, labeled heuristic.
    GhSearch eval(a, b, budget);  // reused only for dis() and the eval counter
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick_b(0, b.n - 1), pick_a(0, a.n - 1);
    double best = eval.best;
    for (int start = 0; start < 8 && eval.evals < budget; ++start) {
        std::vector<int> f(a.n), g(b.n);
        if (start == 0) {
            for (int i = 0; i < a.n; ++i) f[i] = i % b.n;
            for (int i = 0; i < b.n; ++i) g[i] = i % a.n;
        } else {
            for (int& v : f) v = pick_b(rng);
            for (int& v : g) v = pick_a(rng);
        }
        double cur = eval.dis(f, g);
        bool improved = true;
        while (improved && eval.evals < budget) {
            improved = false;
            for (int i = 0; i < a.n && eval.evals < budget; ++i)
                for (int t = 0; t < b.n; ++t) {
                    if (t == f[i]) continue;
                    int keep = f[i];
                    f[i] = t;
                    double v = eval.dis(f, g);
                    if (v < cur) {
                        cur = v;
                        improved = true;
                    } else {
                        f[i] = keep;
                    }
                }
            for (int i = 0; i < b.n && eval.evals < budget; ++i)
                for (int t = 0; t < a.n; ++t) {
                    if (t == g[i]) continue;
                    int keep = g[i];
                    g[i] = t;
                    double v = eval.dis(f, g);
                    if (v < cur) {
                        cur = v;
                        improved = true;
                    } else {
                        g[i] = keep;
                    }
                }
        }
        best = std::min(best, cur);
    }
    out.bound = best / 2.0;
    out.exhaustive = false;
    out.evaluations = eval.evals;
    return out;
}

FlatBoundReport flat_bound(const FlatBoundInputs& in) {
    auto reject = [](bool bad, const char* field) {
        if (bad) throw std::invalid_argument(std::string("flat_bound: ") + field + " must be nonnegative");
    };
    reject(in.eps < 0.0, "eps");
    reject(in.d_u1 < 0.0, "d_u1");
    reject(in.d_u2 < 0.0, "d_u2");
    reject(in.lambda < 0.0, "lambda");
    reject(in.vol_u1 < 0.0, "vol_u1");
    reject(in.vol_u2 < 0.0, "vol_u2");
    reject(in.vol_bd1 < 0.0, "vol_bd1");
    reject(in.vol_bd2 < 0.0, "vol_bd2");
    reject(in.vol_rest1 < 0.0, "vol_rest1");
    reject(in.vol_rest2 < 0.0, "vol_rest2");
    if (in.margin <= 1.0)
        throw std::invalid_argument("flat_bound: margin must exceed 1 (the width inequality is strict)");

    FlatBoundReport r;
    r.inputs = in;
    double dmax = std::max(in.d_u1, in.d_u2);
    r.a = in.margin * (std::acos(1.0 / (1.0 + in.eps)) / kPi) * dmax;
    r.h = std::sqrt(in.lambda * (dmax + in.lambda / 4.0));
    double stretch = std::sqrt(in.eps * in.eps + 2.0 * in.eps);
    r.hbar = std::max({r.h, stretch * in.d_u1, stretch * in.d_u2});
    r.bound = (2.0 * r.hbar + r.a) * (in.vol_u1 + in.vol_u2 + in.vol_bd1 + in.vol_bd2) +
              in.vol_rest1 + in.vol_rest2;
    return r;
}

const char* trend_name(TrendVerdict v) {
    switch (v) {
        case TrendVerdict::Disappears: return "DISAPPEARS";
        case TrendVerdict::Persists: return "PERSISTS";
        case TrendVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

TrendReport ball_volume_trend(const SpaceSequence& seq, const std::vector<int>& track, double r) {
    if (track.size() != seq.members.size())
        throw std::invalid_argument("ball_volume_trend needs one tracked point per member");
    if (seq.members.size() < 2)
        throw std::invalid_argument("ball_volume_trend needs at least two members");
    TrendReport out;
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < seq.members.size(); ++k) {
        const FiniteMetricSpace& s = seq.members[k].space;
        if (track[k] < 0 || track[k] >= s.n)
            throw std::invalid_argument("ball_volume_trend: tracked point out of range at member " +
                                        std::to_string(k));
        double v = ball_weight(s, track[k], r);
        out.volumes.push_back(v);
        xs.push_back(std::log(static_cast<double>(seq.j_list[k])));
        ys.push_back(std::log(std::max(v, 1e-300)));
    }
    out.slope = trend_slope(xs, ys);
    double ratio = out.volumes.back() / out.volumes.front();
    if (ratio < 0.10 && out.slope < -0.5)
        out.verdict = TrendVerdict::Disappears;
    else if (ratio >= 0.5 && out.slope > -0.15)
        out.verdict = TrendVerdict::Persists;
    else
        out.verdict = TrendVerdict::Inconclusive;
    return out;
}

SequenceReport sequence_invariants(const SpaceSequence& seq, double V0, double D0) {
    SequenceReport out;
    out.V0 = V0;
    out.D0 = D0;
    out.limit_is_zero = seq.limit_is_zero;
    out.all_ok = true;
    for (std::size_t k = 0; k < seq.members.size(); ++k) {
        const ExampleSpace& m = seq.members[k];
        SequenceRow row;
        row.j = seq.j_list[k];
        row.volume = m.volume;
        row.diameter = m.diameter;
        row.mesh = m.space.mesh;
        row.ok_volume = m.volume <= V0 + 1e-9;
        row.ok_diameter = m.diameter <= D0 + 1e-9;
        out.all_ok = out.all_ok && row.ok_volume && row.ok_diameter;
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace covlab
