#include "covlab/metric_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "covlab/chain_graph.hpp"
#include "covlab/parallel.hpp"

namespace covlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Adj {
    std::vector<int> off, nbr;
    std::vector<double> len;
};

Adj to_csr(int n, const std::vector<std::array<double, 3>>& half_edges) {
    // half_edges entries are {u, v, len} with both directions present.
    Adj a;
    a.off.assign(n + 1, 0);
    for (const auto& e : half_edges) a.off[static_cast<int>(e[0]) + 1]++;
    for (int i = 0; i < n; ++i) a.off[i + 1] += a.off[i];
    a.nbr.resize(half_edges.size());
    a.len.resize(half_edges.size());
    std::vector<int> cur(a.off.begin(), a.off.end() - 1);
    for (const auto& e : half_edges) {
        int u = static_cast<int>(e[0]);
        a.nbr[cur[u]] = static_cast<int>(e[1]);
        a.len[cur[u]] = e[2];
        cur[u]++;
    }
    return a;
}

void dijkstra(const Adj& a, int source, std::vector<double>& dist) {
    const int n = static_cast<int>(a.off.size()) - 1;
    dist.assign(n, kInf);
    dist[source] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        for (int k = a.off[u]; k < a.off[u + 1]; ++k) {
            int v = a.nbr[k];
            double cand = du + a.len[k];
            if (cand < dist[v]) {
                dist[v] = cand;
                heap.push({cand, v});
            }
        }
    }
}

}  // namespace

FiniteMetricSpace metric_from_graph(const MetricGraph& g, double subdivision) {
    if (g.vertices <= 0) throw std::runtime_error("metric_from_graph: no vertices");
    if (subdivision <= 0.0) throw std::runtime_error("metric_from_graph: subdivision must be positive");
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.u >= g.vertices || e.v < 0 || e.v >= g.vertices)
            throw std::runtime_error("metric_from_graph: edge endpoint out of range");
        if (e.len <= 0.0) throw std::runtime_error("metric_from_graph: edge length must be positive");
    }

    // Subdivide: vertices keep their indices, interior points are appended.
    std::vector<std::array<double, 3>> half_edges;
    std::vector<double> weights(g.vertices, 0.0);
    int next = g.vertices;
    for (const auto& e : g.edges) {
        int segs = std::max(1, static_cast<int>(std::ceil(e.len / subdivision)));
        if (e.u == e.v && segs < 3) segs = 3;  // a loop needs interior points to be a cycle
        double seg = e.len / segs;
        int prev = e.u;
        for (int i = 1; i < segs; ++i) {
            int node = next++;
            half_edges.push_back({double(prev), double(node), seg});
            half_edges.push_back({double(node), double(prev), seg});
            prev = node;
        }
        half_edges.push_back({double(prev), double(e.v), seg});
        half_edges.push_back({double(e.v), double(prev), seg});
    }
    // 1-dimensional volume: every point carries half of each incident segment.
    weights.assign(next, 0.0);
    for (const auto& he : half_edges) weights[static_cast<int>(he[0])] += he[2] / 2;

    const int n = next;
    Adj adj = to_csr(n, half_edges);

    // Connectivity check with component naming.
    {
        std::vector<int> comp(n, -1);
        int count = 0;
        for (int s = 0; s < n; ++s) {
            if (comp[s] != -1) continue;
            comp[s] = count;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int k = adj.off[u]; k < adj.off[u + 1]; ++k)
                    if (comp[adj.nbr[k]] == -1) {
                        comp[adj.nbr[k]] = count;
                        stack.push_back(adj.nbr[k]);
                    }
            }
            ++count;
        }
        if (count > 1)
            throw std::runtime_error("metric_from_graph: graph has " + std::to_string(count) +
                                     " components; vertex 0 and vertex " +
                                     std::to_string(static_cast<int>(
                                         std::find(comp.begin(), comp.end(), 1) - comp.begin())) +
                                     " are disconnected");
    }

    FiniteMetricSpace s;
    s.n = n;
    s.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
    s.weights = std::move(weights);
    parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> row;
        for (std::size_t src = lo; src < hi; ++src) {
            dijkstra(adj, static_cast<int>(src), row);
            std::copy(row.begin(), row.end(), s.dist.begin() + src * n);
        }
    });
    s.mesh = compute_mesh(s);
    return s;
}

FiniteMetricSpace metric_from_edges(int n, const std::vector<MetricGraph::Edge>& edges,
                                    std::vector<double> weights) {
    if (n <= 0) throw std::runtime_error("metric_from_edges: no points");
    if (static_cast<int>(weights.size()) != n)
        throw std::runtime_error("metric_from_edges: one weight per point required");
    std::vector<std::array<double, 3>> half_edges;
    half_edges.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
            throw std::runtime_error("metric_from_edges: bad edge endpoints");
        if (e.len <= 0.0) throw std::runtime_error("metric_from_edges: edge length must be positive");
        half_edges.push_back({double(e.u), double(e.v), e.len});
        half_edges.push_back({double(e.v), double(e.u), e.len});
    }
    Adj adj = to_csr(n, half_edges);
    FiniteMetricSpace s;
    s.n = n;
    s.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
    s.weights = std::move(weights);
    bool disconnected = false;
    parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> row;
        for (std::size_t src = lo; src < hi; ++src) {
            dijkstra(adj, static_cast<int>(src), row);
            for (double d : row)
                if (d == kInf) disconnected = true;
            std::copy(row.begin(), row.end(), s.dist.begin() + src * n);
        }
    });
    if (disconnected) throw std::runtime_error("metric_from_edges: graph is disconnected");
    // Per-source relaxations can land one ulp apart in the two directions;
    // pin the matrix to exact symmetry.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            std::size_t ij = static_cast<std::size_t>(i) * n + j;
            std::size_t ji = static_cast<std::size_t>(j) * n + i;
            double d = std::min(s.dist[ij], s.dist[ji]);
            s.dist[ij] = d;
            s.dist[ji] = d;
        }
    s.mesh = compute_mesh(s);
    return s;
}

FiniteMetricSpace glue(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                       const std::vector<int>& first, const std::vector<int>& second,
                       double* seam_mismatch, std::vector<int>* map_b) {
    if (first.size() != second.size() || first.empty())
        throw std::runtime_error("glue: junction lists must be non-empty and equal length");
    const int k = static_cast<int>(first.size());
    for (int p = 0; p < k; ++p) {
        if (first[p] < 0 || first[p] >= a.n || second[p] < 0 || second[p] >= b.n)
            throw std::runtime_error("glue: junction index out of range");
    }
    {
        std::vector<int> f = first, s = second;
        std::sort(f.begin(), f.end());
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end() ||
            std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::runtime_error("glue: a point may appear in at most one junction");
    }

    // Distances between junctions inside the glued space: start from the
    // cheaper of the two sides, then transitively close (paths may hop
    // between sides at any junction).
    std::vector<double> js(static_cast<std::size_t>(k) * k);
    double mismatch = 0.0;
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
            double da = a.d(first[p], first[q]);
            double db = b.d(second[p], second[q]);
            mismatch = std::max(mismatch, std::abs(da - db));
            js[static_cast<std::size_t>(p) * k + q] = std::min(da, db);
        }
    if (seam_mismatch) *seam_mismatch = mismatch;
    for (int m = 0; m < k; ++m)
        for (int p = 0; p < k; ++p) {
            double dpm = js[static_cast<std::size_t>(p) * k + m];
            for (int q = 0; q < k; ++q)
                js[static_cast<std::size_t>(p) * k + q] =
                    std::min(js[static_cast<std::size_t>(p) * k + q],
                             dpm + js[static_cast<std::size_t>(m) * k + q]);
        }

    // Output indexing: all of a, then the points of b that are not junctions.
    std::vector<int> b_new(b.n, -1);
    std::vector<int> b_keep;
    b_keep.reserve(b.n - k);
    {
        std::vector<char> is_junction(b.n, 0);
        for (int p = 0; p < k; ++p) is_junction[second[p]] = 1;
        for (int j = 0; j < b.n; ++j)
            if (!is_junction[j]) {
                b_new[j] = a.n + static_cast<int>(b_keep.size());
                b_keep.push_back(j);
            }
        for (int p = 0; p < k; ++p) b_new[second[p]] = first[p];
    }
    if (map_b) *map_b = b_new;
    const int n = a.n + static_cast<int>(b_keep.size());

    // Best path cost from every point to every junction, allowing side hops.
    // ja[x][q]: x in a to junction q. jb likewise for retained b points.
    auto best_to_junction = [&](const FiniteMetricSpace& side, const std::vector<int>& anchors,
                                const std::vector<int>& pts) {
        std::vector<double> out(pts.size() * k, kInf);
        for (std::size_t xi = 0; xi < pts.size(); ++xi)
            for (int q = 0; q < k; ++q) {
                double best = kInf;
                for (int p = 0; p < k; ++p) {
                    double cand = side.d(pts[xi], anchors[p]) + js[static_cast<std::size_t>(p) * k + q];
                    best = std::min(best, cand);
                }
                out[xi * k + q] = best;
            }
        return out;
    };
    std::vector<int> a_pts(a.n);
    for (int i = 0; i < a.n; ++i) a_pts[i] = i;
    std::vector<double> ja = best_to_junction(a, first, a_pts);
    std::vector<double> jb = best_to_junction(b, second, b_keep);

    FiniteMetricSpace out;
    out.n = n;
    out.dist.assign(static_cast<std::size_t>(n) * n, kInf);
    out.weights.assign(n, 0.0);
    for (int i = 0; i < a.n; ++i) out.weights[i] = a.weights[i];
    for (std::size_t xi = 0; xi < b_keep.size(); ++xi) out.weights[a.n + xi] = b.weights[b_keep[xi]];
    for (int p = 0; p < k; ++p) out.weights[first[p]] += b.weights[second[p]];
    if (!a.coords.empty()) {
        out.coords.assign(n, {0, 0, 0});
        for (int i = 0; i < a.n; ++i) out.coords[i] = a.coords[i];
        if (!b.coords.empty())
            for (std::size_t xi = 0; xi < b_keep.size(); ++xi) out.coords[a.n + xi] = b.coords[b_keep[xi]];
    }

    parallel_chunks(a.n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double* row = out.dist.data() + i * n;
            for (int j = 0; j < a.n; ++j) {
                double best = a.d(static_cast<int>(i), j);
                for (int q = 0; q < k; ++q)
                    best = std::min(best, ja[i * k + q] + a.d(first[q], j));
                row[j] = best;
            }
            for (std::size_t yj = 0; yj < b_keep.size(); ++yj) {
                double best = kInf;
                for (int q = 0; q < k; ++q)
                    best = std::min(best, ja[i * k + q] + b.d(second[q], b_keep[yj]));
                row[a.n + yj] = best;
            }
        }
    });
    parallel_chunks(b_keep.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t xi = lo; xi < hi; ++xi) {
            double* row = out.dist.data() + (a.n + xi) * n;
            for (std::size_t yj = 0; yj < b_keep.size(); ++yj) {
                double best = b.d(b_keep[xi], b_keep[yj]);
                for (int q = 0; q < k; ++q)
                    best = std::min(best, jb[xi * k + q] + b.d(second[q], b_keep[yj]));
                row[a.n + yj] = best;
            }
            for (int j = 0; j < a.n; ++j) row[j] = out.dist[static_cast<std::size_t>(j) * n + a.n + xi];
        }
    });
    // The b-side rows referenced a-side rows, which are filled first; the two
    // passes above must therefore stay sequential.
    out.mesh = compute_mesh(out);
    out.name = a.name.empty() ? b.name : a.name + "+" + b.name;
    return out;
}

FiniteMetricSpace product_l2(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                             std::size_t max_points) {
    const std::size_t n = static_cast<std::size_t>(a.n) * b.n;
    if (n > max_points)
        throw std::runtime_error("product_l2: " + std::to_string(n) + " points exceeds budget of " +
                                 std::to_string(max_points));
    FiniteMetricSpace out;
    out.n = static_cast<int>(n);
    out.dist.resize(n * n);
    out.weights.resize(n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < b.n; ++j) out.weights[static_cast<std::size_t>(i) * b.n + j] = a.weights[i] * b.weights[j];
    parallel_chunks(static_cast<std::size_t>(a.n), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i1 = lo; i1 < hi; ++i1)
            for (int j1 = 0; j1 < b.n; ++j1) {
                double* row = out.dist.data() + (i1 * b.n + j1) * n;
                const double* ra = a.dist.data() + i1 * a.n;
                const double* rb = b.dist.data() + static_cast<std::size_t>(j1) * b.n;
                for (int i2 = 0; i2 < a.n; ++i2) {
                    double da = ra[i2];
                    double* cell = row + static_cast<std::size_t>(i2) * b.n;
                    for (int j2 = 0; j2 < b.n; ++j2) cell[j2] = std::hypot(da, rb[j2]);
                }
            }
    });
    out.mesh = std::sqrt(a.mesh * a.mesh + b.mesh * b.mesh);
    out.name = (a.name.empty() ? "a" : a.name) + "x" + (b.name.empty() ? "b" : b.name);
    return out;
}

FiniteMetricSpace quotient_by_involution(const FiniteMetricSpace& a, const std::vector<int>& sigma,
                                         double isometry_tol) {
    if (static_cast<int>(sigma.size()) != a.n)
        throw std::runtime_error("quotient_by_involution: permutation size mismatch");
    for (int i = 0; i < a.n; ++i) {
        if (sigma[i] < 0 || sigma[i] >= a.n)
            throw std::runtime_error("quotient_by_involution: index out of range");
        if (sigma[i] == i)
            throw std::runtime_error("quotient_by_involution: fixed point at index " + std::to_string(i) +
                                     "; the action must be free");
        if (sigma[sigma[i]] != i)
            throw std::runtime_error("quotient_by_involution: not an involution at index " + std::to_string(i));
    }
    for (int i = 0; i < a.n; ++i) {
        const double* ri = a.dist.data() + static_cast<std::size_t>(i) * a.n;
        const double* rsi = a.dist.data() + static_cast<std::size_t>(sigma[i]) * a.n;
        for (int j = 0; j < a.n; ++j)
            if (std::abs(ri[j] - rsi[sigma[j]]) > isometry_tol)
                throw std::runtime_error("quotient_by_involution: map distorts d(" + std::to_string(i) +
                                         "," + std::to_string(j) + ") by " +
                                         std::to_string(std::abs(ri[j] - rsi[sigma[j]])));
    }

    std::vector<int> reps;
    reps.reserve(a.n / 2);
    for (int i = 0; i < a.n; ++i)
        if (i < sigma[i]) reps.push_back(i);
    const int n = static_cast<int>(reps.size());

    FiniteMetricSpace out;
    out.n = n;
    out.dist.resize(static_cast<std::size_t>(n) * n);
    out.weights.resize(n);
    if (!a.coords.empty()) out.coords.resize(n);
    for (int x = 0; x < n; ++x) {
        out.weights[x] = (a.weights[reps[x]] + a.weights[sigma[reps[x]]]) / 2;
        if (!a.coords.empty()) out.coords[x] = a.coords[reps[x]];
    }
    parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t x = lo; x < hi; ++x) {
            const double* ri = a.dist.data() + static_cast<std::size_t>(reps[x]) * a.n;
            double* row = out.dist.data() + x * n;
            for (int y = 0; y < n; ++y)
                row[y] = std::min(ri[reps[y]], ri[sigma[reps[y]]]);
        }
    });
    out.mesh = compute_mesh(out);
    out.name = a.name.empty() ? "quotient" : a.name + "/invol";
    return out;
}

}  // namespace covlab
