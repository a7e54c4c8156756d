#include "covlab/chain_graph.hpp"

#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace covlab {

ChainGraph build_chain_graph(const FiniteMetricSpace& s, double step) {
    if (step <= 0.0) throw std::invalid_argument("chain step must be positive");
    ChainGraph g;
    g.n = s.n;
    g.step = step;
    for (int i = 0; i < s.n; ++i) {
        const double* row = &s.dist[static_cast<std::size_t>(i) * s.n];
        for (int j = i + 1; j < s.n; ++j) {
            if (row[j] <= step) {
                g.edges.emplace_back(i, j);
                g.edge_len.push_back(row[j]);
            }
        }
    }
    g.off.assign(s.n + 1, 0);
    for (const auto& [u, v] : g.edges) {
        ++g.off[u + 1];
        ++g.off[v + 1];
    }
    for (int i = 0; i < s.n; ++i) g.off[i + 1] += g.off[i];
    g.nbr.resize(g.off[s.n]);
    g.len.resize(g.off[s.n]);
    g.eid.resize(g.off[s.n]);
    std::vector<int> cursor(g.off.begin(), g.off.end() - 1);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        g.nbr[cursor[u]] = v;
        g.len[cursor[u]] = g.edge_len[e];
        g.eid[cursor[u]++] = e;
        g.nbr[cursor[v]] = u;
        g.len[cursor[v]] = g.edge_len[e];
        g.eid[cursor[v]++] = e;
    }
    return g;
}

std::vector<double> chain_distances(const ChainGraph& g, int source) {
    if (source < 0 || source >= g.n) throw std::out_of_range("chain source out of range");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n, inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (int k = g.off[u]; k < g.off[u + 1]; ++k) {
            int v = g.nbr[k];
            double nd = d + g.len[k];
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return dist;
}

std::vector<int> connected_components(const ChainGraph& g, int* count) {
    std::vector<int> label(g.n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int seed = 0; seed < g.n; ++seed) {
        if (label[seed] >= 0) continue;
        label[seed] = next;
        stack.push_back(seed);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int k = g.off[u]; k < g.off[u + 1]; ++k) {
                int v = g.nbr[k];
                if (label[v] < 0) {
                    label[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return label;
}

}  // namespace covlab
