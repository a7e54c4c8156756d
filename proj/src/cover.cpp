#include "covlab/cover.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace covlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Open-addressing hash map from nonzero u64 keys to u32 values, with
// backward-shift deletion. The lifting loop does one lookup per edge visit,
// so this needs to be much faster than std::unordered_map.
class FlatMap64 {
  public:
    explicit FlatMap64(std::size_t expect = 64) {
        std::size_t cap = 16;
        while (cap < expect * 2) cap <<= 1;
        keys_.assign(cap, 0);
        vals_.resize(cap);
        mask_ = cap - 1;
    }

    std::uint32_t* find(std::uint64_t k) {
        std::size_t i = slot(k);
        while (keys_[i] != 0) {
            if (keys_[i] == k) return &vals_[i];
            i = (i + 1) & mask_;
        }
        return nullptr;
    }

    void insert(std::uint64_t k, std::uint32_t v) {
        if ((count_ + 1) * 10 > (mask_ + 1) * 7) grow();
        std::size_t i = slot(k);
        while (keys_[i] != 0) {
            if (keys_[i] == k) {
                vals_[i] = v;
                return;
            }
            i = (i + 1) & mask_;
        }
        keys_[i] = k;
        vals_[i] = v;
        ++count_;
    }

    void erase(std::uint64_t k) {
        std::size_t i = slot(k);
        while (keys_[i] != 0 && keys_[i] != k) i = (i + 1) & mask_;
        if (keys_[i] == 0) return;
        // Backward-shift: keep the probe chains intact.
        std::size_t hole = i;
        std::size_t j = (i + 1) & mask_;
        while (keys_[j] != 0) {
            std::size_t ideal = slot(keys_[j]);
            // Move keys_[j] into the hole unless its ideal slot lies
            // strictly after the hole along the probe order.
            bool movable = ((j - ideal) & mask_) >= ((j - hole) & mask_);
            if (movable) {
                keys_[hole] = keys_[j];
                vals_[hole] = vals_[j];
                hole = j;
            }
            j = (j + 1) & mask_;
        }
        keys_[hole] = 0;
        --count_;
    }

    std::size_t size() const { return count_; }

  private:
    std::size_t slot(std::uint64_t k) const {
        std::uint64_t h = k * 0x9E3779B97F4A7C15ULL;
        h ^= h >> 29;
        return static_cast<std::size_t>(h) & mask_;
    }

    void grow() {
        std::vector<std::uint64_t> ok(std::move(keys_));
        std::vector<std::uint32_t> ov(std::move(vals_));
        std::size_t cap = (mask_ + 1) * 2;
        keys_.assign(cap, 0);
        vals_.assign(cap, 0);
        mask_ = cap - 1;
        count_ = 0;
        for (std::size_t i = 0; i < ok.size(); ++i)
            if (ok[i] != 0) insert(ok[i], ov[i]);
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> vals_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
};

struct BudgetStop {};

// Incremental enumeration of the truncated cover. Nodes are lift classes
// managed by a union-find whose canonical representative is the smallest
// node id; the first node (id 0) is the basepoint lift, so it always stays
// canonical. Lifted edges live in a hash map keyed by (node, base edge).
class CoverBuilder {
  public:
    CoverBuilder(const FiniteMetricSpace& s, const ChainComplexAtScale& cc, double delta,
                 int basepoint, double R, const CoverBudget& budget)
        : s_(s), cc_(cc), delta_(delta), basepoint_(basepoint), R_(R), budget_(budget) {
        step_ = cc.graph.step;
        // Work horizon: every ball that can influence structure within R has
        // its entry lift inside R + 2*delta; the extra step padding absorbs
        // discretization slack at the rim.
        r_proc_ = R_ + 2.0 * delta_ + 2.0 * step_;
        label_.assign(s_.n, 0);
        stamp_.assign(s_.n, 0);
        create_node(basepoint_);
        node_dist_[0] = 0.0;
    }

    void run() {
        try {
            for (;;) {
                dijkstra();
                auto tasks = collect_tasks();
                if (tasks.empty()) break;
                for (const auto& t : tasks) {
                    int entry = find(t.node);
                    if (entry != t.node) continue;  // merged away meanwhile
                    walk_ball(t.witness, entry);
                    done_.insert(done_key(t.witness, find(entry)), 1);
                }
            }
        } catch (BudgetStop&) {
            budget_hit_ = true;
        }
        dijkstra();
    }

    TruncatedCover finish() {
        TruncatedCover out;
        out.delta = delta_;
        out.R = R_;
        out.step = step_;
        out.basepoint = basepoint_;
        out.budget_hit = budget_hit_;
        out.complete_within_R = !budget_hit_;
        out.base_diameter = s_.diameter();

        std::vector<int> live;
        for (int x = 0; x < node_count(); ++x)
            if (find(x) == x) live.push_back(x);
        std::vector<int> order(live);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (node_dist_[a] != node_dist_[b]) return node_dist_[a] < node_dist_[b];
            if (node_base_[a] != node_base_[b]) return node_base_[a] < node_base_[b];
            return a < b;
        });
        std::vector<int> remap(node_count(), -1);
        for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<int>(i);

        out.base.resize(order.size());
        out.dist.resize(order.size());
        out.adjacency.assign(order.size(), {});
        for (std::size_t i = 0; i < order.size(); ++i) {
            int x = order[i];
            out.base[i] = node_base_[x];
            out.dist[i] = node_dist_[x];
            auto& row = out.adjacency[i];
            for (auto [tgt, e] : adj_[x]) {
                std::uint32_t* cur = edges_.find(edge_key(x, e));
                if (!cur) continue;  // stale duplicate entry
                row.emplace_back(remap[find(static_cast<int>(*cur))], e);
            }
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
        out.basepoint_node = remap[0];
        out.edge_len = cc_.edge_len;

        // Closed covers have every incident edge of every lift defined.
        bool closed = !budget_hit_;
        for (int x : live) {
            if (!closed) break;
            int v = node_base_[x];
            for (int k = cc_.graph.off[v]; k < cc_.graph.off[v + 1] && closed; ++k)
                if (!edges_.find(edge_key(x, cc_.graph.eid[k]))) closed = false;
        }
        out.closed = closed;

        out.profile.assign(s_.n, 0);
        for (std::size_t i = 0; i < order.size(); ++i)
            if (out.dist[i] < R_) ++out.profile[out.base[i]];
        return out;
    }

  private:
    struct Task {
        double dist;
        int witness;
        int node;
        bool operator<(const Task& o) const {
            if (dist != o.dist) return dist < o.dist;
            if (witness != o.witness) return witness < o.witness;
            return node < o.node;
        }
    };

    int node_count() const { return static_cast<int>(node_base_.size()); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    static std::uint64_t edge_key(int node, int e) {
        return ((static_cast<std::uint64_t>(node) + 1) << 21) | static_cast<std::uint64_t>(e);
    }

    static std::uint64_t done_key(int witness, int node) {
        return ((static_cast<std::uint64_t>(witness) + 1) << 40) |
               static_cast<std::uint64_t>(node);
    }

    int create_node(int base_vertex) {
        if (node_base_.size() >= budget_.max_nodes) throw BudgetStop{};
        int id = node_count();
        node_base_.push_back(base_vertex);
        node_dist_.push_back(kInf);
        parent_.push_back(id);
        adj_.emplace_back();
        return id;
    }

    void add_lifted_edge(int a, int e, int b) {
        edges_.insert(edge_key(a, e), static_cast<std::uint32_t>(b));
        std::uint32_t* mirror = edges_.find(edge_key(b, e));
        if (mirror) {
            int other = find(static_cast<int>(*mirror));
            if (other != a) merge(other, a);
        } else {
            edges_.insert(edge_key(b, e), static_cast<std::uint32_t>(a));
        }
        adj_[a].emplace_back(b, e);
        adj_[b].emplace_back(a, e);
    }

    // Union with coincidence cascade. Only lifts of the same base vertex are
    // ever merged; the smaller node id survives.
    void merge(int x, int y) {
        pending_.emplace_back(x, y);
        while (!pending_.empty()) {
            auto [p, q] = pending_.back();
            pending_.pop_back();
            p = find(p);
            q = find(q);
            if (p == q) continue;
            if (q < p) std::swap(p, q);
            if (node_base_[p] != node_base_[q])
                throw std::logic_error("cover lifting merged lifts of distinct base points");
            parent_[q] = p;
            node_dist_[p] = std::min(node_dist_[p], node_dist_[q]);
            for (auto [tgt, e] : adj_[q]) {
                (void)tgt;
                std::uint32_t* it = edges_.find(edge_key(q, e));
                if (!it) continue;  // relocated already via a duplicate entry
                int val = find(static_cast<int>(*it));
                edges_.erase(edge_key(q, e));
                std::uint32_t* ex = edges_.find(edge_key(p, e));
                if (ex) {
                    int old = find(static_cast<int>(*ex));
                    if (old != val) pending_.emplace_back(old, val);
                } else {
                    edges_.insert(edge_key(p, e), static_cast<std::uint32_t>(val));
                }
            }
            auto& ap = adj_[p];
            auto& aq = adj_[q];
            ap.insert(ap.end(), aq.begin(), aq.end());
            aq.clear();
            aq.shrink_to_fit();
        }
    }

    // Labels the lift of the open ball B(witness, delta) component through
    // `entry`, closing every relator cycle inside it: conflicting labels
    // merge, determined-but-missing edges are added, unreachable endpoints
    // get fresh lift nodes.
    void walk_ball(int witness, int entry) {
        ++cur_stamp_;
        const double* drow = &s_.dist[static_cast<std::size_t>(witness) * s_.n];
        label_[witness] = entry;
        stamp_[witness] = cur_stamp_;
        queue_.clear();
        queue_.push_back(witness);
        std::size_t head = 0;
        while (head < queue_.size()) {
            int u = queue_[head++];
            int lu = find(label_[u]);
            label_[u] = lu;
            for (int k = cc_.graph.off[u]; k < cc_.graph.off[u + 1]; ++k) {
                int v = cc_.graph.nbr[k];
                int e = cc_.graph.eid[k];
                // An edge is usable only when its realized geodesic segment is
                // certifiably inside the open ball: any point of the segment is
                // within (d(w,u) + d(w,v) + len)/2 of the witness. Endpoint-only
                // membership would admit chords that leave the ball and bias
                // every spectrum value low by a mesh length.
                if (!(0.5 * (drow[u] + drow[v] + cc_.edge_len[e]) < delta_)) continue;
                if (++steps_ > budget_.max_steps) throw BudgetStop{};
                std::uint32_t* t = edges_.find(edge_key(lu, e));
                if (stamp_[v] == cur_stamp_) {
                    int lv = find(label_[v]);
                    label_[v] = lv;
                    if (t) {
                        int tgt = find(static_cast<int>(*t));
                        if (tgt != lv) merge(tgt, lv);
                    } else {
                        add_lifted_edge(lu, e, lv);
                    }
                } else {
                    int lv;
                    if (t) {
                        lv = find(static_cast<int>(*t));
                    } else {
                        lv = create_node(v);
                        add_lifted_edge(lu, e, lv);
                    }
                    label_[v] = lv;
                    stamp_[v] = cur_stamp_;
                    queue_.push_back(v);
                }
            }
        }
    }

    void dijkstra() {
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (int x = 0; x < node_count(); ++x)
            if (find(x) == x) node_dist_[x] = kInf;
        node_dist_[0] = 0.0;
        heap.emplace(0.0, 0);
        while (!heap.empty()) {
            auto [d, x] = heap.top();
            heap.pop();
            if (find(x) != x || d > node_dist_[x]) continue;
            for (auto [tgt, e] : adj_[x]) {
                std::uint32_t* cur = edges_.find(edge_key(x, e));
                if (!cur) continue;
                int y = find(static_cast<int>(*cur));
                double nd = d + cc_.edge_len[e];
                if (nd < node_dist_[y]) {
                    node_dist_[y] = nd;
                    heap.emplace(nd, y);
                }
            }
        }
    }

    std::vector<Task> collect_tasks() {
        std::vector<Task> tasks;
        for (int x = 0; x < node_count(); ++x) {
            if (find(x) != x || node_dist_[x] > r_proc_) continue;
            int w = node_base_[x];
            if (done_.find(done_key(w, x))) continue;
            tasks.push_back({node_dist_[x], w, x});
        }
        std::sort(tasks.begin(), tasks.end());
        if (budget_.task_order_seed != 0) {
            std::mt19937 rng(budget_.task_order_seed + static_cast<unsigned>(rounds_));
            std::shuffle(tasks.begin(), tasks.end(), rng);
        }
        ++rounds_;
        return tasks;
    }

    const FiniteMetricSpace& s_;
    const ChainComplexAtScale& cc_;
    double delta_;
    int basepoint_;
    double R_;
    CoverBudget budget_;
    double step_ = 0.0;
    double r_proc_ = 0.0;

    std::vector<int> node_base_;
    std::vector<double> node_dist_;
    std::vector<int> parent_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    FlatMap64 edges_{1 << 12};
    FlatMap64 done_{1 << 12};
    std::vector<std::pair<int, int>> pending_;

    std::vector<int> label_;
    std::vector<int> stamp_;
    std::vector<int> queue_;
    int cur_stamp_ = 0;
    unsigned long long steps_ = 0;
    long long rounds_ = 0;
    bool budget_hit_ = false;
};

}  // namespace

ChainComplexAtScale chain_complex(const FiniteMetricSpace& s, double delta) {
    double step = chain_step(s.mesh);
    if (!(delta > 4.0 * step)) {
        std::ostringstream msg;
        msg << "relator scale delta = " << delta
            << " is below the resolvable scale of this sample; smallest certifiable delta is "
            << 4.0 * step << " (4 * chain step, step = 2.5 * mesh = " << step << ")";
        throw std::invalid_argument(msg.str());
    }
    ChainComplexAtScale cc;
    cc.graph = build_chain_graph(s, step);
    cc.delta = delta;
    int comps = 0;
    connected_components(cc.graph, &comps);
    if (comps != 1) {
        std::ostringstream msg;
        msg << "chain graph is disconnected (" << comps
            << " components); covers are grown per component";
        throw std::invalid_argument(msg.str());
    }
    cc.edges = cc.graph.edges;
    cc.edge_len = cc.graph.edge_len;
    return cc;
}

TruncatedCover truncated_cover(const FiniteMetricSpace& s, double delta, int basepoint,
                               double R, const CoverBudget& budget) {
    if (basepoint < 0 || basepoint >= s.n) throw std::out_of_range("basepoint out of range");
    if (!(R > 0.0)) throw std::invalid_argument("truncation radius must be positive");
    ChainComplexAtScale cc = chain_complex(s, delta);
    CoverBuilder builder(s, cc, delta, basepoint, R, budget);
    builder.run();
    return builder.finish();
}

int lift_count(const TruncatedCover& c, int q) {
    if (q < 0 || q >= static_cast<int>(c.profile.size()))
        throw std::out_of_range("base vertex out of range");
    return c.profile[q];
}

bool lift_count_is_exact(const TruncatedCover& c, int q) {
    if (c.closed) return true;
    if (!c.complete_within_R) return false;
    double need = c.base_diameter * (lift_count(c, q) + 1);
    return need < c.R;
}

DifferReport covers_differ(const FiniteMetricSpace& s, double delta1, double delta2,
                           int basepoint, double R, const CoverBudget& budget) {
    if (delta1 > delta2) std::swap(delta1, delta2);
    DifferReport rep;
    rep.cover_low = truncated_cover(s, delta1, basepoint, R, budget);
    rep.cover_high = truncated_cover(s, delta2, basepoint, R, budget);
    const auto& lo = rep.cover_low;
    const auto& hi = rep.cover_high;

    bool certified = lo.complete_within_R && hi.complete_within_R;
    if (certified) {
        const double* drow = &s.dist[static_cast<std::size_t>(basepoint) * s.n];
        for (int q = 0; q < s.n; ++q) {
            if (drow[q] < R / 2.0 && lo.profile[q] < hi.profile[q]) {
                rep.monotone_violation = true;
                rep.witness = q;
                rep.count_low = lo.profile[q];
                rep.count_high = hi.profile[q];
                return rep;
            }
        }
    }

    for (int q = 0; q < s.n; ++q) {
        if (lo.profile[q] != hi.profile[q]) {
            rep.witness = q;
            rep.count_low = lo.profile[q];
            rep.count_high = hi.profile[q];
            rep.verdict = certified ? Verdict::True : Verdict::Unknown;
            return rep;
        }
    }
    rep.verdict = certified ? Verdict::False : Verdict::Unknown;
    return rep;
}

double lifted_distance(const TruncatedCover& c, int node_u, int node_v, double cutoff) {
    int n = c.nodes();
    if (node_u < 0 || node_u >= n || node_v < 0 || node_v >= n)
        throw std::out_of_range("cover node out of range");
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[node_u] = 0.0;
    heap.emplace(0.0, node_u);
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (d > dist[x]) continue;
        if (x == node_v) return d;
        if (d > cutoff) break;
        for (auto [y, e] : c.adjacency[x]) {
            double nd = d + c.edge_len[e];
            if (nd < dist[y]) {
                dist[y] = nd;
                heap.emplace(nd, y);
            }
        }
    }
    return dist[node_v];
}

bool has_branched_relator(const FiniteMetricSpace& s, const TruncatedCover& c) {
    // Re-walk every ball relator using the compacted structure: a conflict
    // between two determined labels is a branched lift.
    ChainGraph g = build_chain_graph(s, c.step);
    int n = c.nodes();
    FlatMap64 lifted(static_cast<std::size_t>(n) * 4);
    for (int x = 0; x < n; ++x)
        for (auto [y, e] : c.adjacency[x])
            lifted.insert(((static_cast<std::uint64_t>(x) + 1) << 21) | static_cast<std::uint64_t>(e),
                          static_cast<std::uint32_t>(y));
    std::vector<int> label(s.n, -1), stamp(s.n, -1);
    std::vector<int> queue;
    for (int entry = 0; entry < n; ++entry) {
        int w = c.base[entry];
        const double* drow = &s.dist[static_cast<std::size_t>(w) * s.n];
        int cur = entry;
        label[w] = cur;
        stamp[w] = entry;
        queue.clear();
        queue.push_back(w);
        std::size_t head = 0;
        while (head < queue.size()) {
            int u = queue[head++];
            int lu = label[u];
            for (int k = g.off[u]; k < g.off[u + 1]; ++k) {
                int v = g.nbr[k];
                if (!(0.5 * (drow[u] + drow[v] + g.edge_len[g.eid[k]]) < c.delta)) continue;
                std::uint32_t* t =
                    lifted.find(((static_cast<std::uint64_t>(lu) + 1) << 21) |
                                static_cast<std::uint64_t>(g.eid[k]));
                if (!t) continue;  // truncated at the horizon: not a branch
                int lv = static_cast<int>(*t);
                if (stamp[v] == entry) {
                    if (label[v] != lv) return true;
                } else {
                    label[v] = lv;
                    stamp[v] = entry;
                    queue.push_back(v);
                }
            }
        }
    }
    return false;
}

ComponentCovers cover_components(const DisjointSpace& ds, double delta,
                                 const std::vector<int>& basepoints, double R,
                                 const CoverBudget& budget) {
    if (basepoints.size() != ds.components.size())
        throw std::invalid_argument("one basepoint per component required");
    ComponentCovers out;
    out.component_count = static_cast<int>(ds.components.size());
    for (std::size_t i = 0; i < ds.components.size(); ++i) {
        TruncatedCover c = truncated_cover(ds.components[i], delta, basepoints[i], R, budget);
        out.per_component.push_back(lift_count(c, basepoints[i]));
        out.total += out.per_component.back();
    }
    return out;
}

}  // namespace covlab
