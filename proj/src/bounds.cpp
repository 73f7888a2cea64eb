#include "gab/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace gab {

long long wilber1(const AccessSequence& x, ReferenceBst& r) {
    if (x.n > r.n) throw std::invalid_argument("wilber1: sequence universe exceeds tree");
    r.reset_preferred();
    long long switches = 0;
    for (int t = 1; t <= x.m(); ++t) {
        int id = r.root;
        while (!r.is_leaf(id)) {
            auto& nd = r.nodes[static_cast<size_t>(id)];
            const int next = x.at(t) <= nd.split ? nd.left : nd.right;
            if (nd.pref != -1 && nd.pref != next) ++switches;
            nd.pref = next;
            id = next;
        }
    }
    return switches;
}

namespace {

// Root-to-leaf paths in the almost complete reference tree; the cost of a
// finger move is the node count of the walked path (1 when source equals
// destination).
class LeafMetric {
public:
    explicit LeafMetric(int n) {
        ReferenceBst bst = ReferenceBst::almost_complete(n);
        paths_.reserve(static_cast<size_t>(n));
        for (int key = 1; key <= n; ++key) paths_.push_back(bst.path_to(key));
    }

    int path_nodes(int a, int b) const {
        const auto& pa = paths_[static_cast<size_t>(a) - 1];
        const auto& pb = paths_[static_cast<size_t>(b) - 1];
        size_t c = 0;
        while (c < pa.size() && c < pb.size() && pa[c] == pb[c]) ++c;
        return static_cast<int>(pa.size() - c) + static_cast<int>(pb.size() - c) + 1;
    }

private:
    std::vector<std::vector<int>> paths_;
};

long long multiset_count(int n, int k) {
    long long c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n + i - 1) / i;
        if (c > std::numeric_limits<long long>::max() / (n + k)) return c;
    }
    return c;
}

void enumerate_multisets(int n, int k, int lo, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v <= n; ++v) {
        cur.push_back(v);
        enumerate_multisets(n, k, v, cur, out);
        cur.pop_back();
    }
}

} // namespace

KFingerResult kfinger_exact(const AccessSequence& x, int k, long long max_states,
                            bool optimize_initial) {
    if (k < 1) throw std::invalid_argument("kfinger_exact: k must be >= 1");
    const int n = x.n;
    const int m = x.m();
    const long long states = multiset_count(n, k);
    if (states > max_states || states * static_cast<long long>(std::max(1, m)) > 4 * max_states)
        throw InstanceTooLarge("kfinger_exact: state space too large for this instance");

    const LeafMetric metric(n);

    struct Entry {
        long long cost;
        int prev;     // state index in the previous layer
        int moved;    // finger position that moved, -1 in layer 0
    };
    using Layer = std::map<std::vector<int>, Entry>;

    Layer layer;
    if (optimize_initial) {
        std::vector<std::vector<int>> all;
        std::vector<int> cur;
        enumerate_multisets(n, k, 1, cur, all);
        for (auto& s : all) layer.emplace(std::move(s), Entry{0, -1, -1});
    } else {
        std::vector<int> fixed;
        for (int i = 1; i <= k; ++i) fixed.push_back(std::min(i, n));
        std::sort(fixed.begin(), fixed.end());
        layer.emplace(std::move(fixed), Entry{0, -1, -1});
    }

    // Breadcrumbs for trace reconstruction: flat copy of each layer.
    std::vector<std::vector<std::pair<std::vector<int>, Entry>>> history;
    history.emplace_back(layer.begin(), layer.end());

    for (int t = 1; t <= m; ++t) {
        const int target = x.at(t);
        Layer next;
        const auto& prev_flat = history.back();
        for (size_t si = 0; si < prev_flat.size(); ++si) {
            const auto& [state, entry] = prev_flat[si];
            int last = -1;
            for (int i = 0; i < k; ++i) {
                const int from = state[static_cast<size_t>(i)];
                if (from == last) continue; // identical fingers move identically
                last = from;
                std::vector<int> moved = state;
                moved[static_cast<size_t>(i)] = target;
                std::sort(moved.begin(), moved.end());
                const long long cost = entry.cost + metric.path_nodes(from, target);
                auto it = next.find(moved);
                if (it == next.end())
                    next.emplace(std::move(moved), Entry{cost, static_cast<int>(si), from});
                else if (cost < it->second.cost)
                    it->second = Entry{cost, static_cast<int>(si), from};
            }
        }
        layer = std::move(next);
        history.emplace_back(layer.begin(), layer.end());
    }

    // Best final state, then walk breadcrumbs back to the initial placement.
    const auto& final_flat = history.back();
    size_t best = 0;
    for (size_t i = 1; i < final_flat.size(); ++i)
        if (final_flat[i].second.cost < final_flat[best].second.cost) best = i;

    KFingerResult res;
    res.value = final_flat[best].second.cost;
    res.trace.k = k;
    res.trace.positions.assign(static_cast<size_t>(m) + 1, {});
    res.trace.step_cost.assign(static_cast<size_t>(m), 0);
    int idx = static_cast<int>(best);
    for (int t = m; t >= 0; --t) {
        const auto& [state, entry] = history[static_cast<size_t>(t)][static_cast<size_t>(idx)];
        res.trace.positions[static_cast<size_t>(t)] = state;
        if (t > 0) {
            res.trace.step_cost[static_cast<size_t>(t) - 1] = metric.path_nodes(entry.moved, x.at(t));
            idx = entry.prev;
        }
    }
    res.trace.total = res.value;
    return res;
}

KFingerResult kfinger_heuristic(const AccessSequence& x, int k) {
    if (k < 1) throw std::invalid_argument("kfinger_heuristic: k must be >= 1");
    const LeafMetric metric(x.n);
    KFingerResult res;
    res.trace.k = k;
    res.trace.positions.reserve(static_cast<size_t>(x.m()) + 1);
    res.trace.positions.emplace_back(); // no fingers yet
    std::vector<int> pos;
    for (int t = 1; t <= x.m(); ++t) {
        const int target = x.at(t);
        long long cost;
        if (std::binary_search(pos.begin(), pos.end(), target)) {
            cost = 1;
        } else if (static_cast<int>(pos.size()) < k) {
            pos.insert(std::lower_bound(pos.begin(), pos.end(), target), target);
            cost = 1;
        } else {
            size_t pick = 0;
            int best = std::numeric_limits<int>::max();
            for (size_t i = 0; i < pos.size(); ++i) {
                const int d = metric.path_nodes(pos[i], target);
                if (d < best) { // ties keep the leftmost finger
                    best = d;
                    pick = i;
                }
            }
            pos.erase(pos.begin() + static_cast<long>(pick));
            pos.insert(std::lower_bound(pos.begin(), pos.end(), target), target);
            cost = best;
        }
        res.trace.step_cost.push_back(cost);
        res.value += cost;
        res.trace.positions.push_back(pos);
    }
    res.trace.total = res.value;
    return res;
}

FingerTrace window_finger_trace(const AccessSequence& x, int k) {
    if (k < 1) throw std::invalid_argument("window_finger_trace: k must be >= 1");
    FingerTrace tr;
    tr.k = k;
    tr.positions.reserve(static_cast<size_t>(x.m()) + 1);
    tr.positions.emplace_back();
    for (int t = 1; t <= x.m(); ++t) {
        std::vector<int> pos;
        for (int s = std::max(1, t - k + 1); s <= t; ++s) pos.push_back(x.at(s));
        std::sort(pos.begin(), pos.end());
        tr.positions.push_back(std::move(pos));
        tr.step_cost.push_back(1);
        tr.total += 1;
    }
    return tr;
}

double unified_bound(const AccessSequence& x) {
    double sum = 0;
    for (int t = 2; t <= x.m(); ++t) {
        long long best = std::numeric_limits<long long>::max();
        for (int s = t - 1; s >= 1; --s) {
            if (t - s + 2 >= best) break; // later terms only grow
            best = std::min<long long>(best, t - s + std::abs(x.at(t) - x.at(s)) + 2);
        }
        sum += std::log2(static_cast<double>(best));
    }
    return sum;
}

double unified_bound_window(const AccessSequence& x, int k) {
    if (k < 1) throw std::invalid_argument("unified_bound_window: k must be >= 1");
    double sum = 0;
    for (int t = 2; t <= x.m(); ++t) {
        long long best = std::numeric_limits<long long>::max();
        for (int s = t - 1; s >= std::max(1, t - k); --s)
            best = std::min<long long>(best, t - s + std::abs(x.at(t) - x.at(s)) + 2);
        sum += std::log2(static_cast<double>(best));
    }
    return sum;
}

} // namespace gab
