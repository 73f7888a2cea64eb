#include "gab/weights.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gab {

LastAccessedScheme::LastAccessedScheme(const GroupAccessTree& t, long long m_weight)
    : tree_(t), m_(m_weight) {
    if (m_weight < 2) throw std::invalid_argument("last_accessed: M must be >= 2");
    last_child_.assign(static_cast<size_t>(t.node_count()), -1);
}

Weight LastAccessedScheme::weight(int node) const {
    const int parent = tree_.node(node).parent;
    if (parent >= 0 && last_child_[static_cast<size_t>(parent)] == node) return {m_, 1};
    return {1, 1};
}

void LastAccessedScheme::on_access(int key) {
    const auto path = tree_.search_path(key);
    for (size_t j = 1; j < path.size(); ++j)
        last_child_[static_cast<size_t>(path[j - 1])] = path[j];
}

FingerScheme::FingerScheme(const GroupAccessTree& t, const FingerTrace& trace, bool window)
    : tree_(t), trace_(trace), window_(window) {
    if (trace.k < 1) throw std::invalid_argument("finger scheme: k must be >= 1");
    if (trace.positions.empty()) throw std::invalid_argument("finger scheme: empty trace");
    level_width_.assign(static_cast<size_t>(t.height()) + 1, t.n());
    for (int j = 1; j <= t.height(); ++j)
        level_width_[static_cast<size_t>(j)] = GroupAccessTree::doubling_block_width(t.n(), j);
}

Weight FingerScheme::weight(int node) const {
    const auto& nd = tree_.node(node);
    const long long n_j = level_width_[static_cast<size_t>(nd.level)];
    const auto& pos = trace_.positions[cursor_];
    const auto it = std::lower_bound(pos.begin(), pos.end(), nd.iv.lo);
    const bool holds_finger = it != pos.end() && *it <= nd.iv.hi;
    if (holds_finger && trace_.k < n_j) return {1, trace_.k};
    return {1, n_j};
}

void FingerScheme::on_access(int) {
    if (cursor_ + 1 >= trace_.positions.size())
        throw std::invalid_argument("finger scheme: trace shorter than access sequence");
    ++cursor_;
}

double FingerScheme::weight_bound() const {
    return static_cast<double>(std::max<long long>(trace_.k, tree_.n()));
}

WorkingSetSquaredScheme::WorkingSetSquaredScheme(const GroupAccessTree& t) : tree_(t) {
    last_access_.assign(static_cast<size_t>(t.node_count()), 0);
    // Virtual last access 1 - rank: sibling ranked r starts with Ws = r, so
    // sibling sums stay under sum 1/i^2 < 2 from the first step, and the
    // virtual clocks never collide with a real one.
    for (int id = 0; id < t.node_count(); ++id) {
        const auto& nd = t.node(id);
        for (size_t r = 0; r < nd.children.size(); ++r)
            last_access_[static_cast<size_t>(nd.children[r])] = -static_cast<long long>(r);
    }
}

long long WorkingSetSquaredScheme::working_set(int node) const {
    return served_ + 1 - last_access_[static_cast<size_t>(node)];
}

Weight WorkingSetSquaredScheme::weight(int node) const {
    const long long ws = working_set(node);
    return {1, ws * ws};
}

void WorkingSetSquaredScheme::on_access(int key) {
    ++served_;
    for (int id : tree_.search_path(key)) last_access_[static_cast<size_t>(id)] = served_;
}

double WorkingSetSquaredScheme::weight_bound() const {
    const double span = static_cast<double>(served_ + tree_.n() + 1);
    return span * span;
}

namespace {

std::vector<Weight> snapshot(const GroupAccessTree& t, const WeightScheme& s) {
    std::vector<Weight> w(static_cast<size_t>(t.node_count()));
    for (int id = 0; id < t.node_count(); ++id) w[static_cast<size_t>(id)] = s.weight(id);
    return w;
}

} // namespace

double edge_cost(const GroupAccessTree& t, const std::vector<Weight>& w, int a, int j) {
    if (j < 1) throw std::out_of_range("edge_cost: level must be >= 1");
    const int child = t.group_of(a, j);
    const int parent = t.group_of(a, j - 1);
    if (child == parent) return 0; // singleton persisting past its depth
    double sum = 0;
    for (int c : t.node(parent).children) sum += w[static_cast<size_t>(c)].value();
    const double own = w[static_cast<size_t>(child)].value();
    if (own <= 0) throw std::invalid_argument("edge_cost: weights must be positive");
    return std::log2(sum / own);
}

double access_cost(const GroupAccessTree& t, const std::vector<Weight>& w, int a) {
    const auto path = t.search_path(a);
    double total = 0;
    for (size_t j = 1; j < path.size(); ++j) {
        double sum = 0;
        for (int c : t.node(path[j - 1]).children) sum += w[static_cast<size_t>(c)].value();
        total += std::log2(sum / w[static_cast<size_t>(path[j])].value());
    }
    return total;
}

SchemeRun run_scheme(const GroupAccessTree& t, WeightScheme& scheme, const AccessSequence& x) {
    if (t.n() != x.n) throw std::invalid_argument("run_scheme: tree and sequence disagree on n");
    SchemeRun out;
    out.trace.x = x;
    out.trace.at.reserve(static_cast<size_t>(x.m()) + 1);
    out.trace.at.push_back(snapshot(t, scheme));
    out.per_access.reserve(static_cast<size_t>(x.m()));
    for (int step = 1; step <= x.m(); ++step) {
        const int key = x.at(step);
        const double c = access_cost(t, out.trace.at.back(), key);
        out.per_access.push_back(c);
        out.total += c;
        scheme.on_access(key);
        out.trace.at.push_back(snapshot(t, scheme));
    }
    if (!verify_locally_bounded(t, out.trace))
        throw std::logic_error("run_scheme: scheme emitted a trace that is not locally bounded");
    return out;
}

bool verify_locally_bounded(const GroupAccessTree& t, const WeightTrace& trace) {
    const int m = trace.x.m();
    std::vector<char> on_path(static_cast<size_t>(t.node_count()), 0);
    for (int step = 1; step <= m; ++step) {
        const auto path = t.search_path(trace.x.at(step));
        for (int id : path) on_path[static_cast<size_t>(id)] = 1;
        const auto& before = trace.at[static_cast<size_t>(step) - 1];
        const auto& after = trace.at[static_cast<size_t>(step)];
        for (int id = 0; id < t.node_count(); ++id) {
            if (on_path[static_cast<size_t>(id)]) continue;
            if (!weight_le(after[static_cast<size_t>(id)], before[static_cast<size_t>(id)]))
                return false;
        }
        for (int id : path) on_path[static_cast<size_t>(id)] = 0;
    }
    return true;
}

bool verify_weight_directions(const GroupAccessTree& t, const WeightTrace& trace) {
    const int m = trace.x.m();
    for (int step = 1; step <= m; ++step) {
        const auto path = t.search_path(trace.x.at(step));
        const auto& before = trace.at[static_cast<size_t>(step) - 1];
        const auto& after = trace.at[static_cast<size_t>(step)];
        for (size_t j = 1; j < path.size(); ++j) {
            const int g = path[j];
            if (!weight_le(before[static_cast<size_t>(g)], after[static_cast<size_t>(g)]))
                return false; // accessed groups may only gain weight
            for (int sib : t.node(path[j - 1]).children) {
                if (sib == g) continue;
                if (!weight_le(after[static_cast<size_t>(sib)], before[static_cast<size_t>(sib)]))
                    return false; // siblings may only lose weight
            }
        }
    }
    return true;
}

std::vector<double> neighborhood_potential(const GroupAccessTree& t,
                                           const std::vector<Weight>& w,
                                           const std::vector<long long>& last_touch) {
    std::vector<double> phi(static_cast<size_t>(t.height()) + 1, 0.0);
    phi[0] = std::log2(w[static_cast<size_t>(t.root())].value());
    for (int id = 0; id < t.node_count(); ++id) {
        const auto& nd = t.node(id);
        if (nd.children.empty()) continue;
        const auto& ch = nd.children;
        const int d = static_cast<int>(ch.size());
        for (int i = 0; i < d; ++i) {
            const long long rho = last_touch[static_cast<size_t>(ch[static_cast<size_t>(i)])];
            double sum = w[static_cast<size_t>(ch[static_cast<size_t>(i)])].value();
            for (int l = i - 1; l >= 0; --l) {
                if (last_touch[static_cast<size_t>(ch[static_cast<size_t>(l)])] >= rho) break;
                sum += w[static_cast<size_t>(ch[static_cast<size_t>(l)])].value();
            }
            for (int r = i + 1; r < d; ++r) {
                if (last_touch[static_cast<size_t>(ch[static_cast<size_t>(r)])] >= rho) break;
                sum += w[static_cast<size_t>(ch[static_cast<size_t>(r)])].value();
            }
            phi[static_cast<size_t>(nd.level) + 1] += std::log2(sum);
        }
    }
    return phi;
}

GalReport verify_group_access_lemma(const GroupAccessTree& t, const WeightTrace& trace,
                                    const GroupGreedyRun& run, double c_bound) {
    GalReport rep;
    const int m = trace.x.m();
    if (run.touches.size() != static_cast<size_t>(m) ||
        trace.at.size() != static_cast<size_t>(m) + 1)
        throw std::invalid_argument("verify_group_access_lemma: trace and run disagree on m");
    std::vector<long long> last_touch(static_cast<size_t>(t.node_count()), 0);
    auto phi_prev = neighborhood_potential(t, trace.at[0], last_touch);
    for (int step = 1; step <= m; ++step) {
        const int key = trace.x.at(step);
        const auto path = t.search_path(key);
        const auto& row = run.touches[static_cast<size_t>(step) - 1];
        for (const auto& rec : row)
            for (int g : rec.groups) last_touch[static_cast<size_t>(g)] = step;
        for (int id : path) last_touch[static_cast<size_t>(id)] = step;
        const auto phi_now = neighborhood_potential(t, trace.at[static_cast<size_t>(step)], last_touch);
        const auto& pre = trace.at[static_cast<size_t>(step) - 1];
        const auto& post = trace.at[static_cast<size_t>(step)];
        for (size_t j = 1; j < path.size(); ++j) {
            const int parent = path[j - 1];
            const int g = path[j];
            // The accessed weight is charged pre-update, the sibling sum
            // post-update (the access may have grown it); the larger of the
            // two sums covers both readings.
            double wsum = 0, wsum_post = 0;
            for (int c : t.node(parent).children) {
                wsum += pre[static_cast<size_t>(c)].value();
                wsum_post += post[static_cast<size_t>(c)].value();
            }
            const double log_ratio =
                std::log2(std::max(wsum, wsum_post) / pre[static_cast<size_t>(g)].value());
            const double lhs = static_cast<double>(row[j - 1].groups.size());
            const double dphi = phi_prev[j] - phi_now[j];
            const double unit = std::max(1.0, log_ratio);
            const double rhs = c_bound * unit + dphi;
            ++rep.steps;
            const double needed = (lhs - dphi) / unit;
            rep.max_constant = std::max(rep.max_constant, needed);
            if (lhs > rhs + 1e-9) {
                ++rep.failures;
                rep.pass = false;
                if (rep.worst.size() < 16)
                    rep.worst.push_back({step, static_cast<int>(j), lhs, rhs});
            }
        }
        phi_prev = phi_now;
    }
    return rep;
}

std::string trace_to_csv(const GroupAccessTree& t, const WeightTrace& trace) {
    std::ostringstream out;
    out << "t,level,group_lo,group_hi,weight\n";
    for (size_t step = 0; step < trace.at.size(); ++step)
        for (int id = 0; id < t.node_count(); ++id) {
            const auto& nd = t.node(id);
            out << step << ',' << nd.level << ',' << nd.iv.lo << ',' << nd.iv.hi << ','
                << trace.at[step][static_cast<size_t>(id)].value() << '\n';
        }
    return out.str();
}

} // namespace gab
