#pragma once

#include "gab/geometry.hpp"
#include "gab/ggreedy.hpp"
#include "gab/grouptree.hpp"

#include <memory>
#include <string>
#include <vector>

namespace gab {

// Exact positive rational weight. All schemes emit small fractions, so
// int64 cross-multiplication never overflows at desk scale.
struct Weight {
    long long num = 1;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Weight&, const Weight&) = default;
};

inline bool weight_le(const Weight& a, const Weight& b) {
    return a.num * b.den <= b.num * a.den;
}

// Finger positions over time: positions[t] holds the sorted finger keys
// after serving access t, positions[0] the initial placement. step_cost is
// the node count of the path the serving finger moved along.
struct FingerTrace {
    int k = 0;
    std::vector<std::vector<int>> positions;
    std::vector<long long> step_cost;
    long long total = 0;
};

// Time-indexed node weights: at[t] is the assignment after serving t
// accesses (at[0] the initial one). Access t is charged against at[t-1].
struct WeightTrace {
    AccessSequence x;
    std::vector<std::vector<Weight>> at;
};

class WeightScheme {
public:
    virtual ~WeightScheme() = default;
    virtual std::string name() const = 0;
    virtual Weight weight(int node) const = 0; // current (pre-access) assignment
    virtual void on_access(int key) = 0;
    virtual double weight_bound() const = 0;   // weights stay in [1/bound, bound]
};

// w = M on the child the parent's last search path went through, 1
// elsewhere. Nothing is last-accessed before the first visit.
class LastAccessedScheme : public WeightScheme {
public:
    LastAccessedScheme(const GroupAccessTree& t, long long m_weight);
    std::string name() const override { return "last_accessed"; }
    Weight weight(int node) const override;
    void on_access(int key) override;
    double weight_bound() const override { return static_cast<double>(m_); }
    long long m_weight() const { return m_; }

private:
    const GroupAccessTree& tree_;
    long long m_;
    std::vector<int> last_child_;
};

// w = max(1/k, 1/N_j) on level-j groups holding a finger, 1/N_j elsewhere,
// where N_j is the doubling block width at level j. Finger positions come
// from an externally supplied trace.
class FingerScheme : public WeightScheme {
public:
    FingerScheme(const GroupAccessTree& t, const FingerTrace& trace, bool window = false);
    std::string name() const override { return window_ ? "window_finger" : "finger"; }
    Weight weight(int node) const override;
    void on_access(int key) override;
    double weight_bound() const override;
    int k() const { return trace_.k; }

private:
    const GroupAccessTree& tree_;
    const FingerTrace& trace_;
    bool window_;
    size_t cursor_ = 0;
    std::vector<long long> level_width_;
};

// w = 1 / Ws^2 where Ws counts time steps since the last access inside the
// group. Never-accessed groups age from a virtual last access one step
// before the start, staggered by sibling rank so that all working-set
// values stay pairwise distinct forever.
class WorkingSetSquaredScheme : public WeightScheme {
public:
    explicit WorkingSetSquaredScheme(const GroupAccessTree& t);
    std::string name() const override { return "working_set_squared"; }
    Weight weight(int node) const override;
    void on_access(int key) override;
    double weight_bound() const override;
    long long working_set(int node) const; // Ws under the pre-access clock

private:
    const GroupAccessTree& tree_;
    long long served_ = 0;
    std::vector<long long> last_access_;
};

struct SchemeRun {
    WeightTrace trace;
    std::vector<double> per_access;
    double total = 0;
};

// log2(sibling weight sum / own weight) for the level-j edge on a's path.
double edge_cost(const GroupAccessTree& t, const std::vector<Weight>& w, int a, int j);
// Sum of edge costs along the root-to-leaf path of a.
double access_cost(const GroupAccessTree& t, const std::vector<Weight>& w, int a);

// Charges every access against the pre-access assignment, then lets the
// scheme update. The emitted trace is checked to be locally bounded.
SchemeRun run_scheme(const GroupAccessTree& t, WeightScheme& scheme, const AccessSequence& x);

// No weight may grow on a group off the current search path.
bool verify_locally_bounded(const GroupAccessTree& t, const WeightTrace& trace);
// Path weights never shrink at their access; sibling weights never grow.
bool verify_weight_directions(const GroupAccessTree& t, const WeightTrace& trace);

// Per-level sum-of-logs potential. A group's neighborhood spans the
// less-recently-touched siblings next to it, stopping just short of the
// nearest sibling touched at least as recently; with no such sibling it
// runs through the end child inclusive.
std::vector<double> neighborhood_potential(const GroupAccessTree& t,
                                           const std::vector<Weight>& w,
                                           const std::vector<long long>& last_touch);

struct GalViolation {
    int t = 0;
    int level = 0;
    double lhs = 0;
    double rhs = 0;
};

struct GalReport {
    bool pass = true;
    long long steps = 0;
    long long failures = 0;
    double max_constant = 0; // smallest C that would clear every step
    std::vector<GalViolation> worst;
};

// Checks, per access and level, that the number of touched groups is at
// most C * max(1, log2(W / w(accessed))) plus the drop in the neighborhood
// potential. Touch times for neighborhoods come from the grouped-greedy
// run; weights from the scheme trace.
GalReport verify_group_access_lemma(const GroupAccessTree& t, const WeightTrace& trace,
                                    const GroupGreedyRun& run, double c_bound);

// Trace export: CSV "t,level,group_lo,group_hi,weight".
std::string trace_to_csv(const GroupAccessTree& t, const WeightTrace& trace);

} // namespace gab
