#pragma once

#include "gab/geometry.hpp"
#include "gab/grouptree.hpp"
#include "gab/weights.hpp"

#include <stdexcept>
#include <vector>

namespace gab {

// Thrown when the exact k-finger solver would exceed its state budget.
struct InstanceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Number of preferred-child switches in R while serving x. Preferred
// children start unset; the first time a node points somewhere does not
// count, so the bound is the most conservative one over initializations.
long long wilber1(const AccessSequence& x, ReferenceBst& r);

struct KFingerResult {
    long long value = 0;
    FingerTrace trace;
};

// Exact k-finger optimum on the almost complete binary reference tree over
// n leaves: minimum over serving choices and initial placements, by
// forward DP over finger-position multisets. A move's cost is the node
// count of the walked path, so serving in place costs 1.
KFingerResult kfinger_exact(const AccessSequence& x, int k, long long max_states = 2'000'000,
                            bool optimize_initial = true);

// Nearest-finger upper bound: fingers appear at the first k distinct keys,
// then the closest finger serves (ties to the leftmost finger).
KFingerResult kfinger_heuristic(const AccessSequence& x, int k);

// Fingers sit on the last min(t, k) accessed keys; positions teleport, so
// step costs are the minimum 1 and only the weight schemes consume them.
FingerTrace window_finger_trace(const AccessSequence& x, int k);

// sum over t >= 2 of log2(min over earlier t' of t - t' + |x_t - x_t'| + 2).
double unified_bound(const AccessSequence& x);
// Same with t' restricted to the k steps before t.
double unified_bound_window(const AccessSequence& x, int k);

} // namespace gab
