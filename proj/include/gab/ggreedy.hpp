#pragma once

#include "gab/geometry.hpp"
#include "gab/grouptree.hpp"

#include <vector>

namespace gab {

// Touch record for one (time, level) step: the groups whose boundary keys
// received points, accessed group first, plus the columns of the corner
// points added for unsatisfied sibling groups.
struct LevelTouch {
    std::vector<int> groups;
    std::vector<int> corner_cols;
};

struct GroupGreedyRun {
    PointSet points;
    std::vector<std::vector<LevelTouch>> touches; // touches[t-1][j-1]
    long long added = 0;

    GroupGreedyRun(int n, int m) : points(n, m) {}
    long long cost() const { return added + points.m(); }
};

// Greedy run per level over sibling groups. At time t and level j the
// accessed group's boundary keys get points on row t, then every sibling
// group inside the level-(j-1) accessed group whose boundary keys span an
// unsatisfied rectangle with those points is touched at the offending
// column. Each level is a row sweep over the sibling scope consulting the
// real point set, so points left by other levels and earlier rows count.
GroupGreedyRun group_greedy_run(const GroupAccessTree& t, const AccessSequence& x);

// Same semantics straight from the unsatisfied-group definition, with
// brute-force rectangle checks. Test oracle for the sweep above.
GroupGreedyRun group_greedy_run_literal(const GroupAccessTree& t, const AccessSequence& x);

// Every added point sits at a boundary key of a level-j group inside the
// level-(j-1) accessed group, for the level j that recorded it.
bool verify_boundary_only(const GroupAccessTree& t, const AccessSequence& x, const GroupGreedyRun& run);

// Added points strictly inside the level-(j-1) accessed group that are not
// level-j boundary keys must share the accessed key's level-j group.
bool verify_added_points_near_access(const GroupAccessTree& t, const AccessSequence& x,
                                     const GroupGreedyRun& run);

// |T_j(t)| per time and level.
std::vector<std::vector<int>> touched_counts(const GroupGreedyRun& run);

// TouchTrace export: CSV "t,level,lo,hi".
std::string touches_to_csv(const GroupAccessTree& t, const GroupGreedyRun& run);

} // namespace gab
