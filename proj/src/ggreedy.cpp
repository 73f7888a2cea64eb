#include "gab/ggreedy.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace gab {

namespace {

void require_same_universe(const GroupAccessTree& t, const AccessSequence& x) {
    if (t.n() != x.n) throw std::invalid_argument("group greedy: tree and sequence disagree on n");
    if (x.m() < 1) throw std::invalid_argument("group greedy: empty sequence");
}

// Scans columns away from the accessed group's near boundary, flagging
// sibling boundary columns whose top point clears everything scanned so
// far. The parent's own boundary column carries a point on the current row
// (its touch from the level above), which satisfies any rectangle reaching
// it; level 1 has no such point.
struct SideScan {
    const GroupAccessTree& tree;
    const PointSet& ps;
    int t;
    int level;

    void run(const std::vector<int>& children, int accessed_idx, int dir,
             int near_col, int far_col, std::vector<std::pair<int, int>>& unsat) const {
        int run_max = ps.top_below(near_col, t);
        int idx = accessed_idx;
        for (int c = near_col + dir; dir > 0 ? c <= far_col : c >= far_col; c += dir) {
            idx = locate(children, idx, c, dir);
            const int sib = children[static_cast<size_t>(idx)];
            const bool boundary = c == tree.left_boundary(sib) || c == tree.right_boundary(sib);
            const bool parent_col = level >= 2 && c == far_col;
            const int top = ps.top_below(c, t);
            if (boundary && !parent_col && top > 0 && top > run_max)
                unsat.emplace_back(sib, c);
            run_max = std::max(run_max, top);
        }
    }

    int locate(const std::vector<int>& children, int idx, int c, int dir) const {
        while (!tree.node(children[static_cast<size_t>(idx)]).iv.contains(c)) idx += dir;
        return idx;
    }
};

} // namespace

GroupGreedyRun group_greedy_run(const GroupAccessTree& tree, const AccessSequence& x) {
    require_same_universe(tree, x);
    GroupGreedyRun run(x.n, x.m());
    run.touches.resize(static_cast<size_t>(x.m()));
    for (int t = 1; t <= x.m(); ++t) {
        const int key = x.at(t);
        run.points.insert(key, t, true);
        const auto path = tree.search_path(key);
        auto& row_touches = run.touches[static_cast<size_t>(t) - 1];
        row_touches.resize(path.size() - 1);
        for (size_t j = 1; j < path.size(); ++j) {
            const int parent = path[j - 1];
            const int g = path[j];
            auto& rec = row_touches[j - 1];
            rec.groups.push_back(g);
            if (run.points.insert(tree.left_boundary(g), t)) ++run.added;
            if (run.points.insert(tree.right_boundary(g), t)) ++run.added;

            const auto& children = tree.node(parent).children;
            int a = 0;
            while (children[static_cast<size_t>(a)] != g) ++a;

            std::vector<std::pair<int, int>> unsat; // (sibling id, column)
            const SideScan scan{tree, run.points, t, static_cast<int>(j)};
            if (a > 0)
                scan.run(children, a, -1, tree.left_boundary(g), tree.left_boundary(parent), unsat);
            if (a + 1 < static_cast<int>(children.size()))
                scan.run(children, a, +1, tree.right_boundary(g), tree.right_boundary(parent), unsat);

            int last_group = -1;
            for (auto [sib, col] : unsat) {
                if (sib != last_group) {
                    rec.groups.push_back(sib);
                    last_group = sib;
                }
                rec.corner_cols.push_back(col);
            }
            for (auto [sib, col] : unsat)
                if (run.points.insert(col, t)) ++run.added;
        }
    }
    return run;
}

GroupGreedyRun group_greedy_run_literal(const GroupAccessTree& tree, const AccessSequence& x) {
    require_same_universe(tree, x);
    GroupGreedyRun run(x.n, x.m());
    run.touches.resize(static_cast<size_t>(x.m()));
    for (int t = 1; t <= x.m(); ++t) {
        const int key = x.at(t);
        run.points.insert(key, t, true);
        const auto path = tree.search_path(key);
        auto& row_touches = run.touches[static_cast<size_t>(t) - 1];
        row_touches.resize(path.size() - 1);
        for (size_t j = 1; j < path.size(); ++j) {
            const int parent = path[j - 1];
            const int g = path[j];
            auto& rec = row_touches[j - 1];
            rec.groups.push_back(g);
            if (run.points.insert(tree.left_boundary(g), t)) ++run.added;
            if (run.points.insert(tree.right_boundary(g), t)) ++run.added;

            const Point pl{tree.left_boundary(g), t};
            const Point pr{tree.right_boundary(g), t};
            std::vector<std::pair<int, int>> unsat;
            // Only the topmost point of a column can span an empty
            // rectangle with the boundary row; anything lower is covered
            // by the point above it.
            auto check_col = [&](int sib, int c) {
                const int top = run.points.top_below(c, t);
                if (top == 0) return;
                const Point q{c, top};
                const Point& p = c < pl.x ? pl : pr;
                if (!run.points.rect_satisfied(p, q)) unsat.emplace_back(sib, c);
            };
            for (int sib : tree.node(parent).children) {
                if (sib == g) continue;
                const int lb = tree.left_boundary(sib);
                const int rb = tree.right_boundary(sib);
                check_col(sib, lb);
                if (rb != lb) check_col(sib, rb);
            }
            int last_group = -1;
            for (auto [sib, col] : unsat) {
                if (sib != last_group) {
                    rec.groups.push_back(sib);
                    last_group = sib;
                }
                rec.corner_cols.push_back(col);
            }
            for (auto [sib, col] : unsat)
                if (run.points.insert(col, t)) ++run.added;
        }
    }
    return run;
}

bool verify_boundary_only(const GroupAccessTree& tree, const AccessSequence& x,
                          const GroupGreedyRun& run) {
    for (int t = 1; t <= x.m(); ++t) {
        const auto path = tree.search_path(x.at(t));
        // Every recorded column must be a boundary key of a level-j group
        // whose parent is the accessed level-(j-1) group.
        const auto& row_touches = run.touches[static_cast<size_t>(t) - 1];
        for (size_t j = 1; j <= row_touches.size(); ++j) {
            for (int c : row_touches[j - 1].corner_cols) {
                if (tree.group_of(c, static_cast<int>(j) - 1) != path[j - 1]) return false;
                const int gg = tree.group_of(c, static_cast<int>(j));
                if (c != tree.left_boundary(gg) && c != tree.right_boundary(gg)) return false;
            }
        }
        // And every point on the row must be accounted for: the access key,
        // an accessed group's boundary, or a recorded corner.
        for (int c : run.points.row(t)) {
            if (c == x.at(t)) continue;
            bool ok = false;
            for (size_t j = 1; j < path.size() && !ok; ++j) {
                if (c == tree.left_boundary(path[j]) || c == tree.right_boundary(path[j])) ok = true;
            }
            for (size_t j = 0; j < row_touches.size() && !ok; ++j) {
                const auto& cc = row_touches[j].corner_cols;
                ok = std::find(cc.begin(), cc.end(), c) != cc.end();
            }
            if (!ok) return false;
        }
    }
    return true;
}

bool verify_added_points_near_access(const GroupAccessTree& tree, const AccessSequence& x,
                                     const GroupGreedyRun& run) {
    for (int t = 1; t <= x.m(); ++t) {
        const int key = x.at(t);
        const auto path = tree.search_path(key);
        for (int c : run.points.row(t)) {
            if (c == key) continue;
            for (size_t j = 1; j < path.size(); ++j) {
                const auto& piv = tree.node(path[j - 1]).iv;
                if (!(piv.lo < c && c < piv.hi)) continue;
                const int gg = tree.group_of(c, static_cast<int>(j));
                if (c == tree.left_boundary(gg) || c == tree.right_boundary(gg)) continue;
                if (gg != path[j]) return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<int>> touched_counts(const GroupGreedyRun& run) {
    std::vector<std::vector<int>> counts(run.touches.size());
    for (size_t t = 0; t < run.touches.size(); ++t) {
        counts[t].reserve(run.touches[t].size());
        for (const auto& rec : run.touches[t]) counts[t].push_back(static_cast<int>(rec.groups.size()));
    }
    return counts;
}

std::string touches_to_csv(const GroupAccessTree& tree, const GroupGreedyRun& run) {
    std::ostringstream out;
    out << "t,level,lo,hi\n";
    for (size_t t = 0; t < run.touches.size(); ++t)
        for (size_t j = 0; j < run.touches[t].size(); ++j)
            for (int g : run.touches[t][j].groups)
                out << (t + 1) << ',' << (j + 1) << ',' << tree.left_boundary(g) << ','
                    << tree.right_boundary(g) << '\n';
    return out.str();
}

} // namespace gab
