#pragma once

#include <string>
#include <vector>

namespace gab {

// A point in the key/time plane: x is a key in [1, n], y is a time row in
// [1, m]. Row 1 is the earliest access.
struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

struct AccessSequence {
    int n = 0;                // key universe size
    std::vector<int> entries; // keys, 1-based, length m

    int m() const { return static_cast<int>(entries.size()); }
    int at(int t) const { return entries[static_cast<size_t>(t) - 1]; } // t in [1, m]
};

// Set of points over an n x m grid with at most one point per coordinate.
// Rows and columns are both indexed so that sweeps and the brute-force
// satisfaction oracle can share one structure. Access points (one per row)
// are flagged apart from points added by an algorithm.
class PointSet {
public:
    PointSet(int n, int m);

    static PointSet from_sequence(const AccessSequence& x);

    int n() const { return n_; }
    int m() const { return m_; }
    size_t size() const { return size_; }

    // Inserts (x, y); returns false if the point was already present.
    bool insert(int x, int y, bool is_access = false);
    bool contains(int x, int y) const;
    bool is_access(int x, int y) const;

    // Largest row < y holding a point in column x, or 0 if none.
    int top_below(int x, int y) const;

    const std::vector<int>& row(int y) const { return rows_[static_cast<size_t>(y) - 1]; }
    const std::vector<int>& column(int x) const { return cols_[static_cast<size_t>(x) - 1]; }

    std::vector<Point> points() const;       // row-major order
    size_t added_count() const;              // points that are not accesses

    // True if some point of the set other than p and q lies in the closed
    // rectangle spanned by p and q. Pairs sharing a row or column have no
    // rectangle and count as satisfied.
    bool rect_satisfied(const Point& p, const Point& q) const;

    // Ground-truth satisfaction check: every pair of points spanning a
    // rectangle must be rect-satisfied. Brute force over all pairs; kept
    // deliberately free of any sweep-side shortcuts.
    bool arborally_satisfied() const;

    // CSV export with header "x,y,kind", kind in {access, added}.
    std::string to_csv() const;
    static PointSet from_csv(const std::string& text);

private:
    int n_;
    int m_;
    size_t size_ = 0;
    std::vector<std::vector<int>> rows_; // rows_[y-1]: sorted columns
    std::vector<std::vector<int>> cols_; // cols_[x-1]: sorted rows
    std::vector<int> access_col_;        // access_col_[y-1], 0 if none
};

struct GreedyResult {
    PointSet points;
    long long added = 0;
    long long cost() const { return added + points.m(); }
};

// Row sweep: at each row t, every maximal unsatisfied rectangle between the
// access point and a point strictly below gets its corner filled in. All
// rectangles of a row are evaluated against the same snapshot, then the
// corners are inserted together.
GreedyResult greedy_run(const AccessSequence& x);

long long greedy_cost(const AccessSequence& x);

} // namespace gab
