#include "gab/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace gab {

PointSet::PointSet(int n, int m) : n_(n), m_(m) {
    if (n < 1 || m < 1) throw std::invalid_argument("PointSet: universe must be at least 1x1");
    rows_.resize(static_cast<size_t>(m));
    cols_.resize(static_cast<size_t>(n));
    access_col_.assign(static_cast<size_t>(m), 0);
}

PointSet PointSet::from_sequence(const AccessSequence& x) {
    PointSet p(x.n, x.m());
    for (int t = 1; t <= x.m(); ++t) p.insert(x.at(t), t, true);
    return p;
}

bool PointSet::insert(int x, int y, bool is_access) {
    assert(x >= 1 && x <= n_ && y >= 1 && y <= m_);
    auto& row = rows_[static_cast<size_t>(y) - 1];
    auto it = std::lower_bound(row.begin(), row.end(), x);
    if (it != row.end() && *it == x) return false;
    row.insert(it, x);
    auto& col = cols_[static_cast<size_t>(x) - 1];
    col.insert(std::lower_bound(col.begin(), col.end(), y), y);
    if (is_access) access_col_[static_cast<size_t>(y) - 1] = x;
    ++size_;
    return true;
}

bool PointSet::contains(int x, int y) const {
    const auto& row = rows_[static_cast<size_t>(y) - 1];
    return std::binary_search(row.begin(), row.end(), x);
}

bool PointSet::is_access(int x, int y) const {
    return access_col_[static_cast<size_t>(y) - 1] == x;
}

int PointSet::top_below(int x, int y) const {
    const auto& col = cols_[static_cast<size_t>(x) - 1];
    auto it = std::lower_bound(col.begin(), col.end(), y);
    if (it == col.begin()) return 0;
    return *std::prev(it);
}

std::vector<Point> PointSet::points() const {
    std::vector<Point> out;
    out.reserve(size_);
    for (int y = 1; y <= m_; ++y)
        for (int x : rows_[static_cast<size_t>(y) - 1]) out.push_back({x, y});
    return out;
}

size_t PointSet::added_count() const {
    size_t accesses = 0;
    for (int c : access_col_)
        if (c != 0) ++accesses;
    return size_ - accesses;
}

bool PointSet::rect_satisfied(const Point& p, const Point& q) const {
    if (p.x == q.x || p.y == q.y) return true; // no rectangle
    const int xlo = std::min(p.x, q.x), xhi = std::max(p.x, q.x);
    const int ylo = std::min(p.y, q.y), yhi = std::max(p.y, q.y);
    for (int y = ylo; y <= yhi; ++y) {
        const auto& row = rows_[static_cast<size_t>(y) - 1];
        auto it = std::lower_bound(row.begin(), row.end(), xlo);
        for (; it != row.end() && *it <= xhi; ++it) {
            if ((*it == p.x && y == p.y) || (*it == q.x && y == q.y)) continue;
            return true;
        }
    }
    return false;
}

bool PointSet::arborally_satisfied() const {
    const auto pts = points();
    const size_t k = pts.size();
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            if (!rect_satisfied(pts[i], pts[j])) return false;
        }
    }
    return true;
}

std::string PointSet::to_csv() const {
    std::ostringstream out;
    out << "x,y,kind\n";
    for (int y = 1; y <= m_; ++y)
        for (int x : rows_[static_cast<size_t>(y) - 1])
            out << x << ',' << y << ',' << (is_access(x, y) ? "access" : "added") << '\n';
    return out.str();
}

PointSet PointSet::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::tuple<int, int, bool>> pts;
    int n = 1, m = 1;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) { header = false; continue; }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        int x, y;
        std::string kind;
        if (!(ls >> x >> y >> kind)) throw std::runtime_error("PointSet::from_csv: bad row: " + line);
        pts.emplace_back(x, y, kind == "access");
        n = std::max(n, x);
        m = std::max(m, y);
    }
    PointSet p(n, m);
    for (auto& [x, y, acc] : pts) p.insert(x, y, acc);
    return p;
}

namespace {

// One side of the row sweep. Walks columns away from the access column,
// keeping the running top of everything scanned so far; a column whose top
// point clears that maximum spans an empty rectangle with the access point.
void sweep_side(const PointSet& ps, int t, int from, int to, int step, int seed_top,
                std::vector<int>& corners) {
    int run_max = seed_top;
    for (int c = from; c != to + step; c += step) {
        const int top = ps.top_below(c, t);
        if (top > 0 && top > run_max) corners.push_back(c);
        run_max = std::max(run_max, top);
    }
}

} // namespace

GreedyResult greedy_run(const AccessSequence& x) {
    if (x.m() < 1) throw std::invalid_argument("greedy_run: empty sequence");
    PointSet ps(x.n, x.m());
    long long added = 0;
    for (int t = 1; t <= x.m(); ++t) {
        const int key = x.at(t);
        ps.insert(key, t, true);
        std::vector<int> corners;
        const int seed = ps.top_below(key, t);
        if (key > 1) sweep_side(ps, t, key - 1, 1, -1, seed, corners);
        if (key < x.n) sweep_side(ps, t, key + 1, x.n, +1, seed, corners);
        for (int c : corners)
            if (ps.insert(c, t)) ++added;
    }
    return GreedyResult{std::move(ps), added};
}

long long greedy_cost(const AccessSequence& x) {
    return greedy_run(x).cost();
}

} // namespace gab
