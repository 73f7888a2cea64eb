#include "gab/grouptree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gab {

int GroupAccessTree::add_node(Interval iv, int level, int parent) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(GroupNode{iv, level, parent, {}});
    if (parent >= 0) nodes_[static_cast<size_t>(parent)].children.push_back(id);
    return id;
}

void GroupAccessTree::finalize() {
    height_ = 0;
    for (const auto& nd : nodes_) height_ = std::max(height_, nd.level);
    key_level_.assign(static_cast<size_t>(n_), std::vector<int>(static_cast<size_t>(height_) + 1, -1));
    for (int p = 1; p <= n_; ++p) {
        int id = 0;
        auto& slots = key_level_[static_cast<size_t>(p) - 1];
        slots[0] = id;
        for (int j = 1; j <= height_; ++j) {
            const auto& nd = nodes_[static_cast<size_t>(id)];
            for (int c : nd.children) {
                if (nodes_[static_cast<size_t>(c)].iv.contains(p)) {
                    id = c;
                    break;
                }
            }
            slots[static_cast<size_t>(j)] = id; // singleton persists past its depth
        }
    }
}

GroupAccessTree GroupAccessTree::star(int n) {
    if (n < 1) throw std::invalid_argument("star: n must be >= 1");
    GroupAccessTree t;
    t.n_ = n;
    t.add_node({1, n}, 0, -1);
    if (n > 1)
        for (int p = 1; p <= n; ++p) t.add_node({p, p}, 1, 0);
    t.finalize();
    return t;
}

int GroupAccessTree::default_branching(int n) {
    if (n <= 2) return 2;
    const double bits = std::log2(static_cast<double>(n));
    return 1 << static_cast<int>(std::ceil(std::sqrt(bits)));
}

GroupAccessTree GroupAccessTree::regular(int n, int branching) {
    if (n < 1) throw std::invalid_argument("regular: n must be >= 1");
    if (branching < 2) throw std::invalid_argument("regular: branching must be >= 2");
    GroupAccessTree t;
    t.n_ = n;
    t.add_node({1, n}, 0, -1);
    for (size_t i = 0; i < t.nodes_.size(); ++i) {
        const Interval iv = t.nodes_[i].iv;
        const int level = t.nodes_[i].level;
        const int s = iv.size();
        if (s == 1) continue;
        const int parts = std::min(branching, s);
        const int big = (s + parts - 1) / parts;
        const int small = s / parts;
        const int n_big = s - small * parts; // larger parts first
        int lo = iv.lo;
        for (int c = 0; c < parts; ++c) {
            const int w = c < n_big ? big : small;
            t.add_node({lo, lo + w - 1}, level + 1, static_cast<int>(i));
            lo += w;
        }
        assert(lo == iv.hi + 1);
    }
    t.finalize();
    return t;
}

long long GroupAccessTree::doubling_block_width(int n, int level) {
    assert(n >= 1 && level >= 1);
    // Smallest e with e * 2^level >= log2(n), i.e. 2^(e << level) >= n.
    int e = 0;
    while (true) {
        const long long p = static_cast<long long>(e) << level;
        if (p >= 62 || (1LL << p) >= n) break;
        ++e;
    }
    return 1LL << e;
}

GroupAccessTree GroupAccessTree::doubling_random(int n, SplitMix64& rng) {
    if (n < 2) throw std::invalid_argument("doubling_random: n must be >= 2");
    GroupAccessTree t;
    t.n_ = n;
    t.add_node({1, n}, 0, -1);
    // Nodes are appended in BFS order, so shifts are drawn level by level,
    // left to right; one draw per split node.
    for (size_t i = 0; i < t.nodes_.size(); ++i) {
        const Interval iv = t.nodes_[i].iv;
        const int level = t.nodes_[i].level;
        const int s = iv.size();
        if (s == 1) continue;
        const long long w = doubling_block_width(n, level + 1);
        if (w <= 2 || s <= w || s <= 2) {
            for (int p = iv.lo; p <= iv.hi; ++p) t.add_node({p, p}, level + 1, static_cast<int>(i));
            continue;
        }
        const int shift = rng.uniform_int(1, static_cast<int>(w));
        int lo = iv.lo;
        int first = std::min<long long>(shift, s);
        while (lo <= iv.hi) {
            const int hi = std::min<long long>(lo + first - 1, iv.hi);
            t.add_node({lo, hi}, level + 1, static_cast<int>(i));
            lo = hi + 1;
            first = static_cast<int>(w);
        }
    }
    t.finalize();
    return t;
}

GroupAccessTree GroupAccessTree::skip_splay(int n, long long delta) {
    if (n < 1) throw std::invalid_argument("skip_splay: n must be >= 1");
    if (delta < 0) throw std::invalid_argument("skip_splay: delta must be >= 0");
    // Smallest k with 2^(2^(k-1)) - 1 >= n.
    int k = 1;
    while ((1LL << (1LL << (k - 1))) - 1 < n) ++k;
    std::vector<long long> rho(static_cast<size_t>(k) + 1, 1);
    for (int i = 1; i < k; ++i) rho[static_cast<size_t>(i)] = 1LL << (1LL << (k - i - 1));

    GroupAccessTree t;
    t.n_ = n;
    t.add_node({1, n}, 0, -1);
    for (size_t i = 0; i < t.nodes_.size(); ++i) {
        const Interval iv = t.nodes_[i].iv;
        const int level = t.nodes_[i].level;
        if (iv.size() == 1 || level >= k) continue;
        const long long width = rho[static_cast<size_t>(level) + 1];
        const long long off = delta % width;
        // Blocks [b*width - off, b*width - off + width - 1], clipped.
        long long lo = iv.lo;
        while (lo <= iv.hi) {
            const long long b = (lo + off) / width;
            const long long hi = std::min<long long>(b * width - off + width - 1, iv.hi);
            t.add_node({static_cast<int>(lo), static_cast<int>(hi)}, level + 1, static_cast<int>(i));
            lo = hi + 1;
        }
    }
    t.finalize();
    return t;
}

int GroupAccessTree::group_of(int p, int j) const {
    if (p < 1 || p > n_) throw std::out_of_range("group_of: key out of range");
    if (j < 0 || j > height_) throw std::out_of_range("group_of: level out of range");
    return key_level_[static_cast<size_t>(p) - 1][static_cast<size_t>(j)];
}

std::vector<int> GroupAccessTree::search_path(int p) const {
    std::vector<int> path;
    int id = group_of(p, 0);
    path.push_back(id);
    while (!node(id).is_leaf()) {
        for (int c : node(id).children) {
            if (node(c).iv.contains(p)) {
                id = c;
                break;
            }
        }
        path.push_back(id);
    }
    return path;
}

namespace {

void json_rec(const GroupAccessTree& t, int id, std::ostream& out) {
    const auto& nd = t.node(id);
    out << "{\"lo\":" << nd.iv.lo << ",\"hi\":" << nd.iv.hi << ",\"children\":[";
    for (size_t i = 0; i < nd.children.size(); ++i) {
        if (i) out << ',';
        json_rec(t, nd.children[i], out);
    }
    out << "]}";
}

} // namespace

std::string GroupAccessTree::to_json() const {
    std::ostringstream out;
    json_rec(*this, root(), out);
    return out.str();
}

std::vector<int> ReferenceBst::path_to(int key) const {
    std::vector<int> path;
    int id = root;
    path.push_back(id);
    while (!is_leaf(id)) {
        id = key <= nodes[static_cast<size_t>(id)].split ? nodes[static_cast<size_t>(id)].left : nodes[static_cast<size_t>(id)].right;
        path.push_back(id);
    }
    return path;
}

void ReferenceBst::reset_preferred() {
    for (auto& nd : nodes) nd.pref = -1;
}

namespace {

struct BstBuilder {
    ReferenceBst bst;

    int leaf(int key) {
        bst.nodes.push_back({-1, -1, key, 0, -1});
        return static_cast<int>(bst.nodes.size()) - 1;
    }

    int internal(int left, int right, int split) {
        bst.nodes.push_back({left, right, 0, split, -1});
        return static_cast<int>(bst.nodes.size()) - 1;
    }

    // Left-heavy balanced combine of already built subtrees; his[i] is the
    // largest key under roots[i].
    int combine(const std::vector<int>& roots, const std::vector<int>& his, int lo, int hi) {
        if (lo == hi) return roots[static_cast<size_t>(lo)];
        const int count = hi - lo + 1;
        const int left_count = (count + 1) / 2;
        const int l = combine(roots, his, lo, lo + left_count - 1);
        const int r = combine(roots, his, lo + left_count, hi);
        return internal(l, r, his[static_cast<size_t>(lo + left_count - 1)]);
    }

    int binarize(const GroupAccessTree& t, int id) {
        const auto& nd = t.node(id);
        if (nd.is_leaf()) return leaf(nd.iv.lo);
        std::vector<int> roots, his;
        for (int c : nd.children) {
            roots.push_back(binarize(t, c));
            his.push_back(t.node(c).iv.hi);
        }
        return combine(roots, his, 0, static_cast<int>(roots.size()) - 1);
    }

    int complete(int lo, int hi) {
        const int count = hi - lo + 1;
        if (count == 1) return leaf(lo);
        if (count == 2) return internal(leaf(lo), leaf(hi), lo);
        const int h = static_cast<int>(std::ceil(std::log2(static_cast<double>(count))));
        const int left_count = std::min(1 << (h - 1), count - (1 << (h - 2)));
        const int l = complete(lo, lo + left_count - 1);
        const int r = complete(lo + left_count, hi);
        return internal(l, r, lo + left_count - 1);
    }
};

} // namespace

ReferenceBst ReferenceBst::from_group_tree(const GroupAccessTree& t) {
    BstBuilder b;
    b.bst.root = b.binarize(t, t.root());
    b.bst.n = t.n();
    return std::move(b.bst);
}

ReferenceBst ReferenceBst::almost_complete(int n) {
    if (n < 1) throw std::invalid_argument("almost_complete: n must be >= 1");
    BstBuilder b;
    b.bst.root = b.complete(1, n);
    b.bst.n = n;
    return std::move(b.bst);
}

} // namespace gab
