#pragma once

#include "gab/rng.hpp"

#include <string>
#include <vector>

namespace gab {

struct Interval {
    int lo = 0;
    int hi = 0;

    int size() const { return hi - lo + 1; }
    bool contains(int p) const { return lo <= p && p <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct GroupNode {
    Interval iv;
    int level = 0;
    int parent = -1;            // -1 at the root
    std::vector<int> children;  // ordered left to right; empty at singletons

    bool is_leaf() const { return children.empty(); }
};

// Hierarchical interval partition of [1, n]: the root spans [1, n], each
// node's children partition it exactly, leaves are singletons. Level j of
// the partition sequence is the set of nodes at depth j, with singletons
// persisting once reached (a key whose leaf sits above the maximum depth
// stays in that leaf for every deeper level).
class GroupAccessTree {
public:
    // Root with the n singletons as children (height 1; height 0 for n = 1).
    static GroupAccessTree star(int n);

    // Every non-singleton node splits into min(branching, size) parts whose
    // sizes differ by at most one, larger parts first.
    static GroupAccessTree regular(int n, int branching);

    // Default branching for the regular tree, 2^ceil(sqrt(log2 n)).
    static int default_branching(int n);

    // Randomized doubling partition: level j uses blocks of width
    // 2^ceil(log2(n)/2^j) with a uniformly shifted first block. A node that
    // fits inside one block, or a level whose block width is <= 2, splits
    // straight to singletons.
    static GroupAccessTree doubling_random(int n, SplitMix64& rng);

    // Width of the level-j doubling blocks (also the weight denominator used
    // by the finger schemes).
    static long long doubling_block_width(int n, int level);

    // Aligned-block regions: level i uses blocks of width rho_i shifted by
    // delta mod rho_i and clipped to [1, n], where rho_i squares at each
    // step up (rho_k = 1, rho_i = rho_{i+1}^2).
    static GroupAccessTree skip_splay(int n, long long delta);

    int n() const { return n_; }
    int height() const { return height_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const GroupNode& node(int id) const { return nodes_[static_cast<size_t>(id)]; }
    int root() const { return 0; }

    // Node holding key p at level j (the singleton once past its depth).
    int group_of(int p, int j) const;

    // Root-to-singleton node chain for key p; consecutive levels, last node
    // is the singleton {p}. Length is depth(p) + 1, which may vary by key.
    std::vector<int> search_path(int p) const;

    int left_boundary(int id) const { return node(id).iv.lo; }
    int right_boundary(int id) const { return node(id).iv.hi; }

    // Nested {lo, hi, children: [...]} JSON, for debugging and docs.
    std::string to_json() const;

private:
    int n_ = 0;
    int height_ = 0;
    std::vector<GroupNode> nodes_;
    std::vector<std::vector<int>> key_level_; // key_level_[p-1][j] -> node id

    int add_node(Interval iv, int level, int parent);
    void finalize();
};

// Leaf-oriented binary search tree (keys at the leaves). Internal nodes
// route by the largest key of their left subtree and track the preferred
// child used by the switch-counting lower bound.
struct ReferenceBst {
    struct Node {
        int left = -1;
        int right = -1;
        int key = 0;    // leaves only
        int split = 0;  // internal: max key of left subtree
        int pref = -1;  // preferred child, -1 until first visit
    };

    std::vector<Node> nodes;
    int root = -1;
    int n = 0;

    bool is_leaf(int id) const { return nodes[static_cast<size_t>(id)].left < 0; }
    std::vector<int> path_to(int key) const;
    void reset_preferred();

    // Balanced binarization of a group access tree: each multiway node is
    // replaced by a left-heavy balanced binary tree over its children, so
    // the in-order leaves are 1..n.
    static ReferenceBst from_group_tree(const GroupAccessTree& t);

    // Almost complete binary tree over n leaves, deeper leaves packed left;
    // leaf depths differ by at most one.
    static ReferenceBst almost_complete(int n);
};

} // namespace gab
