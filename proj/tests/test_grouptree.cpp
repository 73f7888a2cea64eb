#include "gab/grouptree.hpp"
#include "gab/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>

using namespace gab;

namespace {

// Children partition the parent exactly, in increasing key order.
void check_partition(const GroupAccessTree& t) {
    for (int id = 0; id < t.node_count(); ++id) {
        const auto& nd = t.node(id);
        if (nd.children.empty()) {
            CHECK(nd.iv.lo == nd.iv.hi);
            continue;
        }
        int expect = nd.iv.lo;
        for (int c : nd.children) {
            CHECK(t.node(c).iv.lo == expect);
            CHECK(t.node(c).level == nd.level + 1);
            expect = t.node(c).iv.hi + 1;
        }
        CHECK(expect == nd.iv.hi + 1);
    }
}

void check_refinement(const GroupAccessTree& t) {
    for (int p = 1; p <= t.n(); ++p) {
        for (int j = 0; j < t.height(); ++j) {
            const auto& outer = t.node(t.group_of(p, j)).iv;
            const auto& inner = t.node(t.group_of(p, j + 1)).iv;
            CHECK(outer.lo <= inner.lo);
            CHECK(inner.hi <= outer.hi);
        }
        const auto& leaf = t.node(t.group_of(p, t.height())).iv;
        CHECK(leaf.lo == p);
        CHECK(leaf.hi == p);
    }
}

std::vector<int> in_order_leaves(const ReferenceBst& bst) {
    std::vector<int> keys;
    std::function<void(int)> walk = [&](int id) {
        if (bst.is_leaf(id)) {
            keys.push_back(bst.nodes[static_cast<size_t>(id)].key);
            return;
        }
        walk(bst.nodes[static_cast<size_t>(id)].left);
        walk(bst.nodes[static_cast<size_t>(id)].right);
    };
    walk(bst.root);
    return keys;
}

int bst_height(const ReferenceBst& bst, int id) {
    if (bst.is_leaf(id)) return 0;
    return 1 + std::max(bst_height(bst, bst.nodes[static_cast<size_t>(id)].left),
                        bst_height(bst, bst.nodes[static_cast<size_t>(id)].right));
}

} // namespace

TEST_CASE("star trees") {
    const auto t3 = GroupAccessTree::star(3);
    CHECK(t3.height() == 1);
    CHECK(t3.node(t3.root()).children.size() == 3);
    CHECK(t3.node(t3.group_of(2, 1)).iv == Interval{2, 2});
    check_partition(t3);

    const auto t1 = GroupAccessTree::star(1);
    CHECK(t1.height() == 0);
    CHECK(t1.search_path(1).size() == 1);

    const auto t10 = GroupAccessTree::star(10);
    CHECK(t10.node(t10.root()).children.size() == 10);
}

TEST_CASE("regular trees split evenly, larger parts first") {
    const auto t = GroupAccessTree::regular(16, 4);
    CHECK(t.height() == 2);
    CHECK(t.node(t.group_of(7, 1)).iv == Interval{5, 8});
    CHECK(t.group_of(7, 0) == t.root());
    CHECK(t.search_path(7).size() == 3);
    check_partition(t);
    check_refinement(t);

    const auto t10 = GroupAccessTree::regular(10, 4);
    std::vector<int> sizes;
    for (int c : t10.node(t10.root()).children) sizes.push_back(t10.node(c).iv.size());
    CHECK(sizes == std::vector<int>{3, 3, 2, 2});
    check_partition(t10);
    check_refinement(t10);

    const auto star_like = GroupAccessTree::regular(5, 8);
    CHECK(star_like.height() == 1);

    CHECK_THROWS(GroupAccessTree::regular(4, 1));
    CHECK_THROWS(GroupAccessTree::star(0));
}

TEST_CASE("default branching") {
    CHECK(GroupAccessTree::default_branching(16) == 4);
    CHECK(GroupAccessTree::default_branching(8) == 4);
    CHECK(GroupAccessTree::default_branching(64) == 8);
}

TEST_CASE("doubling tree: block widths and size bound") {
    CHECK(GroupAccessTree::doubling_block_width(256, 1) == 16);
    CHECK(GroupAccessTree::doubling_block_width(256, 2) == 4);
    CHECK(GroupAccessTree::doubling_block_width(256, 3) == 2);
    CHECK(GroupAccessTree::doubling_block_width(64, 1) == 8);
    CHECK(GroupAccessTree::doubling_block_width(64, 2) == 4);

    for (uint64_t seed = 1; seed <= 20; ++seed) {
        SplitMix64 rng(seed);
        const int n = 2 + static_cast<int>(rng.next() % 255);
        const auto t = GroupAccessTree::doubling_random(n, rng);
        check_partition(t);
        check_refinement(t);
        for (int id = 1; id < t.node_count(); ++id) {
            const auto& nd = t.node(id);
            CHECK(nd.iv.size() <= GroupAccessTree::doubling_block_width(n, nd.level));
        }
        // fanout: one block of slack on block splits, a full parent block
        // when the bottom rule splits straight to singletons
        for (int id = 0; id < t.node_count(); ++id) {
            const auto& nd = t.node(id);
            if (nd.children.empty()) continue;
            const long long w = GroupAccessTree::doubling_block_width(n, nd.level + 1);
            CHECK(static_cast<long long>(nd.children.size()) <= std::max(w + 1, w * w));
        }
    }

    // n = 256 with the first block full width gives exactly 16 level-1 groups.
    for (uint64_t seed = 1; seed <= 400; ++seed) {
        SplitMix64 rng(seed);
        SplitMix64 probe(seed);
        if (probe.uniform_int(1, 16) != 16) continue;
        const auto t = GroupAccessTree::doubling_random(256, rng);
        CHECK(t.node(t.root()).children.size() == 16);
        break;
    }
}

TEST_CASE("skip-splay regions") {
    const auto t = GroupAccessTree::skip_splay(15, 0);
    CHECK(t.height() == 3);
    std::vector<Interval> level1;
    for (int c : t.node(t.root()).children) level1.push_back(t.node(c).iv);
    CHECK(level1 == std::vector<Interval>{{1, 3}, {4, 7}, {8, 11}, {12, 15}});
    CHECK(t.node(t.group_of(5, 1)).iv == Interval{4, 7});
    CHECK(t.node(t.group_of(5, 2)).iv == Interval{4, 5});
    check_partition(t);
    check_refinement(t);

    // shifts congruent mod the level-1 width give the same level-1 partition
    const auto a = GroupAccessTree::skip_splay(15, 1);
    const auto b = GroupAccessTree::skip_splay(15, 5);
    std::vector<Interval> la, lb;
    for (int c : a.node(a.root()).children) la.push_back(a.node(c).iv);
    for (int c : b.node(b.root()).children) lb.push_back(b.node(c).iv);
    CHECK(la == lb);

    for (long long delta : {0LL, 1LL, 3LL, 7LL, 13LL}) {
        for (int n : {8, 15, 16, 33, 64}) {
            const auto s = GroupAccessTree::skip_splay(n, delta);
            check_partition(s);
            check_refinement(s);
        }
    }
}

TEST_CASE("search paths shrink and end in singletons") {
    const auto t = GroupAccessTree::regular(16, 4);
    for (int p = 1; p <= 16; ++p) {
        const auto path = t.search_path(p);
        CHECK(path.size() == 3);
        for (size_t i = 1; i < path.size(); ++i)
            CHECK(t.node(path[i]).iv.size() < t.node(path[i - 1]).iv.size());
    }
    CHECK_THROWS(t.group_of(17, 0));
    CHECK_THROWS(t.group_of(3, 9));
}

TEST_CASE("reference BST from a group tree") {
    const auto star4 = ReferenceBst::from_group_tree(GroupAccessTree::star(4));
    CHECK(in_order_leaves(star4) == std::vector<int>{1, 2, 3, 4});
    CHECK(bst_height(star4, star4.root) == 2);

    const auto reg = ReferenceBst::from_group_tree(GroupAccessTree::regular(16, 4));
    CHECK(in_order_leaves(reg) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14,
                                                   15, 16});
    CHECK(bst_height(reg, reg.root) == 4);

    const auto single = ReferenceBst::from_group_tree(GroupAccessTree::star(1));
    CHECK(in_order_leaves(single) == std::vector<int>{1});

    SplitMix64 rng(7);
    const auto doubling = ReferenceBst::from_group_tree(GroupAccessTree::doubling_random(37, rng));
    auto keys = in_order_leaves(doubling);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(keys.size() == 37);
}

TEST_CASE("almost complete reference tree is left-filled") {
    for (int n : {1, 2, 3, 5, 6, 7, 8, 13, 32}) {
        const auto bst = ReferenceBst::almost_complete(n);
        auto keys = in_order_leaves(bst);
        CHECK(static_cast<int>(keys.size()) == n);
        CHECK(std::is_sorted(keys.begin(), keys.end()));
        // leaf depths differ by at most one, deeper leaves first
        std::vector<int> depths;
        for (int key = 1; key <= n; ++key)
            depths.push_back(static_cast<int>(bst.path_to(key).size()) - 1);
        const auto [lo, hi] = std::minmax_element(depths.begin(), depths.end());
        CHECK(*hi - *lo <= 1);
        CHECK(std::is_sorted(depths.rbegin(), depths.rend()));
    }
}

TEST_CASE("tree JSON export shape") {
    const auto t = GroupAccessTree::star(2);
    CHECK(t.to_json() ==
          "{\"lo\":1,\"hi\":2,\"children\":[{\"lo\":1,\"hi\":1,\"children\":[]},"
          "{\"lo\":2,\"hi\":2,\"children\":[]}]}");
}
