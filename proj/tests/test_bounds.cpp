#include "gab/bounds.hpp"

#include "gab/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace gab;

namespace {

// Independent switch counter: for every internal node, record the branch
// direction of each search that passes it and count changes after the
// first. Only used to cross-check wilber1.
long long wilber1_by_state_replay(const AccessSequence& x, const ReferenceBst& bst) {
    std::map<int, std::vector<int>> dirs;
    for (int t = 1; t <= x.m(); ++t) {
        int id = bst.root;
        while (!bst.is_leaf(id)) {
            const auto& nd = bst.nodes[static_cast<size_t>(id)];
            const int next = x.at(t) <= nd.split ? nd.left : nd.right;
            dirs[id].push_back(next);
            id = next;
        }
    }
    long long total = 0;
    for (const auto& [node, seq] : dirs)
        for (size_t i = 1; i < seq.size(); ++i)
            if (seq[i] != seq[i - 1]) ++total;
    return total;
}

AccessSequence gen(int n, int m, uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::uniform;
    spec.seed = seed;
    return generate_sequence(n, m, spec);
}

} // namespace

TEST_CASE("wilber1 on tiny instances") {
    auto r2 = ReferenceBst::almost_complete(2);
    CHECK(wilber1(AccessSequence{2, {1, 1, 1, 1}}, r2) == 0);
    CHECK(wilber1(AccessSequence{2, {1, 2, 1, 2}}, r2) == 3); // flips at t=2,3,4

    auto r4 = ReferenceBst::almost_complete(4);
    const AccessSequence seq{4, {1, 2, 3, 4}};
    CHECK(wilber1(seq, r4) == wilber1_by_state_replay(seq, r4));

    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const auto x = gen(13, 40, seed);
        auto r = ReferenceBst::almost_complete(13);
        CHECK(wilber1(x, r) == wilber1_by_state_replay(x, r));
    }
}

TEST_CASE("wilber1 never exceeds the greedy cost") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        const auto x = gen(16, 64, seed);
        auto r = ReferenceBst::from_group_tree(GroupAccessTree::regular(16, 4));
        CHECK(wilber1(x, r) <= greedy_cost(x));
    }
}

TEST_CASE("exact k-finger base cases") {
    // one finger per leaf: every access costs one node
    const AccessSequence all{4, {3, 1, 4, 2, 2, 4}};
    CHECK(kfinger_exact(all, 4).value == all.m());

    // single finger on a constant sequence never moves
    const AccessSequence stay{8, {5, 5, 5, 5, 5}};
    CHECK(kfinger_exact(stay, 1).value == stay.m());

    // two keys, one finger: serve 1, then walk the three-node path to 2
    const AccessSequence pair{2, {1, 2}};
    CHECK(kfinger_exact(pair, 1).value == 4);
}

TEST_CASE("exact k-finger reports a usable trace") {
    const auto x = gen(8, 6, 3);
    const auto res = kfinger_exact(x, 2);
    CHECK(res.trace.positions.size() == static_cast<size_t>(x.m()) + 1);
    long long total = 0;
    for (int t = 1; t <= x.m(); ++t) {
        const auto& pos = res.trace.positions[static_cast<size_t>(t)];
        CHECK(std::binary_search(pos.begin(), pos.end(), x.at(t)));
        total += res.trace.step_cost[static_cast<size_t>(t) - 1];
    }
    CHECK(total == res.value);
}

TEST_CASE("heuristic stays above the exact optimum and both shrink with k") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const auto x = gen(10, 7, seed);
        long long prev = std::numeric_limits<long long>::max();
        for (int k = 1; k <= 3; ++k) {
            const auto exact = kfinger_exact(x, k);
            CHECK(kfinger_heuristic(x, k).value >= exact.value);
            CHECK(exact.value <= prev);
            prev = exact.value;
        }
    }
    const AccessSequence c{16, {9, 9, 9}};
    CHECK(kfinger_heuristic(c, 3).value == 3);
}

TEST_CASE("pinning the initial placement can only cost more") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        const auto x = gen(9, 7, seed);
        for (int k = 1; k <= 2; ++k) {
            const auto free_start = kfinger_exact(x, k);
            const auto pinned = kfinger_exact(x, k, 2'000'000, false);
            CHECK(pinned.value >= free_start.value);
        }
    }
}

TEST_CASE("oversized exact instances raise InstanceTooLarge") {
    AccessSequence x{4096, std::vector<int>(64, 1)};
    for (int t = 0; t < 64; ++t) x.entries[static_cast<size_t>(t)] = t * 64 + 1;
    CHECK_THROWS_AS(kfinger_exact(x, 3, 1000), InstanceTooLarge);
}

TEST_CASE("unified bound closed-form examples") {
    CHECK(unified_bound(AccessSequence{8, {5, 5}}) == doctest::Approx(std::log2(3.0)));
    CHECK(unified_bound(AccessSequence{8, {1, 2}}) == doctest::Approx(2.0));
    CHECK(unified_bound(AccessSequence{8, {4}}) == doctest::Approx(0.0));
    CHECK(unified_bound_window(AccessSequence{8, {3, 3}}, 1) == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("window variants interpolate to the unified bound") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const auto x = gen(24, 40, seed);
        const double full = unified_bound(x);
        double prev = std::numeric_limits<double>::infinity();
        for (int k : {1, 2, 5, 20, 40}) {
            const double v = unified_bound_window(x, k);
            CHECK(v <= prev + 1e-12);
            CHECK(v >= full - 1e-12);
            prev = v;
        }
        CHECK(unified_bound_window(x, x.m()) == full);
    }
}

TEST_CASE("window finger trace holds the last k accesses") {
    const AccessSequence x{9, {4, 7, 7, 2}};
    const auto tr = window_finger_trace(x, 2);
    CHECK(tr.positions[0].empty());
    CHECK(tr.positions[1] == std::vector<int>{4});
    CHECK(tr.positions[2] == std::vector<int>{4, 7});
    CHECK(tr.positions[3] == std::vector<int>{7, 7}); // duplicates collapse on one leaf
    CHECK(tr.positions[4] == std::vector<int>{2, 7});

    const auto one = window_finger_trace(x, 1);
    for (int t = 1; t <= x.m(); ++t)
        CHECK(one.positions[static_cast<size_t>(t)] == std::vector<int>{x.at(t)});
}
