#include "gab/weights.hpp"

#include "gab/bounds.hpp"
#include "gab/harness.hpp"

#include <doctest.h>

#include <cmath>

using namespace gab;

namespace {

std::vector<Weight> uniform_weights(const GroupAccessTree& t) {
    return std::vector<Weight>(static_cast<size_t>(t.node_count()), Weight{1, 1});
}

} // namespace

TEST_CASE("edge cost on a uniform star") {
    const auto t = GroupAccessTree::star(8);
    const auto w = uniform_weights(t);
    for (int a : {1, 4, 8}) CHECK(edge_cost(t, w, a, 1) == doctest::Approx(3.0));
    CHECK(access_cost(t, w, 5) == doctest::Approx(3.0));
}

TEST_CASE("edge cost with one heavy sibling") {
    const auto t = GroupAccessTree::star(2);
    std::vector<Weight> w = uniform_weights(t);
    const long long big = 16;
    w[static_cast<size_t>(t.group_of(1, 1))] = {big, 1};
    const double c = edge_cost(t, w, 1, 1);
    CHECK(c == doctest::Approx(std::log2((big + 1.0) / big)));
    CHECK(c > 0);
    CHECK(c < 1);
}

TEST_CASE("last-accessed scheme costs on the regular tree") {
    const auto t = GroupAccessTree::regular(16, 4);
    LastAccessedScheme scheme(t, 4);
    AccessSequence x{16, {5, 5}};
    const auto run = run_scheme(t, scheme, x);
    CHECK(run.per_access[0] == doctest::Approx(4.0)); // two edges, log2(4) each
    CHECK(run.per_access[1] == doctest::Approx(2.0 * std::log2(7.0 / 4.0)));
    CHECK(run.total == doctest::Approx(run.per_access[0] + run.per_access[1]));
}

TEST_CASE("working-set-squared warm start matches a by-hand evaluation") {
    const auto t = GroupAccessTree::star(4);
    WorkingSetSquaredScheme scheme(t);
    AccessSequence x{4, {1, 1}};
    const auto run = run_scheme(t, scheme, x);
    // initial ranks: weights 1, 1/4, 1/9, 1/16
    const double w0 = 1 + 1.0 / 4 + 1.0 / 9 + 1.0 / 16;
    CHECK(run.per_access[0] == doctest::Approx(std::log2(w0)));
    // after one step the untouched siblings age one tick each
    const double w1 = 1 + 1.0 / 9 + 1.0 / 16 + 1.0 / 25;
    CHECK(run.per_access[1] == doctest::Approx(std::log2(w1)));
}

TEST_CASE("single-key universe costs nothing") {
    const auto t = GroupAccessTree::star(1);
    AccessSequence x{1, {1, 1, 1}};
    WorkingSetSquaredScheme ws(t);
    CHECK(run_scheme(t, ws, x).total == doctest::Approx(0.0));
    LastAccessedScheme la(t, 4);
    CHECK(run_scheme(t, la, x).total == doctest::Approx(0.0));
}

TEST_CASE("all four schemes emit locally bounded traces") {
    GeneratorSpec gen;
    gen.kind = GeneratorKind::uniform;
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        gen.seed = seed;
        const auto x = generate_sequence(16, 48, gen);
        SplitMix64 rng(seed);
        const auto tree = GroupAccessTree::doubling_random(16, rng);
        const auto heur = kfinger_heuristic(x, 2);
        const auto window = window_finger_trace(x, 3);

        LastAccessedScheme la(tree, 4);
        FingerScheme fg(tree, heur.trace);
        WorkingSetSquaredScheme ws(tree);
        FingerScheme wf(tree, window, true);
        for (WeightScheme* s : {static_cast<WeightScheme*>(&la), static_cast<WeightScheme*>(&fg),
                                static_cast<WeightScheme*>(&ws), static_cast<WeightScheme*>(&wf)}) {
            const auto run = run_scheme(tree, *s, x);
            CHECK(verify_locally_bounded(tree, run.trace));
            CHECK(verify_weight_directions(tree, run.trace));
            for (const auto& snapshot : run.trace.at)
                for (const auto& w : snapshot) {
                    CHECK(w.value() <= s->weight_bound() + 1e-12);
                    CHECK(w.value() >= 1.0 / s->weight_bound() - 1e-12);
                }
        }
    }
}

TEST_CASE("working-set-squared sibling sums stay under 2") {
    GeneratorSpec gen;
    gen.kind = GeneratorKind::ws_local;
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        gen.seed = seed;
        const auto x = generate_sequence(32, 96, gen);
        const auto tree = GroupAccessTree::skip_splay(32, static_cast<long long>(seed));
        WorkingSetSquaredScheme scheme(tree);
        const auto run = run_scheme(tree, scheme, x);
        for (const auto& snapshot : run.trace.at) {
            for (int id = 0; id < tree.node_count(); ++id) {
                const auto& nd = tree.node(id);
                if (nd.children.empty()) continue;
                double sum = 0;
                for (int c : nd.children) sum += snapshot[static_cast<size_t>(c)].value();
                CHECK(sum < 2.0);
            }
        }
        // access costs are non-negative and bounded by the clamp
        const double cap = tree.height() *
                           std::log2(2.0 * scheme.weight_bound() * tree.n());
        for (double c : run.per_access) {
            CHECK(c >= 0.0);
            CHECK(c <= cap);
        }
    }
}

TEST_CASE("an off-path weight bump is rejected") {
    const auto t = GroupAccessTree::star(3);
    WeightTrace trace;
    trace.x = AccessSequence{3, {1}};
    trace.at.assign(2, uniform_weights(t));
    CHECK(verify_locally_bounded(t, trace)); // constant weights pass
    trace.at[1][static_cast<size_t>(t.group_of(3, 1))] = {2, 1};
    CHECK_FALSE(verify_locally_bounded(t, trace));
}

TEST_CASE("neighborhoods follow the recency rule") {
    const auto t = GroupAccessTree::star(4);
    const auto w = uniform_weights(t);
    std::vector<long long> touch(static_cast<size_t>(t.node_count()), 0);
    // children touched at times 1,2,3,4 left to right: each neighborhood
    // spans everything up to the nearest more recent sibling, so the sums
    // are 1, 2, 3 and 4 groups.
    for (int p = 1; p <= 4; ++p) touch[static_cast<size_t>(t.group_of(p, 1))] = p;
    const auto phi = neighborhood_potential(t, w, touch);
    CHECK(phi[1] == doctest::Approx(std::log2(1.0) + std::log2(2.0) + std::log2(3.0) +
                                    std::log2(4.0)));
    // all-uniform weights keep every level-sum non-negative
    CHECK(phi[1] >= 0);
}

TEST_CASE("group access lemma verifier on small runs") {
    GeneratorSpec gen;
    gen.kind = GeneratorKind::uniform;
    gen.seed = 11;
    const auto x = generate_sequence(16, 64, gen);
    const auto tree = GroupAccessTree::regular(16, 4);
    const auto greedy = group_greedy_run(tree, x);
    LastAccessedScheme scheme(tree, 4);
    const auto run = run_scheme(tree, scheme, x);
    const auto rep = verify_group_access_lemma(tree, run.trace, greedy, 10.0);
    CHECK(rep.pass);
    CHECK(rep.steps > 0);

    // constant sequences keep the verifier honest at near-zero edge costs
    AccessSequence c{16, std::vector<int>(32, 7)};
    const auto greedy_c = group_greedy_run(tree, c);
    WorkingSetSquaredScheme ws(tree);
    const auto run_c = run_scheme(tree, ws, c);
    CHECK(verify_group_access_lemma(tree, run_c.trace, greedy_c, 10.0).pass);

    // single key: vacuously fine
    const auto t1 = GroupAccessTree::star(1);
    AccessSequence one{1, {1, 1}};
    const auto g1 = group_greedy_run(t1, one);
    WorkingSetSquaredScheme ws1(t1);
    const auto r1 = run_scheme(t1, ws1, one);
    CHECK(verify_group_access_lemma(t1, r1.trace, g1, 10.0).pass);
}

TEST_CASE("trace CSV export shape") {
    const auto t = GroupAccessTree::star(2);
    LastAccessedScheme scheme(t, 4);
    AccessSequence x{2, {1}};
    const auto run = run_scheme(t, scheme, x);
    const auto csv = trace_to_csv(t, run.trace);
    CHECK(csv.rfind("t,level,group_lo,group_hi,weight\n", 0) == 0);
    CHECK(csv.find("1,1,1,1,4") != std::string::npos); // key 1 heavy after its access
}
