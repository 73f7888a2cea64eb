#include "gab/bounds.hpp"
#include "gab/geometry.hpp"
#include "gab/ggreedy.hpp"
#include "gab/grouptree.hpp"
#include "gab/harness.hpp"
#include "gab/verify.hpp"
#include "gab/weights.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace gab;

namespace {

AccessSequence make_sequence(int n, const std::vector<int>& entries) {
    AccessSequence x{n, entries};
    for (int v : entries)
        if (v < 1 || v > n) throw std::invalid_argument("key out of range");
    if (entries.empty()) throw std::invalid_argument("empty sequence");
    return x;
}

std::vector<std::tuple<int, int, bool>> point_list(const PointSet& p) {
    std::vector<std::tuple<int, int, bool>> out;
    for (const auto& pt : p.points()) out.emplace_back(pt.x, pt.y, p.is_access(pt.x, pt.y));
    return out;
}

GroupAccessTree tree_from_kind(int n, const std::string& kind, uint64_t seed, int branching,
                               long long delta) {
    TreeSpec spec;
    spec.kind = tree_kind_from(kind);
    spec.seed = seed;
    spec.branching = branching;
    spec.delta = delta;
    return build_tree(n, spec);
}

} // namespace

PYBIND11_MODULE(gablab, m) {
    m.doc() = "geometric BST model: greedy, grouped greedy, group access bounds and benchmarks";

    py::class_<GroupAccessTree>(m, "GroupAccessTree")
        .def_property_readonly("n", &GroupAccessTree::n)
        .def_property_readonly("height", &GroupAccessTree::height)
        .def("group_of",
             [](const GroupAccessTree& t, int p, int j) {
                 const auto& nd = t.node(t.group_of(p, j));
                 return std::make_pair(nd.iv.lo, nd.iv.hi);
             })
        .def("search_path",
             [](const GroupAccessTree& t, int p) {
                 std::vector<std::pair<int, int>> out;
                 for (int id : t.search_path(p))
                     out.emplace_back(t.node(id).iv.lo, t.node(id).iv.hi);
                 return out;
             })
        .def("to_json", &GroupAccessTree::to_json);

    m.def("make_tree", &tree_from_kind, py::arg("n"), py::arg("kind"), py::arg("seed") = 1,
          py::arg("branching") = 0, py::arg("delta") = 0,
          "build a group access tree: star | regular | doubling | skipsplay");

    m.def(
        "greedy",
        [](int n, const std::vector<int>& entries) {
            const auto res = greedy_run(make_sequence(n, entries));
            return py::make_tuple(res.cost(), point_list(res.points),
                                  res.points.arborally_satisfied());
        },
        py::arg("n"), py::arg("entries"),
        "run the row sweep; returns (cost, [(x, y, is_access)], satisfied)");

    m.def(
        "group_greedy",
        [](const GroupAccessTree& t, const std::vector<int>& entries) {
            const auto run = group_greedy_run(t, make_sequence(t.n(), entries));
            return py::make_tuple(run.cost(), point_list(run.points),
                                  run.points.arborally_satisfied());
        },
        py::arg("tree"), py::arg("entries"));

    m.def(
        "arborally_satisfied",
        [](int n, int m_rows, const std::vector<std::pair<int, int>>& pts) {
            PointSet p(n, m_rows);
            for (auto [x, y] : pts) p.insert(x, y);
            return p.arborally_satisfied();
        },
        py::arg("n"), py::arg("m"), py::arg("points"));

    m.def(
        "scheme_cost",
        [](const GroupAccessTree& t, const std::string& kind, const std::vector<int>& entries,
           int k, long long m_weight) {
            const auto x = make_sequence(t.n(), entries);
            std::unique_ptr<WeightScheme> scheme;
            FingerTrace trace;
            switch (scheme_kind_from(kind)) {
                case SchemeKind::last_accessed:
                    scheme = std::make_unique<LastAccessedScheme>(
                        t, m_weight > 0 ? m_weight : GroupAccessTree::default_branching(t.n()));
                    break;
                case SchemeKind::finger:
                    trace = kfinger_heuristic(x, k).trace;
                    scheme = std::make_unique<FingerScheme>(t, trace);
                    break;
                case SchemeKind::window_finger:
                    trace = window_finger_trace(x, k);
                    scheme = std::make_unique<FingerScheme>(t, trace, true);
                    break;
                case SchemeKind::working_set_squared:
                    scheme = std::make_unique<WorkingSetSquaredScheme>(t);
                    break;
            }
            const auto run = run_scheme(t, *scheme, x);
            return py::make_tuple(run.total, run.per_access);
        },
        py::arg("tree"), py::arg("kind"), py::arg("entries"), py::arg("k") = 2,
        py::arg("M") = 0, "total and per-access group access cost under a weight scheme");

    m.def(
        "wilber1",
        [](int n, const std::vector<int>& entries, int branching) {
            auto ref = ReferenceBst::from_group_tree(GroupAccessTree::regular(
                n, branching > 0 ? branching : GroupAccessTree::default_branching(n)));
            return wilber1(make_sequence(n, entries), ref);
        },
        py::arg("n"), py::arg("entries"), py::arg("branching") = 0);

    m.def(
        "kfinger",
        [](int n, const std::vector<int>& entries, int k, bool exact) {
            const auto x = make_sequence(n, entries);
            return exact ? kfinger_exact(x, k).value : kfinger_heuristic(x, k).value;
        },
        py::arg("n"), py::arg("entries"), py::arg("k"), py::arg("exact") = false);

    m.def("unified_bound",
          [](int n, const std::vector<int>& e) { return unified_bound(make_sequence(n, e)); });
    m.def("unified_bound_window", [](int n, const std::vector<int>& e, int k) {
        return unified_bound_window(make_sequence(n, e), k);
    });

    m.def(
        "generate",
        [](int n, int m_len, const std::string& kind, uint64_t seed) {
            GeneratorSpec spec;
            spec.kind = generator_kind_from(kind);
            spec.seed = seed;
            return generate_sequence(n, m_len, spec).entries;
        },
        py::arg("n"), py::arg("m"), py::arg("kind") = "uniform", py::arg("seed") = 1);

    m.def(
        "verify_suite",
        [](const std::string& name, bool quick) {
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& r : verify::run_suite(name, {quick}))
                out.emplace_back(r.name, r.pass, r.detail);
            return out;
        },
        py::arg("name"), py::arg("quick") = true);

    py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge");
}
