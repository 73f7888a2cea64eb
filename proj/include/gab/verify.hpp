#pragma once

#include "gab/geometry.hpp"
#include "gab/harness.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gab::verify {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct SuiteOptions {
    bool quick = false; // shrunken corpus, for smoke use in unit tests
};

// Deterministic benchmark corpus: every generator crossed with every tree
// construction over a ladder of sizes. The callback sees each (sequence,
// tree) run once.
struct CorpusRun {
    const AccessSequence& x;
    GeneratorKind generator;
    uint64_t sequence_seed;
    TreeKind tree_kind;
    const GroupAccessTree& tree;
    uint64_t tree_seed;
};

void for_each_corpus_sequence(const SuiteOptions& opt,
                              const std::function<void(const AccessSequence&, GeneratorKind, uint64_t)>& fn);
void for_each_corpus_run(const SuiteOptions& opt, const std::function<void(const CorpusRun&)>& fn);
long long corpus_run_count(const SuiteOptions& opt);

std::vector<std::string> suite_names();
std::vector<CriterionResult> run_suite(const std::string& name, const SuiteOptions& opt = {});

// Independent reference evaluators used by the oracle-agreement checks.
namespace oracle {
double unified_bound_naive(const AccessSequence& x);
double unified_bound_window_naive(const AccessSequence& x, int k);
// Minimum finger cost by enumerating every assignment of accesses to
// fingers; exponential, for tiny instances only.
long long kfinger_enumerate(const AccessSequence& x, int k);
} // namespace oracle

} // namespace gab::verify
