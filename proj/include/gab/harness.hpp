#pragma once

#include "gab/bounds.hpp"
#include "gab/geometry.hpp"
#include "gab/ggreedy.hpp"
#include "gab/grouptree.hpp"
#include "gab/rng.hpp"
#include "gab/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gab {

enum class GeneratorKind { sequential, interleave, uniform, ws_local, finger_local };
enum class TreeKind { star, regular, doubling, skipsplay };
enum class SchemeKind { last_accessed, finger, working_set_squared, window_finger };

const char* to_string(GeneratorKind k);
const char* to_string(TreeKind k);
const char* to_string(SchemeKind k);
GeneratorKind generator_kind_from(const std::string& s);
TreeKind tree_kind_from(const std::string& s);
SchemeKind scheme_kind_from(const std::string& s);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::uniform;
    uint64_t seed = 1;
    int window = 8;    // ws_local: size of the hot key window
    int walkers = 2;   // finger_local: number of random walks
    int stride = 3;    // finger_local: max step per move
};

AccessSequence generate_sequence(int n, int m, const GeneratorSpec& spec);

struct TreeSpec {
    TreeKind kind = TreeKind::star;
    int branching = 0;      // regular; 0 picks the default
    uint64_t seed = 1;      // doubling
    long long delta = 0;    // skipsplay
};

GroupAccessTree build_tree(int n, const TreeSpec& spec);

struct SchemeSpec {
    SchemeKind kind = SchemeKind::last_accessed;
    long long m_weight = 0; // last_accessed; 0 picks the default branching
    int k = 2;              // finger variants
    bool exact_fingers = false;
};

struct ExperimentConfig {
    int n = 16;
    int m = 64;
    GeneratorSpec generator;
    TreeSpec tree;
    SchemeSpec scheme;
    int trials = 1;
    uint64_t seed = 1;
    std::string report_csv;
    std::string points_csv;
    std::string svg;
    std::string trace_csv;
    std::string touches_csv;
    std::string sequence_file;

    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
};

struct TrialRow {
    std::string sequence_id;
    int n = 0;
    int m = 0;
    int k = 0;
    uint64_t tree_seed = 0;
    long long wilber = 0;
    std::optional<long long> fk_exact;
    long long fk_heur = 0;
    double ub = 0;
    double ubk = 0;
    long long greedy = 0;
    long long ggreedy = 0;
    double gab = 0;
    bool locally_bounded = false;
    bool arborally_satisfied = false;
    bool star_equivalent = true; // vacuous unless the tree is a star
    bool exact_downgraded = false;
};

struct AggregateRow {
    int trials = 0;
    double ggreedy_mean = 0;
    double gab_mean = 0;
    bool all_pass = true;
};

struct CostReport {
    std::vector<TrialRow> rows;
    // Means over the randomized-tree trials; exact functions of the rows.
    AggregateRow aggregate() const;
    bool all_checks_pass() const;
    // Header "sequence_id,n,m,k,wilber1,fk_exact,fk_heur,ub,ubk,greedy_cost,
    // ggreedy_cost,gab_cost" plus check flag columns, one row per trial and
    // a trailing mean row when there are several; a leading timestamp
    // comment line is the only non-reproducible byte.
    std::string to_csv(bool timestamp = true) const;
};

CostReport run_experiment(const ExperimentConfig& cfg);

// SVG plot of a point set: accesses and added points in distinct marks,
// plus vertical lines at group boundaries when a tree is given. Guarded to
// 10^4 points.
std::string render_point_set(const PointSet& p, const GroupAccessTree* tree = nullptr);

// Sequence file I/O: "n m" on the first line, one key per line after.
std::string sequence_to_text(const AccessSequence& x);
AccessSequence sequence_from_text(const std::string& text);
AccessSequence load_sequence(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace gab
