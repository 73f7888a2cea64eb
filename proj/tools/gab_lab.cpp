#include "gab/harness.hpp"
#include "gab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"group access bound lab: grouped greedy, weight schemes and BST benchmark bounds"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();

    std::string gen_kind = "uniform", gen_out;
    int gen_n = 16, gen_m = 64;
    uint64_t gen_seed = 1;
    auto* gen = app.add_subcommand("gen", "generate an access sequence file");
    gen->add_option("--kind", gen_kind, "sequential|interleave|uniform|ws_local|finger_local");
    gen->add_option("--n", gen_n, "key universe size")->required();
    gen->add_option("--m", gen_m, "sequence length")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output path (stdout if omitted)");

    std::string suite = "all";
    bool quick = false;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "one of: figure arboral star local-bounds sqrtlog "
                                         "kfinger unified oracles gal all");
    verify->add_flag("--quick", quick, "shrunken corpus (smoke mode)");

    std::string points_path, svg_out;
    auto* render = app.add_subcommand("render", "render a point-set CSV as SVG");
    render->add_option("--points", points_path, "point set CSV (x,y,kind)")->required();
    render->add_option("--out", svg_out, "output SVG path")->required();

    std::string tree_kind = "regular", tree_out;
    int tree_n = 16, tree_branching = 0;
    uint64_t tree_seed = 1;
    long long tree_delta = 0;
    auto* tree = app.add_subcommand("tree", "print a group access tree as JSON");
    tree->add_option("--kind", tree_kind, "star|regular|doubling|skipsplay");
    tree->add_option("--n", tree_n, "key universe size")->required();
    tree->add_option("--branching", tree_branching, "regular tree fanout (0 = default)");
    tree->add_option("--seed", tree_seed, "doubling tree seed");
    tree->add_option("--delta", tree_delta, "skip-splay region offset");
    tree->add_option("--out", tree_out, "output path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto cfg = gab::ExperimentConfig::from_json(slurp(config_path));
            const auto report = gab::run_experiment(cfg);
            if (cfg.report_csv.empty()) std::cout << report.to_csv();
            for (const auto& row : report.rows)
                if (row.exact_downgraded)
                    std::cerr << "warning: " << row.sequence_id
                              << ": exact finger oracle too large, heuristic used\n";
            return report.all_checks_pass() ? 0 : 1;
        }
        if (*gen) {
            gab::GeneratorSpec spec;
            spec.kind = gab::generator_kind_from(gen_kind);
            spec.seed = gen_seed;
            const auto x = gab::generate_sequence(gen_n, gen_m, spec);
            const auto text = gab::sequence_to_text(x);
            if (gen_out.empty())
                std::cout << text;
            else
                gab::write_file(gen_out, text);
            return 0;
        }
        if (*verify) {
            bool pass = true;
            for (const auto& r : gab::verify::run_suite(suite, {quick})) {
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
                          << " (" << r.seconds << "s)\n";
                pass = pass && r.pass;
            }
            return pass ? 0 : 1;
        }
        if (*render) {
            const auto points = gab::PointSet::from_csv(slurp(points_path));
            gab::write_file(svg_out, gab::render_point_set(points));
            return 0;
        }
        if (*tree) {
            gab::TreeSpec spec;
            spec.kind = gab::tree_kind_from(tree_kind);
            spec.branching = tree_branching;
            spec.seed = tree_seed;
            spec.delta = tree_delta;
            const auto json = gab::build_tree(tree_n, spec).to_json();
            if (tree_out.empty())
                std::cout << json << '\n';
            else
                gab::write_file(tree_out, json);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
