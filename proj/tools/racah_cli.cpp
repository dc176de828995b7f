#include <fstream>
#include <iostream>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "racah/cli.hpp"
#include "racah/errors.hpp"

namespace {

/* Shared option set; each sub-command attaches the subset it understands. */
struct Options {
    racah::RunConfig cfg;
    std::string out_path;
};

void add_mode_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--n", opt.cfg.n, "number of oscillator modes");
    cmd->add_option("--level", opt.cfg.level, "total excitation level L");
    cmd->add_option("--a", opt.cfg.a,
                    "comma-separated mode charges (rationals p/q or decimals; "
                    "default: first n odd primes)");
    cmd->add_option("--beta", opt.cfg.beta,
                    "comma-separated mode shifts (default: all 1)");
}

void add_output_options(CLI::App* cmd, Options& opt,
                        const std::string& formats) {
    cmd->add_option("--format", opt.cfg.format, "output format: " + formats);
    cmd->add_option("--out", opt.out_path,
                    "write the report to this file instead of stdout");
}

int dispatch(const Options& opt) {
    if (opt.out_path.empty()) return racah::run(opt.cfg, std::cout);
    std::ofstream file(opt.out_path);
    if (!file)
        throw racah::ConfigError("cannot open output file '" + opt.out_path +
                                 "'");
    return racah::run(opt.cfg, file);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite oscillator Racah-algebra toolbox: verify the defining "
                 "relations, enumerate coupling trees, diagonalize labelling "
                 "algebras, and compute recoupling overlaps and rotations."};
    app.require_subcommand(1);

    Options opt;

    CLI::App* verify = app.add_subcommand(
        "verify", "check the defining relations and the embedded chain");
    add_mode_options(verify, opt);
    verify->add_option("--tol", opt.cfg.tol,
                       "pass/fail tolerance (default: RACAH_TOL or 1e-9)");
    add_output_options(verify, opt, "json, csv");

    CLI::App* trees =
        app.add_subcommand("trees", "list the binary coupling trees");
    trees->add_option("--n", opt.cfg.n, "number of oscillator modes");
    add_output_options(trees, opt, "json, csv");

    CLI::App* graph = app.add_subcommand(
        "graph", "export the recoupling graph of coupling trees");
    graph->add_option("--n", opt.cfg.n, "number of oscillator modes");
    add_output_options(graph, opt, "json, csv, dot");

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "diagonalize one tree's labelling algebra on a sector");
    add_mode_options(spectrum, opt);
    spectrum->add_option("--tree", opt.cfg.tree,
                         "coupling tree, e.g. ((1,2),3)");
    spectrum->add_option("--sector", opt.cfg.sector,
                         "sector index in the central decomposition");
    add_output_options(spectrum, opt, "json, csv");

    CLI::App* overlap = app.add_subcommand(
        "overlap", "connection coefficients between two tree bases");
    add_mode_options(overlap, opt);
    overlap->add_option("--tree", opt.cfg.tree, "first coupling tree");
    overlap->add_option("--tree2", opt.cfg.tree2, "second coupling tree");
    overlap->add_option("--sector", opt.cfg.sector,
                        "sector index in the central decomposition");
    add_output_options(overlap, opt, "json, csv");

    CLI::App* krawtchouk = app.add_subcommand(
        "krawtchouk", "evaluate the binomial orthogonal polynomial K_k(x;p,N)");
    krawtchouk->add_option("--k", opt.cfg.k, "polynomial degree");
    krawtchouk->add_option("--x", opt.cfg.x, "evaluation point");
    krawtchouk->add_option("--p", opt.cfg.p, "success probability, 0 < p < 1");
    krawtchouk->add_option("--N", opt.cfg.big_n, "lattice size");
    add_output_options(krawtchouk, opt, "json, csv");

    CLI::App* rotation = app.add_subcommand(
        "rotation", "planar rotation factors along a recoupling path");
    add_mode_options(rotation, opt);
    rotation->add_option("--tree", opt.cfg.tree, "start coupling tree");
    rotation->add_option("--tree2", opt.cfg.tree2, "target coupling tree");
    rotation->add_option("--sector", opt.cfg.sector,
                         "sector used for the numeric cross-check");
    rotation->add_option("--tol", opt.cfg.tol,
                         "cross-check tolerance (default: RACAH_TOL or 1e-9)");
    add_output_options(rotation, opt, "json, csv");

    CLI::App* ninej = app.add_subcommand(
        "ninej", "summed-pair recoupling table for four modes");
    add_mode_options(ninej, opt);
    ninej->add_option("--sector", opt.cfg.sector,
                      "sector index in the central decomposition");
    add_output_options(ninej, opt, "json, csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (verify->parsed()) opt.cfg.command = racah::Command::verify;
    if (trees->parsed()) opt.cfg.command = racah::Command::trees;
    if (graph->parsed()) opt.cfg.command = racah::Command::graph;
    if (spectrum->parsed()) opt.cfg.command = racah::Command::spectrum;
    if (overlap->parsed()) opt.cfg.command = racah::Command::overlap;
    if (krawtchouk->parsed()) opt.cfg.command = racah::Command::krawtchouk;
    if (rotation->parsed()) opt.cfg.command = racah::Command::rotation;
    if (ninej->parsed()) opt.cfg.command = racah::Command::ninej;

    try {
        return dispatch(opt);
    } catch (const racah::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const racah::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const racah::IndexError& e) {
        std::cerr << "index error: " << e.what() << '\n';
        return 2;
    } catch (const racah::DimensionMismatch& e) {
        std::cerr << "dimension error: " << e.what() << '\n';
        return 2;
    } catch (const racah::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
