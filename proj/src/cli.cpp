#include "racah/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "racah/algebra.hpp"
#include "racah/errors.hpp"
#include "racah/fock.hpp"
#include "racah/rational.hpp"
#include "racah/rotations.hpp"
#include "racah/special.hpp"
#include "racah/spectra.hpp"
#include "racah/trees.hpp"

namespace racah {

namespace {

using ordered_json = nlohmann::ordered_json;

/* Render a double exactly the way the JSON writer does (shortest
 * round-trip, '.' decimal point), so CSV and JSON agree byte for byte on
 * every number. */
std::string fmt_num(double v) { return nlohmann::json(v).dump(); }

/* RFC-style CSV field: quoted when it contains a separator, a quote, or a
 * newline, with inner quotes doubled. */
std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string dotted_label(const std::vector<int>& label) {
    std::string text;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i) text += '.';
        text += std::to_string(label[i]);
    }
    return text;
}

enum class Format { json, csv, dot };

Format parse_format(const std::string& name, bool dot_allowed) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    if (name == "dot") {
        if (!dot_allowed)
            throw ConfigError("format 'dot' is only available for the graph "
                              "command");
        return Format::dot;
    }
    throw ConfigError("unknown format '" + name +
                      "' (expected json, csv, or dot)");
}

int require_n(const RunConfig& cfg) {
    if (cfg.n < 2 || cfg.n > 8)
        throw ConfigError("option --n must be given, between 2 and 8");
    return cfg.n;
}

int require_level(const RunConfig& cfg) {
    if (cfg.level < 1)
        throw ConfigError("option --level must be given and positive");
    return cfg.level;
}

double effective_tol(const RunConfig& cfg) {
    double tol =
        cfg.tol.empty() ? default_tolerance() : parse_rational(cfg.tol);
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    return tol;
}

ModeParams build_params(const RunConfig& cfg) {
    ModeParams params = ModeParams::defaults(require_n(cfg), require_level(cfg));
    if (!cfg.a.empty()) params.a = parse_rational_list(cfg.a);
    if (!cfg.beta.empty()) params.beta = parse_rational_list(cfg.beta);
    params.validate();
    return params;
}

const Sector& pick_sector(const std::vector<Sector>& sectors, int index) {
    if (index < 0 || index >= static_cast<int>(sectors.size())) {
        std::ostringstream msg;
        msg << "sector index " << index << " out of range (decomposition has "
            << sectors.size() << " sectors)";
        throw ConfigError(msg.str());
    }
    return sectors[static_cast<std::size_t>(index)];
}

ordered_json params_json(const ModeParams& params) {
    ordered_json j;
    j["n"] = params.n;
    j["level"] = params.level;
    j["a"] = params.a;
    j["beta"] = params.beta;
    return j;
}

ordered_json sector_json(const Sector& sector) {
    ordered_json j;
    j["index"] = sector.index;
    j["q_total"] = sector.q_total;
    j["dim"] = sector.dim();
    return j;
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit(std::ostream& out, const ordered_json& report) {
    out << report.dump(2) << '\n';
}

// ---------------------------------------------------------------- verify

int run_verify(const RunConfig& cfg, std::ostream& out, Format format) {
    ModeParams params = build_params(cfg);
    double tol = effective_tol(cfg);

    std::vector<RelationReport> reports = verify_relation_suite(params, tol);
    FockBasis basis(params);
    std::vector<RelationReport> serre =
        verify_serre(chain_triples(basis, params), tol);
    reports.insert(reports.end(), serre.begin(), serre.end());

    int n_passed = 0, n_skipped = 0, n_failed = 0;
    for (const RelationReport& r : reports) {
        if (r.skipped)
            ++n_skipped;
        else if (r.passed)
            ++n_passed;
        else
            ++n_failed;
    }
    bool all_passed = suite_passed(reports);

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "verify";
        j["parameters"] = params_json(params);
        j["tolerance"] = tol;
        j["passed"] = all_passed;
        j["max_residual"] = suite_max_residual(reports);
        j["counts"] = {{"total", reports.size()},
                       {"passed", n_passed},
                       {"skipped", n_skipped},
                       {"failed", n_failed}};
        ordered_json list = ordered_json::array();
        for (const RelationReport& r : reports) {
            ordered_json item;
            item["id"] = r.id;
            item["context"] = r.context;
            item["residual"] = r.residual;
            item["passed"] = r.passed;
            item["skipped"] = r.skipped;
            item["reason"] = r.reason;
            list.push_back(std::move(item));
        }
        j["reports"] = std::move(list);
        emit(out, j);
    } else {
        out << "id,context,residual,passed,skipped,reason\n";
        for (const RelationReport& r : reports) {
            out << csv_field(r.id) << ',' << csv_field(r.context) << ','
                << fmt_num(r.residual) << ',' << (r.passed ? "true" : "false")
                << ',' << (r.skipped ? "true" : "false") << ','
                << csv_field(r.reason) << '\n';
        }
    }
    return all_passed ? 0 : 1;
}

// ----------------------------------------------------------------- trees

int run_trees(const RunConfig& cfg, std::ostream& out, Format format) {
    int n = require_n(cfg);
    std::vector<LabellingAlgebra> algebras = enumerate_trees(n);

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "trees";
        j["n"] = n;
        j["count"] = algebras.size();
        ordered_json list = ordered_json::array();
        for (const LabellingAlgebra& algebra : algebras)
            list.push_back(CouplingTree::from_algebra(n, algebra).to_string());
        j["trees"] = std::move(list);
        emit(out, j);
    } else {
        out << "index,tree\n";
        for (std::size_t i = 0; i < algebras.size(); ++i)
            out << i << ','
                << csv_field(
                       CouplingTree::from_algebra(n, algebras[i]).to_string())
                << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- graph

int run_graph(const RunConfig& cfg, std::ostream& out, Format format) {
    int n = require_n(cfg);
    RecouplingGraph g = recoupling_graph(n);

    // Each undirected edge once, oriented from the lower vertex index.
    struct Edge {
        int from, to;
        SwapMove move;
    };
    std::vector<Edge> edges;
    for (int v = 0; v < static_cast<int>(g.adjacency.size()); ++v)
        for (const auto& [w, move] : g.adjacency[v])
            if (w > v) edges.push_back({v, w, move});

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "graph";
        j["n"] = n;
        j["vertex_count"] = g.vertices.size();
        j["edge_count"] = edges.size();
        j["diameter"] = graph_diameter(g);
        ordered_json vlist = ordered_json::array();
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            ordered_json item;
            item["index"] = v;
            ordered_json nodes = ordered_json::array();
            for (subset_t node : g.vertices[v]) nodes.push_back(subset_str(node));
            item["algebra"] = std::move(nodes);
            item["tree"] =
                CouplingTree::from_algebra(n, g.vertices[v]).to_string();
            vlist.push_back(std::move(item));
        }
        j["vertices"] = std::move(vlist);
        ordered_json elist = ordered_json::array();
        for (const Edge& e : edges) {
            ordered_json item;
            item["from"] = e.from;
            item["to"] = e.to;
            item["removed"] = subset_str(e.move.removed);
            item["added"] = subset_str(e.move.added);
            item["K"] = subset_str(e.move.K);
            item["L"] = subset_str(e.move.L);
            item["M"] = subset_str(e.move.M);
            elist.push_back(std::move(item));
        }
        j["edges"] = std::move(elist);
        emit(out, j);
    } else if (format == Format::csv) {
        out << "from,to,removed,added,K,L,M\n";
        for (const Edge& e : edges)
            out << e.from << ',' << e.to << ','
                << csv_field(subset_str(e.move.removed)) << ','
                << csv_field(subset_str(e.move.added)) << ','
                << csv_field(subset_str(e.move.K)) << ','
                << csv_field(subset_str(e.move.L)) << ','
                << csv_field(subset_str(e.move.M)) << '\n';
    } else {
        out << "graph recoupling {\n";
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            out << "  v" << v << " [label=\"" << algebra_str(g.vertices[v])
                << "\"];\n";
        for (const Edge& e : edges)
            out << "  v" << e.from << " -- v" << e.to << " [label=\""
                << subset_str(e.move.removed) << "->"
                << subset_str(e.move.added) << "\"];\n";
        out << "}\n";
    }
    return 0;
}

// -------------------------------------------------------------- spectrum

int run_spectrum(const RunConfig& cfg, std::ostream& out, Format format) {
    ModeParams params = build_params(cfg);
    if (cfg.tree.empty())
        throw ConfigError("spectrum requires --tree");
    CouplingTree tree = CouplingTree::parse(cfg.tree, params.n);
    FockBasis basis(params);
    std::vector<Sector> sectors = sector_decompose(basis, params);
    const Sector& sector = pick_sector(sectors, cfg.sector);
    LabelledBasis lb = joint_eigenbasis(basis, params, sector, tree);

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "spectrum";
        j["parameters"] = params_json(params);
        j["tree"] = tree.to_string();
        j["sector"] = sector_json(sector);
        ordered_json nodes = ordered_json::array();
        for (subset_t node : lb.nodes) nodes.push_back(subset_str(node));
        j["nodes"] = std::move(nodes);
        j["ladders"] = lb.ladders;
        ordered_json vectors = ordered_json::array();
        for (int v = 0; v < lb.dim(); ++v) {
            ordered_json item;
            item["labels"] = lb.labels[v];
            item["eigenvalues"] = lb.eigenvalues[v];
            vectors.push_back(std::move(item));
        }
        j["vectors"] = std::move(vectors);
        emit(out, j);
    } else {
        const std::size_t r = lb.nodes.size();
        for (std::size_t i = 0; i < r; ++i) out << "label_" << i + 1 << ',';
        for (std::size_t i = 0; i < r; ++i)
            out << "eigenvalue_" << i + 1 << (i + 1 < r ? "," : "");
        out << '\n';
        for (int v = 0; v < lb.dim(); ++v) {
            for (std::size_t i = 0; i < r; ++i) out << lb.labels[v][i] << ',';
            for (std::size_t i = 0; i < r; ++i)
                out << fmt_num(lb.eigenvalues[v][i]) << (i + 1 < r ? "," : "");
            out << '\n';
        }
    }
    return 0;
}

// --------------------------------------------------------------- overlap

int run_overlap(const RunConfig& cfg, std::ostream& out, Format format) {
    ModeParams params = build_params(cfg);
    if (cfg.tree.empty() || cfg.tree2.empty())
        throw ConfigError("overlap requires --tree and --tree2");
    CouplingTree t1 = CouplingTree::parse(cfg.tree, params.n);
    CouplingTree t2 = CouplingTree::parse(cfg.tree2, params.n);
    FockBasis basis(params);
    std::vector<Sector> sectors = sector_decompose(basis, params);
    const Sector& sector = pick_sector(sectors, cfg.sector);
    LabelledBasis b1 = joint_eigenbasis(basis, params, sector, t1);
    LabelledBasis b2 = joint_eigenbasis(basis, params, sector, t2);
    OverlapMatrix ov = overlap_matrix(b1, b2);

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "overlap";
        j["parameters"] = params_json(params);
        j["tree"] = t1.to_string();
        j["tree2"] = t2.to_string();
        j["sector"] = sector_json(sector);
        ordered_json row_nodes = ordered_json::array();
        for (subset_t node : ov.row_nodes) row_nodes.push_back(subset_str(node));
        j["row_nodes"] = std::move(row_nodes);
        ordered_json col_nodes = ordered_json::array();
        for (subset_t node : ov.col_nodes) col_nodes.push_back(subset_str(node));
        j["col_nodes"] = std::move(col_nodes);
        j["row_labels"] = ov.row_labels;
        j["col_labels"] = ov.col_labels;
        j["row_eigenvalues"] = b2.eigenvalues;
        j["matrix"] = matrix_json(ov.B);
        emit(out, j);
    } else {
        // Rows keyed by integer label tuples; raw eigenvalues as extra
        // columns; one matrix column per column-label tuple.
        const std::size_t r = ov.row_nodes.size();
        out << "row_label";
        for (std::size_t i = 0; i < r; ++i) out << ",eigenvalue_" << i + 1;
        for (const std::vector<int>& cl : ov.col_labels)
            out << ",c_" << dotted_label(cl);
        out << '\n';
        for (int v = 0; v < ov.B.rows(); ++v) {
            out << dotted_label(ov.row_labels[v]);
            for (std::size_t i = 0; i < r; ++i)
                out << ',' << fmt_num(b2.eigenvalues[v][i]);
            for (int c = 0; c < ov.B.cols(); ++c)
                out << ',' << fmt_num(ov.B(v, c));
            out << '\n';
        }
    }
    return 0;
}

// ------------------------------------------------------------ krawtchouk

int run_krawtchouk(const RunConfig& cfg, std::ostream& out, Format format) {
    double x = parse_rational(cfg.x);
    double p = parse_rational(cfg.p);
    double value = krawtchouk(cfg.k, x, p, cfg.big_n);

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "krawtchouk";
        j["k"] = cfg.k;
        j["x"] = x;
        j["p"] = p;
        j["N"] = cfg.big_n;
        j["value"] = value;
        emit(out, j);
    } else {
        out << "k,x,p,N,value\n";
        out << cfg.k << ',' << fmt_num(x) << ',' << fmt_num(p) << ','
            << cfg.big_n << ',' << fmt_num(value) << '\n';
    }
    return 0;
}

// -------------------------------------------------------------- rotation

/* Shortest route between two labelling algebras that only crosses swaps
 * with a documented planar template (slot-preserving moves). Falls back to
 * ConfigError when no such route exists. */
std::vector<SwapMove> planar_route(const ModeParams& params,
                                   const RecouplingGraph& g,
                                   const LabellingAlgebra& from,
                                   const LabellingAlgebra& to) {
    auto from_it = g.index.find(from);
    auto to_it = g.index.find(to);
    if (from_it == g.index.end() || to_it == g.index.end())
        throw ConfigError("rotation: tree is not a vertex of the recoupling "
                          "graph");
    const int start = from_it->second;
    const int goal = to_it->second;

    std::vector<int> prev_vertex(g.vertices.size(), -1);
    std::vector<SwapMove> prev_move(g.vertices.size());
    std::vector<bool> seen(g.vertices.size(), false);
    std::vector<int> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        if (v == goal) break;
        for (const auto& [w, move] : g.adjacency[static_cast<std::size_t>(v)]) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            try {
                rotation_step(params, g.vertices[static_cast<std::size_t>(v)],
                              move);
            } catch (const ConfigError&) {
                continue; // no template for this edge
            }
            seen[static_cast<std::size_t>(w)] = true;
            prev_vertex[static_cast<std::size_t>(w)] = v;
            prev_move[static_cast<std::size_t>(w)] = move;
            queue.push_back(w);
        }
    }
    if (!seen[static_cast<std::size_t>(goal)])
        throw ConfigError("rotation: no route of documented planar swaps "
                          "connects the two trees");
    std::vector<SwapMove> route;
    for (int v = goal; v != start; v = prev_vertex[static_cast<std::size_t>(v)])
        route.push_back(prev_move[static_cast<std::size_t>(v)]);
    std::reverse(route.begin(), route.end());
    return route;
}

int run_rotation(const RunConfig& cfg, std::ostream& out, Format format) {
    int n = require_n(cfg);
    if (cfg.tree.empty() || cfg.tree2.empty())
        throw ConfigError("rotation requires --tree and --tree2");
    ModeParams params = ModeParams::defaults(n, cfg.level >= 1 ? cfg.level : 1);
    if (!cfg.a.empty()) params.a = parse_rational_list(cfg.a);
    if (!cfg.beta.empty()) params.beta = parse_rational_list(cfg.beta);
    params.validate();
    double tol = effective_tol(cfg);

    CouplingTree t1 = CouplingTree::parse(cfg.tree, n);
    CouplingTree t2 = CouplingTree::parse(cfg.tree2, n);
    LabellingAlgebra from = t1.labelling_algebra();
    LabellingAlgebra to = t2.labelling_algebra();
    RecouplingGraph g = recoupling_graph(n);
    std::vector<SwapMove> route = planar_route(params, g, from, to);

    std::vector<RotationStep> steps;
    LabellingAlgebra current = from;
    for (const SwapMove& move : route) {
        std::vector<RotationStep> part = rotation_step(params, current, move);
        steps.insert(steps.end(), part.begin(), part.end());
        for (subset_t& node : current)
            if (node == move.removed) node = move.added;
    }
    const int dim = n - 1;
    RotationMatrix closed = compose_rotations(steps, dim);

    // Numeric cross-check on a sector whenever the fundamental dimension
    // supports the solver and a level was supplied.
    bool solver_ran = false;
    double solver_residual = 0.0;
    double difference = 0.0;
    double q_total = 0.0;
    if (cfg.level >= 1 && (dim == 2 || dim == 3)) {
        FockBasis basis(params);
        std::vector<Sector> sectors = sector_decompose(basis, params);
        const Sector& sector = pick_sector(sectors, cfg.sector);
        SlFamily f1 = sl_family(basis, params, t1);
        SlFamily f2 = sl_family(basis, params, t2);
        RotationMatrix solved = solve_conjugation(f1, f2, sector);
        solver_ran = true;
        solver_residual = solved.residual;
        difference = (closed.entries - solved.entries).norm();
        q_total = sector.q_total;
    }

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "rotation";
        j["n"] = n;
        j["a"] = params.a;
        j["tree"] = t1.to_string();
        j["tree2"] = t2.to_string();
        j["tolerance"] = tol;
        ordered_json moves = ordered_json::array();
        for (const SwapMove& move : route) {
            ordered_json item;
            item["removed"] = subset_str(move.removed);
            item["added"] = subset_str(move.added);
            item["K"] = subset_str(move.K);
            item["L"] = subset_str(move.L);
            item["M"] = subset_str(move.M);
            moves.push_back(std::move(item));
        }
        j["moves"] = std::move(moves);
        ordered_json slist = ordered_json::array();
        for (const RotationStep& s : steps) {
            ordered_json item;
            item["plane"] = {s.axis_i, s.axis_j};
            item["angle"] = s.angle;
            item["offset"] = s.offset;
            item["K"] = subset_str(s.K);
            item["L"] = subset_str(s.L);
            item["M"] = subset_str(s.M);
            slist.push_back(std::move(item));
        }
        j["steps"] = std::move(slist);
        j["matrix"] = matrix_json(closed.entries);
        j["determinant"] = closed.entries.determinant();
        if (solver_ran) {
            ordered_json s;
            s["level"] = params.level;
            s["sector"] = cfg.sector;
            s["q_total"] = q_total;
            s["residual"] = solver_residual;
            s["difference"] = difference;
            s["agrees"] = difference <= tol;
            j["solver"] = std::move(s);
        } else {
            j["solver"] = nullptr;
        }
        emit(out, j);
    } else {
        for (int i = 1; i <= dim; ++i)
            out << "c_" << i << (i < dim ? "," : "");
        out << '\n';
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c)
                out << fmt_num(closed.entries(r, c)) << (c + 1 < dim ? "," : "");
            out << '\n';
        }
    }
    return (solver_ran && difference > tol) ? 1 : 0;
}

// ----------------------------------------------------------------- ninej

int run_ninej(const RunConfig& cfg, std::ostream& out, Format format) {
    if (cfg.n != 4)
        throw ConfigError("ninej is defined for --n 4");
    ModeParams params = build_params(cfg);
    FockBasis basis(params);
    std::vector<Sector> sectors = sector_decompose(basis, params);
    const Sector& sector = pick_sector(sectors, cfg.sector);
    NineJSymbol symbol = nine_j(basis, params, sector);
    const OverlapMatrix& ov = symbol.overlap;

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "ninej";
        j["parameters"] = params_json(params);
        j["sector"] = sector_json(sector);
        j["summed_node"] = subset_str(symbol.summed_node);
        j["central"] = symbol.central;
        j["summed_ladder"] = symbol.summed_ladder;
        ordered_json row_nodes = ordered_json::array();
        for (subset_t node : ov.row_nodes) row_nodes.push_back(subset_str(node));
        j["row_nodes"] = std::move(row_nodes);
        ordered_json col_nodes = ordered_json::array();
        for (subset_t node : ov.col_nodes) col_nodes.push_back(subset_str(node));
        j["col_nodes"] = std::move(col_nodes);
        j["row_labels"] = ov.row_labels;
        j["col_labels"] = ov.col_labels;
        j["matrix"] = matrix_json(ov.B);
        emit(out, j);
    } else {
        out << "row_label";
        for (const std::vector<int>& cl : ov.col_labels)
            out << ",c_" << dotted_label(cl);
        out << '\n';
        for (int v = 0; v < ov.B.rows(); ++v) {
            out << dotted_label(ov.row_labels[v]);
            for (int c = 0; c < ov.B.cols(); ++c)
                out << ',' << fmt_num(ov.B(v, c));
            out << '\n';
        }
    }
    return 0;
}

} // namespace

Command parse_command(const std::string& name) {
    if (name == "verify") return Command::verify;
    if (name == "trees") return Command::trees;
    if (name == "graph") return Command::graph;
    if (name == "spectrum") return Command::spectrum;
    if (name == "overlap") return Command::overlap;
    if (name == "krawtchouk") return Command::krawtchouk;
    if (name == "rotation") return Command::rotation;
    if (name == "ninej") return Command::ninej;
    throw ConfigError("unknown command '" + name + "'");
}

double default_tolerance() {
    const char* env = std::getenv("RACAH_TOL");
    if (env == nullptr || *env == '\0') return 1e-9;
    double tol = parse_rational(env);
    if (!(tol > 0.0))
        throw ConfigError("RACAH_TOL must be a positive rational or decimal");
    return tol;
}

int run(const RunConfig& config, std::ostream& out) {
    Format format =
        parse_format(config.format, config.command == Command::graph);
    switch (config.command) {
    case Command::verify: return run_verify(config, out, format);
    case Command::trees: return run_trees(config, out, format);
    case Command::graph: return run_graph(config, out, format);
    case Command::spectrum: return run_spectrum(config, out, format);
    case Command::overlap: return run_overlap(config, out, format);
    case Command::krawtchouk: return run_krawtchouk(config, out, format);
    case Command::rotation: return run_rotation(config, out, format);
    case Command::ninej: return run_ninej(config, out, format);
    }
    throw ConfigError("unknown command enum value");
}

} // namespace racah
