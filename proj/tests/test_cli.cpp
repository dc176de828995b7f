#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "racah/cli.hpp"
#include "racah/errors.hpp"

using namespace racah;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = 0;
    std::string text;
};

CliResult run_cli(const RunConfig& cfg) {
    std::ostringstream out;
    CliResult result;
    result.exit_code = run(cfg, out);
    result.text = out.str();
    return result;
}

json run_json(const RunConfig& cfg, int expected_exit = 0) {
    CliResult r = run_cli(cfg);
    REQUIRE(r.exit_code == expected_exit);
    return json::parse(r.text);
}

/* Minimal JSON-schema checker covering the subset the report schema uses:
 * $ref into #/definitions, oneOf, type, const, enum, required, properties,
 * items (single schema), minItems. */
const json* resolve_ref(const json& root, const std::string& ref) {
    REQUIRE(ref.rfind("#/", 0) == 0);
    const json* node = &root;
    std::size_t pos = 2;
    while (pos < ref.size()) {
        std::size_t next = ref.find('/', pos);
        if (next == std::string::npos) next = ref.size();
        std::string key = ref.substr(pos, next - pos);
        REQUIRE(node->contains(key));
        node = &(*node)[key];
        pos = next + 1;
    }
    return node;
}

bool type_matches(const std::string& type, const json& value) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    return false;
}

bool conforms(const json& root, const json& schema, const json& value) {
    if (schema.contains("$ref"))
        return conforms(root, *resolve_ref(root, schema["$ref"]), value);
    if (schema.contains("oneOf")) {
        int hits = 0;
        for (const json& option : schema["oneOf"])
            if (conforms(root, option, value)) ++hits;
        if (hits != 1) return false;
    }
    if (schema.contains("const") && value != schema["const"]) return false;
    if (schema.contains("enum")) {
        bool found = false;
        for (const json& option : schema["enum"])
            if (value == option) found = true;
        if (!found) return false;
    }
    if (schema.contains("type") &&
        !type_matches(schema["type"].get<std::string>(), value))
        return false;
    if (schema.contains("required")) {
        if (!value.is_object()) return false;
        for (const json& key : schema["required"])
            if (!value.contains(key.get<std::string>())) return false;
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !conforms(root, sub, value[key]))
                return false;
    }
    if (schema.contains("items") && value.is_array()) {
        for (const json& element : value)
            if (!conforms(root, schema["items"], element)) return false;
    }
    if (schema.contains("minItems") && value.is_array() &&
        value.size() < schema["minItems"].get<std::size_t>())
        return false;
    return true;
}

const json& report_schema() {
    static json schema = [] {
        std::ifstream file(RACAH_SOURCE_DIR "/docs/schema/report.schema.json");
        REQUIRE(file.good());
        return json::parse(file);
    }();
    return schema;
}

bool matches_schema(const json& report) {
    return conforms(report_schema(), report_schema(), report);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("parse_command_maps_names_and_rejects_unknown") {
    CHECK(parse_command("verify") == Command::verify);
    CHECK(parse_command("trees") == Command::trees);
    CHECK(parse_command("graph") == Command::graph);
    CHECK(parse_command("spectrum") == Command::spectrum);
    CHECK(parse_command("overlap") == Command::overlap);
    CHECK(parse_command("krawtchouk") == Command::krawtchouk);
    CHECK(parse_command("rotation") == Command::rotation);
    CHECK(parse_command("ninej") == Command::ninej);
    CHECK_THROWS_AS(parse_command("frobnicate"), ConfigError);
}

TEST_CASE("default_tolerance_reads_environment_override") {
    unsetenv("RACAH_TOL");
    CHECK(default_tolerance() == doctest::Approx(1e-9));
    setenv("RACAH_TOL", "1/8", 1);
    CHECK(default_tolerance() == doctest::Approx(0.125));
    setenv("RACAH_TOL", "1e-6", 1);
    CHECK(default_tolerance() == doctest::Approx(1e-6));
    setenv("RACAH_TOL", "0", 1);
    CHECK_THROWS_AS(default_tolerance(), ConfigError);
    setenv("RACAH_TOL", "-1/2", 1);
    CHECK_THROWS_AS(default_tolerance(), ConfigError);
    unsetenv("RACAH_TOL");
}

TEST_CASE("verify_report_matches_schema_and_passes") {
    RunConfig cfg;
    cfg.command = Command::verify;
    cfg.n = 3;
    cfg.level = 3;
    cfg.a = "2,3,5";
    cfg.beta = "1,1,1";
    cfg.tol = "1e-9";
    json report = run_json(cfg);
    CHECK(matches_schema(report));
    CHECK(report["command"] == "verify");
    CHECK(report["passed"] == true);
    CHECK(report["counts"]["failed"] == 0);
    CHECK(report["counts"]["total"].get<int>() ==
          report["counts"]["passed"].get<int>() +
              report["counts"]["skipped"].get<int>());
    CHECK(report["max_residual"].get<double>() < 1e-9);
    CHECK(report["parameters"]["a"] == json::array({2.0, 3.0, 5.0}));

    // Rational charge spellings parse to the same numbers.
    cfg.a = "4/2,6/2,10/2";
    json again = run_json(cfg);
    CHECK(again["parameters"]["a"] == report["parameters"]["a"]);
}

TEST_CASE("verify_failure_exits_one_and_names_residuals") {
    RunConfig cfg;
    cfg.command = Command::verify;
    cfg.n = 3;
    cfg.level = 2;
    cfg.tol = "1e-30"; // far below attainable arithmetic noise
    CliResult r = run_cli(cfg);
    CHECK(r.exit_code == 1);
    json report = json::parse(r.text);
    CHECK(matches_schema(report));
    CHECK(report["passed"] == false);
    CHECK(report["counts"]["failed"].get<int>() > 0);
    bool failed_has_id = true;
    for (const json& item : report["reports"])
        if (item["passed"] == false && item["skipped"] == false)
            failed_has_id = failed_has_id && !item["id"].get<std::string>().empty();
    CHECK(failed_has_id);
}

TEST_CASE("verify_csv_has_header_and_one_row_per_relation") {
    RunConfig cfg;
    cfg.command = Command::verify;
    cfg.n = 3;
    cfg.level = 2;
    cfg.format = "csv";
    CliResult r = run_cli(cfg);
    CHECK(r.exit_code == 0);
    std::vector<std::string> lines = split_lines(r.text);
    REQUIRE(lines.size() > 1);
    CHECK(lines[0] == "id,context,residual,passed,skipped,reason");
    json report = run_json([&] {
        RunConfig j = cfg;
        j.format = "json";
        return j;
    }());
    CHECK(lines.size() == 1 + report["reports"].size());
}

TEST_CASE("trees_command_counts_match_double_factorial") {
    RunConfig cfg;
    cfg.command = Command::trees;
    cfg.n = 3;
    json three = run_json(cfg);
    CHECK(matches_schema(three));
    CHECK(three["count"] == 3);
    CHECK(three["trees"].size() == 3);

    cfg.n = 4;
    json four = run_json(cfg);
    CHECK(four["count"] == 15);
    CHECK(four["trees"].size() == 15);

    cfg.n = 1;
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
    cfg.n = 9;
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
}

TEST_CASE("graph_exports_json_csv_and_dot") {
    RunConfig cfg;
    cfg.command = Command::graph;
    cfg.n = 4;
    json report = run_json(cfg);
    CHECK(matches_schema(report));
    CHECK(report["vertex_count"] == 15);
    CHECK(report["edge_count"] == 30); // 15 vertices of degree 4
    CHECK(report["diameter"] == 3);
    for (const json& edge : report["edges"])
        CHECK(edge["from"].get<int>() < edge["to"].get<int>());

    cfg.format = "dot";
    CliResult dot = run_cli(cfg);
    CHECK(dot.exit_code == 0);
    std::vector<std::string> lines = split_lines(dot.text);
    REQUIRE(lines.size() == 2 + 15 + 30);
    CHECK(lines.front() == "graph recoupling {");
    CHECK(lines.back() == "}");
    CHECK(lines[1].find("v0 [label=") != std::string::npos);
    CHECK(lines[16].find(" -- ") != std::string::npos);

    cfg.format = "csv";
    CliResult csv = run_cli(cfg);
    CHECK(split_lines(csv.text)[0] == "from,to,removed,added,K,L,M");
    CHECK(split_lines(csv.text).size() == 1 + 30);
}

TEST_CASE("spectrum_report_lists_labelled_eigenvalues") {
    RunConfig cfg;
    cfg.command = Command::spectrum;
    cfg.n = 3;
    cfg.level = 2;
    cfg.tree = "((1,2),3)";
    cfg.sector = 0;
    json report = run_json(cfg);
    CHECK(matches_schema(report));
    CHECK(report["tree"] == "((1,2),3)");
    CHECK(report["nodes"].size() == 1);
    const json& ladder = report["ladders"][0];
    for (std::size_t i = 1; i < ladder.size(); ++i)
        CHECK(ladder[i - 1].get<double>() < ladder[i].get<double>());
    for (const json& vec : report["vectors"]) {
        int label = vec["labels"][0].get<int>();
        CHECK(vec["eigenvalues"][0].get<double>() ==
              doctest::Approx(ladder[label].get<double>()));
    }

    cfg.tree = "";
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
    cfg.tree = "((1,2),3)";
    cfg.sector = 99;
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
}

TEST_CASE("overlap_report_and_csv_rows_carry_labels") {
    RunConfig cfg;
    cfg.command = Command::overlap;
    cfg.n = 3;
    cfg.level = 2;
    cfg.tree = "((1,2),3)";
    cfg.tree2 = "(1,(2,3))";
    cfg.sector = 0;
    json report = run_json(cfg);
    CHECK(matches_schema(report));
    std::size_t rows = report["row_labels"].size();
    CHECK(report["matrix"].size() == rows);
    CHECK(report["row_eigenvalues"].size() == rows);

    cfg.format = "csv";
    CliResult csv = run_cli(cfg);
    std::vector<std::string> lines = split_lines(csv.text);
    REQUIRE(lines.size() == 1 + rows);
    CHECK(lines[0].rfind("row_label,eigenvalue_1,c_", 0) == 0);
}

TEST_CASE("krawtchouk_command_evaluates_polynomial") {
    RunConfig cfg;
    cfg.command = Command::krawtchouk;
    cfg.k = 0;
    cfg.x = "4";
    cfg.p = "0.25";
    cfg.big_n = 7;
    json report = run_json(cfg);
    CHECK(matches_schema(report));
    CHECK(report["value"] == 1.0);

    cfg.k = 1;
    cfg.x = "0";
    cfg.p = "1/4";
    json linear = run_json(cfg);
    CHECK(linear["value"].get<double>() == doctest::Approx(1.0));
    CHECK(linear["p"] == 0.25);

    cfg.k = 8; // above the lattice size
    CHECK_THROWS_AS(run_cli(cfg), IndexError);
    cfg.k = 1;
    cfg.p = "1"; // outside (0, 1)
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
}

TEST_CASE("rotation_command_composes_planar_route") {
    RunConfig cfg;
    cfg.command = Command::rotation;
    cfg.n = 4;
    cfg.level = 2;
    cfg.a = "2,3,5,7";
    cfg.tree = "((1,2),(3,4))";
    cfg.tree2 = "((1,3),(2,4))";
    cfg.sector = 0;
    json report = run_json(cfg);
    CHECK(matches_schema(report));
    CHECK(report["moves"].size() == 3);
    CHECK(report["steps"].size() >= 3);
    CHECK(report["determinant"].get<double>() == doctest::Approx(1.0));
    REQUIRE(report["solver"].is_object());
    CHECK(report["solver"]["agrees"] == true);
    CHECK(report["solver"]["difference"].get<double>() < 1e-9);

    // Without a level the closed form still prints, solver stays off.
    cfg.level = -1;
    json closed = run_json(cfg);
    CHECK(matches_schema(closed));
    CHECK(closed["solver"].is_null());
    CHECK(closed["matrix"] == report["matrix"]);

    cfg.format = "csv";
    std::vector<std::string> lines = split_lines(run_cli(cfg).text);
    REQUIRE(lines.size() == 1 + 3); // header + one row per dimension
    CHECK(lines[0] == "c_1,c_2,c_3");
}

TEST_CASE("ninej_requires_four_modes") {
    RunConfig cfg;
    cfg.command = Command::ninej;
    cfg.n = 3;
    cfg.level = 2;
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);

    cfg.n = 4;
    cfg.sector = 1;
    json report = run_json(cfg);
    CHECK(matches_schema(report));
    CHECK(report["summed_node"] == "{1,2,3}");
    CHECK(report["row_nodes"] == json::array({"{1,3}", "{2,4}"}));
    CHECK(report["col_nodes"] == json::array({"{1,2}", "{3,4}"}));
    CHECK(report["matrix"].size() == report["row_labels"].size());
}

TEST_CASE("format_and_argument_guards") {
    RunConfig cfg;
    cfg.command = Command::verify;
    cfg.n = 3;
    cfg.level = 2;
    cfg.format = "dot"; // dot is reserved for graph output
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
    cfg.format = "yaml";
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
    cfg.format = "json";
    cfg.tol = "0";
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
    cfg.tol = "";
    cfg.n = -1;
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
    cfg.n = 3;
    cfg.level = -1;
    CHECK_THROWS_AS(run_cli(cfg), ConfigError);
    cfg.level = 2;
    cfg.a = "2,oops,5";
    CHECK_THROWS_AS(run_cli(cfg), ParseError);
}

TEST_CASE("reports_are_byte_identical_across_runs") {
    RunConfig verify_cfg;
    verify_cfg.command = Command::verify;
    verify_cfg.n = 3;
    verify_cfg.level = 3;
    CHECK(run_cli(verify_cfg).text == run_cli(verify_cfg).text);

    RunConfig rot_cfg;
    rot_cfg.command = Command::rotation;
    rot_cfg.n = 4;
    rot_cfg.level = 2;
    rot_cfg.tree = "((1,2),(3,4))";
    rot_cfg.tree2 = "((1,3),(2,4))";
    CHECK(run_cli(rot_cfg).text == run_cli(rot_cfg).text);

    RunConfig overlap_cfg;
    overlap_cfg.command = Command::overlap;
    overlap_cfg.n = 3;
    overlap_cfg.level = 2;
    overlap_cfg.tree = "((1,2),3)";
    overlap_cfg.tree2 = "(1,(2,3))";
    overlap_cfg.format = "csv";
    CHECK(run_cli(overlap_cfg).text == run_cli(overlap_cfg).text);
}
