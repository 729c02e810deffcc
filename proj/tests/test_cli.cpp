#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using json = nlohmann::json;
using ncpmap::cli::run;
using std::numbers::pi;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name, const std::string &content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(cli, map_then_classify) {
    const auto map = cli({"--no-timestamp", "map", "--family", "cnot", "--theta", "pi/6"});
    ASSERT_EQ(map.code, 0) << map.err;
    const auto doc = json::parse(map.out);
    EXPECT_EQ(doc["command"], "map");
    const auto path = temp_file("ncpmap_cli_map.json", doc["result"].dump());

    const auto verdict = cli({"--no-timestamp", "classify", path.string()});
    ASSERT_EQ(verdict.code, 0) << verdict.err;
    const auto v = json::parse(verdict.out)["result"];
    EXPECT_EQ(v["classification"], "NCP");
    EXPECT_NEAR(v["eigenvalues"][0].get<double>(), 3.0, 1e-10);
    EXPECT_NEAR(v["eigenvalues"][3].get<double>(), -1.0, 1e-10);
    std::filesystem::remove(path);

    // The whole map-command envelope is accepted as well.
    const auto envelope = temp_file("ncpmap_cli_envelope.json", map.out);
    const auto again = cli({"--no-timestamp", "classify", envelope.string()});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(json::parse(again.out)["result"], v);
    std::filesystem::remove(envelope);
}

TEST(cli, input_errors_exit_with_two) {
    EXPECT_EQ(cli({"classify", "/nonexistent/map.json"}).code, 2);
    const auto bad = temp_file("ncpmap_cli_bad.json", "{\"rep\": \"choi\", \"matrix\": [1, 2");
    const auto r = cli({"classify", bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("JSON"), std::string::npos);
    std::filesystem::remove(bad);

    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"map", "--family", "pauli", "--eta", "1.5,0,0"}).code, 2);
    EXPECT_EQ(cli({"map", "--family", "dephasing", "--nu", "2"}).code, 2);
    EXPECT_EQ(cli({"domain", "--family", "bncp", "--mode", "hex:3"}).code, 2);
    EXPECT_EQ(cli({"scan", "--grid", "pi/4"}).code, 2);
    EXPECT_EQ(cli({"measure", "--n", "10"}).code, 2);
}

TEST(cli, unrestricted_measure_is_rejected) {
    const auto r = cli({"measure", "--family", "unrestricted"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("unbounded"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(cli, output_is_deterministic_without_timestamp) {
    const std::vector<std::string> args{"--no-timestamp", "measure", "--n", "20000", "--seed", "4"};
    const auto a = cli(args);
    const auto b = cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto with_workers = args;
    with_workers.insert(with_workers.end(), {"--workers", "4"});
    // The config echoes the worker count; the result must not depend on it.
    EXPECT_EQ(json::parse(cli(with_workers).out)["result"], json::parse(a.out)["result"]);

    const auto stamped = json::parse(cli({"measure", "--n", "2000"}).out);
    EXPECT_TRUE(stamped.contains("timestamp"));
    EXPECT_FALSE(json::parse(a.out).contains("timestamp"));
}

TEST(cli, rotated_identity_equals_pauli) {
    const auto pauli = json::parse(cli({"--no-timestamp", "measure", "--n", "20000", "--seed", "2"}).out);
    const auto rotated = json::parse(
        cli({"--no-timestamp", "measure", "--family", "rotated", "--u", "0,0,0", "--n", "20000", "--seed", "2"}).out);
    EXPECT_EQ(rotated["result"]["cp_fraction"], pauli["result"]["cp_fraction"]);
    EXPECT_EQ(rotated["result"]["ratio"], pauli["result"]["ratio"]);
}

TEST(cli, tolerance_overrides_are_applied_and_echoed) {
    const auto map = cli({"--no-timestamp", "map", "--family", "identity"});
    const auto path = temp_file("ncpmap_cli_identity.json", json::parse(map.out)["result"].dump());
    const auto r = json::parse(cli({"--no-timestamp", "--cp-tol", "1e-6", "classify", path.string()}).out);
    EXPECT_EQ(r["config"]["cp_tol"], 1e-6);
    EXPECT_EQ(r["result"]["classification"], "CP");
    std::filesystem::remove(path);

    // A generous physicality tolerance admits points just outside the domain.
    const auto strict = json::parse(
        cli({"--no-timestamp", "domain", "--family", "bncp", "--mode", "grid:16"}).out)["result"]["fraction"];
    const auto loose = json::parse(cli({"--no-timestamp", "--physical-tol", "0.05", "domain", "--family", "bncp",
                                        "--mode", "grid:16"})
                                       .out)["result"]["fraction"];
    EXPECT_GT(loose.get<double>(), strict.get<double>());
}

TEST(cli, singular_cnot_domain_has_zero_fraction_and_witnesses) {
    const auto r = json::parse(cli({"--no-timestamp", "domain", "--family", "cnot", "--theta", "pi/4"}).out);
    EXPECT_EQ(r["result"]["fraction"], 0.0);
    EXPECT_EQ(r["result"]["fixed_line_witnesses"].size(), 11u);
}

TEST(cli, scan_default_grid_exceeds_bound) {
    const auto r = cli({"--no-timestamp", "scan"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = json::parse(r.out)["result"];
    EXPECT_EQ(res["bound_exceeded"], true);
    EXPECT_EQ(res["points"].size(), 7u);
}

TEST(cli, validate_singular_cnot) {
    const auto r = cli({"--no-timestamp", "validate", "--family", "cnot", "--theta", "pi/4", "--probes", "2000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = json::parse(r.out)["result"];
    EXPECT_EQ(res["status"], "MeasureZeroDomain");
    EXPECT_FALSE(res["witnesses"].empty());
}

TEST(cli, domain_scan_writes_csv) {
    const auto csv = std::filesystem::temp_directory_path() / "ncpmap_cli_domain.csv";
    const auto r = cli({"--no-timestamp", "domain", "--family", "bncp", "--mode", "mc:3000:5", "--out", csv.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = json::parse(r.out)["result"];
    EXPECT_EQ(res["points"], 3000);
    EXPECT_GT(res["fraction"].get<double>(), 0.0);
    EXPECT_LT(res["fraction"].get<double>(), 1.0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "a1,a2,a3,lambda_min,in_domain");
    std::filesystem::remove(csv);
}

TEST(cli, domain_reports_fixed_lines) {
    const auto r = cli({"--no-timestamp", "domain", "--family", "cnot", "--theta", "pi/6", "--mode", "grid:9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = json::parse(r.out)["result"];
    ASSERT_EQ(res["fixed_lines"].size(), 1u);
    EXPECT_EQ(res["fixed_lines"][0]["axis"], json::parse("[1, 0, 0]"));
    EXPECT_EQ(res["fixed_line_witnesses"].size(), 11u);
}

TEST(cli, angle_and_grid_parsing) {
    using ncpmap::cli::parse_angle;
    using ncpmap::cli::parse_grid;
    EXPECT_DOUBLE_EQ(parse_angle("pi/4"), pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("pi/4 - 1e-7"), pi / 4 - 1e-7);
    EXPECT_DOUBLE_EQ(parse_angle("-(pi+1)*2"), -(pi + 1) * 2);
    EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
    EXPECT_ANY_THROW(parse_angle("pie"));
    EXPECT_ANY_THROW(parse_angle("(1"));

    EXPECT_EQ(parse_grid("0.1,0.2").size(), 2u);
    EXPECT_EQ(parse_grid("linspace:0:1:5").back(), 1.0);
    const auto g = parse_grid("approach:pi/4:2:3");
    ASSERT_EQ(g.size(), 2u);
    EXPECT_DOUBLE_EQ(g[0], pi / 4 - 1e-2);
    EXPECT_ANY_THROW(parse_grid("approach:1"));
}

TEST(cli, binary_invocation) {
    const std::string cmd = std::string(NCPMAP_CLI_BINARY) + " --no-timestamp map --family identity --rep superop";
    FILE *pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    EXPECT_EQ(pclose(pipe), 0);
    const auto doc = json::parse(out);
    EXPECT_EQ(doc["result"]["rep"], "superop");
    EXPECT_EQ(doc["result"]["matrix"][1][1]["re"], 1.0);
}
