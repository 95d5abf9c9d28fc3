#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& args, const std::string& stdout_path) {
    std::string cmd = std::string(WRES_CLI) + " " + args + " > " + stdout_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("matching run exits zero") {
    CHECK(run_cli("metric --dim 4 --seed 11 --trials 2", "/tmp/wres_cli_metric.txt") == 0);
    std::string out = slurp("/tmp/wres_cli_metric.txt");
    CHECK(out.find("2/2 reports match") != std::string::npos);
}

TEST_CASE("bad flags exit with usage code 2") {
    CHECK(run_cli("frobnicate", "/tmp/wres_cli_bad.txt") == 2);
    CHECK(run_cli("metric --dim 5", "/tmp/wres_cli_bad.txt") == 2);
    CHECK(run_cli("metric --trials 0", "/tmp/wres_cli_bad.txt") == 2);
    CHECK(run_cli("", "/tmp/wres_cli_bad.txt") == 2);  // a subcommand is required
}

TEST_CASE("corrupted curvature files exit with code 2") {
    {
        std::ofstream f("/tmp/wres_cli_corrupt.json");
        f << "{ not json";
    }
    CHECK(run_cli("metric --curvature /tmp/wres_cli_corrupt.json", "/tmp/wres_cli_out.txt") == 2);

    // well-formed JSON whose tensor violates the antisymmetry invariants
    {
        std::ofstream f("/tmp/wres_cli_badsym.json");
        f << R"({"n": 2, "riemann": [[[["1","0"],["0","0"]],[["0","0"],["0","0"]]],)"
          << R"([[["0","0"],["0","0"]],[["0","0"],["0","0"]]]]})";
    }
    CHECK(run_cli("metric --curvature /tmp/wres_cli_badsym.json", "/tmp/wres_cli_out.txt") == 2);
    CHECK(run_cli("metric --curvature /tmp/wres_cli_missing.json", "/tmp/wres_cli_out.txt") == 2);
}

TEST_CASE("sampled curvature files round-trip through the loader") {
    CHECK(run_cli("sample-curvature --dim 4 --seed 5 --out /tmp/wres_cli_curv.json",
                  "/tmp/wres_cli_out.txt") == 0);
    CHECK(run_cli("metric --curvature /tmp/wres_cli_curv.json --seed 3 --trials 1",
                  "/tmp/wres_cli_out.txt") == 0);
    // contradictory --dim is rejected
    CHECK(run_cli("metric --curvature /tmp/wres_cli_curv.json --dim 6", "/tmp/wres_cli_out.txt") == 2);
}

TEST_CASE("json output is well-formed and byte-identical across runs") {
    CHECK(run_cli("einstein --dim 4 --seed 7 --trials 2 --output json", "/tmp/wres_cli_a.json") == 0);
    CHECK(run_cli("einstein --dim 4 --seed 7 --trials 2 --output json", "/tmp/wres_cli_b.json") == 0);
    std::string a = slurp("/tmp/wres_cli_a.json");
    CHECK(a == slurp("/tmp/wres_cli_b.json"));

    nlohmann::json doc = nlohmann::json::parse(a);
    CHECK(doc.at("command") == "einstein");
    CHECK(doc.at("all_match") == true);
    CHECK(doc.at("config").at("dim") == 4);
    CHECK(doc.at("reports").is_array());
    const auto& first = doc.at("reports").at(0);
    CHECK(first.contains("name"));
    CHECK(first.contains("lhs_density"));
    CHECK(first.contains("rhs_density"));
    CHECK(first.contains("match"));
    CHECK(first.contains("curvature_seed"));
    CHECK(first.contains("inputs"));
    CHECK(first.at("lhs_density").at("unit") == "v_3");
}

TEST_CASE("different seeds give different report streams") {
    CHECK(run_cli("metric --dim 4 --seed 1 --trials 1 --output json", "/tmp/wres_cli_s1.json") == 0);
    CHECK(run_cli("metric --dim 4 --seed 2 --trials 1 --output json", "/tmp/wres_cli_s2.json") == 0);
    CHECK(slurp("/tmp/wres_cli_s1.json") != slurp("/tmp/wres_cli_s2.json"));
}

TEST_CASE("expression functional and symbol dump") {
    CHECK(run_cli("functional --expr Id --dim 4 --seed 2", "/tmp/wres_cli_fn.txt") == 0);
    CHECK(run_cli("functional --expr \"Ric[p,q*Lp(p)\" --dim 4", "/tmp/wres_cli_fn.txt") == 2);
    CHECK(run_cli("dump-symbol --which dirac --dim 4 --seed 1", "/tmp/wres_cli_dump.json") == 0);
    nlohmann::json doc = nlohmann::json::parse(slurp("/tmp/wres_cli_dump.json"));
    CHECK(doc.at("top_order") == 1);
    CHECK(doc.at("parts").is_array());
    CHECK(!doc.at("parts").empty());
}
