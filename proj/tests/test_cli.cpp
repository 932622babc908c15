#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mills/mills_ratio.hpp"

using namespace mills;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + MILLS_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& body) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream ss(body);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("table output is byte-identical to the golden files") {
    for (const char* which : {"laplace", "p", "q", "beta"}) {
        RunResult r = run_cli(std::string("table ") + which + " --k-max 8");
        CHECK(r.exit_code == 0);
        std::string golden = read_file(std::string(MILLS_FIXTURES_DIR) + "/table_" + which + ".txt");
        CHECK(r.out == golden);
    }
}

TEST_CASE("tiny laplace table") {
    RunResult r = run_cli("table laplace --k-max 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "P_1 = t; Q_0 = 1\n");
}

TEST_CASE("bound CSV emits certified rows and round-trips") {
    RunResult r = run_cli("bound --t-start 1 --t-count 1 --depth 2 --digits 20");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);  // header + depths 1, 2
    CHECK(rows[0][0] == "t");
    CHECK(rows[1][2] == "1/2");
    CHECK(rows[2][2] == "3/5");
    CHECK(rows[2][4] == "9/13");
    // round-trip: re-evaluate every exact field from the parsed t and depth
    for (size_t i = 1; i < rows.size(); ++i) {
        BigRational t = BigRational::from_string(rows[i][0]);
        int depth = std::stoi(rows[i][1]);
        Bracket b = bracket(t, depth);
        CHECK(BigRational::from_string(rows[i][2]) == b.lower);
        CHECK(BigRational::from_string(rows[i][4]) == b.upper);
        CHECK(BigRational::from_string(rows[i][7]) == b.width());
    }
}

TEST_CASE("bound at t = 10 depth 1 matches the corrected orientation") {
    RunResult r = run_cli("bound --t-start 10 --t-count 1 --depth 1 --digits 20");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][2] == "10/101");
    CHECK(rows[1][4] == "51/515");  // Q_2(10)/P_3(10) = 102/1030 reduced
}

TEST_CASE("bound JSON mirrors the CSV schema with rational type tags") {
    RunResult r = run_cli("bound --t-start 1 --t-count 2 --t-stop 2 --depth 1 --digits 20 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["lower"]["rational"]["num"] == "1");
    CHECK(j["rows"][0]["lower"]["rational"]["den"] == "2");
    CHECK(j["rows"][0]["depth"] == 1);
}

TEST_CASE("cf listing matches the convergent sequence at t = 1") {
    RunResult r = run_cli("cf --t 1 --k-max 6 --digits 20");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 7);
    const char* expected[] = {"1/1", "1/2", "3/4", "3/5", "9/13", "12/19"};
    const char* sides[] = {"upper", "lower", "upper", "lower", "upper", "lower"};
    for (int k = 1; k <= 6; ++k) {
        CHECK(rows[static_cast<size_t>(k)][1] == expected[k - 1]);
        CHECK(rows[static_cast<size_t>(k)][3] == sides[k - 1]);
        CHECK(rows[static_cast<size_t>(k)][4] == "ok");
    }
}

TEST_CASE("asym listing at t = 2") {
    RunResult r = run_cli("asym --t 2 --j-max 1 --digits 20");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == "1/2");
    CHECK(rows[1][3] == "upper");
    CHECK(rows[2][1] == "3/8");
    CHECK(rows[2][3] == "lower");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("table nosuch --k-max 3").exit_code == 2);
    CHECK(run_cli("bound --t-start 1 --t-count 0").exit_code == 2);
    CHECK(run_cli("bound --t-start -1 --t-count 1").exit_code == 2);
    CHECK(run_cli("cf --t 0").exit_code == 2);
    CHECK(run_cli("asym --t -3").exit_code == 2);
    CHECK(run_cli("cf --t 1 --digits 5").exit_code == 2);
    CHECK(run_cli("nosuchcommand").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("--out writes the same bytes as stdout") {
    std::string tmp = std::string(MILLS_CLI_PATH) + ".table_out.tmp";
    RunResult direct = run_cli("table p --k-max 4");
    RunResult redirected = run_cli("table p --k-max 4 --out \"" + tmp + "\"");
    CHECK(redirected.exit_code == 0);
    CHECK(redirected.out.empty());
    CHECK(read_file(tmp) == direct.out);
    std::remove(tmp.c_str());
}

TEST_CASE("verify polynomials suite passes") {
    RunResult r = run_cli("verify polynomials");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("route_equivalence exact verified") != std::string::npos);
    CHECK(r.out.find("failed") == std::string::npos);
}
