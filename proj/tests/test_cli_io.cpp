#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "pslab/cli.hpp"
#include "pslab/common.hpp"
#include "pslab/csv.hpp"

using namespace pslab;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("csv round trip through the artifact's own reader") {
    csv::Table t;
    t.header = {"n", "value", "tag", "flag"};
    t.rows.push_back({std::int64_t(12), 3.14159265358979, std::string("abc"), true});
    t.rows.push_back({std::int64_t(-7), 1e-9, std::string("x|y"), false});

    std::ostringstream os;
    csv::write_csv(os, t);
    std::istringstream is(os.str());
    csv::ParsedTable parsed = csv::parse_csv(is);

    REQUIRE(parsed.header == t.header);
    REQUIRE(parsed.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.header.size(); ++j)
            CHECK(parsed.rows[i][j] == csv::format_cell(t.rows[i][j]));

    // 12 significant digits
    CHECK(format_real(3.14159265358979) == "3.14159265359");
    CHECK(format_real(0.5) == "0.5");

    // cells may not contain commas
    csv::Table bad;
    bad.header = {"a"};
    bad.rows.push_back({std::string("x,y")});
    std::ostringstream sink;
    CHECK_THROWS_AS(csv::write_csv(sink, bad), std::invalid_argument);
}

TEST_CASE("gen emits the membership column") {
    RunResult r = run_cli({"gen", "--c", "1.5", "--N", "12"});
    CHECK(r.code == 0);
    CHECK(r.out == "n\n1\n2\n5\n8\n11\n");

    RunResult rw = run_cli({"gen", "--c", "1.5", "--N", "12", "--weights"});
    CHECK(rw.code == 0);
    std::istringstream is(rw.out);
    csv::ParsedTable parsed = csv::parse_csv(is);
    REQUIRE(parsed.header == std::vector<std::string>{"n", "nu"});
    REQUIRE(parsed.rows.size() == 5);
    CHECK(parsed.rows[3][0] == "8");
    CHECK(parsed.rows[3][1] == "3");
}

TEST_CASE("thresholds subcommand prints exact rationals") {
    RunResult r = run_cli({"thresholds", "--s", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "s,c_star,c_dagger\n3,12/11,12/11\n");

    RunResult r5 = run_cli({"thresholds", "--s", "5"});
    CHECK(r5.out == "s,c_star,c_dagger\n5,16/13,2\n");
}

TEST_CASE("solve subcommand: pinned nontrivial count") {
    RunResult r = run_cli({"solve", "--c", "1.5", "--N", "11", "--coeffs", "1,1,-1",
                           "--nontrivial"});
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    csv::ParsedTable parsed = csv::parse_csv(is);
    REQUIRE(parsed.rows.size() == 1);
    CHECK(parsed.rows[0][4] == "0");

    RunResult rw = run_cli({"solve", "--c", "1.5", "--N", "11", "--coeffs", "1,1,-1",
                            "--weighted"});
    std::istringstream isw(rw.out);
    csv::ParsedTable pw = csv::parse_csv(isw);
    CHECK(pw.rows[0][4].substr(0, 6) == "4.2522");
}

TEST_CASE("admissible and moment subcommands emit one row") {
    RunResult r = run_cli({"admissible", "--s", "3", "--c", "1.05"});
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    csv::ParsedTable parsed = csv::parse_csv(is);
    CHECK(parsed.rows[0][2] == "true");
    CHECK(parsed.rows[0][3] == "small_s");

    RunResult rm = run_cli({"moment", "--c", "1.5", "--N", "12", "--t", "2", "--M", "32"});
    std::istringstream ism(rm.out);
    csv::ParsedTable pm = csv::parse_csv(ism);
    CHECK(pm.rows[0][4].substr(0, 7) == "32.5293");
}

TEST_CASE("json format mirrors the csv rows") {
    RunResult r = run_cli({"thresholds", "--s", "4", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"c_dagger\": \"7/6\"") != std::string::npos);
    CHECK(r.out.find("\"s\": 4") != std::string::npos);
}

TEST_CASE("identical config produces byte-identical output") {
    std::vector<std::string> args = {"colour", "--c",     "1.2",  "--N",    "300",
                                     "--coeffs", "1,1,-1", "--scheme", "random", "--r",
                                     "2",      "--trials", "3",    "--seed", "99"};
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    // witness column re-validates on every row
    std::istringstream is(a.out);
    csv::ParsedTable parsed = csv::parse_csv(is);
    for (const auto& row : parsed.rows)
        if (row[3] == "true") CHECK(row[6] == "true");
}

TEST_CASE("every subcommand emits CSV the reader re-parses") {
    std::vector<std::vector<std::string>> cmds = {
        {"gen", "--c", "1.5", "--N", "12", "--weights"},
        {"decay", "--c", "1.5", "--Nmin", "64", "--Nmax", "256", "--K", "4"},
        {"decay", "--c", "1.5", "--Nmin", "64", "--Nmax", "512", "--K", "2", "--fit"},
        {"moment", "--c", "1.5", "--N", "50", "--t", "2"},
        {"energy", "--c", "1.5", "--Nmin", "64", "--Nmax", "256"},
        {"spectrum", "--c", "1.5", "--N", "64", "--t", "2"},
        {"audit", "--c", "1.5", "--Pmax", "100", "--mmax", "3"},
        {"solve", "--c", "1.5", "--N", "11", "--coeffs", "1,1,-1"},
        {"thresholds", "--s", "6"},
        {"admissible", "--s", "4", "--c", "1.1"},
        {"colour", "--c", "1.2", "--N", "120", "--coeffs", "1,1,-1", "--scheme", "residue",
         "--r", "2", "--timing"},
        {"density", "--c", "1.5", "--N", "200"},
    };
    for (const auto& cmd : cmds) {
        RunResult r = run_cli(cmd);
        REQUIRE(r.code == 0);
        std::istringstream is(r.out);
        csv::ParsedTable parsed = csv::parse_csv(is);
        CHECK(!parsed.header.empty());
        CHECK(!parsed.rows.empty());
        for (const auto& row : parsed.rows) CHECK(row.size() == parsed.header.size());
    }
}

TEST_CASE("PSLAB_THREADS env var is accepted as the --threads fallback") {
    setenv("PSLAB_THREADS", "1", 1);
    RunResult r = run_cli({"gen", "--c", "1.5", "--N", "12"});
    unsetenv("PSLAB_THREADS");
    CHECK(r.code == 0);
    CHECK(r.out == "n\n1\n2\n5\n8\n11\n");
}

TEST_CASE("validation failures exit 1") {
    CHECK(run_cli({"gen", "--c", "0.9", "--N", "10"}).code == 1);
    CHECK(run_cli({"gen", "--N", "10"}).code == 1);
    CHECK(run_cli({"nonsense"}).code == 1);
    CHECK(run_cli({"solve", "--c", "1.5", "--N", "11", "--coeffs", "1,1,-1", "--M", "5"}).code ==
          1);
    CHECK(run_cli({}).code == 1);
}

TEST_CASE("violation records serialize as JSON") {
    invariant_violation v("test breach", {{"key", "value"}, {"x", "1.5"}});
    CHECK(v.to_json() == "{\"violation\":\"test breach\",\"key\":\"value\",\"x\":\"1.5\"}");
}
