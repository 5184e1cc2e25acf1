#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "echkit/cli.hpp"
#include "echkit/table.hpp"

using namespace echkit;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return Result{code, out.str(), err.str()};
}

} // namespace

TEST_CASE("rkp weights emits the five weights as json") {
    const auto r = invoke({"rkp", "weights", "--energy", "-1.5", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["weights"]["w1"]["value"].get<double>() == doctest::Approx(0.353554).epsilon(1e-4));
    CHECK(doc["weights"]["w2"]["value"].get<double>() == doctest::Approx(0.219247).epsilon(1e-4));
    CHECK(doc["weights"]["w3"]["value"].get<double>() ==
          doctest::Approx(0.0502325).epsilon(1e-3));
    CHECK(doc["weights"]["w4"]["value"].get<double>() == doctest::Approx(0.223766).epsilon(1e-4));
    CHECK(doc["weights"]["w5"]["value"].get<double>() ==
          doctest::Approx(0.0514663).epsilon(1e-3));
    CHECK(doc["ordered"].size() == 5);
    CHECK(doc["area"]["excess"].get<double>() > 0.0);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::vector<std::string> cmd{"rkp", "capacities", "--energy", "-1.5",
                                       "--kmax", "10", "--format", "json"};
    const auto a = invoke(cmd);
    const auto b = invoke(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const auto t1 = invoke({"tree", "--depth", "4"});
    const auto t2 = invoke({"tree", "--depth", "4"});
    CHECK(t1.code == 0);
    CHECK(t1.out == t2.out);
}

TEST_CASE("capacities subcommand prints the ball sequence") {
    const auto r = invoke({"capacities", "--weights", "1", "--kmax", "6"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "   0  0.000000\n"
          "   1  1.000000\n"
          "   2  1.000000\n"
          "   3  2.000000\n"
          "   4  2.000000\n"
          "   5  2.000000\n"
          "   6  3.000000\n");
}

TEST_CASE("tree subcommand emits both trees") {
    const auto r = invoke({"tree", "--depth", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.size() == 3);
    CHECK(doc[0]["index"] == "1");
    CHECK(doc[0]["sb"] == "1/1");
    CHECK(doc[0]["slope"] == "inf");
    CHECK(doc[1]["index"] == "10");
    CHECK(doc[1]["slope"] == "3/1");
    CHECK(doc[2]["index"] == "11");
    CHECK(doc[2]["slope"] == "-3/1");
}

TEST_CASE("embed subcommand reports verdicts") {
    const auto ok = invoke({"embed", "--source", "1,1", "--target", "1,1", "--kmax", "20"});
    REQUIRE(ok.code == 0);
    CHECK(ok.out == "no obstruction up to k=20\n");

    const auto bad = invoke({"embed", "--source", "1,1", "--target", "0.5,0.5", "--kmax",
                             "20", "--format", "json"});
    REQUIRE(bad.code == 0);
    const json doc = json::parse(bad.out);
    CHECK(doc["obstructed"] == true);
    CHECK(doc["first_violation"] == 1);
}

TEST_CASE("ctd subcommands parse exact fractions") {
    const auto r = invoke({"ctd-weights", "--vertices", "0,2;1,1;3,0", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["area"] == "5/2");
    REQUIRE(doc["weights"].size() == 2);
    CHECK(doc["weights"][0]["value"] == "2");
    CHECK(doc["weights"][1]["value"] == "1");

    const auto c = invoke({"ctd-capacities", "--vertices", "0,1;3,0", "--kmax", "5",
                           "--format", "csv"});
    REQUIRE(c.code == 0);
    CHECK(c.out.starts_with("k,label,value,reference,status\n0,,0,,no-reference\n"));
}

TEST_CASE("rkp table flags reference mismatches") {
    const auto r = invoke({"rkp", "table", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.size() == 11);
    CHECK(doc[0]["k"] == 1);
    CHECK(doc[0]["status"] == "match");
    CHECK(doc[1]["k"] == 2);
    CHECK(doc[1]["status"] == "match");
    CHECK(doc[2]["k"] == 3);
    CHECK(doc[2]["status"] == "mismatch");
    for (const auto& row : doc)
        CHECK((row["status"] == "match" || row["status"] == "mismatch"));
}

TEST_CASE("rkp thresholds lists entry energies") {
    const auto r = invoke({"rkp", "thresholds", "--depth", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["thresholds"].size() == 3);  // slopes -3, -5, -2
    CHECK(doc["branch_jumps"]["w4"].get<double>() > 0.01);
    CHECK(doc["thresholds"][0]["slope"] == "-3/1");
    CHECK(doc["thresholds"][0]["entry_energy"].get<double>() ==
          doctest::Approx(-1.733407).epsilon(1e-5));
}

TEST_CASE("exit codes distinguish usage, domain and internal errors") {
    CHECK(invoke({"no-such-command"}).code == 2);
    CHECK(invoke({"rkp", "weights"}).code == 2);                        // missing --energy
    CHECK(invoke({"rkp", "weights", "--energy", "-1.0"}).code == 3);    // above critical
    CHECK(invoke({"capacities", "--weights", "x", "--kmax", "3"}).code == 2);
    CHECK(invoke({"capacities", "--weights", "-1", "--kmax", "3"}).code == 3);
    CHECK(invoke({"tree", "--depth", "30"}).code == 2);                 // beyond cap
    CHECK(invoke({"ctd-weights", "--vertices", "0,1;1,1;2,0"}).code == 3);
}

TEST_CASE("json table output round-trips") {
    std::vector<report::ReportRow> rows;
    rows.push_back(report::make_row(1, 0.353554, 0.353554, "W1"));
    rows.push_back(report::make_row(3, 0.796567, 0.707108, "2W1"));
    rows.push_back(report::make_row(5, 1.25));
    const std::string text = report::emit_table(rows, report::Format::json, 6);
    const json doc = json::parse(text);
    REQUIRE(doc.size() == 3);
    CHECK(doc[0]["status"] == "match");
    CHECK(doc[0]["value"].get<double>() == 0.353554);
    CHECK(doc[1]["status"] == "mismatch");
    CHECK(doc[1]["reference"].get<double>() == 0.707108);
    CHECK(doc[2]["status"] == "no-reference");
    CHECK_FALSE(doc[2].contains("reference"));
}

TEST_CASE("text table formatting") {
    std::vector<report::ReportRow> one;
    one.push_back(report::make_row(2, 0.5));
    CHECK(report::emit_table(one, report::Format::text, 6) == "   2  0.500000\n");

    std::vector<report::ReportRow> rows;
    rows.push_back(report::make_row(1, 1.0, 1.5, "x"));
    const std::string text = report::emit_table(rows, report::Format::text, 6);
    CHECK(text.find("MISMATCH(\xce\xb4=") != std::string::npos);

    CHECK_THROWS_AS(report::emit_table({}, report::Format::text, 6), usage_error);
}

TEST_CASE("csv output uses a header and dot decimals") {
    std::vector<report::ReportRow> rows;
    rows.push_back(report::make_row(0, 0.0));
    rows.push_back(report::make_row(1, 0.25, 0.25));
    const std::string text = report::emit_table(rows, report::Format::csv, 6);
    CHECK(text == "k,label,value,reference,status\n"
                  "0,,0,,no-reference\n"
                  "1,,0.25,0.25,match\n");
}
