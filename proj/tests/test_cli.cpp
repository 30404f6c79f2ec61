#include "chisq/cli.h"
#include <doctest.h>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

using chisq::cli::run;
using nlohmann::json;

namespace {

const std::string kData = CHISQ_DATA_DIR;

json parsed(const chisq::cli::CommandResult& r)
{
    return json::parse(r.out);
}

std::string error_code(const chisq::cli::CommandResult& r)
{
    return json::parse(r.err).at("error").at("code").get<std::string>();
}

std::string temp_path(const std::string& name)
{
    return "/tmp/chisq_test_cli_" + name;
}

}  // namespace

TEST_CASE("payload layout")
{
    const auto r = run({"chi", "3"});
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    const json doc = parsed(r);
    std::vector<std::string> keys;
    for (auto& [k, v] : doc.items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"command", "parameters", "result", "version"});
    CHECK(doc["command"] == "chi");
    CHECK(doc["version"] == chisq::cli::kVersion);
    CHECK(doc["result"]["terms"] == json::array({"Sq(3)", "Sq(0,1)"}));
}

TEST_CASE("identical invocations give identical bytes")
{
    for (auto args : std::vector<std::vector<std::string>>{
             {"chi", "9"}, {"membership", "12", "5", "--ideal", "sq12"}, {"ext", "--k", "2", "--algebra", "a1",
                                                                          "--max-s", "4", "--max-t", "16"}})
        CHECK(run(args).out == run(args).out);
}

TEST_CASE("timing is opt-in")
{
    CHECK(parsed(run({"chi", "4", "--timing"})).contains("timing"));
    CHECK_FALSE(parsed(run({"chi", "4"})).contains("timing"));
}

TEST_CASE("pretty output")
{
    const auto r = run({"--pretty", "mul", "2", "2"});
    CHECK(r.out == "Sq(2) * Sq(2) = Sq(1,1)\n");
    CHECK(run({"mul", "Sq(2)", "Sq(2)", "--pretty"}).out == r.out);
}

TEST_CASE("min-k and membership answers")
{
    const auto mk = run({"min-k", "12", "--ideal", "sq12", "--search"});
    CHECK(mk.exit_code == 0);
    CHECK(parsed(mk)["result"]["k"] == 5);
    CHECK(parsed(mk)["result"]["agree"] == true);

    const auto none = run({"min-k", "6", "--ideal", "sq12", "--search"});
    CHECK(none.exit_code == 1);
    CHECK(parsed(none)["result"]["k"].is_null());

    const auto mem = run({"membership", "9", "2", "--ideal", "sq12"});
    CHECK(mem.exit_code == 1);
    CHECK(parsed(mem)["result"]["in_image"] == false);
    const auto yes = run({"membership", "5", "2", "--ideal", "sq12"});
    CHECK(yes.exit_code == 0);
    CHECK_FALSE(parsed(yes)["result"]["witness"].empty());
}

TEST_CASE("range verification")
{
    const auto r = run({"verify-thm13", "--ideal", "sq12", "--n-max", "20"});
    CHECK(r.exit_code == 0);
    CHECK(parsed(r)["result"]["rows"].size() == 13);
    CHECK(parsed(r)["result"]["all_match"] == true);
}

TEST_CASE("combinatorics")
{
    CHECK(parsed(run({"two-series", "8"}))["result"]["coefficients"] ==
          json({{"4", 1}, {"5", 40}, {"6", 240}, {"7", 448}, {"8", 256}}));
    // Large coefficients stay exact.
    const auto big = parsed(run({"two-series", "80"}))["result"]["coefficients"];
    CHECK(big["80"].is_string());
    CHECK(run({"lemma23", "16", "--part", "b"}).exit_code == 0);
    CHECK(parsed(run({"eps", "24"}))["result"]["sq12"]["formula"] == 4);
}

TEST_CASE("error codes")
{
    auto usage = run({"chi", "3", "--no-such-flag"});
    CHECK(usage.exit_code == 2);
    CHECK(error_code(usage) == "E_USAGE");
    CHECK(error_code(run({"nonsense"})) == "E_USAGE");
    CHECK(error_code(run({"chi", "x"})) == "E_USAGE");
    CHECK(error_code(run({"mul", "Sq(1", "2"})) == "E_PARSE");
    CHECK(error_code(run({"chi-class", "3", "5"})) == "E_INVALID_ARGUMENT");
    CHECK(error_code(run({"membership", "20", "3", "--cap", "5"})) == "E_CAP");
    CHECK(error_code(run({"lemma23", "6", "--part", "a"})) == "E_INVALID_ARGUMENT");
    CHECK(error_code(run({"check-table", "t99"})) == "E_INVALID_ARGUMENT");
    CHECK(error_code(run({"margolis", "--q", "0"})) == "E_USAGE");
    CHECK(error_code(run({"ext", "--k", "2", "--max-s", "1", "--max-t", "3"})) == "E_USAGE");

    const std::string bad = temp_path("bad.json");
    std::ofstream(bad) << R"({"name": "B", "algebra": "E1", "basis": [{"id": "a", "degree": 0}], "actions": {"Q0": [{"from": "a", "to": ["a"]}]}})";
    CHECK(error_code(run({"margolis", "--module", bad, "--q", "0"})) == "E_SCHEMA");
    std::ofstream(bad) << "{";
    CHECK(error_code(run({"render", "--chart", bad})) == "E_PARSE");
    std::remove(bad.c_str());

    const auto pretty = run({"--pretty", "chi-class", "3", "5"});
    CHECK(pretty.err.rfind("error [E_INVALID_ARGUMENT]", 0) == 0);
}

TEST_CASE("help and version")
{
    const auto help = run({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("check-table") != std::string::npos);
    CHECK(run({"--version"}).out.find(chisq::cli::kVersion) != std::string::npos);
}

TEST_CASE("margolis from the fundamental class and from files")
{
    const auto k2 = parsed(run({"margolis", "--k", "2", "--q", "0", "--max-deg", "13"}));
    CHECK(k2["result"]["valid_through"] == 13);
    std::vector<int> degrees;
    for (auto& d : k2["result"]["dims"])
        degrees.push_back(d["degree"]);
    CHECK(degrees == std::vector<int>{0, 4, 5, 8, 9, 12, 13});

    const auto n = parsed(run({"margolis", "--module", kData + "/modules/N.json", "--q", "1"}));
    CHECK(n["result"]["dims"] == json::parse(R"([{"degree": 9, "dim": 1, "representatives": ["x9"]}])"));
}

TEST_CASE("ext, chart files and rendering")
{
    const std::string chart = temp_path("chart.json");
    const auto r = run({"ext", "--module", kData + "/modules/F2.json", "--max-s", "6", "--max-t", "12", "--verify",
                        "--out", chart});
    CHECK(r.exit_code == 0);
    const json doc = parsed(r);
    CHECK(doc["result"]["verification"]["ok"] == true);
    CHECK(doc["result"]["chart"]["algebra"] == "E1");

    const auto text = run({"render", "--chart", chart, "--format", "text"});
    CHECK(text.exit_code == 0);
    CHECK(text.out.rfind("Ext_E1 F2", 0) == 0);
    const auto svg = run({"render", "--chart", chart, "--format", "svg"});
    CHECK(svg.out.rfind("<svg", 0) == 0);
    std::ifstream in(chart);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(run({"render", "--chart", chart, "--format", "json"}).out == ss.str());
    std::remove(chart.c_str());

    const auto k2 = parsed(run({"ext", "--k", "2", "--algebra", "a1", "--max-s", "3", "--max-t", "10"}));
    CHECK(k2["parameters"]["truncation"] == 16);
    CHECK(k2["result"]["chart"]["valid_t_max"] == 10);
}

TEST_CASE("fixture tables")
{
    for (const char* t : {"t42", "t55", "submodules", "spin"}) {
        const auto r = run({"check-table", t});
        CHECK(r.exit_code == 0);
        CHECK(parsed(r)["result"]["mismatches"] == 0);
    }
}

TEST_CASE("operations on classes")
{
    CHECK(parsed(run({"act", "--k", "3", "Sq2", "g10"}))["result"]["value"] == "g6^2");
    CHECK(parsed(run({"act", "--k", "2", "Q0", "u2"}))["result"]["value"] == "u3");
    CHECK(parsed(run({"chi-class", "9", "2"}))["result"]["class"] == "u9");
    CHECK(parsed(run({"generators", "--k", "2", "--max-deg", "9"}))["result"]["count"] == 4);
    CHECK(parsed(run({"criterion", "Sq(3)", "--ideal", "sq1"}))["result"]["outside_image"] == false);
    CHECK(parsed(run({"basis", "3"}))["result"]["count"] == 2);
}

TEST_CASE("module export round trip")
{
    const auto doc = run({"export-module", "--k", "2", "--algebra", "e1", "--max-deg", "12"});
    CHECK(doc.exit_code == 0);
    const std::string path = temp_path("k2.json");
    std::ofstream(path) << doc.out;
    const auto h = parsed(run({"margolis", "--module", path, "--q", "0"}));
    CHECK(h["parameters"]["name"] == "K2");
    std::remove(path.c_str());
}
