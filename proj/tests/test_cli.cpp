#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <cyclofermat/cyclofermat.hpp>

using namespace cyclofermat;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream os;
    int code = cli::run(args, os);
    return {code, os.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
    args.push_back("--json");
    RunResult rr = run_cli(std::move(args));
    REQUIRE(rr.code == expected_code);
    json doc = json::parse(rr.out);
    jsonio::validate_result(doc);
    return doc;
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

struct EnvGuard {
    std::string name;
    std::string saved;
    bool had = false;
    explicit EnvGuard(std::string n) : name(std::move(n)) {
        if (const char* v = std::getenv(name.c_str())) {
            had = true;
            saved = v;
        }
    }
    ~EnvGuard() {
        if (had)
            setenv(name.c_str(), saved.c_str(), 1);
        else
            unsetenv(name.c_str());
    }
};

} // namespace

TEST_CASE("informational commands emit validated JSON", "[cli]") {
    json field = run_json({"field", "13"});
    CHECK(field["command"] == "field");
    CHECK(field["status"] == "ok");
    CHECK(field["payload"]["degree"] == 6);
    CHECK(field["payload"]["disc"] == "371293"); // 13^5, positive: totally real
    CHECK(field["payload"]["disc_sign"] == 1);
    CHECK(field["payload"]["disc_supported_only_at_r"] == true);
    CHECK(field["payload"]["min_poly"]["text"] ==
          "x^6 + x^5 - 5*x^4 - 4*x^3 + 6*x^2 + 3*x - 1");

    json split = run_json({"split", "5", "2"});
    CHECK(split["payload"]["inert"] == true);
    REQUIRE(split["payload"]["factors"].size() == 1);
    CHECK(split["payload"]["factors"][0]["f"] == 2);

    json split11 = run_json({"split", "11", "11"});
    REQUIRE(split11["payload"]["factors"].size() == 1);
    CHECK(split11["payload"]["factors"][0]["e"] == 5); // totally ramified
    CHECK(split11["payload"]["inert"] == false);

    RunResult text = run_cli({"field", "5"});
    CHECK(text.code == 0);
    CHECK_THAT(text.out, ContainsSubstring("P(x) = x^2 + x - 1"));
    CHECK_THAT(text.out, ContainsSubstring("disc(P) = 5"));
}

TEST_CASE("verification commands gate the exit code on the report", "[cli]") {
    json lemma = run_json({"lemma21", "7"});
    CHECK(lemma["status"] == "ok");
    CHECK(lemma["payload"]["report"]["all_pass"] == true);
    CHECK(run_cli({"lemma21", "7"}).code == 0);

    json desc = run_json({"descent", "5", "2", "3"});
    CHECK(desc["payload"]["A"] == "122");
    CHECK(desc["payload"]["B"] == "-597");
    CHECK(desc["payload"]["c"] == "13");
    CHECK(desc["payload"]["case"] == "r_ndiv_a");
    REQUIRE(desc["payload"]["betas"].size() == 2);
    CHECK(desc["payload"]["betas"][0]["text"] == "13*theta - 10");
    CHECK(desc["payload"]["report"]["all_pass"] == true);

    json desc52 = run_json({"descent", "5", "5", "2"});
    CHECK(desc52["payload"]["A"] == "-1475");
    CHECK(desc52["payload"]["case"] == "r_div_a");

    RunResult dtext = run_cli({"descent", "5", "2", "3"});
    CHECK_THAT(dtext.out, ContainsSubstring("A = 122"));
    CHECK_THAT(dtext.out, ContainsSubstring("all checks passed"));
}

TEST_CASE("frey command carries invariants, reduction, conductor and level", "[cli]") {
    json fr = run_json({"frey", "5", "2", "3", "1", "2"});
    const json& p = fr["payload"];
    CHECK(p["case"] == "r_ndiv_a");
    CHECK(p["delta"] == 0);
    CHECK(p["A"]["text"] == "13*theta - 10");
    CHECK(p["C"]["text"] == "-16*theta");
    // bad primes: the inert 2 and two primes above 61; good reduction at the
    // ramified prime shows up only in the reduction table
    CHECK(p["conductor"].size() == 3);
    CHECK(p["level"].size() == 3);
    REQUIRE(p["reduction"].size() == 4);
    CHECK(p["reduction"][0]["prime"]["p"] == 2);
    CHECK(p["reduction"][0]["type"] == "unknown");
    CHECK(p["reduction"][1]["prime"]["p"] == 5);
    CHECK(p["reduction"][1]["type"] == "good");
    CHECK(p["reduction"][2]["type"] == "multiplicative");
    CHECK(p["reduction"][3]["type"] == "multiplicative");
    CHECK(p["power_content_hypothesis"] == false);
    CHECK(p["unfactored_residue"] == "1");

    // case r | a: the ramified prime enters the conductor; under the
    // power-content hypothesis the level shrinks to the 2-prime and it
    json fa = run_json({"frey", "5", "5", "2", "1", "2", "--power-content"});
    const json& q = fa["payload"];
    CHECK(q["case"] == "r_div_a");
    CHECK(q["k_r"] == 1);
    CHECK(q["delta"] == 15); // (1*5 - 1)(5 - 1) - 1
    CHECK(q["conductor"].size() == 4);
    REQUIRE(q["level"].size() == 2);
    CHECK(q["level"][0]["p"] == 2);
    CHECK(q["level"][1]["p"] == 5);
    CHECK(q["power_content_hypothesis"] == true);

    json f7 = run_json({"frey", "5", "5", "2", "1", "2", "--p", "7"});
    CHECK(f7["payload"]["delta"] == 23); // (1*7 - 1)(5 - 1) - 1

    // forcing the case against the witness is a usage error
    RunResult bad = run_cli({"frey", "5", "2", "3", "1", "2", "--case", "r_div_a"});
    CHECK(bad.code == 2);
    CHECK_THAT(bad.out, ContainsSubstring("inconsistent"));

    RunResult tied = run_cli({"frey", "5", "2", "3", "1", "1"});
    CHECK(tied.code == 2);
    CHECK_THAT(tied.out, ContainsSubstring("indices j and k must be distinct"));
}

TEST_CASE("sunit command surveys, loads generator files, and can fail honestly", "[cli]") {
    json su = run_json({"sunit", "5", "--set", "2", "--bound", "2"});
    const json& p = su["payload"];
    CHECK(p["set"] == "S2");
    CHECK(p["bound"] == 2);
    CHECK(p["best_effort"] == true);
    CHECK(p["user_certified"] == false);
    CHECK(p["solutions"].size() == 27);
    CHECK_THAT(p["report"]["title"].get<std::string>(),
               ContainsSubstring("bounded-search evidence, not a proof"));
    CHECK(p["report"]["all_pass"] == true);

    // a user-certified generator file drops the disclaimer
    std::string gens = write_temp("cyclofermat_gens.csv", "# units\n2\n0,1\n");
    json sg = run_json({"sunit", "5", "--set", "2", "--bound", "1", "--gens", gens});
    CHECK(sg["payload"]["user_certified"] == true);
    CHECK(sg["payload"]["best_effort"] == false);
    CHECK(sg["payload"]["generator_count"] == 2);
    CHECK_THAT(sg["payload"]["report"]["title"].get<std::string>(),
               !ContainsSubstring("bounded-search"));
    CHECK(sg["payload"]["solutions"].size() >= 6); // closure of (2, -1) and (theta, 1 - theta)

    // a box too small to contain any solution fails the survey: exit 1
    std::string lone = write_temp("cyclofermat_gens_lone.csv", "2\n");
    json empty = run_json({"sunit", "5", "--set", "2", "--bound", "0", "--gens", lone}, 1);
    CHECK(empty["status"] == "failed");
    CHECK(empty["payload"]["solutions"].empty());
    CHECK(empty["payload"]["report"]["all_pass"] == false);

    RunResult badset = run_cli({"sunit", "5", "--set", "3", "--bound", "2"});
    CHECK(badset.code == 2);
}

TEST_CASE("eligibility commands resolve the class number table", "[cli]") {
    // bundled table through the built-in default path
    EnvGuard guard("CYCLOFERMAT_HPLUS_TABLE");
    unsetenv("CYCLOFERMAT_HPLUS_TABLE");

    json e5 = run_json({"eligible", "5"});
    CHECK(e5["payload"]["overall"] == "yes");

    json e29 = run_json({"eligible", "29"});
    CHECK(e29["payload"]["two_inert"] == true);
    CHECK(e29["payload"]["h_plus_odd"] == "no");
    CHECK(e29["payload"]["overall"] == "no");

    // the environment variable overrides the default...
    std::string odd29 = write_temp("cyclofermat_h29.csv", "29,1,custom\n");
    setenv("CYCLOFERMAT_HPLUS_TABLE", odd29.c_str(), 1);
    json e29b = run_json({"eligible", "29"});
    CHECK(e29b["payload"]["h_plus_odd"] == "yes");
    CHECK(e29b["payload"]["overall"] == "yes");

    // ...and --table overrides the environment variable
    std::string even29 = write_temp("cyclofermat_h29b.csv", "29,4,custom\n");
    json e29c = run_json({"eligible", "29", "--table", even29});
    CHECK(e29c["payload"]["h_plus_odd"] == "no");

    setenv("CYCLOFERMAT_HPLUS_TABLE", "/no/such/file.csv", 1);
    RunResult bad = run_cli({"eligible", "29"});
    CHECK(bad.code == 2);
    CHECK_THAT(bad.out, ContainsSubstring("cannot open narrow class table"));
    unsetenv("CYCLOFERMAT_HPLUS_TABLE");

    RunResult notprime = run_cli({"eligible", "4"});
    CHECK(notprime.code == 2);
    CHECK_THAT(notprime.out, ContainsSubstring("4 is not prime"));
}

TEST_CASE("scan reproduces the eligible list and is byte-stable", "[cli]") {
    EnvGuard guard("CYCLOFERMAT_HPLUS_TABLE");
    unsetenv("CYCLOFERMAT_HPLUS_TABLE");

    json sc = run_json({"scan", "--max", "200"});
    std::vector<std::uint64_t> expected = {5,  7,   11,  13,  19,  23,  37,  47,  53,  59,
                                           61, 67,  71,  79,  83,  101, 103, 107, 131, 139,
                                           149, 163, 167, 173, 179, 181, 191, 197, 199};
    CHECK(sc["payload"]["eligible"].get<std::vector<std::uint64_t>>() == expected);
    CHECK(sc["payload"]["records"].size() == 44);

    // identical invocations must print identical bytes
    RunResult a = run_cli({"scan", "--max", "31", "--json"});
    RunResult b = run_cli({"scan", "--max", "31", "--json"});
    CHECK(a.out == b.out);
    RunResult c = run_cli({"frey", "5", "2", "3", "1", "2", "--json"});
    RunResult d = run_cli({"frey", "5", "2", "3", "1", "2", "--json"});
    CHECK(c.out == d.out);

    RunResult text = run_cli({"scan", "--max", "31"});
    CHECK_THAT(text.out, ContainsSubstring("eligible r (6): 5 7 11 13 19 23"));
}

TEST_CASE("usage errors and help", "[cli]") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"field"}).code == 2);          // missing positional
    CHECK(run_cli({"scan"}).code == 2);           // missing --max
    CHECK(run_cli({"field", "7", "9"}).code == 2); // extra positional

    RunResult badint = run_cli({"descent", "5", "x", "3"});
    CHECK(badint.code == 2);
    CHECK_THAT(badint.out, ContainsSubstring("a0 must be an integer"));

    RunResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK_THAT(help.out, ContainsSubstring("field"));
    CHECK_THAT(help.out, ContainsSubstring("scan"));
}

TEST_CASE("schema validator rejects malformed documents", "[cli]") {
    json good = run_json({"eligible", "5"});
    jsonio::validate_result(good); // sanity: the real document passes

    json missing = good;
    missing["payload"].erase("overall");
    CHECK_THROWS_WITH(jsonio::validate_result(missing),
                      ContainsSubstring("missing key 'overall'"));

    json wrong_type = good;
    wrong_type["payload"]["r"] = "5";
    CHECK_THROWS_WITH(jsonio::validate_result(wrong_type),
                      ContainsSubstring("must be a nonnegative integer"));

    json bad_version = good;
    bad_version["schema_version"] = 2;
    CHECK_THROWS_WITH(jsonio::validate_result(bad_version),
                      ContainsSubstring("schema_version must be 1"));

    json bad_status = good;
    bad_status["status"] = "maybe";
    CHECK_THROWS_WITH(jsonio::validate_result(bad_status),
                      ContainsSubstring("unexpected value 'maybe'"));

    json lemma = run_json({"lemma21", "5"});
    lemma["payload"]["report"]["all_pass"] = false; // now inconsistent with the checks
    CHECK_THROWS_WITH(jsonio::validate_result(lemma),
                      ContainsSubstring("conjunction"));

    CHECK_THROWS_WITH(jsonio::validate_payload("nonsense", json::object()),
                      ContainsSubstring("unknown command 'nonsense'"));
}
