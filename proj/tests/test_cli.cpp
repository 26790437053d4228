#include <catch2/catch_amalgamated.hpp>

#include <wgab/cli.hpp>

#include <cstdio>
#include <fstream>

using namespace wgab;

namespace {
struct RunResult {
    int code;
    std::string out, err;
};
RunResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}
json out_json(const RunResult& r) { return json::parse(r.out); }
}  // namespace

TEST_CASE("bracket command") {
    auto r = cli({"bracket", "--preset", "wgab", "--a", "0", "--b", "0", "[Y(3/2), Y(1/2)]"});
    CHECK(r.code == 0);
    CHECK(r.out == "[Y(3/2), Y(1/2)] = I(2)\n");

    auto rj = cli({"bracket", "--preset", "wgab", "--a", "0", "--b", "0", "--json",
                   "[2*L(2), L(3) - L(0)]"});
    CHECK(rj.code == 0);
    auto doc = out_json(rj);
    CHECK(doc["result"]["value"] == "-4*L(2) - 2*L(5)");
    CHECK(doc["schema"] == 1);
    CHECK(doc.contains("digest"));
}

TEST_CASE("jacobi command") {
    auto r = cli({"jacobi", "--preset", "wgab", "--json"});
    CHECK(r.code == 0);
    CHECK(out_json(r)["result"]["symbolic"]["pass"] == true);

    auto rn = cli({"jacobi", "--preset", "wgab", "--a", "2/3", "--b", "5", "--window", "-5:5",
                   "--json"});
    CHECK(rn.code == 0);
    auto doc = out_json(rn);
    CHECK(doc["result"]["window"]["pass"] == true);
}

TEST_CASE("h1 and h1-scan") {
    auto r = cli({"h1", "--preset", "wgab", "--a", "0", "--b", "2", "--degree", "0", "--window",
                  "-8:8", "--margin", "3", "--json"});
    CHECK(r.code == 0);
    auto doc = out_json(r);
    CHECK(doc["result"]["outer_dim"] == 2);
    CHECK(doc["params"]["a"] == "0");
    CHECK(doc["window"] == "-8:8");

    auto rs = cli({"h1-scan", "--preset", "wgab", "--a", "0", "--b", "0", "--window", "-8:8",
                   "--margin", "3", "--json"});
    CHECK(rs.code == 0);
    auto degrees = out_json(rs)["result"]["degrees"];
    REQUIRE(degrees.size() == 9);
    for (auto& d : degrees) {
        const bool is_zero_deg = d["degree"] == "0";
        CHECK(d["outer_dim"] == (is_zero_deg ? 3 : 0));
    }
}

TEST_CASE("center and perfect with exit codes") {
    auto r = cli({"center", "--preset", "wgab", "--a", "0", "--b", "0", "--window", "-8:8",
                  "--json"});
    CHECK(r.code == 0);
    CHECK(out_json(r)["result"]["basis"] == json::array({"I(0)"}));

    auto rp = cli({"perfect", "--preset", "wgab", "--a", "0", "--b", "0", "--window", "-8:8"});
    CHECK(rp.code == 0);

    // mathematical failure surfaces as exit 1 (the honest (1,3) degeneration)
    auto rf = cli({"perfect", "--preset", "wgab", "--a", "1", "--b", "3", "--window", "-8:8",
                   "--json"});
    CHECK(rf.code == 1);
    auto doc = out_json(rf);
    CHECK(doc["result"]["pass"] == false);
    CHECK(doc["result"]["uncovered"] == json::array({"Y(-1/2)"}));
}

TEST_CASE("aut verify and commutator") {
    auto r = cli({"aut", "verify", "--variant", "generic", "--a", "1/2", "--b", "0", "--alpha",
                  "4", "--mu", "1", "--s", "2", "--window", "-8:8", "--json"});
    CHECK(r.code == 0);
    auto doc = out_json(r);
    CHECK(doc["result"]["homomorphism"]["pass"] == true);
    CHECK(doc["result"]["ideal_preservation"]["pass"] == true);

    auto rk = cli({"aut", "commutator", "--preset", "wgab", "--a", "1/2", "--b", "0", "--alpha",
                   "1", "--beta", "1", "--i", "0", "--j", "2", "--json"});
    CHECK(rk.code == 0);
    CHECK(out_json(rk)["result"]["gamma"] == "2");

    auto rc = cli({"aut", "compose", "--variant", "generic", "--a", "1/2", "--b", "0",
                   "--alpha1", "2", "--mu1", "2", "--s1", "2", "--alpha2", "8", "--mu2", "2",
                   "--s2", "4", "--window", "-6:6", "--json"});
    CHECK(rc.code == 0);
    auto cdoc = out_json(rc);
    CHECK(cdoc["result"]["composed"]["alpha"] == "16");
    CHECK(cdoc["result"]["composed"]["mu"] == "4");
    CHECK(cdoc["result"]["composed"]["s"] == "8");
}

TEST_CASE("shift-iso command") {
    auto r = cli({"shift-iso", "--preset", "wgab", "--a", "1/3", "--b", "2", "--k", "2",
                  "--window", "-8:8", "--json"});
    CHECK(r.code == 0);
    auto doc = out_json(r);
    CHECK(doc["result"]["pass"] == true);
    CHECK(doc["result"]["target_params"]["a"] == "7/3");

    auto rodd = cli({"shift-iso", "--preset", "wgab", "--a", "0", "--b", "1", "--k", "1"});
    CHECK(rodd.code == 2);
}

TEST_CASE("spec parse and print") {
    auto r = cli({"spec", "parse", "--preset", "wgab", "--json"});
    CHECK(r.code == 0);
    auto doc = out_json(r);
    CHECK(doc["result"]["families"] == 3);
    CHECK(doc["result"]["rules"] == 6);
    CHECK(doc["result"]["zero_rules"] == 2);

    auto rp = cli({"spec", "print", "--preset", "witt"});
    CHECK(rp.code == 0);
    CHECK(rp.out.find("[L(m), L(n)] = (m - n) L(m + n)") != std::string::npos);

    // bad file input is a usage error with a position
    std::string path = std::string(WGAB_TEST_DATA_DIR) + "/bad_spec_tmp.dsl";
    {
        std::ofstream f(path);
        f << "algebra x\nfamily L 0\n[L(m), X(n)] = (m - n) L(m + n)\n";
    }
    auto rbad = cli({"spec", "parse", "--file", path});
    CHECK(rbad.code == 2);
    CHECK(rbad.err.find("line 3") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"h1", "--preset", "wgab", "--degree", "0"}).code == 2);   // missing params
    CHECK(cli({"h1", "--preset", "wgab", "--a", "0.5", "--b", "0"}).code == 2);  // decimal
    CHECK(cli({"bracket", "--preset", "wgab", "--a", "0", "--b", "0", "[L(2) L(3)]"}).code == 2);
    CHECK(cli({"aut", "verify", "--variant", "generic", "--a", "1/2", "--b", "0", "--alpha",
               "4", "--mu", "1", "--s", "3"}).code == 2);  // witness violated
}

TEST_CASE("reports are byte-identical across runs") {
    std::vector<std::vector<std::string>> cmds = {
        {"h1", "--preset", "wgab", "--a", "1/2", "--b", "1/2", "--degree", "0", "--window",
         "-8:8", "--json"},
        {"jacobi", "--preset", "wgab", "--json"},
        {"center", "--preset", "wgab", "--a", "0", "--b", "0", "--window", "-8:8", "--json"},
        {"aut", "commutator", "--preset", "wgab", "--a", "1/2", "--b", "0", "--alpha", "1",
         "--beta", "1", "--i", "0", "--j", "2", "--json"},
    };
    for (auto& c : cmds) {
        auto r1 = cli(c), r2 = cli(c);
        CHECK(r1.out == r2.out);
        CHECK(r1.code == r2.code);
    }
}

TEST_CASE("golden comparison") {
    const std::string golden_path = std::string(WGAB_GOLDEN_DIR) + "/h1_scan_00.json";
    auto r = cli({"h1-scan", "--preset", "wgab", "--a", "0", "--b", "0", "--window", "-10:10",
                  "--margin", "3", "--json", "--golden", golden_path});
    CHECK(r.code == 0);

    // a perturbed golden is rejected with a field-level diff
    auto golden = load_json_file(golden_path);
    golden["result"]["degrees"][4]["outer_dim"] = 7;
    const std::string tmp = std::string(WGAB_TEST_DATA_DIR) + "/perturbed_golden_tmp.json";
    {
        std::ofstream f(tmp);
        f << golden.dump(2);
    }
    auto rbad = cli({"h1-scan", "--preset", "wgab", "--a", "0", "--b", "0", "--window",
                     "-10:10", "--margin", "3", "--json", "--golden", tmp});
    CHECK(rbad.code == 1);
    CHECK(rbad.err.find("outer_dim") != std::string::npos);

    // version differences are ignored by the comparison
    golden = load_json_file(golden_path);
    golden["version"] = "99.0.0";
    {
        std::ofstream f(tmp);
        f << golden.dump(2);
    }
    auto rver = cli({"h1-scan", "--preset", "wgab", "--a", "0", "--b", "0", "--window",
                     "-10:10", "--margin", "3", "--json", "--golden", tmp});
    CHECK(rver.code == 0);
    std::remove(tmp.c_str());

    auto rmissing = cli({"jacobi", "--preset", "wgab", "--json", "--golden", "/nonexistent.json"});
    CHECK(rmissing.code == 2);
}
