#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const char* bin = std::getenv("DOMAIN_ORACLE_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "DOMAIN_ORACLE_BIN must point at the CLI binary");
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("table includes IV(7) and respects the bound") {
    RunResult r = run("table --max-dim 10");
    CHECK(r.code == 0);
    json out = json::parse(r.out);
    bool found = false;
    for (const auto& row : out["rows"]) {
        CHECK(row["dim"].get<int>() <= 10);
        if (row["type"] == "IV(7)") {
            found = true;
            CHECK(row["dim"] == 7);
            CHECK(row["s1"] == 5);
        }
    }
    CHECK(found);
}

TEST_CASE("table at dimension 3 lists the canonical III(2) with its alias") {
    RunResult r = run("table --max-dim 3");
    json out = json::parse(r.out);
    REQUIRE(out["rows"].size() == 1);
    CHECK(out["rows"][0]["type"] == "III(2)");
    CHECK(out["rows"][0]["aliases"][0] == "IV(3)");
    // nothing below dimension 3
    RunResult r2 = run("table --max-dim 2");
    CHECK(json::parse(r2.out)["rows"].empty());
}

TEST_CASE("analyze recovers the input spec") {
    RunResult r = run("--seed 7 analyze 'I(2,3)xD'");
    CHECK(r.code == 0);
    json out = json::parse(r.out);
    CHECK(out["recovered"] == "D x I(2,3)");
    CHECK(out["match"] == true);
    CHECK(out["schur_ok"] == true);
}

TEST_CASE("analyze reports the exceptional cone dimension") {
    RunResult r = run("--seed 7 analyze VI");
    CHECK(r.code == 0);
    json out = json::parse(r.out);
    CHECK(out["components"][0]["affine_dim"] == 17);
    CHECK(out["recovered"] == "VI");
}

TEST_CASE("malformed spec is a ParseError") {
    RunResult r = run("analyze 'I(2)'");
    CHECK(r.code == 2);
    json out = json::parse(r.out);
    CHECK(out["error"] == "ParseError");
}

TEST_CASE("classify maps pairs to domains") {
    CHECK(json::parse(run("classify [[0,1]]").out)["recovered"] == "D");
    CHECK(json::parse(run("classify [[4,6]]").out)["recovered"] == "I(2,3)");
    CHECK(json::parse(run("classify [[3,4],[3,4]]").out)["recovered"] == "I(2,2) x I(2,2)");
    RunResult bad = run("classify [[2,4]]");
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out).contains("error"));
}

TEST_CASE("offdiag accepts a JSON matrix") {
    RunResult r = run("--seed 6 analyze 'I(2,2)xIV(3)' --offdiag '[[0,1],[0,0]]'");
    CHECK(r.code == 0);
    json out = json::parse(r.out);
    CHECK(out["components"][0]["flags"] == json::array({"CONE", "FULL"}));
    CHECK(out["components"][1]["flags"] == json::array({"ZERO", "CONE"}));
}

TEST_CASE("verify table and injectivity suites pass") {
    RunResult r = run("verify injectivity --max-dim 30");
    CHECK(r.code == 0);
    json out = json::parse(r.out);
    CHECK(out["ok"] == true);
    CHECK(out["details"]["canonical_collisions"].empty());

    RunResult t = run("verify table");
    CHECK(t.code == 0);
    CHECK(json::parse(t.out)["ok"] == true);

    RunResult jn = run("verify join");
    CHECK(jn.code == 0);
    CHECK(json::parse(jn.out)["ok"] == true);
}

TEST_CASE("identical seeds give byte-identical output") {
    RunResult a = run("--seed 11 analyze 'I(2,2)xIV(3)'");
    RunResult b = run("--seed 11 analyze 'I(2,2)xIV(3)'");
    CHECK(a.out == b.out);
    RunResult c = run("--seed 12 verify join");
    RunResult d = run("--seed 12 verify join");
    CHECK(c.out == d.out);
}

TEST_CASE("env var seeds the run, flag wins") {
    const char* bin = std::getenv("DOMAIN_ORACLE_BIN");
    REQUIRE(bin != nullptr);
    auto run_env = [&](const std::string& env, const std::string& args) {
        std::string cmd = env + " " + std::string(bin) + " " + args + " 2>/dev/null";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        std::string out;
        char buf[4096];
        size_t n;
        while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
        pclose(p);
        return out;
    };
    std::string via_env = run_env("DOMAIN_ORACLE_SEED=99", "analyze 'I(2,2)'");
    std::string via_flag = run("--seed 99 analyze 'I(2,2)'").out;
    CHECK(via_env == via_flag);
    std::string flag_wins = run_env("DOMAIN_ORACLE_SEED=99", "--seed 31 analyze 'I(2,2)'");
    std::string direct = run("--seed 31 analyze 'I(2,2)'").out;
    CHECK(flag_wins == direct);
}
