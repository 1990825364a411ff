#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    const std::string cmd = std::string(RTURAN_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
    const std::string path = "rturan_cli_test_" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("--no-such-flag").code == 2);
    CHECK(run("predict").code == 2);
    CHECK(run("params density does-not-exist.g").code == 2);
    CHECK(run("params density " + temp_file("loop.g", "n=2; 0-0")).code == 2);
}

TEST_CASE("predict K_{2,2} from a file") {
    auto r = run("predict --pattern " + temp_file("k22.g", "n=4; 0-2 0-3 1-2 1-3"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["prediction"]["thresholds"]["p_lower"] == "-2/3");
    CHECK(j["prediction"]["thresholds"]["p_upper"] == "-1/3");
    CHECK(j["version"].is_string());
    CHECK(j["config"]["theorem"] == "auto");
}

TEST_CASE("params") {
    auto d = run("params density cycle:4");
    REQUIRE(d.code == 0);
    CHECK(nlohmann::json::parse(d.out)["m2"] == "3/2");
    auto s = run("params semibounded k:3,3 --full-table");
    REQUIRE(s.code == 0);
    auto j = nlohmann::json::parse(s.out);
    CHECK(j["a"]["value"] == "1/4");
    CHECK(j["table"].size() > 0);
    auto t = run("params semibounded cycle:4 --triple 'S=1,3;v*=0'");
    REQUIRE(t.code == 0);
    CHECK(nlohmann::json::parse(t.out)["b"]["value"] == "1/3");
    CHECK(run("params semibounded cycle:4 --triple 'S=0,1;v*=2'").code == 2);
}

TEST_CASE("construct writes a graph and a sidecar") {
    const std::string out = "rturan_cli_test_frst.g";
    REQUIRE(run("construct frst --r 2 --s 3 --t 1 --out " + out).code == 0);
    std::ifstream g(out), side(out + ".json");
    REQUIRE(g);
    REQUIRE(side);
    auto j = nlohmann::json::parse(side);
    CHECK(j["construction"]["edges"] == 9);
    auto fm = run("--format json construct fm " + temp_file("m.g", "n=2; 0-1x2"));
    REQUIRE(fm.code == 0);
    CHECK(nlohmann::json::parse(fm.out)["construction"]["vertices"] == 5);
}

TEST_CASE("supersat build") {
    auto r = run("supersat build --pattern cycle:4 --host k:4,4 --delta 0.5 --audit");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["checks"]["recount"] == true);
    CHECK(j["checks"]["maximal"] == true);
    CHECK(j["audit"]["rows"].size() == 4);
}

TEST_CASE("budget exhaustion exits 3 with partial results") {
    auto r = run("--budget-ms 1 simulate --pattern cycle:4 --n 40 --p-exp -0.2 --reps 1 --method exact");
    CHECK(r.code == 3);
    CHECK(r.out.find("n,p_exp,p,seed") != std::string::npos);
}

TEST_CASE("simulate and report are byte-identical across runs") {
    const std::string args = "--seed 5 simulate --pattern cycle:4 --n 20,30 --p-exp -0.7,-0.4 --reps 2";
    auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("# rturan", 0) == 0);
    const std::string csv = temp_file("sim.csv", a.out);
    auto r1 = run("report --csv " + csv + " --pattern cycle:4"), r2 = run("report --csv " + csv + " --pattern cycle:4");
    REQUIRE(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(nlohmann::json::parse(r1.out)["series"].size() == 4);
}

TEST_CASE("verify-lemmas on a small corpus") {
    auto r = run("verify-lemmas --max-vertices 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("10/10 suites passed") != std::string::npos);
    CHECK(run("verify-lemmas --suite nope").code == 2);
}
