#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(LOOPFILT_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json report(const std::string& args) {
    Run r = run(args);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("quotient report") {
    auto j = report("quotient --type A --rank 1 --r 0");
    CHECK(j["ok"] == true);
    CHECK(j["result"]["total_dim"] == 3);
    CHECK(j["config"]["type"] == "A");
    CHECK(j["config"]["r"] == "0");
}

TEST_CASE("strata of the running example") {
    auto j = report("strata --type A --rank 1 --x 1/2 --r 1/2 --samples 16");
    CHECK(j["ok"] == true);
    std::vector<std::string> labels;
    for (const auto& s : j["result"]["strata"]) labels.push_back(s["label"]);
    CHECK(labels == std::vector<std::string>{"L(dim=1,split=0,support=[1/2:1],degrees=[1])", "diamond"});
}

TEST_CASE("element commands") {
    auto q = report("qmap --type A --rank 1 --x 1/2 --r 1/2 --coeffs 1,1");
    CHECK(q["result"]["q"]["2,1"] == "-1");
    auto d = report("destabilize --type A --rank 1 --x 1/2 --r 1/2 --coeffs 0,1");
    CHECK(d["result"]["unstable"] == true);
    CHECK(d["result"]["strictly_deepened"] == true);
    auto dp = report("deepen --type A --rank 1 --x 1/2 --r 1/2");
    CHECK(dp["result"]["s"] == "1/2");
    CHECK(dp["result"]["dual_verified"] == true);
    auto a = report("align --type A --rank 1 --x 1/2 --r 1/2 --coeffs 1,1 --seed 3");
    CHECK(a["result"]["commutes"] == true);
    auto g = report("grade --type A --rank 2 --twist swap");
    CHECK(g["result"]["components"].size() == 2);
    auto js = report("jumps --type A --rank 1 --x 1/2");
    CHECK(js["result"]["jumps"] == nlohmann::json::array({"0", "1/2"}));
}

TEST_CASE("reports are deterministic and embed the config") {
    std::string args = "verify-basecase --type A --rank 2 --x 1/3,1/3 --r 1/3 --samples 12 --seed 4";
    Run a = run(args), b = run(args), c = run(args + " --serial");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["config"]["seed"] == 4);
    CHECK(j["config"]["x"] == nlohmann::json::array({"1/3", "1/3"}));
}

TEST_CASE("config files and overrides") {
    std::string path = "cli_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"type": "A", "rank": 2, "twist": "swap", "r": "1/2"})";
    }
    auto j = report("quotient --config " + path);
    CHECK(j["config"]["twist"] == "swap");
    CHECK(j["result"]["total_dim"] == 5);
    auto k = report("quotient --config " + path + " --r 0");
    CHECK(k["result"]["total_dim"] == 3);
    std::remove(path.c_str());
}

TEST_CASE("exit codes") {
    CHECK(run("quotient --type A --rank 1 --r 1/0").code == 2);
    CHECK(run("quotient --type A --rank 1 --x 0,0").code == 2);
    CHECK(run("quotient --bogus").code == 2);
    CHECK(run("quotient --config does-not-exist.json").code == 2);
    CHECK(run("qmap --type A --rank 1 --coeffs 1").code == 2);
    CHECK(run("quotient --type E --rank 9").code == 3);
    CHECK(run("quotient --type A --rank 1 --twist triality").code == 3);
    CHECK(run("grade --type A --rank 1").code == 0);
}
