#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "resroot/trace_io.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the installed binary with stderr folded into the captured stream;
// the tests only assert on exit codes and stdout content.
RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(RESROOT_CLI_PATH) + " " + args + " 2>&1";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string temp_path(const std::string& stem) {
    return "/tmp/resroot_cli_test_" + std::to_string(getpid()) + "_" + stem;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("roots command lists the system") {
    RunResult r = run_cli("roots A 2");
    CHECK(r.exit_code == 0);
    // Header plus six roots.
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 7);
    CHECK(r.out.find("height") != std::string::npos);

    CHECK(run_cli("roots A 0").exit_code == 2);
    CHECK(run_cli("roots Q 2").exit_code == 2);
    CHECK(run_cli("roots A").exit_code == 2);       // missing rank
    CHECK(run_cli("frobnicate").exit_code == 2);    // unknown command
    CHECK(run_cli("").exit_code == 2);              // no command at all
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("summary table covers the requested ranks") {
    RunResult r = run_cli("table --max-rank 3 --format json-lines");
    CHECK(r.exit_code == 0);
    bool saw_a3 = false;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line)) {
        nlohmann::json j = nlohmann::json::parse(line);
        if (j["type"] == "A3") {
            saw_a3 = true;
            CHECK(j["min"] == "3");
            CHECK(j["bourbaki_node"] == "1");
            CHECK(j["delta"] == "1,1,1");
        }
        CHECK(j.contains("parabolic_codims"));
    }
    CHECK(saw_a3);
    CHECK(run_cli("table --max-rank 9").exit_code == 2);
}

TEST_CASE("parabolics command marks the minimal vertex") {
    RunResult r = run_cli("parabolics B 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find('*') != std::string::npos);
    CHECK(run_cli("parabolics E6 7").exit_code == 2);
}

TEST_CASE("average emits a replayable trace in every format") {
    using namespace resroot;
    for (const char* fmt : {"table", "json-lines", "csv"}) {
        RunResult r = run_cli(std::string("average A 2 --lambda 1,0,-1 --format ") + fmt);
        CAPTURE(fmt);
        CHECK(r.exit_code == 0);
        AveragingTrace tr = parse_trace(r.out);
        CHECK(tr.type.family == Family::A);
        CHECK(replay(tr).ok);
    }
    CHECK(run_cli("average A 2 --lambda 1,0").exit_code == 2);  // arity
    CHECK(run_cli("average A 2 --lambda 0,0,0").exit_code == 2); // zero functional
    CHECK(run_cli("average A 1 --lambda 1,-1").exit_code == 2);  // rank too small
}

TEST_CASE("replay validates files and flags forgeries") {
    std::string path = temp_path("trace.txt");
    RunResult gen = run_cli("average BC 2 --seed 11 --out " + path);
    REQUIRE(gen.exit_code == 0);
    CHECK(gen.out.empty()); // --out suppresses stdout

    CHECK(run_cli("replay " + path).exit_code == 0);

    // Corrupt one witness sign and expect the verification exit code.
    std::string text = slurp(path);
    auto pos = text.find("witness=");
    REQUIRE(pos != std::string::npos);
    pos += 8;
    std::string forged = text.substr(0, pos);
    if (text[pos] == '-')
        forged += text.substr(pos + 1);
    else
        forged += "-" + text.substr(pos);
    std::string bad_path = temp_path("forged.txt");
    std::ofstream(bad_path) << forged;
    RunResult rep = run_cli("replay " + bad_path);
    CHECK(rep.exit_code == 3);

    std::string garbage_path = temp_path("garbage.txt");
    std::ofstream(garbage_path) << "this is not a trace\n";
    CHECK(run_cli("replay " + garbage_path).exit_code == 2);
    CHECK(run_cli("replay /no/such/file").exit_code == 2);

    std::remove(path.c_str());
    std::remove(bad_path.c_str());
    std::remove(garbage_path.c_str());
}

TEST_CASE("verification sweeps succeed") {
    CHECK(run_cli("verify parabolicity --max-rank 2").exit_code == 0);
    CHECK(run_cli("verify commutation --max-rank 4").exit_code == 0);
    CHECK(run_cli("verify dims --max-rank 4").exit_code == 0);
    CHECK(run_cli("verify averaging --max-rank 3 --trials 3 --seed 5").exit_code == 0);
    CHECK(run_cli("verify scaling --trials 40 --seed 5").exit_code == 0);
    CHECK(run_cli("verify nonsense").exit_code == 2);
}

TEST_CASE("dims command reports tables and hypothesis clauses") {
    RunResult r = run_cli("dims A3 --dim-m 2 --format json-lines");
    CHECK(r.exit_code == 0);
    bool clause_seen = false;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line)) {
        nlohmann::json j = nlohmann::json::parse(line);
        if (j["field"] == "clause") {
            clause_seen = true;
            CHECK(j["value"] == "1");
        }
        if (j["field"] == "r") CHECK(j["value"] == "3");
    }
    CHECK(clause_seen);

    RunResult known = run_cli("dims --known SL --param 4");
    CHECK(known.exit_code == 0);
    CHECK(known.out.find("computed") != std::string::npos);
    CHECK(run_cli("dims --known SL --param 2").exit_code == 2);
    CHECK(run_cli("dims --known SU --param 4").exit_code == 2);
    CHECK(run_cli("dims Q7").exit_code == 2);
    CHECK(run_cli("dims").exit_code == 2);
    CHECK(run_cli("dims A3* ").exit_code == 2); // all factors compact
}

TEST_CASE("output lands in the requested file") {
    std::string path = temp_path("roots.csv");
    RunResult r = run_cli("roots G2 2 --format csv --out " + path);
    CHECK(r.exit_code == 0);
    std::string content = slurp(path);
    CHECK(content.rfind("index,", 0) == 0);
    int lines = 0;
    for (char c : content) lines += c == '\n';
    CHECK(lines == 13); // header + 12 roots
    std::remove(path.c_str());
}
