#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(MSYDS_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buffer;
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe))
        output.append(buffer.data(), got);
    int status = pclose(pipe);
    int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {exit_code, output};
}

std::filesystem::path work_dir() {
    static std::filesystem::path dir = [] {
        auto path = std::filesystem::temp_directory_path() / "msyds-cli-tests";
        std::filesystem::create_directories(path);
        return path;
    }();
    return dir;
}

std::string make_file(const std::string& name, const std::string& content) {
    auto path = work_dir() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

std::string construct(const std::string& kind, unsigned param, const std::string& name) {
    auto path = (work_dir() / name).string();
    RunResult r = run_cli("construct " + kind + " " + std::to_string(param) + " -o " + path);
    REQUIRE(r.exit_code == 0);
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("step walks the unary cycle") {
    std::string sys = construct("unary-cycle", 3, "cycle3.msyds.json");
    RunResult r = run_cli("step -s " + sys + " -c 000 -t 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "100\n110\n111\n000\n");
}

TEST_CASE("trajectory text and json output") {
    std::string sys = construct("counter", 4, "counter4.msyds.json");
    RunResult r = run_cli("trajectory -s " + sys + " -c 0000");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "tail_length: 0\ncycle_length: 16\n");

    RunResult js = run_cli("--format json trajectory -s " + sys + " -c @5 --hash-set");
    CHECK(js.exit_code == 0);
    CHECK(js.output.find("\"cycle_length\": 16") != std::string::npos);

    RunResult budget = run_cli("trajectory -s " + sys + " -c 0000 --max-steps 3");
    CHECK(budget.exit_code == 3);
    CHECK(budget.output.find("inconclusive") != std::string::npos);
}

TEST_CASE("phase-space summary and limit refusal") {
    std::string sys = construct("unary-cycle", 4, "cycle4.msyds.json");
    RunResult r = run_cli("phase-space -s " + sys);
    CHECK(r.exit_code == 0);
    CHECK(r.output == "cycles: 1\ncycle lengths: 5\nfixed points:\nmax transient: 1\n");

    std::string dot_path = (work_dir() / "cycle4.dot").string();
    RunResult with_dot = run_cli("phase-space -s " + sys + " --dot " + dot_path);
    CHECK(with_dot.exit_code == 0);
    CHECK(slurp(dot_path).find("digraph") != std::string::npos);

    std::string big = construct("counter", 10, "counter10.msyds.json");
    RunResult refused = run_cli("--limit-bits 8 phase-space -s " + big);
    CHECK(refused.exit_code == 3);
    CHECK(refused.output.find("refused") != std::string::npos);
}

TEST_CASE("equiv exit codes and witness output") {
    std::string h_or = construct("hierarchy-or", 4, "h4.msyds.json");
    std::string h_and = construct("hierarchy-and", 4, "h4and.msyds.json");
    RunResult equal = run_cli("equiv --s0 " + h_or + " --s1 " + h_and);
    CHECK(equal.exit_code == 0);
    CHECK(equal.output.find("equivalent") == 0);

    std::string merged_path = (work_dir() / "h4merged.msyds.json").string();
    RunResult merge = run_cli("merge-layers -s " + h_or + " --i 0 --j 1 -o " + merged_path);
    CHECK(merge.exit_code == 0);
    RunResult neq = run_cli("equiv --s0 " + h_or + " --s1 " + merged_path + " -a brute");
    CHECK(neq.exit_code == 1);
    CHECK(neq.output.find("witness: 01100\n") != std::string::npos);
    CHECK(neq.output.find("node: a\n") != std::string::npos);

    RunResult json = run_cli("--format json equiv --s0 " + h_or + " --s1 " + merged_path);
    CHECK(json.exit_code == 1);
    CHECK(json.output.find("\"inequivalent\"") != std::string::npos);
}

TEST_CASE("construct round trips through parse") {
    for (const char* spec : {"unary-cycle 5", "primorial 3", "counter 5", "hierarchy-or 3",
                             "hierarchy-and 3"}) {
        RunResult r = run_cli(std::string("construct ") + spec);
        CHECK(r.exit_code == 0);
        std::string path = make_file("roundtrip.msyds.json", r.output);
        RunResult diff = run_cli("diff --s0 " + path + " --s1 " + path);
        CHECK(diff.exit_code == 0);
        CHECK(diff.output == "identical\n");
    }
    RunResult bad = run_cli("construct unary-cycle 0");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("reduce-sat emits the pair and role map") {
    std::string cnf = make_file("f.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    std::string prefix = (work_dir() / "f").string();
    RunResult r = run_cli("reduce-sat -f " + cnf + " -o " + prefix);
    CHECK(r.exit_code == 0);
    std::string roles = slurp(prefix + ".roles.json");
    CHECK(roles.find("\"y1\": \"x1\"") != std::string::npos);
    CHECK(roles.find("\"z2\": \"not-x2\"") != std::string::npos);
    CHECK(roles.find("\"w\": \"center\"") != std::string::npos);

    RunResult diff = run_cli("diff --s0 " + prefix + ".s.msyds.json --s1 " + prefix +
                             ".sprime.msyds.json");
    CHECK(diff.exit_code == 0);
    // the pair differs in exactly one scalar
    CHECK(std::count(diff.output.begin(), diff.output.end(), '\n') == 1);

    RunResult verdict = run_cli("equiv --s0 " + prefix + ".s.msyds.json --s1 " + prefix +
                                ".sprime.msyds.json");
    CHECK(verdict.exit_code == 1); // the formula is satisfiable
}

TEST_CASE("flatten and lift preserve equivalence through files") {
    std::string sys = construct("unary-cycle", 4, "flat-src.msyds.json");
    std::string flat_path = (work_dir() / "flat.msyds.json").string();
    RunResult flat = run_cli("flatten -s " + sys + " -o " + flat_path);
    CHECK(flat.exit_code == 0);
    RunResult check = run_cli("equiv --s0 " + sys + " --s1 " + flat_path + " -a brute");
    CHECK(check.exit_code == 0);

    std::string lifted_path = (work_dir() / "lifted.msyds.json").string();
    RunResult lifted = run_cli("lift -s " + flat_path + " --k 3 -o " + lifted_path);
    CHECK(lifted.exit_code == 0);
    RunResult check2 = run_cli("equiv --s0 " + sys + " --s1 " + lifted_path + " -a brute");
    CHECK(check2.exit_code == 0);

    RunResult bad = run_cli("lift -s " + sys + " --k 3");
    CHECK(bad.exit_code == 2); // input has two layers
}

TEST_CASE("usage and parse errors") {
    RunResult nocmd = run_cli("");
    CHECK(nocmd.exit_code == 2);
    RunResult badfile = run_cli("step -s /nonexistent.msyds.json -c 0");
    CHECK(badfile.exit_code == 2);
    std::string garbage = make_file("garbage.msyds.json", "{\"nodes\": [\"a\"]}");
    RunResult badparse = run_cli("phase-space -s " + garbage);
    CHECK(badparse.exit_code == 2);
    RunResult badalg = run_cli("equiv --s0 x --s1 y -a quantum");
    CHECK(badalg.exit_code == 2);
}
