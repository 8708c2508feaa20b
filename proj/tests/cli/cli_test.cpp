// End-to-end tests of the bugdesc command line binary as a child process.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/serialization.hpp"
#include "fixtures.hpp"

using namespace bugdesc;
namespace fs = std::filesystem;

namespace {

const std::string kCli = BUGDESC_CLI_PATH;
const std::string kFixtures = BUGDESC_FIXTURES_DIR;
const std::string kParity = kFixtures + "/parity-bug";

struct RunResult {
    int code;
    std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
    std::string command = kCli + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

/// Temporary directory removed when the guard dies.
struct TempDir {
    TempDir() {
        std::string pattern = (fs::temp_directory_path() / "bugdesc-cli-XXXXXX").string();
        REQUIRE(mkdtemp(pattern.data()) != nullptr);
        path = pattern;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string path;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    return lines;
}

} // namespace

TEST_CASE("help exits zero and names the subcommands") {
    RunResult r = run_cli("--help");
    CHECK(r.code == 0);
    for (const char* name : {"learn", "relabel", "explain", "bench", "verify", "export-dot"}) {
        CHECK(r.output.find(name) != std::string::npos);
    }
}

TEST_CASE("explain runs the pipeline and writes exact artifacts") {
    TempDir out;
    RunResult r = run_cli("explain --valid " + kParity + "/s.aut --failing " + kParity
                          + "/b.aut --kind fe -o " + out.path);
    CHECK(r.code == 0);
    CHECK(r.output.find("\"b_states\":6") != std::string::npos);
    CHECK(r.output.find("\"explanations\":{\"fe\":3}") != std::string::npos);

    Dfa fe = load_dfa(out.path + "/fe.aut");
    CHECK(fe.num_states() == 3);
    CHECK(!equivalent(fe, fixtures::parity_fe3()).has_value());
    ThreeDfa capture = load_three_dfa(out.path + "/capture.aut");
    CHECK(capture == fixtures::parity_capture());
    CHECK(slurp(out.path + "/fe.dot").find("digraph") != std::string::npos);
    CHECK(count_lines(slurp(out.path + "/transcript.jsonl")) > 0);
    CHECK(slurp(out.path + "/summary.json").find("\"seed\":42") != std::string::npos);
}

TEST_CASE("explain can start from a saved capture") {
    TempDir out;
    REQUIRE(run_cli("learn --valid " + kParity + "/s.aut --failing " + kParity + "/b.aut -o "
                    + out.path)
                .code
            == 0);
    TempDir second;
    RunResult r = run_cli("explain --capture " + out.path + "/capture.aut --kind edfe -o "
                          + second.path);
    CHECK(r.code == 0);
    Dfa edfe = load_dfa(second.path + "/edfe.aut");
    CHECK(edfe.num_states() == 4);
    CHECK(!equivalent(edfe, fixtures::parity_edfe4()).has_value());

    RunResult both = run_cli("explain --capture " + out.path + "/capture.aut --valid "
                             + kParity + "/s.aut --failing " + kParity + "/b.aut --kind fe -o "
                             + second.path);
    CHECK(both.code == 2);
}

TEST_CASE("usage and data errors exit 2") {
    TempDir out;
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("explain --valid " + kParity + "/s.aut --failing " + kParity
                  + "/b.aut --kind bogus -o " + out.path)
              .code
          == 2);
    CHECK(run_cli("explain --valid /missing.aut --failing " + kParity + "/b.aut --kind fe -o "
                  + out.path)
              .code
          == 2);
    CHECK(run_cli("learn --valid " + kParity + "/s.aut --failing " + kParity
                  + "/b.aut --test-model contains: -o " + out.path)
              .code
          == 2);
}

TEST_CASE("budget errors exit 3 and transport errors exit 4") {
    TempDir out;
    RunResult budget = run_cli("learn --valid " + kParity + "/s.aut --failing " + kParity
                               + "/b.aut --max-rounds 1 -o " + out.path);
    CHECK(budget.code == 3);
    RunResult transport = run_cli("learn --sut-command 'sleep 5' --alphabet 0,1 --timeout-ms 200 "
                                  "-o "
                                  + out.path);
    CHECK(transport.code == 4);
}

TEST_CASE("relabel transforms a capture file") {
    TempDir out;
    REQUIRE(run_cli("learn --valid " + kParity + "/s.aut --failing " + kParity + "/b.aut -o "
                    + out.path)
                .code
            == 0);
    RunResult r = run_cli("relabel " + out.path + "/capture.aut --kind edefe");
    CHECK(r.code == 0);
    ThreeDfa relabeled = parse_three_dfa(r.output);
    CHECK(relabeled.labels()
          == std::vector<Label>{Label::Dont, Label::Acc, Label::Rej, Label::Acc, Label::Dont,
                                Label::Rej});
    CHECK(run_cli("relabel " + out.path + "/capture.aut --kind bogus").code == 2);

    RunResult to_file = run_cli("relabel " + out.path + "/capture.aut --kind efe -o " + out.path
                                + "/efe-capture.aut");
    CHECK(to_file.code == 0);
    CHECK(load_three_dfa(out.path + "/efe-capture.aut") == fixtures::parity_capture());
}

TEST_CASE("verify classify prints the oracle classification") {
    RunResult r = run_cli("--max-len 2 verify classify --valid " + kParity + "/s.aut --failing "
                          + kParity + "/b.aut");
    CHECK(r.code == 0);
    CHECK(r.output
          == "Dont\n"
             "Dont 0\n"
             "Acc 0 0\n"
             "Dont 0 1\n"
             "Rej 1\n"
             "Acc 1 0\n"
             "Rej 1 1\n");
}

TEST_CASE("verify may-pass answers per prefix") {
    std::string files = " --valid " + kParity + "/s.aut --failing " + kParity + "/b.aut";
    CHECK(run_cli("verify may-pass" + files + " --word 1").output == "true\n");
    CHECK(run_cli("verify may-pass" + files + " --word '1 1'").output == "true\n");
    CHECK(run_cli("verify may-pass" + files + " --word 0").output == "false\n");
    CHECK(run_cli("verify may-pass" + files + " --word '0 1'").code == 2);
}

TEST_CASE("verify min-consistent and consistent agree with the pipeline") {
    TempDir out;
    REQUIRE(run_cli("explain --valid " + kParity + "/s.aut --failing " + kParity
                    + "/b.aut --kind fe -o " + out.path)
                .code
            == 0);
    RunResult min = run_cli("verify min-consistent --capture " + out.path
                            + "/capture.aut --max-states 3 -o " + out.path + "/min.aut");
    CHECK(min.code == 0);
    CHECK(min.output == "states: 3\n");
    CHECK(load_dfa(out.path + "/min.aut").num_states() == 3);
    CHECK(run_cli("verify min-consistent --capture " + out.path + "/capture.aut --max-states 2")
              .output
          == "none\n");

    RunResult good = run_cli("verify consistent --candidate " + out.path
                             + "/fe.aut --capture " + out.path + "/capture.aut --kind fe");
    CHECK(good.code == 0);
    CHECK(good.output == "consistent\n");
    RunResult bad = run_cli("verify consistent --candidate " + kParity + "/s.aut --capture "
                            + out.path + "/capture.aut --kind fe");
    CHECK(bad.code == 1);
    CHECK(bad.output.find("violation: ") == 0);
}

TEST_CASE("export-dot renders both automaton flavors") {
    TempDir out;
    REQUIRE(run_cli("learn --valid " + kParity + "/s.aut --failing " + kParity + "/b.aut -o "
                    + out.path)
                .code
            == 0);
    RunResult dfa_dot = run_cli("export-dot " + kParity + "/s.aut");
    CHECK(dfa_dot.code == 0);
    CHECK(dfa_dot.output.find("doublecircle") != std::string::npos);
    RunResult three_dot = run_cli("export-dot " + out.path + "/capture.aut");
    CHECK(three_dot.code == 0);
    CHECK(three_dot.output.find("Dont") != std::string::npos);
    CHECK(run_cli("export-dot /missing.aut").code == 2);
}

TEST_CASE("serve answers the line protocol well enough to be learned from") {
    TempDir out;
    std::string serve = kCli + " serve --valid " + kParity + "/s.aut --failing " + kParity
                        + "/b.aut";
    RunResult r = run_cli("learn --sut-command '" + serve + "' --alphabet 0,1 -o " + out.path);
    CHECK(r.code == 0);
    CHECK(load_three_dfa(out.path + "/capture.aut") == fixtures::parity_capture());
}

TEST_CASE("bench writes a report row per fixture") {
    TempDir out;
    RunResult r = run_cli("bench --setup unr --fixtures " + kFixtures + " -o " + out.path);
    CHECK(r.code == 0);
    std::string report = slurp(out.path + "/report.jsonl");
    CHECK(count_lines(report) == 1);
    CHECK(report.find("\"fixture\":\"parity-bug\"") != std::string::npos);
    CHECK(report.find("\"explanations\":{\"fe\":3,\"b\":6}") != std::string::npos);
    CHECK(report.find("\"three_dfa_states\":6") != std::string::npos);
    std::string table = slurp(out.path + "/report.txt");
    CHECK(table.find("fixture") != std::string::npos);
    CHECK(r.output.find("parity-bug") != std::string::npos);
    CHECK(load_dfa(out.path + "/parity-bug/fe.aut").num_states() == 3);
}

TEST_CASE("bench adr wraps the system and efe beats fe") {
    TempDir out;
    RunResult r = run_cli("bench --setup adr --fixtures " + kFixtures + " -o " + out.path);
    CHECK(r.code == 0);
    std::string report = slurp(out.path + "/report.jsonl");
    CHECK(report.find("\"efe\":3") != std::string::npos);
    CHECK(report.find("\"fe\":6") != std::string::npos);
}

TEST_CASE("bench tolerates an empty fixture directory and bad setups") {
    TempDir fixtures_dir;
    TempDir out;
    RunResult r = run_cli("bench --setup unr --fixtures " + fixtures_dir.path + " -o " + out.path);
    CHECK(r.code == 0);
    CHECK(count_lines(slurp(out.path + "/report.jsonl")) == 0);
    CHECK(run_cli("bench --setup bogus --fixtures " + fixtures_dir.path + " -o " + out.path).code
          == 2);
    CHECK(run_cli("bench --setup unr --fixtures " + fixtures_dir.path + "/nothing -o " + out.path)
              .code
          == 2);
}

TEST_CASE("bench keeps going when one fixture is broken") {
    TempDir fixtures_dir;
    TempDir out;
    fs::create_directories(fs::path(fixtures_dir.path) / "broken");
    fs::copy(kParity, fs::path(fixtures_dir.path) / "parity-bug");
    RunResult r = run_cli("bench --setup unr --fixtures " + fixtures_dir.path + " -o " + out.path);
    CHECK(r.code == 1);
    std::string report = slurp(out.path + "/report.jsonl");
    CHECK(count_lines(report) == 2);
    CHECK(report.find("\"error\"") != std::string::npos);
    CHECK(report.find("\"fe\":3") != std::string::npos);
}

TEST_CASE("config file sets defaults and flags override it") {
    TempDir out;
    std::ofstream(out.path + "/run.cfg") << "seed=7\n";
    RunResult from_config = run_cli("--config " + out.path + "/run.cfg learn --valid " + kParity
                                    + "/s.aut --failing " + kParity + "/b.aut -o " + out.path
                                    + "/a");
    CHECK(from_config.code == 0);
    CHECK(from_config.output.find("\"seed\":7") != std::string::npos);
    RunResult overridden = run_cli("--config " + out.path + "/run.cfg --seed 9 learn --valid "
                                   + kParity + "/s.aut --failing " + kParity + "/b.aut -o "
                                   + out.path + "/b");
    CHECK(overridden.code == 0);
    CHECK(overridden.output.find("\"seed\":9") != std::string::npos);
}

TEST_CASE("learn reuses a persistent repo instead of re-executing") {
    TempDir out;
    std::string repo = out.path + "/repo.txt";
    RunResult first = run_cli("learn --valid " + kParity + "/s.aut --failing " + kParity
                              + "/b.aut --repo " + repo + " -o " + out.path + "/a");
    CHECK(first.code == 0);
    CHECK(fs::exists(repo));
    RunResult second = run_cli("learn --valid " + kParity + "/s.aut --failing " + kParity
                               + "/b.aut --repo " + repo + " -o " + out.path + "/b");
    CHECK(second.code == 0);
    CHECK(second.output.find("\"sut_executions\":0") != std::string::npos);
    CHECK(load_three_dfa(out.path + "/b/capture.aut") == fixtures::parity_capture());
}
