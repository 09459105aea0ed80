// End-to-end tests against the built binary (path injected as CLI_BIN).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"

namespace {

struct CmdResult {
    int exit_code;
    std::string output;
};

CmdResult run_cli(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += CLI_BIN;
    cmd += " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        output.append(buffer, got);
    }
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char ch : text) {
        if (ch == '\n') ++lines;
    }
    return lines;
}

// pulls the token following "key": out of a flat JSON object
std::string json_field(const std::string& json, const std::string& key) {
    const std::string needle = "\"" + key + "\":";
    const std::size_t pos = json.find(needle);
    REQUIRE(pos != std::string::npos);
    std::size_t begin = pos + needle.size();
    std::size_t end = begin;
    while (end < json.size() && json[end] != ',' && json[end] != '}') ++end;
    return json.substr(begin, end - begin);
}

}  // namespace

TEST_CASE("solve prints the expected N") {
    const CmdResult result = run_cli("solve --c 0.7 --phi 0.1 --se 0.02551");
    CHECK(result.exit_code == 0);
    CHECK(result.output == "1154\n");
}

TEST_CASE("solve --raw exposes the unrounded root") {
    const CmdResult result = run_cli("solve --c 0.7 --phi 0.1 --se 0.02551 --raw");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("n_raw=1153.030607140307") != std::string::npos);
    CHECK(result.output.find("n=1154") != std::string::npos);
}

TEST_CASE("solve --method all tabulates every route") {
    const CmdResult result = run_cli("solve --c 0.7 --phi 0.1 --se 0.02551 --method all");
    CHECK(result.exit_code == 0);
    for (const char* id : {"mathematica", "maxima", "sonar", "gpt41", "grok3beta", "gemini25pro",
                           "mathgpt", "iterative"}) {
        CHECK(result.output.find(id) != std::string::npos);
    }
    CHECK(count_lines(result.output) == 9);  // header + 8 methods
}

TEST_CASE("solve accepts a CI width instead of an SE") {
    const CmdResult result = run_cli("solve --c 0.8 --phi 0.018 --ci-width 0.1 --level 0.95");
    CHECK(result.exit_code == 0);
    CHECK(result.output == "4252\n");
}

TEST_CASE("solve JSON output round-trips to the same answer") {
    const CmdResult first = run_cli("solve --c 0.7 --phi 0.1 --se 0.02551 --format json");
    CHECK(first.exit_code == 0);
    CHECK(json_field(first.output, "n") == "1154");

    const std::string args = "solve --c " + json_field(first.output, "c") + " --phi " +
                             json_field(first.output, "phi") + " --se " +
                             json_field(first.output, "se") + " --format json";
    const CmdResult second = run_cli(args);
    CHECK(second.exit_code == 0);
    CHECK(second.output == first.output);
}

TEST_CASE("solve rejects out-of-domain values with exit 2") {
    const CmdResult result = run_cli("solve --c 1.2 --phi 0.1 --se 0.02", true);
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("c") != std::string::npos);
}

TEST_CASE("solve requires exactly one of --se and --ci-width") {
    CHECK(run_cli("solve --c 0.7 --phi 0.1").exit_code == 2);
    CHECK(run_cli("solve --c 0.7 --phi 0.1 --se 0.02 --ci-width 0.1").exit_code == 2);
}

TEST_CASE("solve warns when the model has no discrimination") {
    const CmdResult result = run_cli("solve --c 0.45 --phi 0.1 --se 0.02551", true);
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("warning") != std::string::npos);
}

TEST_CASE("solve warns on implausible sample sizes") {
    const CmdResult result = run_cli("solve --c 0.7 --phi 0.1 --se 0.0001 --method mathgpt", true);
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("warning") != std::string::npos);
    CHECK(result.output.find("1e7") != std::string::npos);
}

TEST_CASE("unknown methods and subcommands exit 2") {
    CHECK(run_cli("solve --c 0.7 --phi 0.1 --se 0.02 --method newton").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("an unreachable SE target under --method iterative exits 1") {
    const CmdResult result =
        run_cli("solve --c 0.7 --phi 0.1 --se 1e-9 --method iterative --max-n 10000", true);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("ceiling") != std::string::npos);
}

TEST_CASE("verify passes the reference table") {
    const CmdResult result = run_cli("verify");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("5/5") != std::string::npos);
    CHECK(result.output.find("PASS") != std::string::npos);
}

TEST_CASE("verify --grid covers the 450-point grid") {
    const CmdResult result = run_cli("verify --grid");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("450") != std::string::npos);
}

TEST_CASE("verify --grid --fast-oracle agrees with the scan-based grid") {
    const CmdResult fast = run_cli("verify --grid --fast-oracle --format json");
    const CmdResult scan = run_cli("verify --grid --format json");
    CHECK(fast.exit_code == 0);
    CHECK(fast.output == scan.output);
}

TEST_CASE("solve --method closed tabulates the seven closed forms") {
    const CmdResult result = run_cli("solve --c 0.7 --phi 0.1 --se 0.02551 --method closed");
    CHECK(result.exit_code == 0);
    CHECK(count_lines(result.output) == 8);  // header + 7 methods
    CHECK(result.output.find("iterative") == std::string::npos);
}

TEST_CASE("sweep --format json emits row objects") {
    const CmdResult result = run_cli(
        "sweep --c-range 0.6:0.8:0.1 --phi-range 0.1:0.3:0.1 --se 0.02551 --format json");
    CHECK(result.exit_code == 0);
    CHECK(result.output.front() == '[');
    CHECK(result.output.find("\"method\":\"mathgpt\"") != std::string::npos);
    CHECK(result.output.find("\"n_raw\":") != std::string::npos);
}

TEST_CASE("verify --format json reports a machine-readable pass") {
    const CmdResult result = run_cli("verify --grid --format json");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("\"pass\": true") != std::string::npos);
    CHECK(result.output.find("\"all_within_one\": true") != std::string::npos);
}

TEST_CASE("sweep emits one CSV row per point with the default method") {
    const CmdResult result =
        run_cli("sweep --c-range 0.55:0.95:0.05 --phi-range 0.01:0.5:0.01 --se 0.02551");
    CHECK(result.exit_code == 0);
    CHECK(count_lines(result.output) == 451);
    CHECK(result.output.rfind("method,c,phi,se,n_raw,n\n", 0) == 0);
}

TEST_CASE("sweep with all methods emits the full cross product") {
    const CmdResult result = run_cli(
        "sweep --c-range 0.55:0.95:0.05 --phi-range 0.01:0.5:0.01 --se 0.02551 --methods all");
    CHECK(result.exit_code == 0);
    CHECK(count_lines(result.output) == 1 + 450 * 8);
}

TEST_CASE("serial and parallel sweeps emit identical bytes") {
    const std::string args =
        "sweep --c-range 0.6:0.8:0.1 --phi-range 0.1:0.3:0.1 --se 0.02551 --methods all";
    const CmdResult parallel = run_cli(args);
    const CmdResult serial = run_cli(args + " --serial");
    CHECK(parallel.exit_code == 0);
    CHECK(serial.exit_code == 0);
    CHECK(parallel.output == serial.output);
}

TEST_CASE("malformed ranges exit 2") {
    CHECK(run_cli("sweep --c-range 0.55-0.95 --phi-range 0.01:0.5:0.01 --se 0.02551").exit_code ==
          2);
    CHECK(run_cli("sweep --c-range 0.55:0.95:0.05 --phi-range nope --se 0.02551").exit_code == 2);
    CHECK(run_cli("curves --c 0.6 --phi-list 0.1 --se-range 0.01:0.05:many").exit_code == 2);
}

TEST_CASE("curves emits the documented dataset") {
    const CmdResult result =
        run_cli("curves --c 0.6 --phi-list 0.1,0.2,0.3,0.4,0.5 --se-range 0.01:0.05:100");
    CHECK(result.exit_code == 0);
    CHECK(count_lines(result.output) == 1 + 7 * 5 * 100);
    CHECK(result.output.rfind("method,c,phi,se,n_raw,n\n", 0) == 0);
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "/tmp/cstatsize_cli_test_out.csv";
    std::remove(path.c_str());
    const std::string args =
        "sweep --c-range 0.6:0.8:0.1 --phi-range 0.1:0.3:0.1 --se 0.02551";
    const CmdResult to_stdout = run_cli(args);
    const CmdResult to_file = run_cli(args + " --out " + path);
    CHECK(to_file.exit_code == 0);
    CHECK(to_file.output.empty());

    FILE* file = std::fopen(path.c_str(), "rb");
    REQUIRE(file != nullptr);
    std::string contents;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof(buffer), file)) > 0) {
        contents.append(buffer, got);
    }
    std::fclose(file);
    std::remove(path.c_str());
    CHECK(contents == to_stdout.output);
}

TEST_CASE("bench emits samples as CSV and a JSON summary") {
    const CmdResult csv = run_cli("bench --methods mathgpt --reps 100 --warmup 10");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.rfind("method,sample_ns\n", 0) == 0);
    CHECK(count_lines(csv.output) == 101);

    const CmdResult json = run_cli("bench --methods mathgpt --reps 100 --warmup 10 --format json");
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("\"median_ns\"") != std::string::npos);
    CHECK(json.output.find("\"environment\"") != std::string::npos);
}

TEST_CASE("the environment variable sets the default format") {
    const CmdResult result =
        run_cli("solve --c 0.7 --phi 0.1 --se 0.02551", false, "CSTATSIZE_FORMAT=json");
    CHECK(result.exit_code == 0);
    CHECK(json_field(result.output, "n") == "1154");
}

TEST_CASE("an explicit format beats the environment variable") {
    const CmdResult result = run_cli("solve --c 0.7 --phi 0.1 --se 0.02551 --format human", false,
                                     "CSTATSIZE_FORMAT=json");
    CHECK(result.exit_code == 0);
    CHECK(result.output == "1154\n");
}
