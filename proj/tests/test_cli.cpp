#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>

#include <json.hpp>

#include "perron/rational.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI binary, capturing stdout (stderr goes to a pipe we discard).
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PERRON_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string write_config(const std::string& name, const std::string& body) {
    const auto path =
        std::filesystem::temp_directory_path() / ("perron_cli_test_" + name + ".json");
    std::ofstream(path) << body;
    return path.string();
}

std::string strip_timestamp(std::string text) {
    static const std::regex ts("\"timestamp\": \"[^\"]*\"");
    return std::regex_replace(text, ts, "\"timestamp\": \"\"");
}

}  // namespace

TEST_CASE("cli: paper-example emits the worked constants") {
    const RunResult res = run_cli("paper-example");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["L"] == "290");
    CHECK(perron::parse_rat(j["a"].get<std::string>()) == perron::make_rat(3, 4));
    CHECK(perron::parse_rat(j["b"].get<std::string>()) == perron::make_rat(30, 4));
    CHECK(perron::parse_rat(j["c"].get<std::string>()) == perron::make_rat(1, 30));
    CHECK(std::abs(std::stod(j["numerator"].get<std::string>()) - 3132003.46) < 2.0);
    CHECK(std::abs(std::stod(j["sqrt_d_numerator"].get<std::string>()) - 5424789.0) < 2.0);
    CHECK(std::abs(std::stod(j["corollary_error"].get<std::string>()) - 93960104.0) < 2.0);
}

TEST_CASE("cli: analyze on a constant map reports L = 0") {
    const std::string cfg = write_config(
        "const", R"({"kind":"affine","matrix":[[0,0],[0,0]],"offset":[1,1]})");
    const RunResult res = run_cli("analyze --map " + cfg + " --k 5");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["L"] == "0");
    CHECK(j["c"] == "1/2");
    CHECK(j["exhaustive"] == true);
}

TEST_CASE("cli: exit codes separate usage errors from certification failures") {
    // schema violation: c > 1/d
    const std::string bad = write_config(
        "bad", R"({"kind":"affine","matrix":[[1,0],[0,1]],"offset":[0,0]})");
    CHECK(run_cli("analyze --map " + bad + " --k 5 --c 2/3").exit_code == 1);

    // malformed JSON
    const std::string broken = write_config("broken", "{not json");
    CHECK(run_cli("analyze --map " + broken + " --k 5").exit_code == 1);

    // identity map on the full sphere: positivity certification fails
    const RunResult cert = run_cli("analyze --map " + bad + " --k 5");
    CHECK(cert.exit_code == 2);
    const json j = json::parse(cert.out);
    CHECK(j["error"] == "certification_failure");
    CHECK(j["kind"] == "zero_positivity");
    CHECK(j.contains("witness_x"));

    // missing required flag
    CHECK(run_cli("analyze --k 5").exit_code == 1);
    // unknown subcommand
    CHECK(run_cli("frobnicate").exit_code == 1);
}

TEST_CASE("cli: find reports the eigen-direction point and exits 0") {
    const std::string cfg = write_config(
        "eigen", R"({"kind":"affine","matrix":[[2,1],[1,2]],"offset":[0,0]})");
    const RunResult res = run_cli("find --map " + cfg + " --k 4 --c 1/4 --verify-corollary");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["y_k"] == json::array({2, 2}));
    CHECK(j["residual"] == "0");
    CHECK(j["theorem_pass"] == true);
    CHECK(j["search_mode"] == "exhaustive");
    CHECK(j["lower_pass"] == true);
    CHECK(j["upper_pass"] == true);
}

TEST_CASE("cli: heuristic mode never sets theorem_pass") {
    const std::string cfg = write_config(
        "heur", R"({"kind":"affine","matrix":[[2,1],[1,2]],"offset":[0,0]})");
    const RunResult res =
        run_cli("find --map " + cfg + " --k 4 --c 1/4 --heuristic --start 1,3");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["search_mode"] == "heuristic");
    CHECK(j["theorem_pass"].is_null());
    CHECK(j["y_k"] == json::array({2, 2}));
    CHECK(j["trajectory"].size() == 2);
}

TEST_CASE("cli: concavity refutes the square map") {
    const std::string cfg = write_config(
        "square",
        R"({"kind":"custom_table","dimension":1,"entries":[
            {"x":[0],"y":[0]},{"x":[1],"y":[1]},{"x":[2],"y":[4]},
            {"x":[3],"y":[9]},{"x":[4],"y":[16]}]})");
    const RunResult res = run_cli("concavity --map " + cfg + " --window 4 --parts 3");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["pass"] == false);
    CHECK(j["counterexample"]["m"] == 2);

    const RunResult sc = run_cli("concavity --map " + cfg + " --window 4 --max-scale 2");
    const json js = json::parse(sc.out);
    CHECK(js["scalability"]["pass"] == false);
    CHECK(js["scalability"]["counterexample"]["m"] == 2);
}

TEST_CASE("cli: simulate emits the hand-checked interference trajectory") {
    const std::string cfg = write_config(
        "intf",
        R"({"model":"interference","h":[[2,1]],"sigma":[2],"gamma":[2,2],
            "assignment":[1,1],"mode":"integral"})");
    const RunResult res = run_cli("simulate --map " + cfg + " --x0 3,1 --steps 3");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out == "step,x1,x2,l1norm,event\n"
                     "0,3,1,4,\n"
                     "1,3,16,19,\n"
                     "2,18,16,34,\n"
                     "3,18,76,94,\n");
}

TEST_CASE("cli: enumerate counts and rows") {
    CHECK(run_cli("enumerate --d 3 --k 7 --count-only").out == "36\n");
    const RunResult res = run_cli("enumerate --d 2 --k 3");
    CHECK(res.out == "0,3\n1,2\n2,1\n3,0\n");
    // thread count does not change the output
    CHECK(run_cli("enumerate --d 3 --k 9 --threads 8").out ==
          run_cli("enumerate --d 3 --k 9 --threads 1").out);
}

TEST_CASE("cli: identical manifests give byte-identical output modulo timestamp") {
    const std::string cfg = write_config(
        "det", R"({"kind":"affine","matrix":[[2,1],[1,2]],"offset":[1,1]})");
    const std::string a = run_cli("analyze --map " + cfg + " --k 6 --c 1/6").out;
    const std::string b = run_cli("analyze --map " + cfg + " --k 6 --c 1/6").out;
    CHECK(strip_timestamp(a) == strip_timestamp(b));
    // a different thread count must not change the certificate either
    const std::string c = run_cli("analyze --map " + cfg + " --k 6 --c 1/6 --threads 4").out;
    json ja = json::parse(a), jc = json::parse(c);
    ja.erase("manifest");
    jc.erase("manifest");
    CHECK(ja == jc);
}

TEST_CASE("cli: rationals round-trip through the emitted JSON") {
    const std::string cfg = write_config(
        "round", R"({"kind":"affine","matrix":[[2,1],[1,2]],"offset":[1,1]})");
    const json j = json::parse(run_cli("analyze --map " + cfg + " --k 4").out);
    const perron::Rat c = perron::parse_rat(j["c"].get<std::string>());
    CHECK(c == perron::make_rat(5, 14));
    CHECK(perron::rat_to_string(c) == j["c"].get<std::string>());
}

TEST_CASE("cli: sampling mode is labeled non-exhaustive") {
    const std::string cfg = write_config(
        "sampled", R"({"kind":"affine","matrix":[[2,1],[1,2]],"offset":[1,1]})");
    const RunResult res =
        run_cli("analyze --map " + cfg + " --k 20 --pair-cap 10 --sample --sample-pairs 50");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["exhaustive"] == false);
    // without sampling the same run hits the cap and exits 2
    CHECK(run_cli("analyze --map " + cfg + " --k 20 --pair-cap 10").exit_code == 2);
}

TEST_CASE("cli: aimd config parses and simulate records event times") {
    const std::string cfg = write_config("aimd", R"({"model":"aimd","capacity":10,
        "A":[[{"slope":"0","intercept":"0"}],[{"slope":"0","intercept":"0"}]],
        "B":[[{"slope":"1","intercept":"0"}],[{"slope":"1","intercept":"0"}]]})");
    const RunResult res = run_cli("simulate --map " + cfg + " --x0 5,5 --steps 4");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out == "step,x1,x2,l1norm,event,T\n"
                     "0,5,5,10,fixed_point,\n");
}

TEST_CASE("cli: sis config schema parses and certifies") {
    const std::string cfg = write_config("sis", R"({"model":"sis","M":[10,10],
        "delta_prime":["1/2","1/2"],"B":[["1/2","1/2"],["1/2","1/2"]]})");
    const RunResult res = run_cli("analyze --map " + cfg + " --k 8");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["exhaustive"] == true);
    CHECK(j.contains("L"));
    CHECK(j.contains("a"));
    CHECK(j.contains("b"));
    CHECK(j.contains("c"));
    CHECK(j["c_witness"].contains("x"));
}

TEST_CASE("cli: PERRON_LATTICE_THREADS is the --threads fallback") {
    const std::string base = run_cli("enumerate --d 3 --k 8").out;
    const std::string cmd = std::string("PERRON_LATTICE_THREADS=8 ") + PERRON_CLI_PATH +
                            " enumerate --d 3 --k 8 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    pclose(pipe);
    CHECK(out == base);
}

TEST_CASE("cli: find certifies and searches a sis model end to end") {
    const std::string cfg = write_config("sisfind", R"({"model":"sis","M":[20,20],
        "delta_prime":["1/2","3/4"],"B":[["1/2","1/2"],["1/2","1/2"]]})");
    const RunResult res = run_cli("find --map " + cfg + " --k 8 --verify-corollary");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["theorem_pass"] == true);
    CHECK(j["search_mode"] == "exhaustive");
}
