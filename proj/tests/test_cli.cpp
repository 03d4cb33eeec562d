#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "bnsl/text_format.hpp"
#include "test_support.hpp"

// Integration tests that drive the installed binary end to end.

namespace fs = std::filesystem;
using namespace bnsl;
using namespace bnsl::testing;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "cli_output.txt";
    const std::string command =
        std::string(BNSL_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    result.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "bnsl_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cli learns the 4-row example dataset") {
    TempDir dir;
    write_file_atomic(dir.path / "data.csv", write_dataset_csv(four_row_dataset()));

    const fs::path out = dir.path / "net.txt";
    const RunResult r = run_cli("learn --data " + (dir.path / "data.csv").string() +
                                    " --penalty bic --mode exhaustive --out " + out.string(),
                                dir.path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("score -9") != std::string::npos);

    const BayesNet learned = parse_network(read_file(out));
    CHECK(learned.structure().edge_count() == 1);  // complete 2-node structure
}

TEST_CASE("cli bound calculators print hand values") {
    TempDir dir;
    const RunResult ideal = run_cli("bounds ideal --g 2 --eps 0.1 --penalty bic", dir.path);
    CHECK(ideal.exit_code == 0);
    CHECK(ideal.output == "59\n");

    const RunResult finv = run_cli("bounds finv --y 2", dir.path);
    CHECK(finv.exit_code == 0);
    CHECK(finv.output == "4\n");

    const RunResult dags = run_cli("enumerate-dags --n 4", dir.path);
    CHECK(dags.exit_code == 0);
    CHECK(dags.output == "543\n");

    const RunResult tri = run_cli("bounds triangle --a 1e-3 --b 1e-4 --c 4 --m 0.2", dir.path);
    CHECK(tri.exit_code == 0);
    CHECK(tri.output == "invalid\n");
}

TEST_CASE("cli exit codes distinguish input and capacity errors") {
    TempDir dir;
    const RunResult missing =
        run_cli("sample --net missing.txt --n 5 --seed 1 --out " +
                    (dir.path / "x.csv").string(),
                dir.path);
    CHECK(missing.exit_code == 1);
    CHECK(missing.output.find("missing.txt") != std::string::npos);

    const RunResult capacity = run_cli("enumerate-dags --n 7", dir.path);
    CHECK(capacity.exit_code == 2);

    const RunResult unknown_verb = run_cli("frobnicate", dir.path);
    CHECK(unknown_verb.exit_code == 1);

    const RunResult bad_penalty =
        run_cli("bounds ideal --g 2 --eps 0.1 --penalty const:zero", dir.path);
    CHECK(bad_penalty.exit_code == 1);
    CHECK(bad_penalty.output.find("const:zero") != std::string::npos);
}

TEST_CASE("cli stochastic verbs demand a seed and reproduce byte for byte") {
    TempDir dir;
    write_file_atomic(dir.path / "net.txt", write_network(chain3_target(), "chain3"));

    const RunResult no_seed = run_cli("sample --net " + (dir.path / "net.txt").string() +
                                          " --n 10 --out " + (dir.path / "d.csv").string(),
                                      dir.path);
    CHECK(no_seed.exit_code == 1);
    CHECK(no_seed.output.find("--seed") != std::string::npos);

    const std::string sample_cmd = "sample --net " + (dir.path / "net.txt").string() +
                                   " --n 200 --seed 42 --out ";
    CHECK(run_cli(sample_cmd + (dir.path / "a.csv").string(), dir.path).exit_code == 0);
    CHECK(run_cli(sample_cmd + (dir.path / "b.csv").string(), dir.path).exit_code == 0);
    CHECK(read_file(dir.path / "a.csv") == read_file(dir.path / "b.csv"));

    const std::string curve_cmd = "curve --net " + (dir.path / "net.txt").string() +
                                  " --penalty bic --n-grid 64,128 --trials 2 --seed 3 "
                                  "--mode exhaustive --out ";
    CHECK(run_cli(curve_cmd + (dir.path / "c1.csv").string(), dir.path).exit_code == 0);
    CHECK(run_cli(curve_cmd + (dir.path / "c2.csv").string(), dir.path).exit_code == 0);
    CHECK(read_file(dir.path / "c1.csv") == read_file(dir.path / "c2.csv"));
}

TEST_CASE("cli sample then learn round trip recovers the chain class") {
    TempDir dir;
    write_file_atomic(dir.path / "net.txt", write_network(chain3_target(), "chain3"));
    const RunResult sampled = run_cli("sample --net " + (dir.path / "net.txt").string() +
                                          " --n 4096 --seed 11 --out " +
                                          (dir.path / "data.csv").string(),
                                      dir.path);
    REQUIRE(sampled.exit_code == 0);

    const RunResult learned = run_cli("learn --data " + (dir.path / "data.csv").string() +
                                          " --penalty bic --mode exhaustive --out " +
                                          (dir.path / "learned.txt").string() + " --report " +
                                          (dir.path / "report.csv").string(),
                                      dir.path);
    REQUIRE(learned.exit_code == 0);

    const BayesNet net = parse_network(read_file(dir.path / "learned.txt"));
    CHECK(net.structure().param_count() == chain3_target().structure().param_count());

    const std::string report = read_file(dir.path / "report.csv");
    CHECK(report.substr(0, report.find('\n')) == "structure,ll,psi,params,score");
}
