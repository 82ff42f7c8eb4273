#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(DISTRANK_CLI_PATH) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("distrank_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("gen then test produces byte-identical json reports") {
    TempDir dir;
    const auto gen = run("gen --scenario circle --n 40 --seed 11 --out-x " +
                         dir.file("x.csv") + " --out-y " + dir.file("y.csv"));
    REQUIRE(gen.exit_code == 0);

    const std::string test_args = "test --x " + dir.file("x.csv") + " --y " +
                                  dir.file("y.csv") +
                                  " --perms 200 --seed 7 --format json";
    const auto first = run(test_args);
    const auto second = run(test_args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("\"p_value\"") != std::string::npos);
    CHECK(first.output.find("\"exceed\"") != std::string::npos);
    CHECK(first.output.find("\"seed\": 7") != std::string::npos);
    // circle dependence at N=40 rejects comfortably
    CHECK(first.output.find("\"rejected\": true") != std::string::npos);
}

TEST_CASE("text report carries the full field set") {
    TempDir dir;
    REQUIRE(run("gen --scenario parabola --n 30 --seed 3 --out-x " +
                dir.file("x.csv") + " --out-y " + dir.file("y.csv"))
                .exit_code == 0);
    const auto r = run("test --x " + dir.file("x.csv") + " --y " +
                       dir.file("y.csv") + " --perms 100 --seed 5 --stat lr");
    CHECK(r.exit_code == 0);
    for (const char* field : {"statistic  lr", "p-value", "exceed", "seed",
                              "elapsed", "metric     l2"})
        CHECK(r.output.find(field) != std::string::npos);
}

TEST_CASE("row count mismatch exits with the data-error code") {
    TempDir dir;
    write_file(dir.file("a.csv"), "1\n2\n3\n");
    write_file(dir.file("b.csv"), "1\n2\n");
    const auto r = run("test --x " + dir.file("a.csv") + " --y " +
                           dir.file("b.csv") + " --perms 10",
                       true);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("row count mismatch") != std::string::npos);
}

TEST_CASE("malformed csv exits with the data-error code") {
    TempDir dir;
    write_file(dir.file("a.csv"), "1,2\n3\n");
    write_file(dir.file("b.csv"), "1,2\n3,4\n");
    const auto r = run("test --x " + dir.file("a.csv") + " --y " +
                           dir.file("b.csv") + " --perms 10",
                       true);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("ragged") != std::string::npos);
}

TEST_CASE("unknown scenario is a usage error listing the choices") {
    const auto r = run("power --scenario not_a_scenario --sims 5", true);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("circle") != std::string::npos);
    CHECK(r.output.find("four_clouds") != std::string::npos);
}

TEST_CASE("missing subcommand is a usage error") {
    const auto r = run("", true);
    CHECK(r.exit_code == 1);
}

TEST_CASE("power emits a parseable tsv table") {
    const auto r = run(
        "power --scenario four_clouds --n 20 --sims 20 --perms 50 --seed 99 "
        "--quiet --threads 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("scenario\tmethod\tn\tpower\tse\tseconds", 0) == 0);
    CHECK(r.output.find("four_clouds\tHHG-Pearson\t20\t") != std::string::npos);
}

TEST_CASE("selftest passes under several seeds") {
    for (const char* seed : {"1", "2", "3"}) {
        const auto r = run(std::string("selftest --seed ") + seed);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("selftest passed") != std::string::npos);
    }
}

TEST_CASE("tab-delimited input round-trips") {
    TempDir dir;
    REQUIRE(run("gen --scenario diamond --n 25 --seed 4 --delimiter tab "
                "--out-x " +
                dir.file("x.tsv") + " --out-y " + dir.file("y.tsv"))
                .exit_code == 0);
    const auto r = run("test --x " + dir.file("x.tsv") + " --y " +
                       dir.file("y.tsv") + " --perms 60 --delimiter tab");
    CHECK(r.exit_code == 0);
}
