#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <sstream>

#include "ccqbf/ccqbf.hpp"
#include "cli.hpp"
#include "reference.hpp"

using namespace ccqbf;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = ccqbf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kExample = std::string(CCQBF_TEST_DATA) + "/worked_example.qdimacs";

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("ccqbf_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(Cli, SolveExample) {
    const auto r = run_cli({"solve", kExample});
    EXPECT_EQ(r.code, ccqbf::cli::kExitTrue);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "s TRUE");
    EXPECT_NE(r.out.find("c algorithm TwoCnfBackdoor"), std::string::npos) << r.out;
}

TEST(Cli, SolveFalse) {
    TempDir d;
    write(d.file("f.qdimacs"), "p cnf 1 1\na 1 0\n1 0\n");
    const auto r = run_cli({"solve", d.file("f.qdimacs")});
    EXPECT_EQ(r.code, ccqbf::cli::kExitFalse);
    EXPECT_EQ(r.out.substr(0, 7), "s FALSE");
}

TEST(Cli, DetectExample) {
    const auto r = run_cli({"detect", "--class", "2cnf", kExample});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("k=3: x3 x4 x5"), std::string::npos);
}

TEST(Cli, ForcedSolverOnWrongClassFails) {
    const auto r = run_cli({"solve", "--algorithm", "aff", "--class", "horn", kExample});
    EXPECT_EQ(r.code, ccqbf::cli::kExitError);
    EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, ccqbf::cli::kExitError);
    EXPECT_EQ(run_cli({"solve"}).code, ccqbf::cli::kExitError);
    EXPECT_EQ(run_cli({"solve", "/nonexistent/file"}).code, ccqbf::cli::kExitError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, ccqbf::cli::kExitError);
}

TEST(Cli, EmitStrategyIsVerifiable) {
    TempDir d;
    const auto r = run_cli({"solve", "--algorithm", "brute", "--emit-strategy", d.file("s.txt"), kExample});
    EXPECT_EQ(r.code, ccqbf::cli::kExitTrue);
    const auto tree = parse_strategy(slurp(d.file("s.txt")));
    EXPECT_TRUE(verify_strategy(ref::worked_example(), tree));
}

TEST(Cli, KernelizeProducesParsableOutput) {
    TempDir d;
    write(d.file("a.qdimacs"), "c class aff\np cnf 4 3\ne 1 2 3 4 0\nx 1 4 0\nx 2 4 0\nc backdoor-begin\n4 3 0\n");
    const auto r = run_cli({"kernelize", "--out", d.file("k.qdimacs"), d.file("a.qdimacs")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto k = parse_qdimacs(slurp(d.file("k.qdimacs")));
    const auto orig = parse_qdimacs(slurp(d.file("a.qdimacs")));
    EXPECT_EQ(ref::eval_qbf(k), ref::eval_qbf(orig));
    EXPECT_LE(k.matrix.tractable.size(), 2u);
}

TEST(Cli, Classify) {
    TempDir d;
    write(d.file("r.txt"), "or3 3 : 001,010,011,100,101,110,111\nimpl 2 : 00,01,11\n");
    const auto r = run_cli({"classify", d.file("r.txt")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Open_dIhsbPlus(3)"), std::string::npos) << r.out;
}

TEST(Cli, GenerateAndTransform) {
    TempDir d;
    auto r = run_cli({"generate", "--out", d.file("g.txt"), "graph", "--vertices", "6", "--k", "3", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run_cli({"generate", "--out", d.file("h.qdimacs"), "mis-horn", d.file("g.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto horn = parse_qdimacs(slurp(d.file("h.qdimacs")));
    const auto g = parse_graph(slurp(d.file("g.txt")));
    EXPECT_EQ(ref::eval_qbf(horn), !ref::mis_exists(g));

    r = run_cli({"transform", "--to-3horn", "--out", d.file("h3.qdimacs"), d.file("h.qdimacs")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(ref::eval_qbf(parse_qdimacs(slurp(d.file("h3.qdimacs")))), ref::eval_qbf(horn));

    r = run_cli({"generate", "--out", d.file("x.qdimacs"), "random", "--n", "8", "--k", "2", "--class", "aff", "--seed", "9"});
    ASSERT_EQ(r.code, 0) << r.err;
    RandomParams p;
    p.n = 8;
    p.k = 2;
    p.cls = BaseClass::aff();
    EXPECT_EQ(parse_qdimacs(slurp(d.file("x.qdimacs"))), gen_random(p, 9));

    r = run_cli({"transform", "--dualize", "--out", d.file("xd.qdimacs"), d.file("x.qdimacs")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_qdimacs(slurp(d.file("xd.qdimacs"))), dualize(gen_random(p, 9)));
}

TEST(Cli, BenchAndVerify) {
    TempDir d;
    const auto out = d.file("b.jsonl");
    auto r = run_cli({"bench", "--suite", "2cnf:100:n=8:k=3", "--out", out, "--threads", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run_cli({"bench-verify", out});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("agree      100/100"), std::string::npos) << r.out;

    // flip one value: the instance must be flagged
    std::stringstream lines(slurp(out));
    std::string first;
    std::getline(lines, first);
    const auto pos = first.find("\"value\":");
    ASSERT_NE(pos, std::string::npos);
    const bool was_true = first.compare(pos + 8, 4, "true") == 0;
    first.replace(pos + 8, was_true ? 4 : 5, was_true ? "false" : "true");
    std::ofstream(out, std::ios::app) << first << '\n';
    r = run_cli({"bench-verify", out});
    EXPECT_EQ(r.code, ccqbf::cli::kExitError);
    EXPECT_NE(r.out.find("disagreement"), std::string::npos);
}

TEST(Cli, BenchVerifyEmptyFile) {
    TempDir d;
    write(d.file("e.jsonl"), "");
    const auto r = run_cli({"bench-verify", d.file("e.jsonl")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("instances  0"), std::string::npos);
    EXPECT_EQ(run_cli({"bench-verify", d.file("missing.jsonl")}).code, ccqbf::cli::kExitError);
}

TEST(Cli, EnvironmentCapIsHonouredAndFlagWins) {
    ::setenv("QBD_BRUTE_CAP", "2", 1);
    auto r = run_cli({"solve", "--algorithm", "brute", kExample});
    EXPECT_EQ(r.code, ccqbf::cli::kExitError);
    r = run_cli({"solve", "--algorithm", "brute", "--brute-cap", "10", kExample});
    EXPECT_EQ(r.code, ccqbf::cli::kExitTrue);
    ::unsetenv("QBD_BRUTE_CAP");
}
