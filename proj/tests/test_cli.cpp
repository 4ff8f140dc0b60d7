#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "qsurrogate/experiments.hpp"
#include "qsurrogate/serialization.hpp"
#include "qsurrogate/simulator.hpp"

using namespace qsur;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qsur");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qsur_cli_test";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, cli::kValidation);
  EXPECT_EQ(run_cli({"build-surrogate", "--method", "taylor", "-L", "-1", "-o", scratch("x.json")}).code,
            cli::kValidation);
  EXPECT_EQ(run_cli({"build-surrogate", "--method", "magic", "-L", "1", "-o", scratch("x.json")}).code,
            cli::kValidation);
  EXPECT_EQ(run_cli({"build-surrogate", "--bench-n", "3", "--bench-d", "1", "--method", "kernel", "-L", "4", "-o",
                     scratch("x.json")})
                .code,
            cli::kValidation);
  EXPECT_EQ(run_cli({"eval", "--surrogate", scratch("does-not-exist.json"), "--theta", "0"}).code, cli::kIo);
  EXPECT_EQ(run_cli({"build-surrogate", "--circuit", scratch("missing.circ"), "--method", "taylor", "-L", "1", "-o",
                     scratch("x.json")})
                .code,
            cli::kIo);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST(Cli, TaylorOrderZeroQueriesOnce) {
  const auto r = run_cli({"build-surrogate", "--method", "taylor", "-L", "0", "-o", scratch("t0.json")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto stats = nlohmann::json::parse(r.out);
  EXPECT_EQ(stats["distinct_queries"], 1);
  EXPECT_EQ(stats["m"], 16);
}

TEST(Cli, KernelStatsAndEvalAtOrigin) {
  const auto path = scratch("k2.json");
  const auto r = run_cli({"build-surrogate", "--bench-n", "4", "--bench-d", "1", "--method", "kernel", "-L", "2",
                          "-o", path});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto stats = nlohmann::json::parse(r.out);
  EXPECT_EQ(stats["distinct_queries"], 33);
  EXPECT_EQ(stats["nodes"], 33);
  EXPECT_EQ(stats["query_bound"], 72);
  EXPECT_EQ(stats["solver"]["method"], "cholesky");

  const auto e = run_cli({"eval", "--surrogate", path, "--theta", "0,0,0,0", "--bench-n", "4", "--bench-d", "1"});
  ASSERT_EQ(e.code, cli::kOk) << e.err;
  std::istringstream lines(e.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "t,f,f_tilde,abs_diff,bound");
  const auto first = row.find(',');
  const auto second = row.find(',', first + 1);
  EXPECT_NEAR(std::stod(row.substr(second + 1)), 1.0, 1e-12);

  EXPECT_EQ(run_cli({"eval", "--surrogate", path, "--theta", "0,0"}).code, cli::kValidation);
  EXPECT_EQ(run_cli({"eval", "--surrogate", path, "--theta", "0,0,x,0"}).code, cli::kValidation);
}

TEST(Cli, RoundTripMatchesInMemoryBuild) {
  const auto path = scratch("rt.json");
  ASSERT_EQ(run_cli({"build-surrogate", "--bench-n", "3", "--bench-d", "2", "--method", "taylor", "-L", "3", "-o",
                     path})
                .code,
            cli::kOk);
  GridOracle oracle(build_benchmark_circuit(3, 2), Observable::all_z(3));
  const Surrogate mem{build_taylor(oracle, 3)};
  const auto disk = load_surrogate(path);
  EXPECT_EQ(dump_surrogate(disk), dump_surrogate(mem));
  const std::vector<double> theta{0.1, -0.2, 0.3, 0.05, 0.4, -0.6};
  EXPECT_EQ(eval_surrogate(disk, theta), eval_surrogate(mem, theta));
}

TEST(Cli, CurveEvaluationRowCount) {
  const auto path = scratch("k1.json");
  ASSERT_EQ(run_cli({"build-surrogate", "--bench-n", "2", "--bench-d", "2", "--method", "kernel", "-L", "1", "-o",
                     path})
                .code,
            cli::kOk);
  const auto csv = scratch("g1.csv");
  const auto r = run_cli({"eval", "--surrogate", path, "--curve", "g1", "--bench-n", "2", "--bench-d", "2",
                          "--t-count", "201", "-o", csv});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(count_lines(read_text_file(csv)), 202u);
  EXPECT_EQ(run_cli({"eval", "--surrogate", path, "--curve", "g1"}).code, cli::kValidation);
  EXPECT_EQ(run_cli({"eval", "--surrogate", path, "--theta", "0,0,0,0", "--bound"}).code, cli::kValidation);
}

TEST(Cli, ScanCurveWithBoundAndEnrichment) {
  const auto t = run_cli({"scan-curve", "--bench-n", "2", "--bench-d", "2", "--method", "taylor", "-L", "2",
                          "--curve", "g3", "--t-count", "11", "--bound"});
  ASSERT_EQ(t.code, cli::kOk) << t.err;
  EXPECT_EQ(count_lines(t.out), 12u);
  EXPECT_NE(t.out.find("\n-1,"), std::string::npos);

  const auto k = run_cli({"scan-curve", "--bench-n", "2", "--bench-d", "2", "--method", "kernel", "-L", "2",
                          "--curve", "g1", "--t-count", "5", "--enrich-center"});
  ASSERT_EQ(k.code, cli::kOk) << k.err;
  EXPECT_EQ(count_lines(k.out), 6u);
  EXPECT_EQ(run_cli({"scan-curve", "--curve", "g3", "--t-min", "-2"}).code, cli::kValidation);
}

TEST(Cli, L2ErrorIsDeterministic) {
  const std::vector<std::string> base{"l2-error", "--bench-n", "3",    "--bench-d", "1",    "--method",
                                      "kernel",   "-L",        "1,2",  "--n-f",     "500",  "--n-diff",
                                      "300",      "--seed",    "11"};
  auto a_args = base, b_args = base, c_args = base;
  a_args.insert(a_args.end(), {"-o", scratch("a.csv")});
  b_args.insert(b_args.end(), {"-o", scratch("b.csv")});
  c_args.insert(c_args.end(), {"--threads", "2", "-o", scratch("c.csv")});
  const auto a = run_cli(a_args);
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  ASSERT_EQ(run_cli(b_args).code, cli::kOk);
  ASSERT_EQ(run_cli(c_args).code, cli::kOk);
  const auto csv = read_text_file(scratch("a.csv"));
  EXPECT_EQ(csv, read_text_file(scratch("b.csv")));
  EXPECT_EQ(csv, read_text_file(scratch("c.csv")));
  EXPECT_EQ(count_lines(csv), 1u + 2u * 4u);
  EXPECT_EQ(nlohmann::json::parse(a.out).size(), 8u);
}

TEST(Cli, BenchCircuitParsesBack) {
  const auto r = run_cli({"bench-circuit", "--n", "4", "--d", "2"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto c = parse_circuit(r.out);
  EXPECT_EQ(format_circuit(c), format_circuit(build_benchmark_circuit(4, 2)));
  const auto path = scratch("bench.circ");
  write_text_file(path, r.out);
  const auto s = run_cli({"cache-stats", "--circuit", path, "--method", "taylor", "-L", "2"});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  const auto stats = nlohmann::json::parse(s.out);
  EXPECT_LE(stats["distinct_queries"].get<std::size_t>(), stats["query_bound"].get<std::size_t>());
  const auto nc = run_cli({"cache-stats", "--circuit", path, "--method", "taylor", "-L", "2", "--no-cache"});
  EXPECT_GT(nlohmann::json::parse(nc.out)["cache_misses"].get<std::size_t>(),
            stats["cache_misses"].get<std::size_t>());
}

TEST(Cli, CustomObservableFile) {
  const auto obs = scratch("obs.txt");
  write_text_file(obs, "0.5 ZI\n-0.25 XX\n");
  const auto path = scratch("obs_taylor.json");
  const auto r = run_cli({"build-surrogate", "--bench-n", "2", "--bench-d", "1", "--observable", obs, "--method",
                          "taylor", "-L", "1", "-o", path});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto s = std::get<TaylorSurrogate>(load_surrogate(path));
  EXPECT_DOUBLE_EQ(s.obs_one_norm(), 0.75);
  write_text_file(obs, "1.0 ZZZ\n");
  EXPECT_EQ(run_cli({"build-surrogate", "--bench-n", "2", "--bench-d", "1", "--observable", obs, "--method",
                     "taylor", "-L", "1", "-o", path})
                .code,
            cli::kValidation);
}
