#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "maxahp/cli.hpp"

using namespace maxahp;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const cli::ServeFn& serve = {}) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err, serve);
  return {code, out.str(), err.str()};
}

std::string data(const char* file) { return std::string(MAXAHP_DATA_DIR "/") + file; }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ClassicalVacation) {
  const auto r = run({"classical", "-p", data("vacation.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "ranking: 1>3>4>2\n")) << r.out;
  EXPECT_TRUE(has(r.out, "ranking[entertainment]: 4>1>2=3\n"));
}

TEST(Cli, MultiUniqueMinmax) {
  const auto r = run({"multi", "-p", data("unique_minmax.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "muHat: 6.817")) << r.out;
  EXPECT_TRUE(has(r.out, "minmax_unique: yes"));
  EXPECT_TRUE(has(r.out, "global_optimum: none"));
}

TEST(Cli, RequireGlobal) {
  EXPECT_EQ(run({"multi", "-p", data("unique_minmax.json"), "--require-global"}).code, 2);
  EXPECT_EQ(run({"multi", "-p", data("common_subeigenvector.json"), "--require-global"}).code, 0);
}

TEST(Cli, InvalidInputExitsOne) {
  EXPECT_EQ(run({"analyze", "-i", data("malformed.json")}).code, 1);
  EXPECT_EQ(run({"analyze", "-i", data("missing.json")}).code, 1);
  const auto bad = run({"multi", "-p", data("bad_reciprocal.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(has(bad.err, "reciprocity_violated"));
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"report", "-p", data("vacation.json"), "-o", "x", "--format", "pdf"}).code, 1);
  EXPECT_EQ(run({"multi", "-p", data("vacation.json"), "--tol-tie", "-1"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, InfeasibleExitsTwo) {
  const auto dir = std::filesystem::temp_directory_path() / "maxahp_cli_zero.json";
  {
    std::ofstream f(dir);
    f << R"({"entries": [["0", "0"], ["0", "0"]]})";
  }
  EXPECT_EQ(run({"analyze", "-i", dir.string()}).code, 2);
  EXPECT_EQ(run({"pareto", "-p", data("unique_minmax.json"), "--alpha", "1,0"}).code, 2);
  std::filesystem::remove(dir);
}

TEST(Cli, Analyze) {
  const auto r = run({"analyze", "-i", data("matrix_cost.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "irreducible: yes"));
  EXPECT_TRUE(has(r.out, "max_eigenvector: (1.000000, "));
  EXPECT_TRUE(has(r.out, "critical_edges: "));
}

TEST(Cli, ParetoWithFlags) {
  const auto r = run({"pareto", "-p", data("unique_minmax.json"), "--alpha", "1", "2", "--starts", "2", "--seed", "9"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "alpha: (1.000000, 2.000000)"));
  EXPECT_TRUE(has(r.out, "point[1].ranking: 4>1>3>2"));
  EXPECT_TRUE(has(r.out, "strictly_dominated=0"));
}

TEST(Cli, ReportWritesCsvTables) {
  const auto dir = std::filesystem::temp_directory_path() / "maxahp_cli_report";
  std::filesystem::remove_all(dir);
  const auto r = run({"report", "-p", data("unique_minmax.json"), "-o", dir.string(), "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  for (const char* f : {"weights.csv", "errors.csv", "scatter.csv", "pareto_corner.csv"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  EXPECT_EQ(read_text_file((dir / "weights.csv").string()).substr(0, 30), "method,alternative,weight,rank");
  EXPECT_TRUE(has(r.out, "pareto_corner: (6.817"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  const std::vector<std::vector<std::string>> cmds = {
      {"analyze", "-i", data("matrix_cost.json")},
      {"multi", "-p", data("vacation.json")},
      {"pareto", "-p", data("vacation.json"), "--seed", "3", "--starts", "3"},
      {"classical", "-p", data("vacation.json")},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << c.front();
  }
  const auto base = std::filesystem::temp_directory_path();
  std::string first;
  for (const char* d : {"maxahp_det_a", "maxahp_det_b"}) {
    const auto dir = base / d;
    ASSERT_EQ(run({"report", "-p", data("vacation.json"), "-o", dir.string()}).code, 0);
    std::string all;
    for (const char* f : {"weights.csv", "errors.csv", "scatter.csv", "pareto_corner.csv"})
      all += read_text_file((dir / f).string());
    if (first.empty()) {
      first = all;
    } else {
      EXPECT_EQ(all, first);
    }
    std::filesystem::remove_all(dir);
  }
}

TEST(Cli, ServeDelegatesToHook) {
  EXPECT_EQ(run({"serve", "--port", "9000"}).code, 1);
  int seen_port = 0;
  std::size_t seen_n = 0;
  const auto r = run({"serve", "--port", "9123", "--max-n", "10"}, [&](const std::string&, int port, std::size_t n, std::size_t) {
    seen_port = port;
    seen_n = n;
    return 0;
  });
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(seen_port, 9123);
  EXPECT_EQ(seen_n, 10u);
  EXPECT_EQ(run({"serve", "--port", "70000"}).code, 1);
}
