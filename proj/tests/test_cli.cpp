#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "margcover/json_io.hpp"

#ifndef MARGCOVER_CLI
#error "MARGCOVER_CLI must name the CLI binary"
#endif

namespace fs = std::filesystem;
using margcover::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("margcover_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const auto err_path = scratch() / "stderr.txt";
  const std::string cmd = std::string(MARGCOVER_CLI) + " " + args + " 2>" + err_path.string();
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

std::string tmp(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST(Cli, CoverExamples) {
  auto r = run("cover --n 9 --m 3 --k 2 --method triple32");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["handle_count"], 12);
  r = run("cover --n 3 --m 3 --k 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["handle_count"], 1);
  r = run("cover --n 8 --m 4 --k 2 --method doubling2m");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["handle_count"], 6);
  EXPECT_EQ(Json::parse(r.out)["lower_bound"], 5);
}

TEST(Cli, CoverWritesDesignAndMetadata) {
  const auto out = tmp("c7.json");
  auto r = run("cover --n 7 --m 3 --k 2 --out " + out);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto meta = Json::parse(slurp(out + ".meta.json"));
  EXPECT_EQ(meta["method"], "exact");
  EXPECT_EQ(meta["handle_count"], 7);
  EXPECT_EQ(meta["lower_bound"], 7);
  const auto design = margcover::design_from_json(Json::parse(slurp(out)));
  EXPECT_EQ(design.handle_count(), 7u);
  // Byte-identical re-serialization.
  EXPECT_EQ(margcover::design_to_json(design).dump() + "\n", slurp(out));
}

TEST(Cli, DomainErrorsNameTheMethod) {
  auto r = run("cover --n 8 --m 4 --k 2 --method quad43");
  EXPECT_NE(r.code, 0);
  const auto err = Json::parse(r.err);
  EXPECT_EQ(err["error"], "domain");
  EXPECT_NE(err["message"].get<std::string>().find("quad43"), std::string::npos);
  r = run("cover --n 8 --m 4 --k 2 --method nope");
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(Json::parse(r.err)["error"], "validation");
  r = run("cover --n 8");
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(Json::parse(r.err)["error"], "usage");
}

TEST(Cli, VerifyValidAndInvalid) {
  const auto good = tmp("fano.json");
  {
    std::ofstream(good) << R"({"n":7,"m":3,"k":2,"handles":[[0,1,2],[0,3,4],[0,5,6],[1,3,5],[1,4,6],[2,3,6],[2,4,5]]})";
  }
  auto r = run("verify --cover " + good);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["valid"].get<bool>());
  const auto bad = tmp("fano_minus.json");
  {
    std::ofstream(bad) << R"({"n":7,"m":3,"k":2,"handles":[[0,1,2],[0,3,4],[0,5,6],[1,3,5],[1,4,6],[2,3,6]]})";
  }
  r = run("verify --cover " + bad);
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["uncovered"].dump(), "[[2,4],[2,5],[4,5]]");
  EXPECT_EQ(Json::parse(r.err)["error"], "coverage");
  r = run("verify --cover " + tmp("absent.json"));
  EXPECT_EQ(Json::parse(r.err)["error"], "io");
}

TEST(Cli, BoundsFormats) {
  auto r = run("bounds --n 31 --k 2 --d 2 --m 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["c_lower"], 155);
  EXPECT_NEAR(j["r_lower"].get<double>(), 155.0, 1e-9);
  r = run("bounds --n 7 --k 2 --d 2 --q 8 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,d,k,q,f_bound,r_lower,c_lower,naive_r\n7,2,2,8,6,7,7,21\n");
  r = run("bounds --n 7 --k 2 --d 2 --q 8 --pretty");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("r_lower"), std::string::npos);
  EXPECT_THROW(Json::parse(r.out), Json::parse_error);
  r = run("bounds --n 7 --k 2 --d 2 --q 3");
  EXPECT_EQ(Json::parse(r.err)["error"], "infeasible");
}

TEST(Cli, SimulateRoundTrip) {
  const auto cover = tmp("c5.json");
  ASSERT_EQ(run("cover --n 5 --m 3 --k 2 --method exact --out " + cover).code, 0);
  const auto table = tmp("marg.ndjson");
  auto r = run("simulate --cover " + cover + " --d 2 --seed 4 --table-out " + table);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["metrics"]["replication_rate"], 4.0);
  EXPECT_EQ(j["metrics"]["max_reducer_load"], 8);
  EXPECT_EQ(j["metrics"]["marginals_computed"], 80);
  EXPECT_TRUE(j["pass"].get<bool>());
  std::ifstream in(table);
  const auto back = margcover::read_marginals_ndjson(in, 2);
  EXPECT_EQ(back.entries.size(), 80u);

  const auto naive = tmp("n5.json");
  ASSERT_EQ(run("cover --n 5 --m 2 --k 2 --method naive --out " + naive).code, 0);
  r = run("simulate --cover " + naive + " --d 2 --rollup");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["metrics"]["replication_rate"], 10.0);
}

TEST(Simulate, CubeFromFileAndDeterminism) {
  const auto cover = tmp("c4.json");
  ASSERT_EQ(run("cover --n 3 --m 2 --k 1 --out " + cover).code, 0);
  const auto cube = tmp("cube.ndjson");
  {
    std::ofstream out(cube);
    margcover::write_cube_ndjson(out, margcover::build_cube(margcover::CubeSpec{{2, 3, 2}}, 5));
  }
  auto a = run("simulate --cover " + cover + " --in " + cube);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_TRUE(Json::parse(a.out)["pass"].get<bool>());
  EXPECT_EQ(run("simulate --cover " + cover + " --extents 2,3,2 --seed 9").out,
            run("simulate --cover " + cover + " --extents 2,3,2 --seed 9").out);
}

TEST(Cli, SimulateRejectsInvalidCover) {
  const auto bad = tmp("bad.json");
  {
    std::ofstream(bad) << R"({"n":4,"m":2,"k":2,"handles":[[0,1]]})";
  }
  const auto r = run("simulate --cover " + bad + " --d 2");
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(Json::parse(r.err)["error"], "coverage");
}

TEST(Cli, WeightedMethods) {
  auto r = run("weighted --weights 3,3,3,3,4,4,4,4,6,6,6,6 --log-q 13 --method grouped");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["handle_count"], 26);
  EXPECT_TRUE(j["design"]["m"].is_null());
  const auto spec = tmp("w.json");
  {
    std::ofstream(spec) << R"({"weights":[3,3,3,3,4,4,4,4,6,6,6,6],"log_q":13})";
  }
  r = run("weighted --in " + spec);
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_TRUE(j["feasible"].get<bool>());
  r = run("weighted --weights 5,5 --log-q 5");
  EXPECT_EQ(Json::parse(r.err)["error"], "infeasible");
}

TEST(Cli, SweepTable) {
  auto r = run("sweep --n 7..9 --m 3..4 --k 2 --d 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,m,k,q,lower_bound,best_count,method,naive_r\n", 0), 0u);
  EXPECT_NE(r.out.find("\n7,3,2,8,7,7,exact,21\n"), std::string::npos);
  // The lower bound follows the binomial ratio when m grows.
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::map<std::pair<int, int>, int> lb;
  while (std::getline(lines, line)) {
    int n, m, k, q, lower;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%d,%d,%d,%d", &n, &m, &k, &q, &lower), 5);
    lb[{n, m}] = lower;
  }
  for (int n = 7; n <= 9; ++n) {
    const double ratio = static_cast<double>(lb[{n, 3}]) / lb[{n, 4}];
    EXPECT_NEAR(ratio, 4.0 / 2.0, 0.5) << n;
  }
}

TEST(Cli, SingleCellSweepMatchesCover) {
  const auto sweep = run("sweep --n 8 --m 4 --k 2");
  const auto cover = Json::parse(run("cover --n 8 --m 4 --k 2").out);
  EXPECT_NE(sweep.out.find("8,4,2,16,5," + std::to_string(cover["handle_count"].get<int>()) + "," +
                           cover["method"].get<std::string>() + ",28"),
            std::string::npos);
}

TEST(Cli, DeterministicRandomCovers) {
  EXPECT_EQ(run("cover --n 10 --m 4 --k 2 --method random --seed 3").out,
            run("cover --n 10 --m 4 --k 2 --method random --seed 3").out);
  EXPECT_EQ(run("cover --n 10 --m 4 --k 2 --method random").out,
            run("cover --n 10 --m 4 --k 2 --method random --seed 20150601").out);
}
