// Runs the hartman binary end to end.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HARTMAN_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hartman_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

const char* kArcJson = R"({"domain":{"torus_rank":1,"finite_orders":[]},
  "pieces":[{"box":[["0","1/4"]],"value":{"re":"1","im":"0"}},{"box":[["1/2","3/4"]],"value":{"re":"1","im":"0"}}]})";

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("mean").code, 2);
  EXPECT_EQ(run("mean --cos2 2 --alternating").code, 2);
  EXPECT_EQ(run("coeff --cut alpha=0.3 beta=1/3 --alpha not-a-number").code, 2);
  EXPECT_EQ(run("fejer --function /nonexistent.json").code, 2);
}

TEST(Cli, GenerateWritesTheWindow) {
  const auto path = scratch("gen.csv");
  const auto r = run("generate --cos2 2 --N 100 --out " + path.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(count_lines(ss.str()), 202u);
  EXPECT_EQ(ss.str().substr(0, 9), "n,re,im\n-");
  // The written window reads back as input.
  const auto m = run("mean --input " + path.string());
  EXPECT_EQ(m.code, 0);
}

TEST(Cli, ExactMean) {
  const auto r = run("mean --cos2 3 --exact");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("exact 1/8"), std::string::npos) << r.out;
}

TEST(Cli, SpectrumJsonIsDeterministic) {
  const auto a = run("--json spectrum --alternating --N 500");
  const auto b = run("--json spectrum --alternating --N 500");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("T^0 x Z/2"), std::string::npos);
}

TEST(Cli, VerifySuitePasses) {
  const auto r = run("verify --suite all");
  ASSERT_EQ(r.code, 0);
  EXPECT_GT(count_lines(r.out), 100u);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, StepFunctionCommands) {
  const auto path = scratch("arc.json");
  std::ofstream(path) << kArcJson;
  const auto f = run("fejer --function " + path.string() + " --order 8");
  EXPECT_EQ(f.code, 0);
  const auto a = run("--json aperiodize --function " + path.string());
  ASSERT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("exact-pass"), std::string::npos) << a.out;
  const auto m = run("mean --function " + path.string() + " --generators quadratic:-1,1,5,2 --exact");
  EXPECT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("exact 1/2"), std::string::npos) << m.out;
}

TEST(Cli, StrictUncertifiedExitsThree) {
  // Six unrelated tones on a short window: the frequency uncertainty is too large to
  // rule out even unit relations, so Γ cannot be presented.
  const auto path = scratch("tones.csv");
  {
    std::ofstream out(path);
    out.precision(17);
    out << "n,re,im\n";
    std::vector<double> alphas;
    for (double p : {2.0, 3.0, 5.0, 6.0, 7.0, 10.0}) alphas.push_back(std::sqrt(p) - std::floor(std::sqrt(p)));
    for (int n = -60; n <= 60; ++n) {
      double re = 0.0, im = 0.0;
      for (double a : alphas) {
        re += std::cos(2.0 * 3.14159265358979323846 * a * n);
        im += std::sin(2.0 * 3.14159265358979323846 * a * n);
      }
      out << n << "," << re << "," << im << "\n";
    }
  }
  const auto plain = run("spectrum --input " + path.string() + " --theta 0.3");
  EXPECT_EQ(plain.code, 0);
  EXPECT_NE(plain.out.find("\"presentation_certified\": false"), std::string::npos) << plain.out;
  EXPECT_EQ(run("--strict spectrum --input " + path.string() + " --theta 0.3").code, 3);
  EXPECT_EQ(run("reconstruct --input " + path.string() + " --theta 0.3").code, 3);
}

TEST(Cli, SubgroupTestConsistent) {
  const auto r = run("subgroup-test --cut alpha=quadratic:-1,1,5,2 beta=1/3 --alpha quadratic:-1,1,5,2 --N 20000 --G 1000");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("consistent"), std::string::npos) << r.out;
}
