#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "baerinv/serialize.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(BAERINV_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(Cli, Compute) {
  auto r = run("compute --r 3 --s 9 --n 2 --c 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "Z_3^5")) << r.out;
  r = run("compute --r 3 --s 5 --n 2 --c 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "trivial")) << r.out;
  r = run("compute --r 2 --s 2 --n 2 --c 1");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(contains(r.out, "requires c >= n")) << r.out;
}

TEST(Cli, ComputeJson) {
  const auto r = run("--format json compute --r 3 --s 9 --n 2 --c 2");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = baerinv::Json::parse(r.out);
  EXPECT_EQ(j.at("command"), "compute");
  EXPECT_EQ(j.at("cap"), "10");
  EXPECT_EQ(j.at("result").at("invariant_factors"),
            baerinv::Json::parse(R"(["3","3","3","3","3"])"));
  EXPECT_EQ(j.at("result").at("free_rank"), "0");
  EXPECT_EQ(j.at("parameters").at("r"), "3");
}

TEST(Cli, Predict) {
  auto r = run("predict --r 6 --s 10 --n 1 --c 3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "Z_2^3 (Theorem 3.1)")) << r.out;
  r = run("predict --r 4 --s 6 --n 2 --c 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "no closed form applies")) << r.out;
  r = run("predict --r 7 --s 11 --n 9 --c 9");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "trivial (Theorem 3.4)")) << r.out;
}

TEST(Cli, BasisWittAbelian) {
  auto r = run("witt --weight 5 --letters 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "6\n");
  r = run("basis --weight 3 --letters 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "[x,[x,y]]")) << r.out;
  EXPECT_TRUE(contains(r.out, "[[x,y],y]")) << r.out;
  r = run("abelian --orders 4,2 --c 2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "Z_2^2")) << r.out;
}

TEST(Cli, VerifyTargets) {
  auto r = run("verify theorems --max-rs 5 --max-c 4");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, " 0 failed")) << r.out;
  EXPECT_FALSE(contains(r.out, "FAIL")) << r.out;
  r = run("verify prop22 --c 2 --r 5");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_FALSE(contains(r.out, "holds=false")) << r.out;
  r = run("verify lemma21 --c 3 --r 4");
  EXPECT_TRUE(r.exit_code == 0 || r.exit_code == 1);
  EXPECT_TRUE(contains(r.out, "a=xx")) << r.out;
  EXPECT_TRUE(contains(r.out, "a=yy")) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("compute --r 2 --s 2 --n 1").exit_code, 2);
  EXPECT_EQ(run("compute --r 0 --s 2 --n 1 --c 1").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("compute --r 2 --s 2 --n 6 --c 6").exit_code, 3);
  EXPECT_EQ(run("--cap 13 compute --r 2 --s 2 --n 1 --c 1").exit_code, 3);
  EXPECT_EQ(run("--cap 0 compute --r 2 --s 2 --n 1 --c 1").exit_code, 2);
  EXPECT_EQ(run("--format yaml witt --weight 2").exit_code, 2);
}

TEST(Cli, CapAboveDefaultWarns) {
  const auto r = run("--cap 11 witt --weight 3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "warning")) << r.out;
}

TEST(Cli, Deterministic) {
  for (const char* args : {"--format json verify prop22 --c 2 --r 5",
                           "--format json compute --r 4 --s 6 --n 2 --c 2",
                           "basis --weight 6"}) {
    EXPECT_EQ(run(args).out, run(args).out) << args;
  }
}

TEST(Cli, JsonRoundTrip) {
  for (const char* args : {"--format json compute --r 4 --s 6 --n 2 --c 3",
                           "--format json predict --r 5 --s 25 --n 3 --c 3",
                           "--format json abelian --orders 8,4,2 --c 1",
                           "--format json verify lemma21 --c 3 --r 4 --a xy",
                           "--format json basis --weight 4"}) {
    const auto r = run(args);
    const auto j = baerinv::Json::parse(r.out);
    EXPECT_EQ(baerinv::render_json(j) + "\n", r.out) << args;
  }
}

}  // namespace
