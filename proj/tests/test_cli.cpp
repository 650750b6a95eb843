#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ORBITFN_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, EvalAtOrigin) {
  const auto r = run("eval --algebra G2 --family C --lambda 0,0 --point 0,0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "12 + 0i\n");
}

TEST(Cli, GlobalOptionsBeforeSubcommand) {
  EXPECT_EQ(run("--algebra G2 eval --family C --lambda 0,0 --point 0,0").out, "12 + 0i\n");
}

TEST(Cli, GridRowCount) {
  const auto r = run("eval --algebra G2 --family SL --lambda 1,1 --grid 64");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u + 2145u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "x_1,x_2,re,im");
}

TEST(Cli, GridJson) {
  const auto r = run("eval --algebra B3 --family S --lambda 0,0,0 --grid 2 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("rows").size(), 10u);
  EXPECT_EQ(j.at("meta").at("family"), "S");
}

TEST(Cli, UsageErrors) {
  const auto sl = run("eval --algebra A2 --family SL --lambda 0,0 --point 0,0");
  EXPECT_EQ(sl.code, 2);
  EXPECT_NE(sl.out.find("family requires two root lengths"), std::string::npos);
  EXPECT_EQ(run("eval --algebra G2 --family C --lambda -1,0 --point 0,0").code, 2);
  EXPECT_EQ(run("eval --algebra G2 --family C --lambda 1 --point 0,0").code, 2);
  EXPECT_EQ(run("eval --algebra X9 --family C --lambda 0,0 --point 0,0").code, 2);
  EXPECT_EQ(run("eval --algebra G2 --family Q --lambda 0,0 --point 0,0").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, FoldInsideIsIdentity) {
  const auto r = run("fold --algebra G2 --point 0.1,0.05 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j.at("folded_point")[0].get<double>(), 0.1);
  EXPECT_EQ(j.at("steps"), 0);
}

TEST(Cli, FoldPrintsChecks) {
  const auto r = run("fold --algebra F4 --point 2.3,-1.7,0.4,5.1");
  EXPECT_EQ(r.code, 0);
  std::size_t checks = 0;
  for (auto at = r.out.find("check "); at != std::string::npos; at = r.out.find("check ", at + 1)) ++checks;
  EXPECT_EQ(checks, 4u);
  EXPECT_NE(r.out.find("check SS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAILED"), std::string::npos);
}

TEST(Cli, FoldTranslatedPoint) {
  const auto a = nlohmann::json::parse(run("fold --algebra G2 --point 0.1,0.05 --format json").out);
  const auto b = nlohmann::json::parse(run("fold --algebra G2 --point 3.1,-1.95 --format json").out);
  for (int i = 0; i < 2; ++i)
    EXPECT_NEAR(a.at("folded_point")[i].get<double>(), b.at("folded_point")[i].get<double>(), 1e-12);
  EXPECT_EQ(b.at("signs"), a.at("signs"));
}

TEST(Cli, Characters) {
  EXPECT_EQ(run("character --algebra G2 --lambda 0,0").out, "1\n");
  EXPECT_EQ(run("character --algebra F4 --class long").out, "1\n");
  EXPECT_EQ(run("character --algebra B3 --class short").out, "1\n");
  EXPECT_EQ(run("character --algebra G2 --lambda 0,1").out, "m(0,1) + 1\n");
  const auto j = nlohmann::json::parse(run("character --algebra G2 --lambda 0,1 --format json").out);
  EXPECT_EQ(j.at("dimension"), "7");
  EXPECT_EQ(run("character --algebra A3 --class long").code, 2);
}

TEST(Cli, DecomposeProducts) {
  const auto sl = run("decompose --algebra G2 --first SL:1,0 --second SL:0,1 --format json");
  ASSERT_EQ(sl.code, 0);
  const auto j = nlohmann::json::parse(sl.out);
  EXPECT_EQ(j.at("meta").at("class"), "zero");
  EXPECT_FALSE(j.at("family_basis").empty());

  const auto s = run("decompose --algebra G2 --first S:0,1 --second SL:0,0");
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("class: short"), std::string::npos);
  EXPECT_NE(s.out.find("product / D^short"), std::string::npos);

  const auto c = run("decompose --algebra G2 --first C:1,0 --second C:0,0");
  EXPECT_EQ(c.out, "class: zero (family C)\nproduct = 12 C(1,0)\n");
}

TEST(Cli, VerifyG2) {
  const auto r = run("verify --algebra G2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "orbitfn_cli_out.csv";
  EXPECT_EQ(run("eval --algebra B2 --family SS --lambda 1,0 --grid 3 --output " + path).code, 0);
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::string s;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, f)) s.append(buf, n);
  std::fclose(f);
  EXPECT_EQ(lines(s), 11u);
}

TEST(Cli, VerifyF4RunsEnumerationChecks) {
  const auto r = run("verify --algebra F4 --skip-enumeration-over 2000000");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("[pass] normality and factorization"), std::string::npos);
  EXPECT_NE(r.out.find("0 skipped"), std::string::npos);
}

TEST(Cli, VerifyE6SkipsTwoLengthFamilies) {
  const auto r = run("verify --algebra E6");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("[skipped] properties SL: skipped (simply-laced)"), std::string::npos);
  EXPECT_NE(r.out.find("[skipped] properties SS: skipped (simply-laced)"), std::string::npos);
}

TEST(Cli, VerifyCapSkipsEnumeration) {
  const auto r = run("verify --algebra F4 --skip-enumeration-over 1000 --format json");
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  bool skipped = false;
  for (const auto& c : j.at("checks")) skipped |= c.at("status") == "skipped";
  EXPECT_TRUE(skipped);
}
