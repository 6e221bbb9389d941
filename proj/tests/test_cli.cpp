#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "selfdist/finite_shelves.hpp"
#include "support.hpp"

using nlohmann::json;
using namespace selfdist;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

std::string quote(const std::string &s) {
  std::string q = "'";
  for (char c : s)
    q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Invocation sdtool(const std::vector<std::string> &args) {
  std::string cmd = SDTOOL_PATH;
  for (const auto &a : args)
    cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Invocation r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_table(const ShelfTable &s, const std::string &name) {
  auto path = std::filesystem::temp_directory_path() /
              ("sdtool_" + name + "_" + std::to_string(::getpid()) + ".txt");
  std::ofstream out(path);
  write_table(out, s);
  return path.string();
}

} // namespace

TEST(Cli, SemanticExample) {
  Invocation r = sdtool({"wp", "(x*x)*(x*(x*x))", "x*((x*x)*(x*x))", "--method",
                  "semantic"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "equivalent\n");
}

TEST(Cli, PolishNegative) {
  Invocation r = sdtool({"wp", "x", "x*x", "--method", "polish"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not equivalent\n");
}

TEST(Cli, LaverTable) {
  Invocation r = sdtool({"laver", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4\n2 4 2 4\n3 4 3 4\n4 4 4 4\n1 2 3 4\n");
  EXPECT_EQ(sdtool({"laver", "14"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(sdtool({}).code, 2);
  EXPECT_EQ(sdtool({"nonsense"}).code, 2);
  EXPECT_EQ(sdtool({"wp", "x"}).code, 2);
  EXPECT_EQ(sdtool({"wp", "x", "x", "--bogus"}).code, 2);
  EXPECT_EQ(sdtool({"wp", "x", "x", "--method", "magic"}).code, 2);
  EXPECT_EQ(sdtool({"wp", "x*(", "x"}).code, 2);
  EXPECT_EQ(sdtool({"wp", "x1", "x2", "--method", "semantic"}).code, 2);
}

TEST(Cli, BudgetExitCode) {
  Invocation r = sdtool({"wp", "(x1*x2)*(x1*(x3*x4))", "x1*((x2*x3)*(x2*x4))",
                  "--method", "polish", "--cap", "2"});
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, PolishTraceJson) {
  Invocation r = sdtool({"wp", "(x1*x2)*(x1*(x3*x4))", "x1*((x2*x3)*(x2*x4))",
                  "--method", "polish", "--trace", "--json"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "equivalent");
  EXPECT_EQ(j["steps"], 4);
  ASSERT_EQ(j["trace"].size(), 4u);
  std::vector<std::pair<int, int>> discs{{2, 2}, {5, 1}, {6, 1}, {9, 2}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(j["trace"][i]["p"], discs[i].first);
    EXPECT_EQ(j["trace"][i]["side"], discs[i].second);
  }
  EXPECT_EQ(j["exit_code"], 0);
}

// JSON records parse back into the same library objects.
TEST(Cli, JsonRoundTrip) {
  Invocation wp = sdtool({"wp", "x1*(x2*x3)", "(x1*x2)*(x1*x3)", "--json"});
  json j = json::parse(wp.out);
  EXPECT_EQ(json::parse(j.dump()), j);
  EXPECT_EQ(parse_term(j["left"].get<std::string>()), parse_term("x1*(x2*x3)"));
  EXPECT_EQ(parse_term(j["right"].get<std::string>()),
            parse_term("(x1*x2)*(x1*x3)"));
  EXPECT_EQ(j["method"], "polish");
  EXPECT_EQ(j["exit_code"], wp.code);

  Invocation lav = sdtool({"laver", "3", "--json"});
  json l = json::parse(lav.out);
  auto rows = l["table"]["rows"].get<std::vector<std::vector<int>>>();
  EXPECT_EQ(ShelfTable::from_rows(rows), laver_table(3));

  Invocation nf = sdtool({"rack-nf", "x1*(x2*x3)", "--json"});
  json n = json::parse(nf.out);
  EXPECT_EQ(parse_term(n["normal_form"].get<std::string>()),
            parse_term("((x1/x3)*x2)*x3"));

  Invocation bad = sdtool({"wp", "x1", "x2", "--method", "semantic", "--json"});
  json b = json::parse(bad.out);
  EXPECT_EQ(b["exit_code"], 2);
  EXPECT_EQ(b["error"]["kind"], "input");
}

TEST(Cli, MethodsAgreeOnSmallPairs) {
  auto shapes = selfdist::testing::shapes_up_to(4);
  int compared = 0;
  for (const auto &t : shapes)
    for (const auto &u : shapes) {
      std::string a = to_infix(t), b = to_infix(u);
      int expect = sdtool({"wp", a, b}).code;
      ASSERT_TRUE(expect == 0 || expect == 1) << a << " vs " << b;
      for (const char *m : {"semantic", "polish", "syntactic", "normal"})
        EXPECT_EQ(sdtool({"wp", a, b, "--method", m}).code, expect)
            << m << ": " << a << " vs " << b;
      ++compared;
    }
  EXPECT_EQ(compared, 81);
}

TEST(Cli, OtherCommands) {
  EXPECT_EQ(sdtool({"wp-quandle", "x1*x1", "x1"}).code, 0);
  EXPECT_EQ(sdtool({"wp-rack", "x1*x1", "x1"}).code, 1);
  EXPECT_EQ(sdtool({"braid-eval", "x*x"}).out, "1\n");
  EXPECT_EQ(sdtool({"braid-equiv", "1 2 1", "2 1 2"}).code, 0);
  EXPECT_EQ(sdtool({"braid-equiv", "1", "2"}).code, 1);
  EXPECT_EQ(sdtool({"compare", "x", "x*x"}).code, 0);
  EXPECT_EQ(sdtool({"expand", "x*(x*x)", "--at", "e"}).out,
            "(x1*x1)*(x1*x1)\n");
  EXPECT_EQ(sdtool({"expand", "(x*x)*(x*x)", "--at", "e", "--contract"}).out,
            "x1*(x1*x1)\n");
  EXPECT_EQ(sdtool({"derive", "x*(x*x)"}).out, "(x1*x1)*(x1*x1)\n");
  EXPECT_EQ(sdtool({"compare", "x1", "x2"}).code, 2);
  Invocation en = sdtool({"enum-normal", "3", "3", "--json"});
  ASSERT_EQ(en.code, 0);
  // Degrees 0..3 hold 2, 1, 2 and 6 terms.
  EXPECT_EQ(json::parse(en.out)["terms"].size(), 11u);
  EXPECT_EQ(sdtool({"enum-normal", "--n", "3", "--degree", "3"}).out,
            sdtool({"enum-normal", "3", "3"}).out);
  Invocation nf = sdtool({"normal-form", "(x*x)*x"});
  EXPECT_EQ(nf.code, 0);
}

TEST(Cli, TableCommands) {
  std::string spindle = temp_table(counterexample_spindle(), "spindle");
  Invocation r = sdtool({"check-table", spindle, "--laws", "ld,idem"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ld: holds\nidempotent: holds\n");
  r = sdtool({"check-table", spindle, "--laws", "rack"});
  EXPECT_EQ(r.code, 1);
  r = sdtool({"check-eq", spindle, "((x*y)*y)*(x*z)=(x*y)*((y*x)*z)",
              "--assign", "x=2,y=3,z=2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fails at (2,3,2)"), std::string::npos) << r.out;
  EXPECT_EQ(sdtool({"check-eq", spindle, "x*y=x*y"}).code, 0);
  EXPECT_EQ(sdtool({"check-eq", spindle, "x*y=x", "--assign", "x=1"}).code, 2);
  EXPECT_EQ(sdtool({"check-table", "/nonexistent/table"}).code, 2);
  std::filesystem::remove(spindle);
}
