#include "ctlehc/fixtures.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

using namespace ctlehc;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "ctlehc-cli-test";
    fs::remove_all(dir_);
    export_fixtures(dir_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  // Runs the CLI with `args`; stdout goes to out.txt in the scratch dir.
  static int run(const std::string& args) {
    std::string cmd = "\"" + ctlehc::testing::cli_path().string() + "\" " + args + " > \"" + out().string() +
                      "\" 2> \"" + (dir_ / "err.txt").string() + "\"";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  static fs::path out() { return dir_ / "out.txt"; }
  static std::string file(const std::string& name) { return "\"" + (dir_ / name).string() + "\""; }
  static std::string output() { return ctlehc::testing::read_file(out()); }

  static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, ModelCheckVerdicts) {
  EXPECT_EQ(run("model-check " + file("toggle-ag-taut.prog") + " \"A G (b | !b)\""), 0);
  EXPECT_EQ(run("model-check " + file("toggle-ag-notb.prog") + " \"A G !b\""), 1);
  EXPECT_EQ(run("model-check " + file("toggle-ag-taut.prog") + " \"A G (b | !b)\" --json"), 0);
  EXPECT_NE(output().find("\"holds\": true"), std::string::npos);
}

TEST_F(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("no-such-command"), 2);
  EXPECT_EQ(run("translate " + file("missing.prog") + " \"A G true\""), 2);
  EXPECT_EQ(run("model-check " + file("toggle-ag-taut.prog") + " \"A G (b |\""), 2);
  EXPECT_EQ(run("translate " + file("bank.pprog") + " \"A G true\""), 2);
}

TEST_F(Cli, TranslateWritesClausesAndReport) {
  auto clauses = dir_ / "robots.clauses";
  EXPECT_EQ(run("translate " + file("robots.prog") + " \"" + fixture("robots").spec + "\" -o \"" + clauses.string() + "\""), 0);
  std::string text = ctlehc::testing::read_file(clauses);
  EXPECT_EQ(text, ctlehc::testing::read_file(ctlehc::testing::golden_dir() / "robots.clauses"));
  EXPECT_NE(output().find("clauses: 46"), std::string::npos);
  EXPECT_EQ(run("translate " + file("toggle-af-b.prog") + " \"A F b\" --format json"), 0);
  EXPECT_EQ(output().front(), '{');
}

TEST_F(Cli, CheckInterpretation) {
  auto clauses = dir_ / "r8.clauses";
  ASSERT_EQ(run("translate " + file("toggle-ag-taut.prog") + " \"b | !b\" -o \"" + clauses.string() + "\""), 0);
  std::ofstream(dir_ / "empty.json") << "{\"relations\": {}}";
  EXPECT_EQ(run("check-interp \"" + clauses.string() + "\" " + file("empty.json")), 0);
  ASSERT_EQ(run("translate " + file("toggle-ag-taut.prog") + " \"b & !b\" -o \"" + clauses.string() + "\""), 0);
  EXPECT_EQ(run("check-interp \"" + clauses.string() + "\" " + file("empty.json")), 1);
}

TEST_F(Cli, EnumerateVerdictsAndCap) {
  auto clauses = dir_ / "t.clauses";
  ASSERT_EQ(run("translate " + file("toggle-af-b.prog") + " \"A F b\" -o \"" + clauses.string() + "\""), 0);
  EXPECT_EQ(run("enumerate \"" + clauses.string() + "\""), 0);
  EXPECT_EQ(run("enumerate \"" + clauses.string() + "\" --cap 1"), 3);
  ASSERT_EQ(run("translate " + file("toggle-eg-b.prog") + " \"" + fixture("toggle-eg-b").spec + "\" -o \"" +
                clauses.string() + "\""),
            0);
  EXPECT_EQ(run("enumerate \"" + clauses.string() + "\""), 1);
}

TEST_F(Cli, SynthEncodeAndApply) {
  EXPECT_EQ(run("synth encode " + file("bank.pprog") + " \"" + fixture("bank").spec + "\""), 0);
  EXPECT_EQ(output(), ctlehc::testing::read_file(ctlehc::testing::golden_dir() / "bank.clauses"));
  std::ofstream(dir_ / "psi.json") << R"({"cond": {}, "assign": {"l1": "b'"}})";
  EXPECT_EQ(run("synth apply " + file("syn-set.pprog") + " " + file("psi.json") + " --check \"A G (pc = l1 | b)\""), 0);
  std::ofstream(dir_ / "psi-bad.json") << R"({"cond": {}, "assign": {"l1": "!b'"}})";
  EXPECT_EQ(run("synth apply " + file("syn-set.pprog") + " " + file("psi-bad.json") + " --check \"A G (pc = l1 | b)\""), 1);
}

TEST_F(Cli, FixturesSubcommands) {
  EXPECT_EQ(run("fixtures list --tag micro"), 0);
  EXPECT_NE(output().find("toggle-af-b"), std::string::npos);
  EXPECT_EQ(run("fixtures run toggle-af-b --json"), 0);
  EXPECT_NE(output().find("\"ok\": true"), std::string::npos);
  EXPECT_EQ(run("fixtures run no-such"), 2);
}
