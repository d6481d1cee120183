#include "ctlehc/fixtures.hpp"
#include "ctlehc/oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ctlehc;

TEST(Fixtures, RegistryMatchesDirectory) {
  std::set<std::string> on_disk;
  for (const auto& e : std::filesystem::directory_iterator(CTLEHC_FIXTURE_DIR)) {
    auto ext = e.path().extension();
    if (ext != ".prog" && ext != ".pprog") continue;
    on_disk.insert(e.path().filename().string());
    bool found = false;
    for (const auto& f : fixtures())
      if (f.file == e.path().filename().string()) {
        found = true;
        EXPECT_EQ(f.text, ctlehc::testing::read_file(e.path())) << f.file;
      }
    EXPECT_TRUE(found) << e.path();
  }
  EXPECT_EQ(on_disk.size(), fixtures().size());
}

TEST(Fixtures, NamesAreUniqueAndSorted) {
  std::set<std::string> names;
  for (const auto& f : fixtures()) EXPECT_TRUE(names.insert(f.name).second) << f.name;
  EXPECT_TRUE(std::is_sorted(fixtures().begin(), fixtures().end(),
                             [](const Fixture& a, const Fixture& b) { return a.name < b.name; }));
  EXPECT_THROW(fixture("no-such-fixture"), Error);
}

TEST(Fixtures, FiniteOnesCarryVerdicts) {
  for (const Fixture* f : fixtures_tagged("finite")) EXPECT_TRUE(f->expect) << f->name;
  for (const Fixture* f : fixtures_tagged("micro")) EXPECT_TRUE(f->expect) << f->name;
  for (const Fixture* f : fixtures_tagged("golden")) EXPECT_FALSE(f->expect) << f->name;
}

TEST(Fixtures, CorpusSizes) {
  EXPECT_GE(ctlehc::testing::small_finite_fixtures(6).size(), 20u);
  std::size_t micro_verification = 0, micro_synth = 0;
  for (const Fixture* f : fixtures_tagged("micro")) (f->partial() ? micro_synth : micro_verification)++;
  EXPECT_GE(micro_verification, 10u);
  EXPECT_GE(micro_synth, 5u);
}

TEST(Fixtures, EveryFixtureLoads) {
  for (const auto& f : fixtures()) {
    LoadedFixture l;
    ASSERT_NO_THROW(l = load_fixture(f)) << f.name;
    EXPECT_EQ(f.partial(), !l.partial.holes.empty()) << f.name;
    EXPECT_EQ(l.fills.size(), f.fills.size()) << f.name;
  }
}

TEST(Fixtures, MetadataParsing) {
  Fixture f = parse_fixture("a.pprog", "// name: a\n// tags: synth micro\n// spec: A G true\n// expect: false\n"
                                       "// fill l1: x' = x\n// note: hi\nvars { x: int; }\n// name: ignored\n");
  EXPECT_EQ(f.name, "a");
  EXPECT_TRUE(f.has("micro"));
  EXPECT_EQ(f.expect, std::optional<bool>(false));
  ASSERT_EQ(f.fills.size(), 1u);
  EXPECT_EQ(f.fills[0].first, "l1");
  EXPECT_TRUE(f.partial());
  EXPECT_THROW(parse_fixture("b.prog", "// spec: A G true\n"), Error);
  EXPECT_THROW(parse_fixture("b.prog", "// name: b\n// spec: A G true\n// expect: maybe\n"), Error);
  EXPECT_THROW(parse_fixture("b.prog", "// name: b\n// spec: A G true\n// colour: red\n"), Error);
}

TEST(Fixtures, Export) {
  auto dir = std::filesystem::temp_directory_path() / "ctlehc-export-test";
  std::filesystem::remove_all(dir);
  auto paths = export_fixtures(dir);
  EXPECT_EQ(paths.size(), fixtures().size());
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
  std::filesystem::remove_all(dir);
}
