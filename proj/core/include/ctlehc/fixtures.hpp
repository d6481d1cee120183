#pragma once

#include "ctlehc/frontend.hpp"
#include "ctlehc/program.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctlehc {

// A fixture is a program file whose leading comment lines carry metadata:
//   // name: <name>
//   // tags: <tag> ...          finite, micro, synth, golden
//   // spec: <formula>
//   // expect: true|false       frozen oracle verdict, absent for infinite systems
//   // fill <loc>: <assertion>  known hole fill (partial programs)
//   // note: <text>
// Partial programs use the .pprog extension.
struct Fixture {
  std::string name;
  std::string file;
  std::string text;
  std::set<std::string> tags;
  std::string spec;
  std::optional<bool> expect;
  std::vector<std::pair<std::string, std::string>> fills;
  std::vector<std::string> notes;

  bool partial() const;
  bool has(std::string_view tag) const { return tags.count(std::string(tag)) != 0; }
};

Fixture parse_fixture(std::string file, std::string text);

// The registry embedded at build time, sorted by name.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(std::string_view name);
std::vector<const Fixture*> fixtures_tagged(std::string_view tag);

struct LoadedFixture {
  Problem problem;        // for partial programs, the program without its holes
  PartialProgram partial;  // holes empty for plain programs
  Domains domains;
  std::map<std::string, Expr> fills;
};

LoadedFixture load_fixture(const Fixture& f);

// Writes every registry entry to `dir`, one file each. Returns the paths.
std::vector<std::filesystem::path> export_fixtures(const std::filesystem::path& dir);

}  // namespace ctlehc
