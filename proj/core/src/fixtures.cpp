#include "ctlehc/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace ctlehc {

namespace detail {
struct FixtureSource {
  const char* file;
  const char* text;
};
// Generated from the fixtures directory.
extern const FixtureSource kFixtureSources[];
extern const std::size_t kFixtureSourceCount;
}  // namespace detail

bool Fixture::partial() const { return file.size() > 6 && file.substr(file.size() - 6) == ".pprog"; }

Fixture parse_fixture(std::string file, std::string text) {
  static const std::regex meta_re(R"(//\s*([a-z]+)(\s+[A-Za-z_][A-Za-z0-9_]*)?\s*:\s?(.*))");
  Fixture f;
  f.file = std::move(file);
  f.text = std::move(text);
  std::istringstream in(f.text);
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, meta_re)) break;
    const std::string key = m[1];
    const std::string arg = m[2].matched ? std::regex_replace(m[2].str(), std::regex(R"(\s+)"), "") : "";
    const std::string value = m[3];
    if (key == "name") {
      f.name = value;
    } else if (key == "tags") {
      std::istringstream ts(value);
      for (std::string t; ts >> t;) f.tags.insert(t);
    } else if (key == "spec") {
      f.spec = value;
    } else if (key == "expect") {
      if (value != "true" && value != "false") throw Error(f.file + ": expect must be true or false");
      f.expect = value == "true";
    } else if (key == "fill") {
      if (arg.empty()) throw Error(f.file + ": fill needs a location");
      f.fills.emplace_back(arg, value);
    } else if (key == "note") {
      f.notes.push_back(value);
    } else {
      throw Error(f.file + ": unknown fixture key '" + key + "'");
    }
  }
  if (f.name.empty()) throw Error(f.file + ": missing name");
  if (f.spec.empty()) throw Error(f.file + ": missing spec");
  return f;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> out;
    for (std::size_t i = 0; i < detail::kFixtureSourceCount; ++i)
      out.push_back(parse_fixture(detail::kFixtureSources[i].file, detail::kFixtureSources[i].text));
    std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
    return out;
  }();
  return all;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw Error("unknown fixture '" + std::string(name) + "'");
}

std::vector<const Fixture*> fixtures_tagged(std::string_view tag) {
  std::vector<const Fixture*> out;
  for (const auto& f : fixtures())
    if (f.has(tag)) out.push_back(&f);
  return out;
}

LoadedFixture load_fixture(const Fixture& f) {
  LoadedFixture out;
  ProgramFile pf = parse_program_file(f.text);
  out.domains = pf.domains;
  out.partial.program = pf.program;
  out.partial.holes = pf.holes;
  if (f.partial()) out.partial.validate();
  out.problem.program = pf.program;
  out.problem.spec = parse_formula(f.spec, pf.program);
  if (!f.fills.empty()) {
    Scope scope;
    auto vr = out.partial.data_vars();
    scope.vars = vr;
    for (const auto& v : vr) scope.vars.push_back(v.primed());
    scope.allow_primes = true;
    for (const auto& [loc, text] : f.fills) out.fills[loc] = parse_assertion(text, scope);
  }
  return out;
}

std::vector<std::filesystem::path> export_fixtures(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& f : fixtures()) {
    auto path = dir / f.file;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    os << f.text;
    out.push_back(path);
  }
  return out;
}

}  // namespace ctlehc
