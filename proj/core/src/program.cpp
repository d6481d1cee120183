#include "ctlehc/program.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ctlehc {

namespace {

void check_scope(const Expr& e, const Program& p, int max_prime, const char* what) {
  for (const auto& v : free_vars(e)) {
    auto pv = p.find_var(v.name);
    if (!pv || v.copy >= 0 || v.prime > max_prime)
      throw Error(std::string(what) + " mentions " + v.display() + ", which is not allowed there");
  }
}

}  // namespace

std::optional<Var> Program::find_var(std::string_view name) const {
  for (const auto& v : vars)
    if (v.name == name) return v;
  return std::nullopt;
}

void Program::validate() const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].prime != 0 || vars[i].copy >= 0) throw Error("program variable " + vars[i].display() + " is decorated");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[j].name == vars[i].name) throw Error("duplicate variable " + vars[i].name);
  }
  if (init->sort.kind() != SortKind::Bool || next->sort.kind() != SortKind::Bool)
    throw Error("init and next must be boolean");
  check_scope(init, *this, 0, "init");
  check_scope(next, *this, 1, "next");
  for (const auto& j : fairness) check_scope(j, *this, 0, "a fairness assertion");
}

Var PartialProgram::pc() const {
  auto v = program.find_var("pc");
  if (!v || v->sort.kind() != SortKind::Loc) throw Error("a partial program needs a location variable pc");
  return *v;
}

std::vector<Var> PartialProgram::data_vars() const {
  std::vector<Var> out;
  for (const auto& v : program.vars)
    if (v.name != "pc") out.push_back(v);
  return out;
}

void PartialProgram::validate() const {
  program.validate();
  auto p = pc();
  auto known = [&](const std::string& l) {
    if (!p.sort.label_index(l)) throw Error("hole refers to unknown location " + l);
  };
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const auto& h = holes[i];
    known(h.loc);
    known(h.target);
    if (h.kind == Hole::Kind::Cond) {
      known(h.false_target);
      if (h.loc == h.target && h.loc == h.false_target)
        throw Error("condition hole at " + h.loc + " loops back on both branches");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (holes[j].loc == h.loc) throw Error("two holes at location " + h.loc);
  }
}

Value parse_value(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "true") return 1;
  if (text == "false") return 0;
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    const char* b = s.data();
    if (!s.empty() && s.front() == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("bad number '" + std::string(s) + "'");
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto d = parse_int(text.substr(slash + 1));
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return Value(parse_int(text.substr(0, slash)), d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    bool neg = !text.empty() && text.front() == '-';
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    Value v = Value(w < 0 ? -w : w) + Value(f, den);
    return neg ? -v : v;
  }
  return Value(parse_int(text));
}

void Domains::set(const std::string& key, std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  by_key_[key] = std::move(values);
}

std::vector<Value> Domains::values(const std::string& name, const Sort& sort) const {
  if (sort.kind() == SortKind::Bool) return {Value(0), Value(1)};
  if (sort.kind() == SortKind::Loc) {
    std::vector<Value> out;
    for (std::size_t i = 0; i < sort.labels().size(); ++i) out.emplace_back(static_cast<std::int64_t>(i));
    return out;
  }
  if (auto it = by_key_.find(name); it != by_key_.end()) return it->second;
  if (auto it = by_key_.find(sort.str()); it != by_key_.end()) return it->second;
  throw Error("no finite domain for " + name + " of sort " + sort.str());
}

void Domains::merge(const Domains& other) {
  for (const auto& [k, v] : other.by_key_) by_key_[k] = v;
}

Domains Domains::parse(std::string_view text) {
  Domains d;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',' || text[i] == ';')) ++i;
  };
  while (true) {
    skip();
    if (i >= text.size()) break;
    auto sep = text.find_first_of("=:", i);
    if (sep == std::string_view::npos) throw Error("bad domain entry '" + std::string(text.substr(i)) + "'");
    std::string key(text.substr(i, sep - i));
    key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }), key.end());
    i = sep + 1;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::vector<Value> vals;
    if (i < text.size() && text[i] == '{') {
      auto close = text.find('}', i);
      if (close == std::string_view::npos) throw Error("unterminated value set for " + key);
      auto body = text.substr(i + 1, close - i - 1);
      std::size_t s = 0;
      while (s <= body.size()) {
        auto comma = body.find(',', s);
        auto item = body.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s);
        bool blank = std::all_of(item.begin(), item.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) vals.push_back(parse_value(item));
        if (comma == std::string_view::npos) break;
        s = comma + 1;
      }
      i = close + 1;
    } else {
      auto end = text.find_first_of(",;", i);
      auto item = text.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i);
      auto dots = item.find("..");
      if (dots == std::string_view::npos) throw Error("expected lo..hi or {..} for " + key);
      Value lo = parse_value(item.substr(0, dots)), hi = parse_value(item.substr(dots + 2));
      if (lo.denominator() != 1 || hi.denominator() != 1) throw Error("range bounds must be integers for " + key);
      if (hi < lo) throw Error("empty range for " + key);
      for (auto v = lo.numerator(); v <= hi.numerator(); ++v) vals.emplace_back(v);
      i = end == std::string_view::npos ? text.size() : end;
    }
    if (key.empty()) throw Error("empty domain key");
    d.set(key, std::move(vals));
  }
  return d;
}

namespace {

std::string values_text(const std::vector<Value>& vs) {
  bool range = vs.size() > 2;
  for (std::size_t i = 0; range && i < vs.size(); ++i) {
    if (vs[i].denominator() != 1) range = false;
    if (i && vs[i] != vs[i - 1] + 1) range = false;
  }
  if (range) return value_str(vs.front()) + ".." + value_str(vs.back());
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + value_str(vs[i]);
  return out + "}";
}

}  // namespace

std::string Domains::str() const {
  std::string out;
  for (const auto& [k, v] : by_key_) {
    if (!out.empty()) out += ", ";
    out += k + "=" + values_text(v);
  }
  return out;
}

std::string program_to_string(const Program& p, const Domains* domains) {
  std::ostringstream os;
  os << "vars {\n";
  for (const auto& v : p.vars) os << "  " << v.name << ": " << v.sort.str() << ";\n";
  os << "}\n";
  if (domains && !domains->entries().empty()) {
    os << "domain {\n";
    for (const auto& [k, v] : domains->entries()) os << "  " << k << ": " << values_text(v) << ";\n";
    os << "}\n";
  }
  os << "init { " << to_string(p.init) << " }\n";
  os << "next {\n";
  auto ds = disjuncts(p.next);
  for (std::size_t i = 0; i < ds.size(); ++i)
    os << "  " << (i ? "| " : "  ") << to_string(ds[i], ds.size() > 1 ? 4 : 0) << "\n";
  os << "}\n";
  if (!p.fairness.empty()) {
    os << "fair {\n";
    for (const auto& j : p.fairness) os << "  " << to_string(j) << ";\n";
    os << "}\n";
  }
  return os.str();
}

}  // namespace ctlehc
