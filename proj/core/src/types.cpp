#include "ctlehc/types.hpp"

#include <algorithm>
#include <sstream>

namespace ctlehc {

std::string value_str(const Value& v) {
  std::ostringstream os;
  os << v.numerator();
  if (v.denominator() != 1) os << '/' << v.denominator();
  return os.str();
}

std::string value_str(const Value& v, const Sort& s) {
  switch (s.kind()) {
    case SortKind::Bool:
      return v == 0 ? "false" : "true";
    case SortKind::Loc: {
      auto i = boost::rational_cast<std::int64_t>(v);
      if (i >= 0 && static_cast<std::size_t>(i) < s.labels().size()) return s.labels()[i];
      return value_str(v);
    }
    default:
      return value_str(v);
  }
}

ParseError::ParseError(const std::string& msg, SourceSpan span)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.col) + ": " + msg),
      span_(span) {}

Sort Sort::boolean() { return Sort{}; }

Sort Sort::integer() {
  Sort s;
  s.kind_ = SortKind::Int;
  return s;
}

Sort Sort::rational() {
  Sort s;
  s.kind_ = SortKind::Rat;
  return s;
}

Sort Sort::location(std::vector<std::string> labels) {
  Sort s;
  s.kind_ = SortKind::Loc;
  s.labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
  return s;
}

const std::vector<std::string>& Sort::labels() const {
  static const std::vector<std::string> empty;
  return labels_ ? *labels_ : empty;
}

std::optional<std::size_t> Sort::label_index(std::string_view label) const {
  const auto& ls = labels();
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ls.begin());
}

std::string Sort::str() const {
  switch (kind_) {
    case SortKind::Bool: return "bool";
    case SortKind::Int: return "int";
    case SortKind::Rat: return "rat";
    case SortKind::Loc: {
      std::string out = "{";
      for (std::size_t i = 0; i < labels().size(); ++i) {
        if (i) out += ", ";
        out += labels()[i];
      }
      return out + "}";
    }
  }
  return "?";
}

bool operator==(const Sort& a, const Sort& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != SortKind::Loc) return true;
  return a.labels_ == b.labels_ || a.labels() == b.labels();
}

std::string Var::display() const {
  std::string out = name;
  if (copy >= 0) out += "_c" + std::to_string(copy);
  out.append(static_cast<std::size_t>(prime), '\'');
  return out;
}

Var Var::primed(int by) const {
  Var v = *this;
  v.prime += by;
  return v;
}

Var Var::with_prime(int p) const {
  Var v = *this;
  v.prime = p;
  return v;
}

Var Var::copied(int i) const {
  Var v = *this;
  v.copy = i;
  return v;
}

Var Var::base() const { return Var{name, sort, 0, -1}; }

std::vector<Var> primed_all(const std::vector<Var>& vs, int by) {
  std::vector<Var> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.primed(by));
  return out;
}

std::vector<Var> copied_all(const std::vector<Var>& vs, int i) {
  std::vector<Var> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.copied(i));
  return out;
}

}  // namespace ctlehc
