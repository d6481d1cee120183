#include "ctlehc/emit.hpp"
#include "ctlehc/frontend.hpp"

#include <map>
#include <regex>
#include <sstream>

namespace ctlehc {

namespace {

// Conjuncts are printed above conjunction precedence so that a top-level
// `&` always separates them.
constexpr int kConjunctPrec = 5;

std::string decl_str(const Var& v) { return v.display() + ":" + v.sort.str(); }

std::string conj_str(const Expr& constraint, const std::vector<Atom>& atoms, const char* empty) {
  std::vector<std::string> parts;
  for (const auto& c : conjuncts(constraint)) parts.push_back(to_string(c, kConjunctPrec));
  if (is_false(constraint)) parts = {"false"};
  for (const auto& a : atoms) parts.push_back(a.str());
  if (parts.empty()) return empty;
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " & " : "") + parts[i];
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

Var var_from_token(const detail::Token& t, const Sort& sort) {
  static const std::regex copy_re("(.*)_c([0-9]+)");
  Var v;
  v.sort = sort;
  v.prime = t.primes;
  std::smatch m;
  if (std::regex_match(t.text, m, copy_re)) {
    v.name = m[1];
    v.copy = std::stoi(m[2]);
  } else {
    v.name = t.text;
  }
  return v;
}

// "<var>:<sort> <var>:<sort> ..." up to the end of the text.
std::vector<Var> parse_decls(std::string_view text, bool commas) {
  detail::Parser p(detail::lex(text), Scope{});
  std::vector<Var> out;
  while (!p.at(detail::Tok::End)) {
    auto t = p.expect(detail::Tok::Ident, "variable");
    p.expect(detail::Tok::Colon, "':'");
    out.push_back(var_from_token(t, p.sort()));
    if (commas && !p.at(detail::Tok::End)) p.expect(detail::Tok::Comma, "','");
  }
  return out;
}

std::size_t find_top_level(std::string_view s, std::string_view needle) {
  int depth = 0;
  for (std::size_t i = 0; i + needle.size() <= s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (depth == 0 && s.substr(i, needle.size()) == needle) return i;
  }
  return std::string_view::npos;
}

struct Conj {
  Expr constraint = ex::t();
  std::vector<Atom> atoms;
};

Conj parse_conj(std::string_view text, const Scope& scope) {
  Expr e = parse_assertion(text, scope);
  Conj out;
  std::vector<Expr> cs;
  auto take = [&](const Expr& k) {
    if (k->op == ExprOp::Pred)
      out.atoms.push_back(Atom{k->pred, k->args});
    else
      cs.push_back(k);
  };
  if (e->op == ExprOp::And)
    for (const auto& k : e->kids) take(k);
  else
    take(e);
  out.constraint = ex::and_(std::move(cs));
  return out;
}

}  // namespace

std::string emit_clauses_text(const ClauseSet& cs) {
  std::ostringstream os;
  for (const auto& p : cs.preds) {
    os << "decl " << p->name << "/" << p->arity() << " (";
    for (std::size_t i = 0; i < p->params.size(); ++i) os << (i ? ", " : "") << decl_str(p->params[i]);
    os << ")";
    if (cs.is_dwf(p->name)) os << " dwf";
    os << "\n";
  }
  for (const auto& c : cs.clauses) {
    os << "clause [" << c.tag << "]: forall";
    for (const auto& v : c.all_vars) os << " " << decl_str(v);
    os << ". " << conj_str(c.body_constraint, c.body_atoms, "true") << " -> ";
    if (!c.exist_vars.empty()) {
      os << "exists";
      for (const auto& v : c.exist_vars) os << " " << decl_str(v);
      os << ". ";
    }
    os << conj_str(c.head_constraint, c.head_atoms, "true") << "\n";
  }
  for (const auto& d : cs.dwf) os << "dwf " << d.pred->name << "\n";
  return os.str();
}

ClauseSet parse_clauses_text(std::string_view text) {
  static const std::regex decl_re(R"(decl\s+([A-Za-z_][A-Za-z0-9_]*)/([0-9]+)\s*\((.*)\)\s*(dwf)?\s*)");
  static const std::regex clause_re(R"(clause\s*\[([^\]]*)\]\s*:\s*forall(.*))");
  static const std::regex dwf_re(R"(dwf\s+([A-Za-z_][A-Za-z0-9_]*)\s*)");
  ClauseSet cs;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::map<std::string, std::size_t> derived_at;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line.rfind("//", 0) == 0) continue;
    auto where = [&](const std::string& msg) { return Error("line " + std::to_string(lineno) + ": " + msg); };
    std::smatch m;
    try {
      if (std::regex_match(line, m, decl_re)) {
        auto params = parse_decls(m[3].str(), true);
        if (params.size() != std::stoul(m[2])) throw where("arity does not match the parameter list");
        cs.declare(make_pred(m[1], std::move(params)));
        continue;
      }
      if (std::regex_match(line, m, dwf_re)) {
        auto p = cs.find_pred(m[1].str());
        if (!p) throw where("dwf for undeclared predicate " + m[1].str());
        cs.dwf.push_back({p, ""});
        continue;
      }
      if (!std::regex_match(line, m, clause_re)) throw where("unrecognized line");
      Clause c;
      c.tag = m[1];
      std::string rest = m[2];
      auto dot = rest.find('.');
      if (dot == std::string::npos) throw where("missing '.' after the universal variables");
      c.all_vars = parse_decls(rest.substr(0, dot), false);
      rest = rest.substr(dot + 1);
      auto arrow = find_top_level(rest, " -> ");
      if (arrow == std::string::npos) throw where("missing '->'");
      std::string body = rest.substr(0, arrow);
      std::string head = trim(rest.substr(arrow + 4));
      if (head.rfind("exists", 0) == 0 && head.size() > 6 && (std::isspace(static_cast<unsigned char>(head[6])) || head[6] == '.')) {
        auto hd = head.find('.');
        if (hd == std::string::npos) throw where("missing '.' after the existential variables");
        c.exist_vars = parse_decls(head.substr(6, hd - 6), false);
        head = head.substr(hd + 1);
      }
      Scope scope;
      scope.vars = c.all_vars;
      scope.vars.insert(scope.vars.end(), c.exist_vars.begin(), c.exist_vars.end());
      scope.preds = cs.preds;
      scope.allow_primes = true;
      auto b = parse_conj(body, scope);
      auto h = parse_conj(head, scope);
      c.body_constraint = b.constraint;
      c.body_atoms = b.atoms;
      c.head_constraint = h.constraint;
      c.head_atoms = h.atoms;
      c.validate();

      if (c.tag.find("/or#") != std::string::npos && c.body_atoms.size() == 1) {
        const Atom& sel = c.body_atoms[0];
        bool second = c.body_constraint->op != ExprOp::Not;
        auto it = derived_at.find(sel.pred->name);
        if (it == derived_at.end()) {
          Derivation d;
          d.kind = Derivation::Kind::Selector;
          d.pred = sel.pred;
          d.params = sel.args;
          it = derived_at.emplace(sel.pred->name, cs.derived.size()).first;
          cs.derived.push_back(d);
        }
        cs.derived[it->second].branch[second ? 1 : 0] = HeadSpec{c.exist_vars, c.head_constraint, c.head_atoms};
      } else if (c.tag.rfind("neg#", 0) == 0 && c.body_atoms.size() == 2 && is_false(c.head_constraint)) {
        Derivation d;
        d.kind = Derivation::Kind::Complement;
        d.pred = c.body_atoms[1].pred;
        d.base = c.body_atoms[0].pred;
        derived_at.emplace(d.pred->name, cs.derived.size());
        cs.derived.push_back(d);
      }
      cs.clauses.push_back(std::move(c));
    } catch (const ParseError& e) {
      throw where(e.what());
    }
  }
  cs.validate();
  return cs;
}

}  // namespace ctlehc
