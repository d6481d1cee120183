#include "ctlehc/frontend.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace ctlehc {

namespace detail {

struct Parser::Node {
  enum class K { Num, Ident, True, False, Call, Unary, Binary };
  K k = K::Num;
  std::string op;  // operator or keyword for Unary/Binary
  std::string text;
  int primes = 0;
  std::vector<NodePtr> kids;
  std::vector<Token> args;
  SourceSpan span;
};

namespace {

const std::set<std::string> kTemporalOps = {"X", "G", "F", "U", "A", "E", "Af", "Ef"};

bool is_keyword(const std::string& s) {
  return kTemporalOps.count(s) || s == "true" || s == "false";
}

}  // namespace

Parser::Parser(std::vector<Token> toks, Scope scope) : toks_(std::move(toks)), scope_(std::move(scope)) {}

const Token& Parser::peek(std::size_t ahead) const {
  return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
}

bool Parser::at_ident(std::string_view word) const {
  return peek().kind == Tok::Ident && peek().text == word && peek().primes == 0;
}

Token Parser::take() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

Token Parser::expect(Tok k, std::string_view what) {
  if (!at(k)) fail("expected " + std::string(what) + ", found " + (at(Tok::End) ? tok_name(Tok::End) : "'" + peek().text + "'"));
  return take();
}

void Parser::expect_ident(std::string_view word) {
  if (!at_ident(word)) fail("expected '" + std::string(word) + "'");
  take();
}

bool Parser::accept(Tok k) {
  if (!at(k)) return false;
  take();
  return true;
}

void Parser::fail(const std::string& msg) const { fail(msg, peek().span); }

void Parser::fail(const std::string& msg, const SourceSpan& at) const { throw ParseError(msg, at); }

Parser::NodePtr Parser::p_iff() {
  auto l = p_impl();
  while (at(Tok::DArrow)) {
    auto sp = take().span;
    auto n = std::make_shared<Node>();
    n->k = Node::K::Binary;
    n->op = "<->";
    n->span = sp;
    n->kids = {l, p_impl()};
    l = n;
  }
  return l;
}

Parser::NodePtr Parser::p_impl() {
  auto l = p_or();
  if (at(Tok::Arrow)) {
    auto sp = take().span;
    auto n = std::make_shared<Node>();
    n->k = Node::K::Binary;
    n->op = "->";
    n->span = sp;
    n->kids = {l, p_impl()};
    return n;
  }
  return l;
}

Parser::NodePtr Parser::p_or() {
  auto l = p_and();
  if (!at(Tok::Bar)) return l;
  auto n = std::make_shared<Node>();
  n->k = Node::K::Binary;
  n->op = "|";
  n->span = l->span;
  n->kids = {l};
  while (accept(Tok::Bar)) n->kids.push_back(p_and());
  return n;
}

Parser::NodePtr Parser::p_and() {
  auto l = p_until();
  if (!at(Tok::Amp)) return l;
  auto n = std::make_shared<Node>();
  n->k = Node::K::Binary;
  n->op = "&";
  n->span = l->span;
  n->kids = {l};
  while (accept(Tok::Amp)) n->kids.push_back(p_until());
  return n;
}

Parser::NodePtr Parser::p_until() {
  auto l = p_cmp();
  if (at_ident("U")) {
    auto sp = take().span;
    auto n = std::make_shared<Node>();
    n->k = Node::K::Binary;
    n->op = "U";
    n->span = sp;
    n->kids = {l, p_until()};
    return n;
  }
  return l;
}

Parser::NodePtr Parser::p_cmp() {
  auto l = p_sum();
  static const std::pair<Tok, const char*> ops[] = {{Tok::Eq, "="}, {Tok::Ne, "!="}, {Tok::Lt, "<"},
                                                    {Tok::Le, "<="}, {Tok::Gt, ">"}, {Tok::Ge, ">="}};
  for (const auto& [t, s] : ops) {
    if (at(t)) {
      auto sp = take().span;
      auto n = std::make_shared<Node>();
      n->k = Node::K::Binary;
      n->op = s;
      n->span = sp;
      n->kids = {l, p_sum()};
      return n;
    }
  }
  return l;
}

Parser::NodePtr Parser::p_sum() {
  auto l = p_prod();
  while (at(Tok::Plus) || at(Tok::Minus)) {
    auto t = take();
    auto n = std::make_shared<Node>();
    n->k = Node::K::Binary;
    n->op = t.kind == Tok::Plus ? "+" : "-";
    n->span = t.span;
    n->kids = {l, p_prod()};
    l = n;
  }
  return l;
}

Parser::NodePtr Parser::p_prod() {
  auto l = p_unary();
  while (at(Tok::Star) || at(Tok::Slash)) {
    auto t = take();
    auto n = std::make_shared<Node>();
    n->k = Node::K::Binary;
    n->op = t.kind == Tok::Star ? "*" : "/";
    n->span = t.span;
    n->kids = {l, p_unary()};
    l = n;
  }
  return l;
}

Parser::NodePtr Parser::p_unary() {
  auto make_unary = [&](std::string op, bool temporal) {
    auto sp = take().span;
    auto n = std::make_shared<Node>();
    n->k = Node::K::Unary;
    n->op = std::move(op);
    n->span = sp;
    // Temporal prefixes scope over a whole comparison: G x = 0 is G (x = 0).
    n->kids = {temporal ? p_cmp() : p_unary()};
    return n;
  };
  if (at(Tok::Bang)) return make_unary("!", false);
  if (at(Tok::Minus)) return make_unary("neg", false);
  if (at(Tok::Ident) && peek().primes == 0 && kTemporalOps.count(peek().text) && peek().text != "U")
    return make_unary(peek().text, true);
  return p_primary();
}

Parser::NodePtr Parser::p_primary() {
  auto n = std::make_shared<Node>();
  n->span = peek().span;
  if (at(Tok::Number)) {
    n->k = Node::K::Num;
    n->text = take().text;
    return n;
  }
  if (accept(Tok::LParen)) {
    auto inner = p_iff();
    expect(Tok::RParen, "')'");
    return inner;
  }
  if (at(Tok::Ident)) {
    auto t = take();
    if (t.primes == 0 && t.text == "true") {
      n->k = Node::K::True;
      return n;
    }
    if (t.primes == 0 && t.text == "false") {
      n->k = Node::K::False;
      return n;
    }
    if (t.primes == 0 && is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'", t.span);
    n->text = t.text;
    n->primes = t.primes;
    if (t.primes == 0 && at(Tok::LParen)) {
      take();
      n->k = Node::K::Call;
      if (!at(Tok::RParen)) {
        do {
          n->args.push_back(expect(Tok::Ident, "argument variable"));
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen, "')'");
      return n;
    }
    n->k = Node::K::Ident;
    return n;
  }
  fail(at(Tok::End) ? "unexpected end of input" : "unexpected '" + peek().text + "'");
}

bool Parser::temporal(const NodePtr& n) const {
  if ((n->k == Node::K::Unary || n->k == Node::K::Binary) && kTemporalOps.count(n->op)) return true;
  return std::any_of(n->kids.begin(), n->kids.end(), [this](const NodePtr& k) { return temporal(k); });
}

Expr Parser::lower_expr(const NodePtr& n) {
  auto resolve_var = [&](const std::string& text, int primes, const SourceSpan& sp) -> std::optional<Var> {
    std::string display = text + std::string(static_cast<std::size_t>(primes), '\'');
    for (const auto& v : scope_.vars)
      if (v.display() == display) {
        if (v.prime > 0 && !scope_.allow_primes) fail("primed variable " + display + " not allowed here", sp);
        return v;
      }
    if (primes > 0) {
      if (!scope_.allow_primes) fail("primed variable " + display + " not allowed here", sp);
      if (scope_.prime_program_vars)
        for (const auto& v : scope_.vars)
          if (v.display() == text) return v.primed(primes);
    }
    return std::nullopt;
  };
  try {
    switch (n->k) {
      case Node::K::Num:
        return ex::num(parse_value(n->text));
      case Node::K::True:
        return ex::t();
      case Node::K::False:
        return ex::f();
      case Node::K::Ident: {
        if (auto v = resolve_var(n->text, n->primes, n->span)) return ex::var(*v);
        if (n->primes == 0) {
          std::optional<Sort> found;
          for (const auto& v : scope_.vars) {
            if (v.sort.kind() == SortKind::Loc && v.sort.label_index(n->text)) {
              if (found && !(*found == v.sort)) fail("ambiguous location label '" + n->text + "'", n->span);
              found = v.sort;
            }
          }
          if (found) return ex::label(*found, n->text);
        }
        fail("unknown identifier '" + n->text + std::string(static_cast<std::size_t>(n->primes), '\'') + "'", n->span);
      }
      case Node::K::Call: {
        PredPtr p;
        for (const auto& q : scope_.preds)
          if (q->name == n->text) p = q;
        if (!p) fail("unknown predicate '" + n->text + "'", n->span);
        std::vector<Var> args;
        for (const auto& a : n->args) {
          auto v = resolve_var(a.text, a.primes, a.span);
          if (!v) fail("unknown variable '" + a.text + "'", a.span);
          args.push_back(*v);
        }
        return ex::pred(p, std::move(args));
      }
      case Node::K::Unary: {
        auto a = lower_expr(n->kids[0]);
        if (n->op == "!") return ex::not_(a);
        if (n->op == "neg") return ex::neg(a);
        fail("temporal operator inside an assertion", n->span);
      }
      case Node::K::Binary: {
        std::vector<Expr> ks;
        for (const auto& k : n->kids) ks.push_back(lower_expr(k));
        const auto& op = n->op;
        if (op == "&") return ex::and_(std::move(ks));
        if (op == "|") return ex::or_(std::move(ks));
        if (op == "->") return ex::implies(ks[0], ks[1]);
        if (op == "<->") return ex::iff(ks[0], ks[1]);
        if (op == "+") return ex::add(ks[0], ks[1]);
        if (op == "-") return ex::sub(ks[0], ks[1]);
        if (op == "*") return ex::mul(ks[0], ks[1]);
        if (op == "/") return ex::div(ks[0], ks[1]);
        if (op == "=") return ex::eq(ks[0], ks[1]);
        if (op == "!=") return ex::ne(ks[0], ks[1]);
        if (op == "<") return ex::lt(ks[0], ks[1]);
        if (op == "<=") return ex::le(ks[0], ks[1]);
        if (op == ">") return ex::gt(ks[0], ks[1]);
        if (op == ">=") return ex::ge(ks[0], ks[1]);
        fail("temporal operator inside an assertion", n->span);
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(e.what(), n->span);
  }
  fail("malformed expression", n->span);
}

Formula Parser::lower_formula(const NodePtr& n) {
  if (!temporal(n)) {
    auto e = lower_expr(n);
    if (e->sort.kind() != SortKind::Bool) fail("expected a boolean formula", n->span);
    return fm::atom(e);
  }
  std::vector<Formula> ks;
  auto lower_kids = [&] {
    for (const auto& k : n->kids) ks.push_back(lower_formula(k));
  };
  const auto& op = n->op;
  if (op == "&" || op == "|") {
    lower_kids();
    return op == "&" ? fm::and_(std::move(ks)) : fm::or_(std::move(ks));
  }
  if (op == "!") return fm::not_(lower_formula(n->kids[0]));
  if (op == "->") {
    lower_kids();
    return fm::or_(fm::not_(ks[0]), ks[1]);
  }
  if (op == "<->") {
    lower_kids();
    return fm::or_(fm::and_(ks[0], ks[1]), fm::and_(fm::not_(ks[0]), fm::not_(ks[1])));
  }
  if (op == "U") {
    lower_kids();
    return fm::U(ks[0], ks[1]);
  }
  if (n->k == Node::K::Unary && kTemporalOps.count(op)) {
    auto a = lower_formula(n->kids[0]);
    if (op == "X") return fm::X(a);
    if (op == "G") return fm::G(a);
    if (op == "F") return fm::F(a);
    if (op == "A") return fm::A(a);
    if (op == "E") return fm::E(a);
    if (op == "Af") return fm::Af(a);
    if (op == "Ef") return fm::Ef(a);
  }
  fail("temporal formula used as an arithmetic or comparison operand", n->span);
}

Formula Parser::formula() {
  auto n = p_iff();
  return lower_formula(n);
}

Expr Parser::expr() {
  auto n = p_iff();
  if (temporal(n)) fail("temporal operator inside an assertion", n->span);
  return lower_expr(n);
}

Sort Parser::sort() {
  if (accept(Tok::LBrace)) {
    std::vector<std::string> labels;
    do {
      auto t = expect(Tok::Ident, "location label");
      if (t.primes) fail("location labels cannot be primed", t.span);
      if (std::find(labels.begin(), labels.end(), t.text) != labels.end())
        fail("duplicate label " + t.text, t.span);
      labels.push_back(t.text);
    } while (accept(Tok::Comma));
    expect(Tok::RBrace, "'}'");
    return Sort::location(std::move(labels));
  }
  auto t = expect(Tok::Ident, "a sort");
  if (t.text == "bool") return Sort::boolean();
  if (t.text == "int") return Sort::integer();
  if (t.text == "rat" || t.text == "real") return Sort::rational();
  fail("unknown sort '" + t.text + "'", t.span);
}

Value Parser::value() {
  bool neg = accept(Tok::Minus);
  if (at_ident("true") || at_ident("false")) {
    bool b = take().text == "true";
    return b ? 1 : 0;
  }
  auto t = expect(Tok::Number, "a number");
  Value v = parse_value(t.text);
  if (accept(Tok::Slash)) {
    auto d = expect(Tok::Number, "a denominator");
    Value dv = parse_value(d.text);
    if (dv == 0) fail("zero denominator", d.span);
    v /= dv;
  }
  return neg ? -v : v;
}

std::vector<Value> Parser::value_set() {
  std::vector<Value> out;
  if (accept(Tok::LBrace)) {
    if (!at(Tok::RBrace)) {
      do {
        out.push_back(value());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RBrace, "'}'");
    return out;
  }
  auto sp = peek().span;
  Value lo = value();
  expect(Tok::DotDot, "'..'");
  Value hi = value();
  if (lo.denominator() != 1 || hi.denominator() != 1) fail("range bounds must be integers", sp);
  if (hi < lo) fail("empty range", sp);
  for (auto v = lo.numerator(); v <= hi.numerator(); ++v) out.emplace_back(v);
  return out;
}

}  // namespace detail

namespace {

using detail::Parser;
using detail::Tok;

void check_program_var_name(const detail::Token& t) {
  static const std::regex copy_suffix(".*_c[0-9]+");
  static const std::set<std::string> reserved = {"X", "G", "F", "U", "A", "E", "Af", "Ef", "true", "false",
                                                 "vars", "init", "next", "fair", "domain", "hole"};
  if (t.primes) throw ParseError("variable names cannot carry primes", t.span);
  if (reserved.count(t.text)) throw ParseError("'" + t.text + "' is reserved", t.span);
  if (std::regex_match(t.text, copy_suffix))
    throw ParseError("variable names ending in _c<digits> are reserved for copies", t.span);
}

}  // namespace

ProgramFile parse_program_file(std::string_view text) {
  Parser ps(detail::lex(text), Scope{});
  ProgramFile out;
  bool seen_vars = false, seen_init = false, seen_next = false;
  auto braced_expr = [&](bool primes) {
    ps.scope().allow_primes = primes;
    ps.scope().prime_program_vars = primes;
    ps.expect(Tok::LBrace, "'{'");
    auto e = ps.expr();
    ps.expect(Tok::RBrace, "'}'");
    if (e->sort.kind() != SortKind::Bool) ps.fail("expected a boolean assertion");
    return e;
  };
  while (!ps.at(Tok::End)) {
    if (ps.at_ident("vars")) {
      if (seen_vars) ps.fail("duplicate vars section");
      ps.take();
      ps.expect(Tok::LBrace, "'{'");
      while (!ps.accept(Tok::RBrace)) {
        auto name = ps.expect(Tok::Ident, "variable name");
        check_program_var_name(name);
        ps.expect(Tok::Colon, "':'");
        auto s = ps.sort();
        ps.expect(Tok::Semi, "';'");
        if (out.program.find_var(name.text)) throw ParseError("duplicate variable " + name.text, name.span);
        out.program.vars.push_back(Var{name.text, s});
      }
      ps.scope().vars = out.program.vars;
      seen_vars = true;
    } else if (!seen_vars) {
      ps.fail("the vars section must come first");
    } else if (ps.at_ident("domain")) {
      ps.take();
      ps.expect(Tok::LBrace, "'{'");
      while (!ps.accept(Tok::RBrace)) {
        auto key = ps.expect(Tok::Ident, "variable or sort name");
        ps.expect(Tok::Colon, "':'");
        out.domains.set(key.text, ps.value_set());
        ps.expect(Tok::Semi, "';'");
      }
    } else if (ps.at_ident("init")) {
      if (seen_init) ps.fail("duplicate init section");
      ps.take();
      out.program.init = braced_expr(false);
      seen_init = true;
    } else if (ps.at_ident("next")) {
      if (seen_next) ps.fail("duplicate next section");
      ps.take();
      out.program.next = braced_expr(true);
      seen_next = true;
    } else if (ps.at_ident("fair")) {
      ps.take();
      ps.scope().allow_primes = false;
      ps.expect(Tok::LBrace, "'{'");
      while (!ps.accept(Tok::RBrace)) {
        auto e = ps.expr();
        if (e->sort.kind() != SortKind::Bool) ps.fail("fairness assertions must be boolean");
        out.program.fairness.push_back(e);
        ps.expect(Tok::Semi, "';'");
      }
    } else if (ps.at_ident("hole")) {
      ps.take();
      Hole h;
      if (ps.at_ident("cond")) {
        ps.take();
        h.kind = Hole::Kind::Cond;
        h.loc = ps.expect(Tok::Ident, "location").text;
        h.target = ps.expect(Tok::Ident, "location").text;
        h.false_target = ps.expect(Tok::Ident, "location").text;
      } else if (ps.at_ident("assign")) {
        ps.take();
        h.kind = Hole::Kind::Assign;
        h.loc = ps.expect(Tok::Ident, "location").text;
        h.target = ps.expect(Tok::Ident, "location").text;
      } else {
        ps.fail("expected 'cond' or 'assign'");
      }
      ps.expect(Tok::Semi, "';'");
      out.holes.push_back(std::move(h));
    } else {
      ps.fail("expected a section (vars, domain, init, next, fair, hole)");
    }
  }
  if (!seen_vars) throw ParseError("missing vars section", {1, 1, 1, 1});
  out.program.validate();
  return out;
}

Program parse_program(std::string_view text) {
  auto f = parse_program_file(text);
  if (!f.holes.empty()) throw Error("holes are only allowed in partial programs");
  return f.program;
}

PartialProgram parse_partial_program(std::string_view text) {
  auto f = parse_program_file(text);
  PartialProgram pp{f.program, f.holes};
  pp.validate();
  return pp;
}

Expr parse_assertion(std::string_view text, const Scope& scope) {
  Parser ps(detail::lex(text), scope);
  auto e = ps.expr();
  if (!ps.at(Tok::End)) ps.fail("trailing input");
  return e;
}

Formula parse_formula(std::string_view text, const Scope& scope) {
  Parser ps(detail::lex(text), scope);
  auto f = ps.formula();
  if (!ps.at(Tok::End)) ps.fail("trailing input");
  if (!is_state_formula(f))
    throw ParseError("path formula at top level; wrap it in a path quantifier", {1, 1, 1, 1});
  return f;
}

Formula parse_formula(std::string_view text, const Program& program) {
  Scope s;
  s.vars = program.vars;
  return parse_formula(text, s);
}

std::string print_formula(const Formula& f) { return to_string(f); }
std::string print_program(const Program& p) { return program_to_string(p); }

}  // namespace ctlehc
