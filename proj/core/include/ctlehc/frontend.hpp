#pragma once

#include "ctlehc/program.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctlehc {

struct ProgramFile {
  Program program;
  Domains domains;
  std::vector<Hole> holes;
};

// Program text:
//   vars { x: int; b: bool; r: rat; pc: {l1, l2}; }
//   domain { x: 0..3; rat: {0, 1/2, 1}; }      (optional)
//   init { <assertion> }
//   next { <assertion over v and v'> }
//   fair { <assertion>; ... }                   (optional)
//   hole cond <l> <l_t> <l_f>;                  (partial programs)
//   hole assign <l> <l'>;
ProgramFile parse_program_file(std::string_view text);
Program parse_program(std::string_view text);
PartialProgram parse_partial_program(std::string_view text);

// Name resolution for expression parsing.
struct Scope {
  std::vector<Var> vars;  // matched by display name
  std::vector<PredPtr> preds;
  bool allow_primes = false;
  // When set, unknown primed identifiers resolve to primed program variables.
  bool prime_program_vars = false;
};

Expr parse_assertion(std::string_view text, const Scope& scope);
// Parses a CTL* state formula. Assertions may use predicate atoms of scope.
Formula parse_formula(std::string_view text, const Scope& scope);
Formula parse_formula(std::string_view text, const Program& program);

// Negation normal form: negation only inside assertions, F rewritten as
// true U ψ, ¬G/¬X/¬U/¬A/¬E pushed inward.
Formula to_nnf(const Formula& f);

std::string print_formula(const Formula& f);
std::string print_program(const Program& p);

namespace detail {

enum class Tok {
  Ident, Number, LParen, RParen, LBrace, RBrace, LBracket, RBracket, Comma, Semi, Colon, Dot, DotDot,
  Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, Slash, Bang, Amp, Bar, Arrow, DArrow, End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int primes = 0;  // Ident only
  SourceSpan span;
};

std::vector<Token> lex(std::string_view text);
std::string tok_name(Tok t);

// Recursive-descent parser over a token stream. Shared by the program,
// formula and clause readers.
class Parser {
 public:
  Parser(std::vector<Token> toks, Scope scope);

  const Token& peek(std::size_t ahead = 0) const;
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view word) const;
  Token take();
  Token expect(Tok k, std::string_view what);
  void expect_ident(std::string_view word);
  bool accept(Tok k);
  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void fail(const std::string& msg, const SourceSpan& at) const;

  Formula formula();
  Expr expr();
  Sort sort();
  Value value();
  std::vector<Value> value_set();

  Scope& scope() { return scope_; }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<Node>;
  NodePtr p_iff();
  NodePtr p_impl();
  NodePtr p_or();
  NodePtr p_and();
  NodePtr p_until();
  NodePtr p_cmp();
  NodePtr p_sum();
  NodePtr p_prod();
  NodePtr p_unary();
  NodePtr p_primary();
  Formula lower_formula(const NodePtr& n);
  Expr lower_expr(const NodePtr& n);
  bool temporal(const NodePtr& n) const;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Scope scope_;
};

}  // namespace detail

}  // namespace ctlehc
