#pragma once

#include "ctlehc/types.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace ctlehc {

// A predicate symbol. Its formal parameters fix the argument sorts; the
// parameter names select the finite domain of each position.
struct PredSym {
  std::string name;
  std::vector<Var> params;

  std::size_t arity() const { return params.size(); }
  const Sort& arg_sort(std::size_t i) const { return params[i].sort; }
  const std::string& arg_domain(std::size_t i) const { return params[i].name; }
};
using PredPtr = std::shared_ptr<const PredSym>;

PredPtr make_pred(std::string name, std::vector<Var> params);

enum class ExprOp {
  Const, Var, Add, Sub, Neg, Mul, Div,
  Eq, Ne, Lt, Le, Gt, Ge,
  Not, And, Or, Implies, Iff,
  Pred,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprOp op = ExprOp::Const;
  Sort sort;
  Value value;
  Var var;
  PredPtr pred;
  std::vector<Var> args;
  std::vector<Expr> kids;
};

namespace ex {

Expr t();
Expr f();
Expr boolean(bool b);
Expr num(const Value& v);
Expr num(const Value& v, const Sort& sort);
Expr label(const Sort& loc_sort, std::size_t index);
Expr label(const Sort& loc_sort, std::string_view name);
Expr var(const Var& v);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr neg(Expr a);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr cmp(ExprOp op, Expr a, Expr b);
Expr eq(Expr a, Expr b);
Expr ne(Expr a, Expr b);
Expr lt(Expr a, Expr b);
Expr le(Expr a, Expr b);
Expr gt(Expr a, Expr b);
Expr ge(Expr a, Expr b);
Expr not_(Expr a);
Expr and_(std::vector<Expr> kids);
Expr or_(std::vector<Expr> kids);
Expr and_(Expr a, Expr b);
Expr or_(Expr a, Expr b);
Expr implies(Expr a, Expr b);
Expr iff(Expr a, Expr b);
Expr pred(PredPtr p, std::vector<Var> args);
Expr pred(PredPtr p);  // applied to its own parameters
// Conjunction of v_i = w_i.
Expr vars_equal(const std::vector<Var>& vs, const std::vector<Var>& ws);

}  // namespace ex

bool is_true(const Expr& e);
bool is_false(const Expr& e);
bool has_atoms(const Expr& e);
bool has_vars(const Expr& e);
std::vector<Var> free_vars(const Expr& e);
void collect_free_vars(const Expr& e, std::vector<Var>& out);
std::vector<Expr> atoms_of(const Expr& e);
bool equal(const Expr& a, const Expr& b);
Expr rename(const Expr& e, const std::function<Var(const Var&)>& f);
Expr shift_primes(const Expr& e, int by);
Expr to_copy(const Expr& e, int copy);
// Top-level conjuncts (a non-And expression is its own single conjunct).
std::vector<Expr> conjuncts(const Expr& e);
std::vector<Expr> disjuncts(const Expr& e);
// Replace every atom of predicate `name` by `repl` applied to the atom's args.
Expr replace_atoms(const Expr& e, const std::function<Expr(const ExprNode&)>& repl);

std::string to_string(const Expr& e);
// Parenthesizes unless the expression binds at least as tightly as min_prec.
std::string to_string(const Expr& e, int min_prec);
void print(std::ostream& os, const Expr& e);

}  // namespace ctlehc
