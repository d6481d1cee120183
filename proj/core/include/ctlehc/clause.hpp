#pragma once

#include "ctlehc/expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace ctlehc {

struct Atom {
  PredPtr pred;
  std::vector<Var> args;

  Expr expr() const { return ex::pred(pred, args); }
  std::string str() const;
};

// c(v0) ∧ q1(v1) ∧ ... → ∃w: b(w0) ∧ p1(w1) ∧ ...
struct Clause {
  std::vector<Var> all_vars;
  Expr body_constraint = ex::t();
  std::vector<Atom> body_atoms;
  std::vector<Var> exist_vars;
  Expr head_constraint = ex::t();
  std::vector<Atom> head_atoms;
  std::string tag;

  void validate() const;
};

struct DwfClause {
  PredPtr pred;
  std::string tag;
};

// The head of a clause without the body: ∃w: c ∧ atoms.
struct HeadSpec {
  std::vector<Var> exist_vars;
  Expr constraint = ex::t();
  std::vector<Atom> atoms;
};

// Predicates introduced by desugaring whose meaning is fixed by other
// predicates: a disjunction selector holds at (x, bit) iff branch[bit] holds
// at x; a complement holds exactly where its base does not.
struct Derivation {
  enum class Kind { Selector, Complement };
  Kind kind = Kind::Selector;
  PredPtr pred;
  PredPtr base;                  // Complement
  std::vector<Var> params;       // Selector: parameters, last one is the bit
  HeadSpec branch[2];            // Selector
};

struct ClauseSet {
  std::vector<PredPtr> preds;  // declaration order
  std::vector<Clause> clauses;
  std::vector<DwfClause> dwf;
  std::vector<Derivation> derived;

  std::size_t size() const { return clauses.size() + dwf.size(); }
  PredPtr find_pred(std::string_view name) const;
  bool is_dwf(std::string_view name) const;
  const Derivation* derivation_of(std::string_view name) const;
  void declare(PredPtr p);
  void validate() const;
};

}  // namespace ctlehc
