#pragma once

#include "ctlehc/expr.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ctlehc {

enum class FKind { Atom, Not, And, Or, E, A, Ef, Af, X, G, F, U };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind = FKind::Atom;
  Expr atom;  // Atom only
  std::vector<Formula> kids;
};

namespace fm {

Formula atom(Expr e);
Formula not_(Formula a);
Formula and_(std::vector<Formula> kids);
Formula or_(std::vector<Formula> kids);
Formula and_(Formula a, Formula b);
Formula or_(Formula a, Formula b);
Formula quant(FKind q, Formula body);
Formula E(Formula body);
Formula A(Formula body);
Formula Ef(Formula body);
Formula Af(Formula body);
Formula X(Formula a);
Formula G(Formula a);
Formula F(Formula a);
Formula U(Formula a, Formula b);

}  // namespace fm

bool is_quantifier(FKind k);
bool is_fair_quantifier(FKind k);
bool is_existential(FKind k);
bool is_temporal(FKind k);

// No temporal operator outside the scope of a quantifier.
bool is_state_formula(const Formula& f);
// Qψ where ψ contains no quantifier.
bool is_basic(const Formula& f);
bool has_quantifier(const Formula& f);
// Collapse an Atom/Not/And/Or tree into a single assertion.
std::optional<Expr> as_assertion(const Formula& f);
bool equal(const Formula& a, const Formula& b);
// Replace every occurrence of `target` (structural equality).
Formula substitute(const Formula& f, const Formula& target, const Formula& repl);
bool contains(const Formula& f, const Formula& target);
// Node count (assertion leaves count as one node each).
std::size_t formula_size(const Formula& f);
std::vector<Expr> formula_atoms(const Formula& f);

std::string to_string(const Formula& f);

}  // namespace ctlehc
