#include "ctlehc/formula.hpp"

#include <algorithm>
#include <sstream>

namespace ctlehc {

namespace {

Formula make(FKind k, std::vector<Formula> kids, Expr atom = nullptr) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->kids = std::move(kids);
  n->atom = std::move(atom);
  return n;
}

// And/Or are kept canonical: nested nodes are flattened, an assertion that is
// itself a conjunction (disjunction) is split into its parts, and a node whose
// parts are all assertions collapses into one assertion.
Formula nary(FKind k, std::vector<Formula> kids) {
  const ExprOp eop = k == FKind::And ? ExprOp::And : ExprOp::Or;
  std::vector<Formula> flat;
  for (auto& c : kids) {
    if (c->kind == k) {
      flat.insert(flat.end(), c->kids.begin(), c->kids.end());
    } else if (c->kind == FKind::Atom && c->atom->op == eop) {
      for (const auto& e : c->atom->kids) flat.push_back(fm::atom(e));
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return fm::atom(k == FKind::And ? ex::t() : ex::f());
  if (flat.size() == 1) return flat.front();
  bool all_atoms = std::all_of(flat.begin(), flat.end(), [](const Formula& f) { return f->kind == FKind::Atom; });
  if (all_atoms) {
    std::vector<Expr> es;
    for (const auto& f : flat) es.push_back(f->atom);
    return fm::atom(k == FKind::And ? ex::and_(std::move(es)) : ex::or_(std::move(es)));
  }
  return make(k, std::move(flat));
}

}  // namespace

namespace fm {

Formula atom(Expr e) {
  if (e->sort.kind() != SortKind::Bool) throw Error("assertion is not boolean: " + to_string(e));
  return make(FKind::Atom, {}, std::move(e));
}

Formula not_(Formula a) {
  if (a->kind == FKind::Atom) return atom(ex::not_(a->atom));
  return make(FKind::Not, {std::move(a)});
}

Formula and_(std::vector<Formula> kids) { return nary(FKind::And, std::move(kids)); }
Formula or_(std::vector<Formula> kids) { return nary(FKind::Or, std::move(kids)); }
Formula and_(Formula a, Formula b) { return and_(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula or_(Formula a, Formula b) { return or_(std::vector<Formula>{std::move(a), std::move(b)}); }

Formula quant(FKind q, Formula body) {
  if (!is_quantifier(q)) throw Error("not a path quantifier");
  return make(q, {std::move(body)});
}

Formula E(Formula body) { return quant(FKind::E, std::move(body)); }
Formula A(Formula body) { return quant(FKind::A, std::move(body)); }
Formula Ef(Formula body) { return quant(FKind::Ef, std::move(body)); }
Formula Af(Formula body) { return quant(FKind::Af, std::move(body)); }
Formula X(Formula a) { return make(FKind::X, {std::move(a)}); }
Formula G(Formula a) { return make(FKind::G, {std::move(a)}); }
Formula F(Formula a) { return make(FKind::F, {std::move(a)}); }
Formula U(Formula a, Formula b) { return make(FKind::U, {std::move(a), std::move(b)}); }

}  // namespace fm

bool is_quantifier(FKind k) { return k == FKind::E || k == FKind::A || k == FKind::Ef || k == FKind::Af; }
bool is_fair_quantifier(FKind k) { return k == FKind::Ef || k == FKind::Af; }
bool is_existential(FKind k) { return k == FKind::E || k == FKind::Ef; }
bool is_temporal(FKind k) { return k == FKind::X || k == FKind::G || k == FKind::F || k == FKind::U; }

bool is_state_formula(const Formula& f) {
  if (is_temporal(f->kind)) return false;
  if (is_quantifier(f->kind)) return true;
  return std::all_of(f->kids.begin(), f->kids.end(), [](const Formula& k) { return is_state_formula(k); });
}

bool has_quantifier(const Formula& f) {
  if (is_quantifier(f->kind)) return true;
  return std::any_of(f->kids.begin(), f->kids.end(), [](const Formula& k) { return has_quantifier(k); });
}

bool is_basic(const Formula& f) { return is_quantifier(f->kind) && !has_quantifier(f->kids[0]); }

std::optional<Expr> as_assertion(const Formula& f) {
  switch (f->kind) {
    case FKind::Atom:
      return f->atom;
    case FKind::Not: {
      auto a = as_assertion(f->kids[0]);
      if (!a) return std::nullopt;
      return ex::not_(*a);
    }
    case FKind::And:
    case FKind::Or: {
      std::vector<Expr> es;
      for (const auto& k : f->kids) {
        auto a = as_assertion(k);
        if (!a) return std::nullopt;
        es.push_back(*a);
      }
      return f->kind == FKind::And ? ex::and_(std::move(es)) : ex::or_(std::move(es));
    }
    default:
      return std::nullopt;
  }
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  if (a->kind == FKind::Atom) return equal(a->atom, b->atom);
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

bool contains(const Formula& f, const Formula& target) {
  if (equal(f, target)) return true;
  return std::any_of(f->kids.begin(), f->kids.end(), [&](const Formula& k) { return contains(k, target); });
}

Formula substitute(const Formula& f, const Formula& target, const Formula& repl) {
  if (equal(f, target)) return repl;
  if (f->kids.empty()) return f;
  std::vector<Formula> kids;
  for (const auto& k : f->kids) kids.push_back(substitute(k, target, repl));
  switch (f->kind) {
    case FKind::Not: return fm::not_(kids[0]);
    case FKind::And: return fm::and_(std::move(kids));
    case FKind::Or: return fm::or_(std::move(kids));
    default: return make(f->kind, std::move(kids));
  }
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& k : f->kids) n += formula_size(k);
  return n;
}

std::vector<Expr> formula_atoms(const Formula& f) {
  std::vector<Expr> out;
  if (f->kind == FKind::Atom) return atoms_of(f->atom);
  for (const auto& k : f->kids) {
    auto a = formula_atoms(k);
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

namespace {

enum { kOr = 3, kAnd = 4, kUntil = 5, kUnary = 9, kPrimary = 10 };

int prec(const Formula& f) {
  switch (f->kind) {
    case FKind::Or: return kOr;
    case FKind::And: return kAnd;
    case FKind::U: return kUntil;
    case FKind::Atom: return kPrimary;
    default: return kUnary;
  }
}

const char* unary_text(FKind k) {
  switch (k) {
    case FKind::Not: return "!";
    case FKind::E: return "E ";
    case FKind::A: return "A ";
    case FKind::Ef: return "Ef ";
    case FKind::Af: return "Af ";
    case FKind::X: return "X ";
    case FKind::G: return "G ";
    case FKind::F: return "F ";
    default: return "?";
  }
}

void print_at(std::ostream& os, const Formula& f, int min_prec) {
  if (f->kind == FKind::Atom) {
    os << to_string(f->atom, min_prec);
    return;
  }
  bool paren = prec(f) < min_prec;
  if (paren) os << '(';
  switch (f->kind) {
    case FKind::And:
    case FKind::Or:
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << (f->kind == FKind::And ? " & " : " | ");
        print_at(os, f->kids[i], prec(f) + 1);
      }
      break;
    case FKind::U:
      print_at(os, f->kids[0], kUntil + 1);
      os << " U ";
      print_at(os, f->kids[1], kUntil);
      break;
    default:
      os << unary_text(f->kind);
      print_at(os, f->kids[0], kUnary);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_at(os, f, 0);
  return os.str();
}

}  // namespace ctlehc
