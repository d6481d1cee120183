#include "ctlehc/expr.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace ctlehc {

PredPtr make_pred(std::string name, std::vector<Var> params) {
  return std::make_shared<const PredSym>(PredSym{std::move(name), std::move(params)});
}

namespace {

Expr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

bool is_bool(const Expr& e) { return e->sort.kind() == SortKind::Bool; }

void require_bool(const Expr& e, const char* where) {
  if (!is_bool(e)) throw Error(std::string("expected a boolean operand of ") + where + ", got " + to_string(e));
}

void require_numeric(const Expr& e, const char* where) {
  if (!e->sort.numeric()) throw Error(std::string("expected a numeric operand of ") + where + ", got " + to_string(e));
}

Sort arith_sort(const Expr& a, const Expr& b) {
  if (a->sort.kind() == SortKind::Rat || b->sort.kind() == SortKind::Rat) return Sort::rational();
  return Sort::integer();
}

bool is_const(const Expr& e) { return e->op == ExprOp::Const; }

Expr binary(ExprOp op, Sort s, Expr a, Expr b) {
  ExprNode n;
  n.op = op;
  n.sort = std::move(s);
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Expr nary(ExprOp op, std::vector<Expr> kids) {
  std::vector<Expr> flat;
  for (auto& k : kids) {
    require_bool(k, op == ExprOp::And ? "&" : "|");
    if (k->op == op) {
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    } else if ((op == ExprOp::And && is_true(k)) || (op == ExprOp::Or && is_false(k))) {
      continue;
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) return op == ExprOp::And ? ex::t() : ex::f();
  if (flat.size() == 1) return flat.front();
  ExprNode n;
  n.op = op;
  n.sort = Sort::boolean();
  n.kids = std::move(flat);
  return make(std::move(n));
}

}  // namespace

namespace ex {

Expr t() {
  static const Expr e = boolean(true);
  return e;
}

Expr f() {
  static const Expr e = boolean(false);
  return e;
}

Expr boolean(bool b) {
  ExprNode n;
  n.op = ExprOp::Const;
  n.sort = Sort::boolean();
  n.value = b ? 1 : 0;
  return make(std::move(n));
}

Expr num(const Value& v) { return num(v, v.denominator() == 1 ? Sort::integer() : Sort::rational()); }

Expr num(const Value& v, const Sort& sort) {
  ExprNode n;
  n.op = ExprOp::Const;
  n.sort = sort;
  n.value = v;
  return make(std::move(n));
}

Expr label(const Sort& loc_sort, std::size_t index) {
  if (index >= loc_sort.labels().size()) throw Error("label index out of range");
  return num(Value(static_cast<std::int64_t>(index)), loc_sort);
}

Expr label(const Sort& loc_sort, std::string_view name) {
  auto i = loc_sort.label_index(name);
  if (!i) throw Error("unknown location label '" + std::string(name) + "'");
  return label(loc_sort, *i);
}

Expr var(const Var& v) {
  ExprNode n;
  n.op = ExprOp::Var;
  n.sort = v.sort;
  n.var = v;
  return make(std::move(n));
}

Expr add(Expr a, Expr b) {
  require_numeric(a, "+");
  require_numeric(b, "+");
  auto s = arith_sort(a, b);
  return binary(ExprOp::Add, s, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  require_numeric(a, "-");
  require_numeric(b, "-");
  auto s = arith_sort(a, b);
  return binary(ExprOp::Sub, s, std::move(a), std::move(b));
}

Expr neg(Expr a) {
  require_numeric(a, "unary -");
  if (is_const(a)) return num(-a->value);
  ExprNode n;
  n.op = ExprOp::Neg;
  n.sort = a->sort;
  n.kids = {std::move(a)};
  return make(std::move(n));
}

Expr mul(Expr a, Expr b) {
  require_numeric(a, "*");
  require_numeric(b, "*");
  if (has_vars(a) && has_vars(b)) throw Error("non-linear product " + to_string(a) + " * " + to_string(b));
  auto s = arith_sort(a, b);
  return binary(ExprOp::Mul, s, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  require_numeric(a, "/");
  require_numeric(b, "/");
  if (has_vars(b)) throw Error("division by a non-constant " + to_string(b));
  if (is_const(a) && is_const(b)) {
    if (b->value == 0) throw Error("division by zero");
    return num(a->value / b->value);
  }
  return binary(ExprOp::Div, Sort::rational(), std::move(a), std::move(b));
}

Expr cmp(ExprOp op, Expr a, Expr b) {
  switch (op) {
    case ExprOp::Eq:
    case ExprOp::Ne:
      if (a->sort.numeric() != b->sort.numeric() || (!a->sort.numeric() && !(a->sort == b->sort)))
        throw Error("sort mismatch in comparison " + to_string(a) + " vs " + to_string(b));
      break;
    case ExprOp::Lt:
    case ExprOp::Le:
    case ExprOp::Gt:
    case ExprOp::Ge:
      require_numeric(a, "comparison");
      require_numeric(b, "comparison");
      break;
    default:
      throw Error("not a comparison operator");
  }
  return binary(op, Sort::boolean(), std::move(a), std::move(b));
}

Expr eq(Expr a, Expr b) { return cmp(ExprOp::Eq, std::move(a), std::move(b)); }
Expr ne(Expr a, Expr b) { return cmp(ExprOp::Ne, std::move(a), std::move(b)); }
Expr lt(Expr a, Expr b) { return cmp(ExprOp::Lt, std::move(a), std::move(b)); }
Expr le(Expr a, Expr b) { return cmp(ExprOp::Le, std::move(a), std::move(b)); }
Expr gt(Expr a, Expr b) { return cmp(ExprOp::Gt, std::move(a), std::move(b)); }
Expr ge(Expr a, Expr b) { return cmp(ExprOp::Ge, std::move(a), std::move(b)); }

Expr not_(Expr a) {
  require_bool(a, "!");
  if (is_const(a)) return boolean(a->value == 0);
  ExprNode n;
  n.op = ExprOp::Not;
  n.sort = Sort::boolean();
  n.kids = {std::move(a)};
  return make(std::move(n));
}

Expr and_(std::vector<Expr> kids) { return nary(ExprOp::And, std::move(kids)); }
Expr or_(std::vector<Expr> kids) { return nary(ExprOp::Or, std::move(kids)); }
Expr and_(Expr a, Expr b) { return and_(std::vector<Expr>{std::move(a), std::move(b)}); }
Expr or_(Expr a, Expr b) { return or_(std::vector<Expr>{std::move(a), std::move(b)}); }

Expr implies(Expr a, Expr b) {
  require_bool(a, "->");
  require_bool(b, "->");
  return binary(ExprOp::Implies, Sort::boolean(), std::move(a), std::move(b));
}

Expr iff(Expr a, Expr b) {
  require_bool(a, "<->");
  require_bool(b, "<->");
  return binary(ExprOp::Iff, Sort::boolean(), std::move(a), std::move(b));
}

Expr pred(PredPtr p, std::vector<Var> args) {
  if (args.size() != p->arity())
    throw Error("predicate " + p->name + " expects " + std::to_string(p->arity()) + " arguments, got " +
                std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& want = p->arg_sort(i);
    const auto& got = args[i].sort;
    bool ok = want == got || (want.numeric() && got.numeric());
    if (!ok)
      throw Error("argument " + args[i].display() + " of " + p->name + " has sort " + got.str() + ", expected " +
                  want.str());
  }
  ExprNode n;
  n.op = ExprOp::Pred;
  n.sort = Sort::boolean();
  n.pred = std::move(p);
  n.args = std::move(args);
  return make(std::move(n));
}

Expr pred(PredPtr p) {
  auto params = p->params;
  return pred(std::move(p), std::move(params));
}

Expr vars_equal(const std::vector<Var>& vs, const std::vector<Var>& ws) {
  std::vector<Expr> cs;
  for (std::size_t i = 0; i < vs.size(); ++i) cs.push_back(eq(var(vs[i]), var(ws[i])));
  return and_(std::move(cs));
}

}  // namespace ex

bool is_true(const Expr& e) { return e->op == ExprOp::Const && is_bool(e) && e->value != 0; }
bool is_false(const Expr& e) { return e->op == ExprOp::Const && is_bool(e) && e->value == 0; }

bool has_atoms(const Expr& e) {
  if (e->op == ExprOp::Pred) return true;
  return std::any_of(e->kids.begin(), e->kids.end(), [](const Expr& k) { return has_atoms(k); });
}

bool has_vars(const Expr& e) {
  if (e->op == ExprOp::Var) return true;
  if (e->op == ExprOp::Pred) return !e->args.empty();
  return std::any_of(e->kids.begin(), e->kids.end(), [](const Expr& k) { return has_vars(k); });
}

void collect_free_vars(const Expr& e, std::vector<Var>& out) {
  auto add = [&out](const Var& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (e->op == ExprOp::Var) add(e->var);
  for (const auto& a : e->args) add(a);
  for (const auto& k : e->kids) collect_free_vars(k, out);
}

std::vector<Var> free_vars(const Expr& e) {
  std::vector<Var> out;
  collect_free_vars(e, out);
  return out;
}

std::vector<Expr> atoms_of(const Expr& e) {
  std::vector<Expr> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x->op == ExprOp::Pred) out.push_back(x);
    for (const auto& k : x->kids) go(k);
  };
  go(e);
  return out;
}

bool equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->op != b->op || a->kids.size() != b->kids.size()) return false;
  switch (a->op) {
    case ExprOp::Const:
      if (!(a->sort == b->sort) || a->value != b->value) return false;
      break;
    case ExprOp::Var:
      if (!(a->var == b->var)) return false;
      break;
    case ExprOp::Pred:
      if (a->pred->name != b->pred->name || a->args != b->args) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

Expr rename(const Expr& e, const std::function<Var(const Var&)>& f) {
  switch (e->op) {
    case ExprOp::Const:
      return e;
    case ExprOp::Var: {
      Var v = f(e->var);
      return ex::var(v);
    }
    case ExprOp::Pred: {
      std::vector<Var> args;
      for (const auto& a : e->args) args.push_back(f(a));
      return ex::pred(e->pred, std::move(args));
    }
    default:
      break;
  }
  ExprNode n = *e;
  for (auto& k : n.kids) k = rename(k, f);
  return std::make_shared<const ExprNode>(std::move(n));
}

Expr shift_primes(const Expr& e, int by) {
  return rename(e, [by](const Var& v) { return v.primed(by); });
}

Expr to_copy(const Expr& e, int copy) {
  return rename(e, [copy](const Var& v) { return v.copied(copy); });
}

std::vector<Expr> conjuncts(const Expr& e) {
  if (e->op == ExprOp::And) return e->kids;
  if (is_true(e)) return {};
  return {e};
}

std::vector<Expr> disjuncts(const Expr& e) {
  if (e->op == ExprOp::Or) return e->kids;
  return {e};
}

Expr replace_atoms(const Expr& e, const std::function<Expr(const ExprNode&)>& repl) {
  if (e->op == ExprOp::Pred) return repl(*e);
  if (!has_atoms(e)) return e;
  std::vector<Expr> kids;
  for (const auto& k : e->kids) kids.push_back(replace_atoms(k, repl));
  switch (e->op) {
    case ExprOp::Not: return ex::not_(kids[0]);
    case ExprOp::And: return ex::and_(std::move(kids));
    case ExprOp::Or: return ex::or_(std::move(kids));
    case ExprOp::Implies: return ex::implies(kids[0], kids[1]);
    case ExprOp::Iff: return ex::iff(kids[0], kids[1]);
    case ExprOp::Eq:
    case ExprOp::Ne: return ex::cmp(e->op, kids[0], kids[1]);
    default: break;
  }
  ExprNode n = *e;
  n.kids = std::move(kids);
  return std::make_shared<const ExprNode>(std::move(n));
}

namespace {

// Binding strength, higher binds tighter.
enum Prec { kIff = 1, kImplies = 2, kOr = 3, kAnd = 4, kCmp = 6, kSum = 7, kProd = 8, kUnary = 9, kAtom = 10 };

int prec_of(const Expr& e) {
  switch (e->op) {
    case ExprOp::Iff: return kIff;
    case ExprOp::Implies: return kImplies;
    case ExprOp::Or: return kOr;
    case ExprOp::And: return kAnd;
    case ExprOp::Eq: case ExprOp::Ne: case ExprOp::Lt: case ExprOp::Le: case ExprOp::Gt: case ExprOp::Ge:
      return kCmp;
    case ExprOp::Add: case ExprOp::Sub: return kSum;
    case ExprOp::Mul: case ExprOp::Div: return kProd;
    case ExprOp::Neg: case ExprOp::Not: return kUnary;
    case ExprOp::Const:
      if (e->sort.numeric() && e->value.denominator() != 1) return kAtom;
      if (e->sort.numeric() && e->value < 0) return kUnary;
      return kAtom;
    default: return kAtom;
  }
}

const char* op_text(ExprOp op) {
  switch (op) {
    case ExprOp::Add: return " + ";
    case ExprOp::Sub: return " - ";
    case ExprOp::Mul: return " * ";
    case ExprOp::Div: return " / ";
    case ExprOp::Eq: return " = ";
    case ExprOp::Ne: return " != ";
    case ExprOp::Lt: return " < ";
    case ExprOp::Le: return " <= ";
    case ExprOp::Gt: return " > ";
    case ExprOp::Ge: return " >= ";
    case ExprOp::And: return " & ";
    case ExprOp::Or: return " | ";
    case ExprOp::Implies: return " -> ";
    case ExprOp::Iff: return " <-> ";
    default: return " ? ";
  }
}

void print_at(std::ostream& os, const Expr& e, int min_prec) {
  int p = prec_of(e);
  bool paren = p < min_prec;
  if (paren) os << '(';
  switch (e->op) {
    case ExprOp::Const:
      if (e->sort.numeric() && e->value.denominator() != 1)
        os << '(' << value_str(e->value) << ')';
      else
        os << value_str(e->value, e->sort);
      break;
    case ExprOp::Var:
      os << e->var.display();
      break;
    case ExprOp::Pred:
      os << e->pred->name << '(';
      for (std::size_t i = 0; i < e->args.size(); ++i) os << (i ? ", " : "") << e->args[i].display();
      os << ')';
      break;
    case ExprOp::Neg:
      os << '-';
      print_at(os, e->kids[0], kUnary);
      break;
    case ExprOp::Not:
      os << '!';
      print_at(os, e->kids[0], kUnary);
      break;
    case ExprOp::And:
    case ExprOp::Or:
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << op_text(e->op);
        print_at(os, e->kids[i], p + 1);
      }
      break;
    case ExprOp::Implies:
      print_at(os, e->kids[0], p + 1);
      os << op_text(e->op);
      print_at(os, e->kids[1], p);
      break;
    case ExprOp::Eq: case ExprOp::Ne: case ExprOp::Lt: case ExprOp::Le: case ExprOp::Gt: case ExprOp::Ge:
      print_at(os, e->kids[0], p + 1);
      os << op_text(e->op);
      print_at(os, e->kids[1], p + 1);
      break;
    default:  // left-associative binary operators
      print_at(os, e->kids[0], p);
      os << op_text(e->op);
      print_at(os, e->kids[1], p + 1);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

void print(std::ostream& os, const Expr& e) { print_at(os, e, 0); }

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string to_string(const Expr& e, int min_prec) {
  std::ostringstream os;
  print_at(os, e, min_prec);
  return os.str();
}

}  // namespace ctlehc
