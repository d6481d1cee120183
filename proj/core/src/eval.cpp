#include "ctlehc/eval.hpp"

#include <algorithm>

namespace ctlehc {

Truth t_not(Truth a) {
  if (a == Truth::U) return Truth::U;
  return a == Truth::T ? Truth::F : Truth::T;
}

Truth t_and(Truth a, Truth b) {
  if (a == Truth::F || b == Truth::F) return Truth::F;
  if (a == Truth::U || b == Truth::U) return Truth::U;
  return Truth::T;
}

Truth t_or(Truth a, Truth b) {
  if (a == Truth::T || b == Truth::T) return Truth::T;
  if (a == Truth::U || b == Truth::U) return Truth::U;
  return Truth::F;
}

CompiledExpr::CompiledExpr(const Expr& e, const SlotOf& slot_of, const PredId& pred_id) {
  root_ = build(e, slot_of, pred_id);
  std::sort(slots_used_.begin(), slots_used_.end());
  slots_used_.erase(std::unique(slots_used_.begin(), slots_used_.end()), slots_used_.end());
}

int CompiledExpr::build(const Expr& e, const SlotOf& slot_of, const PredId& pred_id) {
  Node n;
  n.op = e->op;
  n.boolean = e->sort.kind() == SortKind::Bool;
  auto use_slot = [&](const Var& v) {
    int s = slot_of(v);
    if (s < 0) throw Error("unbound variable " + v.display());
    max_slot_ = std::max(max_slot_, s);
    slots_used_.push_back(s);
    return s;
  };
  switch (e->op) {
    case ExprOp::Const:
      n.c = e->value;
      break;
    case ExprOp::Var:
      n.slot = use_slot(e->var);
      break;
    case ExprOp::Pred: {
      if (!pred_id) throw Error("predicate atom " + e->pred->name + " in a context without predicates");
      n.pred = pred_id(*e->pred);
      if (n.pred < 0) throw Error("unknown predicate " + e->pred->name);
      n.first = static_cast<int>(links_.size());
      n.count = static_cast<int>(e->args.size());
      std::vector<int> args;
      for (const auto& a : e->args) args.push_back(use_slot(a));
      links_.insert(links_.end(), args.begin(), args.end());
      break;
    }
    default: {
      std::vector<int> kids;
      for (const auto& k : e->kids) kids.push_back(build(k, slot_of, pred_id));
      n.first = static_cast<int>(links_.size());
      n.count = static_cast<int>(kids.size());
      links_.insert(links_.end(), kids.begin(), kids.end());
      break;
    }
  }
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size()) - 1;
}

Value CompiledExpr::value(std::span<const Value> slots, const AtomTable* atoms) const {
  return num(root_, slots, atoms);
}

Truth CompiledExpr::truth(std::span<const Value> slots, const AtomTable* atoms) const {
  if (root_ < 0) return Truth::T;
  return tv(root_, slots, atoms);
}

Value CompiledExpr::num(int i, std::span<const Value> s, const AtomTable* a) const {
  const Node& n = nodes_[i];
  auto kid = [&](int k) { return links_[n.first + k]; };
  switch (n.op) {
    case ExprOp::Const: return n.c;
    case ExprOp::Var: return s[n.slot];
    case ExprOp::Add: return num(kid(0), s, a) + num(kid(1), s, a);
    case ExprOp::Sub: return num(kid(0), s, a) - num(kid(1), s, a);
    case ExprOp::Neg: return -num(kid(0), s, a);
    case ExprOp::Mul: return num(kid(0), s, a) * num(kid(1), s, a);
    case ExprOp::Div: return num(kid(0), s, a) / num(kid(1), s, a);
    default: {
      Truth t = tv(i, s, a);
      if (t == Truth::U) throw Error("undetermined boolean used as a value");
      return t == Truth::T ? 1 : 0;
    }
  }
}

Truth CompiledExpr::tv(int i, std::span<const Value> s, const AtomTable* a) const {
  const Node& n = nodes_[i];
  auto kid = [&](int k) { return links_[n.first + k]; };
  switch (n.op) {
    case ExprOp::Const:
    case ExprOp::Var:
      return truth_of(num(i, s, a) != 0);
    case ExprOp::Eq:
    case ExprOp::Ne: {
      Truth r;
      if (nodes_[kid(0)].boolean) {
        Truth x = tv(kid(0), s, a), y = tv(kid(1), s, a);
        if (x == Truth::U || y == Truth::U) r = Truth::U;
        else r = truth_of(x == y);
      } else {
        r = truth_of(num(kid(0), s, a) == num(kid(1), s, a));
      }
      return n.op == ExprOp::Eq ? r : t_not(r);
    }
    case ExprOp::Lt: return truth_of(num(kid(0), s, a) < num(kid(1), s, a));
    case ExprOp::Le: return truth_of(num(kid(0), s, a) <= num(kid(1), s, a));
    case ExprOp::Gt: return truth_of(num(kid(0), s, a) > num(kid(1), s, a));
    case ExprOp::Ge: return truth_of(num(kid(0), s, a) >= num(kid(1), s, a));
    case ExprOp::Not: return t_not(tv(kid(0), s, a));
    case ExprOp::And: {
      Truth r = Truth::T;
      for (int k = 0; k < n.count; ++k) {
        r = t_and(r, tv(kid(k), s, a));
        if (r == Truth::F) break;
      }
      return r;
    }
    case ExprOp::Or: {
      Truth r = Truth::F;
      for (int k = 0; k < n.count; ++k) {
        r = t_or(r, tv(kid(k), s, a));
        if (r == Truth::T) break;
      }
      return r;
    }
    case ExprOp::Implies: return t_or(t_not(tv(kid(0), s, a)), tv(kid(1), s, a));
    case ExprOp::Iff: {
      Truth x = tv(kid(0), s, a), y = tv(kid(1), s, a);
      if (x == Truth::U || y == Truth::U) return Truth::U;
      return truth_of(x == y);
    }
    case ExprOp::Pred: {
      if (!a) throw Error("predicate atom evaluated without an interpretation");
      Value buf[32];
      std::vector<Value> big;
      std::span<Value> args;
      if (n.count <= 32) {
        args = std::span<Value>(buf, static_cast<std::size_t>(n.count));
      } else {
        big.resize(static_cast<std::size_t>(n.count));
        args = big;
      }
      for (int k = 0; k < n.count; ++k) args[k] = s[links_[n.first + k]];
      return a->holds(n.pred, args);
    }
    default:
      return truth_of(num(i, s, a) != 0);
  }
}

SlotLayout::SlotLayout(const std::vector<Var>& vars) {
  for (const auto& v : vars) add(v);
}

int SlotLayout::add(const Var& v) {
  int i = find(v);
  if (i >= 0) return i;
  vars_.push_back(v);
  return static_cast<int>(vars_.size()) - 1;
}

int SlotLayout::find(const Var& v) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == v) return static_cast<int>(i);
  return -1;
}

int SlotLayout::at(const Var& v) const {
  int i = find(v);
  if (i < 0) throw Error("variable " + v.display() + " is not in scope");
  return i;
}

CompiledExpr::SlotOf SlotLayout::resolver() const {
  return [this](const Var& v) { return find(v); };
}

}  // namespace ctlehc
