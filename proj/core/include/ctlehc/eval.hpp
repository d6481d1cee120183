#pragma once

#include "ctlehc/expr.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ctlehc {

enum class Truth : std::uint8_t { F = 0, T = 1, U = 2 };

inline Truth truth_of(bool b) { return b ? Truth::T : Truth::F; }
Truth t_not(Truth a);
Truth t_and(Truth a, Truth b);
Truth t_or(Truth a, Truth b);

// Lookup of predicate atoms during evaluation. Ids are assigned by the
// resolver passed to CompiledExpr.
class AtomTable {
 public:
  virtual ~AtomTable() = default;
  virtual Truth holds(int pred_id, std::span<const Value> args) const = 0;
};

// An expression compiled against a slot layout for repeated evaluation.
class CompiledExpr {
 public:
  using SlotOf = std::function<int(const Var&)>;
  using PredId = std::function<int(const PredSym&)>;

  CompiledExpr() = default;
  CompiledExpr(const Expr& e, const SlotOf& slot_of, const PredId& pred_id = {});

  Value value(std::span<const Value> slots, const AtomTable* atoms = nullptr) const;
  Truth truth(std::span<const Value> slots, const AtomTable* atoms = nullptr) const;
  bool holds(std::span<const Value> slots, const AtomTable* atoms = nullptr) const {
    return truth(slots, atoms) == Truth::T;
  }
  // Largest slot index read (-1 when none).
  int max_slot() const { return max_slot_; }
  const std::vector<int>& slots_used() const { return slots_used_; }
  bool empty() const { return nodes_.empty(); }

 private:
  struct Node {
    ExprOp op;
    Value c;
    int slot = -1;
    int pred = -1;
    int first = 0;  // children (or args) begin index into links_
    int count = 0;
    bool boolean = false;
  };
  int build(const Expr& e, const SlotOf& slot_of, const PredId& pred_id);
  Value num(int n, std::span<const Value> s, const AtomTable* a) const;
  Truth tv(int n, std::span<const Value> s, const AtomTable* a) const;

  std::vector<Node> nodes_;
  std::vector<int> links_;
  int root_ = -1;
  int max_slot_ = -1;
  std::vector<int> slots_used_;
};

// Map from variable identity to slot, in insertion order.
class SlotLayout {
 public:
  SlotLayout() = default;
  explicit SlotLayout(const std::vector<Var>& vars);
  int add(const Var& v);
  int find(const Var& v) const;
  int at(const Var& v) const;  // throws when missing
  const std::vector<Var>& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  CompiledExpr::SlotOf resolver() const;

 private:
  std::vector<Var> vars_;
};

}  // namespace ctlehc
