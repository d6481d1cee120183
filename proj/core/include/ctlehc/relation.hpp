#pragma once

#include "ctlehc/clause.hpp"
#include "ctlehc/eval.hpp"
#include "ctlehc/program.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctlehc {

// A finite relation: one value axis per argument position and a membership
// bit per tuple, indexed in mixed radix with the first axis most significant.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::vector<std::vector<Value>> axes);

  std::size_t arity() const { return axes_.size(); }
  std::size_t space() const { return bits_.size(); }
  const std::vector<std::vector<Value>>& axes() const { return axes_; }

  std::optional<std::size_t> index_of(std::span<const Value> tuple) const;
  std::vector<Value> tuple_at(std::size_t index) const;
  bool test(std::size_t index) const { return bits_[index]; }
  void set(std::size_t index, bool on = true) { bits_[index] = on; }
  // Tuples outside the axes are never members.
  bool contains(std::span<const Value> tuple) const;
  void insert(std::span<const Value> tuple);
  std::size_t count() const;
  void clear();

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.axes_ == b.axes_ && a.bits_ == b.bits_;
  }

 private:
  std::vector<std::vector<Value>> axes_;
  std::vector<std::size_t> strides_;
  std::vector<bool> bits_;
};

std::vector<std::vector<Value>> axes_for(const PredSym& p, const Domains& d);

// An interpretation maps predicate names to relations.
class Interpretation {
 public:
  bool has(std::string_view name) const { return rels_.count(std::string(name)) != 0; }
  const Relation& at(std::string_view name) const;
  Relation& at(std::string_view name);
  // Empty relation with the axes of p, created on first use.
  Relation& ensure(const PredSym& p, const Domains& d);
  void set(const std::string& name, Relation r) { rels_[name] = std::move(r); }
  const std::map<std::string, Relation>& relations() const { return rels_; }
  void merge(const Interpretation& other);

 private:
  std::map<std::string, Relation> rels_;
};

// Adapts an Interpretation to the AtomTable interface; ids are positions in
// the predicate name list.
class InterpretationAtoms : public AtomTable {
 public:
  explicit InterpretationAtoms(const Interpretation& interp);
  int id_of(const PredSym& p);
  CompiledExpr::PredId resolver();
  Truth holds(int pred_id, std::span<const Value> args) const override;

 private:
  const Interpretation& interp_;
  std::vector<std::string> names_;
  std::vector<const Relation*> rels_;
};

}  // namespace ctlehc
