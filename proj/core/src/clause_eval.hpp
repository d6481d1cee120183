#pragma once

// Shared clause evaluation for the checker and the enumerator.

#include "ctlehc/clause.hpp"
#include "ctlehc/eval.hpp"
#include "ctlehc/program.hpp"
#include "ctlehc/relation.hpp"
#include "ctlehc/search.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ctlehc::detail {

struct CompiledAtom {
  int pred = -1;
  std::vector<int> slots;
};

// A base bit: predicate id and tuple index.
using BitRef = std::pair<int, std::size_t>;

struct Unit {
  int pred;
  std::vector<Value> tuple;
  bool value;
  std::vector<BitRef> reason;  // filled when evaluating with a read log
};

// Predicate ids are positions in ClauseSet::preds.
std::map<std::string, int> pred_ids(const ClauseSet& cs);

class CompiledClause {
 public:
  CompiledClause(const Clause& c, const std::map<std::string, int>& ids, const Domains& d);
  CompiledClause(const CompiledClause&) = delete;
  CompiledClause& operator=(const CompiledClause&) = delete;

  // Returns false on a definite violation and stores the offending
  // universal valuation. With `units`, collects forced atom values. With
  // `log` (the read log of a PartialModel), units and the violation carry the
  // assigned bits that determined them; the violation's go to `conflict`.
  bool evaluate(const AtomTable& table, std::vector<Unit>* units, std::vector<Value>* violation,
                std::vector<BitRef>* log = nullptr, std::vector<BitRef>* conflict = nullptr) const;

  const std::vector<Var>& universal() const { return universal_; }
  std::vector<int> preds() const;

 private:
  Truth atom_truth(const CompiledAtom& a, std::span<const Value> s) const;
  std::vector<Value> tuple(const CompiledAtom& a, std::span<const Value> s) const;

  std::vector<Var> universal_;
  std::size_t slot_count_ = 0;
  std::vector<CompiledExpr> body_checks_;
  std::vector<CompiledAtom> body_atoms_;
  std::vector<CompiledExpr> head_checks_;
  std::vector<CompiledAtom> head_atoms_;
  ConstraintSearch body_;
  ConstraintSearch head_;
  mutable const AtomTable* table_ = nullptr;
};

// Three-valued predicate store over explicit relations. Base predicates keep
// a truth value per tuple; derived predicates are evaluated from their
// derivation when `macros` is set.
class PartialModel : public AtomTable {
 public:
  PartialModel(const ClauseSet& cs, const Domains& d, bool macros);

  Truth holds(int pred_id, std::span<const Value> args) const override;

  std::size_t pred_count() const { return rels_.size(); }
  bool searched(int pred) const { return searched_[static_cast<std::size_t>(pred)]; }
  const Relation& shape(int pred) const { return rels_[static_cast<std::size_t>(pred)]; }
  Truth bit(int pred, std::size_t index) const { return vals_[static_cast<std::size_t>(pred)][index]; }
  void assign(int pred, std::size_t index, Truth t) { vals_[static_cast<std::size_t>(pred)][index] = t; }
  // While set, every read of an assigned base bit is appended to `log`.
  void set_read_log(std::vector<BitRef>* log) { log_ = log; }
  // Copy values from a complete interpretation; missing base relations are an error.
  void load(const Interpretation& interp);
  // Materialize every predicate, derived ones included. Unknown bits read as false.
  Interpretation materialize() const;

  const ClauseSet& clauses() const { return cs_; }

 private:
  struct Macro {
    const Derivation* d = nullptr;
    int base = -1;
    // Selector branches: slots = params, then branch-local existentials.
    std::size_t slot_count = 0;
    std::vector<int> param_slots;
    struct Branch {
      std::vector<std::pair<int, std::vector<Value>>> exist;  // slot, domain
      CompiledExpr constraint;
      std::vector<CompiledAtom> atoms;
    } branch[2];
  };
  Truth eval_branch(const Macro& m, int b, std::vector<Value>& slots, std::size_t depth) const;

  const ClauseSet& cs_;
  std::vector<Relation> rels_;
  std::vector<std::vector<Truth>> vals_;
  std::vector<bool> searched_;
  std::vector<std::unique_ptr<Macro>> macros_;  // per pred, null when searched
  std::vector<BitRef>* log_ = nullptr;
};

}  // namespace ctlehc::detail
