#pragma once

#include "ctlehc/clause.hpp"
#include "ctlehc/oracle.hpp"
#include "ctlehc/relation.hpp"
#include "ctlehc/trans.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ctlehc {

struct Violation {
  std::size_t index = 0;  // clause index, or dwf index when `dwf`
  bool dwf = false;
  std::string tag;
  std::vector<std::pair<Var, Value>> valuation;
  std::string str() const;
};

struct Verdict {
  bool ok = true;
  std::optional<Violation> violation;
  explicit operator bool() const { return ok; }
};

// Every valuation of the universal variables that satisfies the body admits
// an existential valuation satisfying the head.
Verdict check_clause(const ClauseSet& cs, std::size_t index, const Interpretation& interp, const Domains& d);
// Over a finite domain a relation is disjunctively well-founded iff it is
// irreflexive.
Verdict check_dwf(const DwfClause& c, const Interpretation& interp);
Verdict check_clause_set(const ClauseSet& cs, const Interpretation& interp, const Domains& d);

namespace detail {
class CompiledClause;
}

// Compiles a clause set once for repeated checks against many interpretations.
class ClauseSetChecker {
 public:
  ClauseSetChecker(const ClauseSet& cs, const Domains& d);
  ~ClauseSetChecker();
  ClauseSetChecker(const ClauseSetChecker&) = delete;
  ClauseSetChecker& operator=(const ClauseSetChecker&) = delete;

  Verdict check(const Interpretation& interp) const;
  Verdict check_one(std::size_t index, const Interpretation& interp) const;

 private:
  const ClauseSet& cs_;
  const Domains& d_;
  std::vector<std::unique_ptr<detail::CompiledClause>> compiled_;
};

// Binary relations over h-tuples are stored as 2h-ary relations whose first
// and second halves have the same axes.
bool is_well_founded(const Relation& r);
bool is_irreflexive(const Relation& r);
Relation transitive_closure(const Relation& r);

// Witness interpretations from the completeness constructions.
Interpretation witness_rule6(const FiniteSystem& fs, const Rule6Preds& preds, const Domains& d);
Interpretation witness_rule7(const FiniteSystem& fs, const Rule7Preds& preds, const Domains& d);
// Replays the translation trace over the finite system and assembles an
// interpretation for the whole clause set. Meaningful when the problem holds.
// Predicates of the source program (hole predicates) are taken from `given`.
Interpretation compose_witness(const Translation& t, const Domains& d, const Interpretation& given = {});

// Fill in selector and complement predicates from the other predicates.
Interpretation complete_derived(const ClauseSet& cs, const Interpretation& base, const Domains& d);

struct EnumOptions {
  std::size_t max_space_per_pred = 4096;
  std::size_t max_total_bits = 1 << 15;
  std::uint64_t max_decisions = 5'000'000;
  // Search selector and complement predicates like any other predicate.
  bool raw = false;
  // Keep searching after the first model and count all of them.
  bool count_all = false;
};

enum class EnumStatus { Sat, Unsat, CapExceeded };
std::string status_name(EnumStatus s);

struct EnumResult {
  EnumStatus status = EnumStatus::Unsat;
  Interpretation model;  // first model found
  std::uint64_t models = 0;
  std::uint64_t decisions = 0;
  std::string cap_reason;
};

EnumResult enumerate_interpretations(const ClauseSet& cs, const Domains& d, const EnumOptions& opt = {});

}  // namespace ctlehc
