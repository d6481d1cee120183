#pragma once

#include "ctlehc/formula.hpp"
#include "ctlehc/program.hpp"
#include "ctlehc/relation.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctlehc {

using StateSet = std::vector<bool>;

// An explicit fair transition system. States are valuations of `vars`.
struct FiniteSystem {
  std::vector<Var> vars;
  std::vector<std::vector<Value>> domains;  // per variable
  std::vector<std::vector<Value>> states;
  StateSet initial;
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<StateSet> fairness;

  std::size_t size() const { return states.size(); }
  std::size_t transition_count() const;
  std::optional<std::uint32_t> find(std::span<const Value> valuation) const;
  // Recompute the valuation index after editing `states`.
  void reindex();
  void validate() const;

 private:
  std::map<std::vector<Value>, std::uint32_t> index_;
};

struct ExpandOptions {
  std::size_t max_states = 1'000'000;
  std::size_t max_transitions = 50'000'000;
};

// Enumerate every valuation of the program variables over the domains. A
// transition is kept only when both ends lie inside the domains. Predicate
// atoms in init/next/J are read from `atoms`.
FiniteSystem expand_finite(const Program& p, const Domains& d, const Interpretation* atoms = nullptr,
                           const ExpandOptions& opt = {});
std::size_t state_space_size(const Program& p, const Domains& d);

StateSet eval_states(const FiniteSystem& fs, const Expr& assertion, const Interpretation* atoms = nullptr);

// Generalized Büchi automaton over the state subformulas of a path formula
// in NNF, with one transition-based acceptance set per until subformula.
struct Gba {
  struct Edge {
    std::vector<int> lits;  // indices into leaves, all must hold
    int target = 0;
    std::uint64_t acc = 0;  // bit i set: edge is in acceptance set i
  };
  std::vector<Formula> leaves;
  std::vector<std::vector<Edge>> edges;  // per node
  int initial = 0;
  int num_acc = 0;
};

Gba build_gba(const Formula& path_nnf);

// States from which an infinite path exists (visiting every J_i infinitely
// often when `use_fairness`).
StateSet fair_states(const FiniteSystem& fs, bool use_fairness = true);

class ModelChecker {
 public:
  explicit ModelChecker(const FiniteSystem& fs, const Interpretation* atoms = nullptr);
  StateSet label(const Formula& f);
  // States satisfying Q ψ for a path quantifier Q.
  StateSet check_quantified(FKind q, const Formula& path);

 private:
  StateSet exists_path(const Formula& path, bool fair);
  const FiniteSystem& fs_;
  const Interpretation* atoms_;
  std::map<std::string, StateSet> memo_;
};

struct ModelCheckResult {
  bool holds = false;
  StateSet labels;
  std::vector<std::uint32_t> failing_initial;
};

ModelCheckResult model_check(const FiniteSystem& fs, const Formula& f, const Interpretation* atoms = nullptr);
// Convenience: expand then check.
ModelCheckResult model_check(const Program& p, const Formula& f, const Domains& d,
                             const Interpretation* atoms = nullptr);

}  // namespace ctlehc
