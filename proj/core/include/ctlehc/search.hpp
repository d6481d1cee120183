#pragma once

#include "ctlehc/eval.hpp"

#include <functional>
#include <span>
#include <vector>

namespace ctlehc {

// Backtracking enumeration of slot assignments over finite domains. Each
// check runs as soon as every enumerated slot it reads is bound; a check
// returning F prunes the subtree, U is reported to the visitor.
class ConstraintSearch {
 public:
  using CheckFn = std::function<Truth(std::span<const Value>)>;
  // Return false to stop the search.
  using Visit = std::function<bool(std::span<const Value>, int unknown_checks)>;

  void add_var(int slot, std::vector<Value> domain);
  void add_check(const std::vector<int>& slots_read, CheckFn fn);
  // Slots that are not enumerated must already hold their values. Returns
  // false when the visitor stopped the search.
  bool run(std::vector<Value>& slots, const Visit& visit) const;
  std::size_t var_count() const { return vars_.size(); }

 private:
  struct VarEntry {
    int slot;
    std::vector<Value> domain;
  };
  bool go(std::size_t depth, std::vector<Value>& slots, int unknown, const Visit& visit) const;

  std::vector<VarEntry> vars_;
  std::vector<std::pair<std::vector<int>, CheckFn>> pending_;
  mutable std::vector<std::vector<std::size_t>> by_level_;  // level 0 = before any variable
  mutable bool planned_ = false;
  void plan() const;
};

}  // namespace ctlehc
