#include "ctlehc/search.hpp"

#include <algorithm>

namespace ctlehc {

void ConstraintSearch::add_var(int slot, std::vector<Value> domain) {
  vars_.push_back({slot, std::move(domain)});
  planned_ = false;
}

void ConstraintSearch::add_check(const std::vector<int>& slots_read, CheckFn fn) {
  pending_.emplace_back(slots_read, std::move(fn));
  planned_ = false;
}

void ConstraintSearch::plan() const {
  by_level_.assign(vars_.size() + 1, {});
  for (std::size_t ci = 0; ci < pending_.size(); ++ci) {
    const auto& slots = pending_[ci].first;
    std::size_t level = 0;
    for (int s : slots) {
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].slot == s) level = std::max(level, i + 1);
    }
    by_level_[level].push_back(ci);
  }
  planned_ = true;
}

bool ConstraintSearch::run(std::vector<Value>& slots, const Visit& visit) const {
  if (!planned_) plan();
  int unknown = 0;
  for (auto c : by_level_[0]) {
    Truth t = pending_[c].second(slots);
    if (t == Truth::F) return true;
    if (t == Truth::U) ++unknown;
  }
  return go(0, slots, unknown, visit);
}

bool ConstraintSearch::go(std::size_t depth, std::vector<Value>& slots, int unknown, const Visit& visit) const {
  if (depth == vars_.size()) return visit(slots, unknown);
  const auto& v = vars_[depth];
  const auto& checks = by_level_[depth + 1];
  for (const auto& val : v.domain) {
    slots[static_cast<std::size_t>(v.slot)] = val;
    int u = unknown;
    bool ok = true;
    for (auto c : checks) {
      Truth t = pending_[c].second(slots);
      if (t == Truth::F) {
        ok = false;
        break;
      }
      if (t == Truth::U) ++u;
    }
    if (ok && !go(depth + 1, slots, u, visit)) return false;
  }
  return true;
}

}  // namespace ctlehc
