#include "ctlehc/oracle.hpp"
#include "ctlehc/search.hpp"

#include <algorithm>
#include <limits>

namespace ctlehc {

std::size_t FiniteSystem::transition_count() const {
  std::size_t n = 0;
  for (const auto& s : succ) n += s.size();
  return n;
}

std::optional<std::uint32_t> FiniteSystem::find(std::span<const Value> valuation) const {
  auto it = index_.find(std::vector<Value>(valuation.begin(), valuation.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void FiniteSystem::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!index_.emplace(states[i], static_cast<std::uint32_t>(i)).second)
      throw Error("duplicate state valuation in finite system");
  }
}

void FiniteSystem::validate() const {
  auto n = states.size();
  if (initial.size() != n || succ.size() != n) throw Error("finite system: inconsistent sizes");
  for (const auto& s : states)
    if (s.size() != vars.size()) throw Error("finite system: state arity mismatch");
  for (const auto& row : succ)
    for (auto t : row)
      if (t >= n) throw Error("finite system: transition target out of range");
  for (const auto& j : fairness)
    if (j.size() != n) throw Error("finite system: fairness set size mismatch");
}

std::size_t state_space_size(const Program& p, const Domains& d) {
  std::size_t total = 1;
  for (const auto& v : p.vars) {
    auto n = d.values(v).size();
    if (n != 0 && total > std::numeric_limits<std::size_t>::max() / n) return std::numeric_limits<std::size_t>::max();
    total *= n;
  }
  return total;
}

StateSet eval_states(const FiniteSystem& fs, const Expr& assertion, const Interpretation* atoms) {
  SlotLayout layout(fs.vars);
  std::unique_ptr<InterpretationAtoms> table;
  CompiledExpr::PredId pid;
  if (atoms) {
    table = std::make_unique<InterpretationAtoms>(*atoms);
    pid = table->resolver();
  }
  CompiledExpr ce(assertion, layout.resolver(), pid);
  StateSet out(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Truth t = ce.truth(fs.states[i], table.get());
    if (t == Truth::U) throw Error("undetermined assertion in finite system");
    out[i] = t == Truth::T;
  }
  return out;
}

FiniteSystem expand_finite(const Program& p, const Domains& d, const Interpretation* atoms, const ExpandOptions& opt) {
  FiniteSystem fs;
  fs.vars = p.vars;
  for (const auto& v : p.vars) fs.domains.push_back(d.values(v));
  std::size_t total = state_space_size(p, d);
  if (total > opt.max_states)
    throw Error("finite expansion needs " + (total == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                                              : std::to_string(total)) +
                " states, above the cap of " + std::to_string(opt.max_states));
  const std::size_t n = p.vars.size();
  fs.states.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<Value> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = fs.domains[i][idx[i]];
    fs.states.push_back(std::move(s));
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < fs.domains[i].size()) break;
      idx[i] = 0;
    }
  }
  if (n == 0) fs.states.assign(1, {});
  fs.reindex();
  fs.initial = eval_states(fs, p.init, atoms);
  for (const auto& j : p.fairness) fs.fairness.push_back(eval_states(fs, j, atoms));

  // Successors: slots [0,n) hold the source, [n,2n) the target.
  SlotLayout layout(p.vars);
  for (const auto& v : p.vars) layout.add(v.primed());
  std::unique_ptr<InterpretationAtoms> table;
  CompiledExpr::PredId pid;
  if (atoms) {
    table = std::make_unique<InterpretationAtoms>(*atoms);
    pid = table->resolver();
  }
  std::vector<ConstraintSearch> searches;
  std::vector<std::vector<CompiledExpr>> compiled;
  auto dis = disjuncts(p.next);
  compiled.resize(dis.size());
  for (std::size_t di = 0; di < dis.size(); ++di) {
    for (const auto& c : conjuncts(dis[di])) compiled[di].emplace_back(c, layout.resolver(), pid);
  }
  for (std::size_t di = 0; di < dis.size(); ++di) {
    ConstraintSearch cs;
    for (std::size_t i = 0; i < n; ++i) cs.add_var(static_cast<int>(n + i), fs.domains[i]);
    for (const auto& ce : compiled[di]) {
      const CompiledExpr* ptr = &ce;
      const AtomTable* tab = table.get();
      cs.add_check(ce.slots_used(), [ptr, tab](std::span<const Value> s) { return ptr->truth(s, tab); });
    }
    searches.push_back(std::move(cs));
  }
  fs.succ.assign(fs.size(), {});
  std::size_t transitions = 0;
  std::vector<Value> slots(2 * n);
  for (std::size_t si = 0; si < fs.size(); ++si) {
    std::copy(fs.states[si].begin(), fs.states[si].end(), slots.begin());
    auto& out = fs.succ[si];
    for (const auto& cs : searches) {
      cs.run(slots, [&](std::span<const Value> s, int unknown) {
        if (unknown) throw Error("undetermined transition relation");
        auto t = fs.find(s.subspan(n, n));
        if (t) out.push_back(*t);
        return true;
      });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    transitions += out.size();
    if (transitions > opt.max_transitions)
      throw Error("finite expansion exceeds the cap of " + std::to_string(opt.max_transitions) + " transitions");
  }
  return fs;
}

}  // namespace ctlehc
