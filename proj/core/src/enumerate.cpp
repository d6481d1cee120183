#include "clause_eval.hpp"
#include "ctlehc/interp.hpp"

#include <algorithm>
#include <optional>

namespace ctlehc {

std::string status_name(EnumStatus s) {
  switch (s) {
    case EnumStatus::Sat:
      return "sat";
    case EnumStatus::Unsat:
      return "unsat";
    case EnumStatus::CapExceeded:
      return "cap-exceeded";
  }
  return "?";
}

namespace {

struct CapHit {
  std::string reason;
};

// Base bits of searched predicates are the search variables. Decisions follow
// declaration order and tuple order, trying false first. Conflicts are analysed
// to the first unique implication point; the learned nogood forbids the
// combination of bit values that led there.
class Enumerator {
 public:
  Enumerator(const ClauseSet& cs, const Domains& d, const EnumOptions& opt)
      : cs_(cs), opt_(opt), model_(cs, d, !opt.raw) {
    auto ids = detail::pred_ids(cs);
    for (const auto& c : cs.clauses) clauses_.push_back(std::make_unique<detail::CompiledClause>(c, ids, d));
    std::size_t total = 0;
    offset_.assign(model_.pred_count(), 0);
    for (std::size_t p = 0; p < model_.pred_count(); ++p) {
      int pi = static_cast<int>(p);
      offset_[p] = total;
      if (!model_.searched(pi)) continue;
      const auto space = model_.shape(pi).space();
      if (space > opt.max_space_per_pred)
        throw CapHit{"predicate " + cs.preds[p]->name + " has " + std::to_string(space) +
                     " tuples, above the cap of " + std::to_string(opt.max_space_per_pred)};
      total += space;
      for (std::size_t k = 0; k < space; ++k) bits_.emplace_back(pi, k);
    }
    if (total > opt.max_total_bits)
      throw CapHit{"search space has " + std::to_string(total) + " tuples, above the cap of " +
                   std::to_string(opt.max_total_bits)};
    pred_stamp_.assign(model_.pred_count(), 1);
    for (const auto& cc : clauses_) {
      std::vector<int> deps;
      for (int p : cc->preds()) add_deps(p, deps);
      std::sort(deps.begin(), deps.end());
      deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
      deps_.push_back(std::move(deps));
    }
    clause_stamp_.assign(clauses_.size(), 0);
    level_.assign(bits_.size(), -1);
    reason_.assign(bits_.size(), -1);
    for (const auto& dw : cs.dwf) {
      int pi = ids.at(dw.pred->name);
      if (!model_.searched(pi)) continue;
      const Relation& shape = model_.shape(pi);
      std::size_t n = 1;
      for (std::size_t i = 0; i < shape.arity() / 2; ++i) n *= shape.axes()[i].size();
      for (std::size_t a = 0; a < n; ++a) set(var_of(pi, a * n + a), false, -1);
    }
  }

  EnumResult run() {
    if (opt_.count_all)
      count(0);
    else
      solve();
    return std::move(result_);
  }

 private:
  using Lit = std::pair<std::size_t, bool>;  // variable, value it has in the nogood

  std::size_t var_of(int pred, std::size_t index) const { return offset_[static_cast<std::size_t>(pred)] + index; }
  Truth value(std::size_t v) const { return model_.bit(bits_[v].first, bits_[v].second); }

  // Searched predicates whose bits a clause over `pred` can read.
  void add_deps(int pred, std::vector<int>& out) const {
    if (model_.searched(pred)) {
      out.push_back(pred);
      return;
    }
    const auto* der = cs_.derivation_of(cs_.preds[static_cast<std::size_t>(pred)]->name);
    auto id = [&](const std::string& name) {
      for (std::size_t i = 0; i < cs_.preds.size(); ++i)
        if (cs_.preds[i]->name == name) return static_cast<int>(i);
      throw Error("unknown predicate " + name);
    };
    if (der->kind == Derivation::Kind::Complement) {
      add_deps(id(der->base->name), out);
      return;
    }
    for (const auto& br : der->branch)
      for (const auto& a : br.atoms) add_deps(id(a.pred->name), out);
  }

  void set(std::size_t v, bool b, int reason) {
    pred_stamp_[static_cast<std::size_t>(bits_[v].first)] = ++tick_;
    model_.assign(bits_[v].first, bits_[v].second, truth_of(b));
    level_[v] = static_cast<int>(marks_.size());
    reason_[v] = reason;
    trail_.push_back(v);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      auto v = trail_.back();
      trail_.pop_back();
      pred_stamp_[static_cast<std::size_t>(bits_[v].first)] = ++tick_;
      model_.assign(bits_[v].first, bits_[v].second, Truth::U);
      level_[v] = -1;
      reason_[v] = -1;
    }
  }

  int store_reason(std::vector<std::size_t> vars) {
    reasons_.push_back(std::move(vars));
    return static_cast<int>(reasons_.size()) - 1;
  }

  std::vector<std::size_t> vars_of(const std::vector<detail::BitRef>& refs) const {
    std::vector<std::size_t> out;
    out.reserve(refs.size());
    for (const auto& [p, k] : refs) out.push_back(var_of(p, k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Returns the variables of a conflict, or nothing when propagation settles.
  std::optional<std::vector<std::size_t>> propagate() {
    std::vector<detail::Unit> units;
    std::vector<detail::BitRef> log, conflict;
    model_.set_read_log(&log);
    struct Reset {
      detail::PartialModel& m;
      ~Reset() { m.set_read_log(nullptr); }
    } reset{model_};
    while (true) {
      bool changed = false;
      for (std::size_t c = 0; c < clauses_.size(); ++c) {
        // Clauses over no searched predicate are evaluated once.
        std::uint64_t latest = deps_[c].empty() ? 1 : 0;
        for (int p : deps_[c]) latest = std::max(latest, pred_stamp_[static_cast<std::size_t>(p)]);
        if (latest <= clause_stamp_[c]) continue;
        clause_stamp_[c] = tick_;
        const auto& cc = clauses_[c];
        units.clear();
        if (!cc->evaluate(model_, &units, nullptr, &log, &conflict)) return vars_of(conflict);
        for (auto& u : units) {
          int pred = u.pred;
          bool val = u.value;
          if (!model_.searched(pred)) {
            const auto* der = cs_.derivation_of(cs_.preds[static_cast<std::size_t>(pred)]->name);
            if (der->kind != Derivation::Kind::Complement) continue;
            pred = base_of(der->base->name);
            val = !val;
          }
          auto idx = model_.shape(pred).index_of(u.tuple);
          if (!idx) continue;
          const std::size_t v = var_of(pred, *idx);
          Truth cur = value(v);
          if (cur == Truth::U) {
            set(v, val, store_reason(vars_of(u.reason)));
            changed = true;
          } else if (cur != truth_of(val)) {
            auto c = vars_of(u.reason);
            c.push_back(v);
            return c;
          }
        }
      }
      for (const auto& ng : nogoods_) {
        int open = -1;
        bool satisfied = false;
        for (std::size_t i = 0; i < ng.size(); ++i) {
          Truth t = value(ng[i].first);
          if (t == Truth::U) {
            if (open >= 0) {
              satisfied = true;  // two open literals: nothing to do
              break;
            }
            open = static_cast<int>(i);
          } else if (t != truth_of(ng[i].second)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < ng.size(); ++i)
          if (static_cast<int>(i) != open) others.push_back(ng[i].first);
        if (open < 0) return others;
        set(ng[static_cast<std::size_t>(open)].first, !ng[static_cast<std::size_t>(open)].second,
            store_reason(std::move(others)));
        changed = true;
      }
      if (!changed) return std::nullopt;
    }
  }

  int base_of(const std::string& name) {
    for (std::size_t i = 0; i < cs_.preds.size(); ++i)
      if (cs_.preds[i]->name == name) return static_cast<int>(i);
    throw Error("unknown predicate " + name);
  }

  // First-UIP analysis. Returns the learned nogood and the backjump level.
  std::pair<std::vector<Lit>, int> analyse(const std::vector<std::size_t>& conflict) {
    const int cur = static_cast<int>(marks_.size());
    std::vector<char> seen(bits_.size(), 0);
    std::vector<Lit> learned;
    int open = 0;
    auto add = [&](std::size_t v) {
      if (seen[v] || level_[v] <= 0) return;
      seen[v] = 1;
      if (level_[v] == cur)
        ++open;
      else
        learned.emplace_back(v, value(v) == Truth::T);
    };
    for (auto v : conflict) add(v);
    std::size_t i = trail_.size();
    std::size_t uip = 0;
    while (open > 0) {
      do {
        --i;
      } while (!seen[trail_[i]]);
      const std::size_t v = trail_[i];
      seen[v] = 0;
      if (--open == 0 || reason_[v] < 0) {
        uip = v;
        break;
      }
      for (auto w : reasons_[static_cast<std::size_t>(reason_[v])]) add(w);
    }
    int back = 0;
    for (const auto& [v, b] : learned) back = std::max(back, level_[v]);
    learned.emplace_back(uip, value(uip) == Truth::T);
    return {std::move(learned), back};
  }

  void solve() {
    while (true) {
      if (auto conflict = propagate()) {
        int top = 0;
        for (auto v : *conflict) top = std::max(top, level_[v]);
        if (top == 0) return;  // unsat
        if (top < static_cast<int>(marks_.size())) {
          // Settle the conflict at the level where it arose.
          undo_to(marks_[static_cast<std::size_t>(top)]);
          marks_.resize(static_cast<std::size_t>(top));
          next_ = 0;
          continue;
        }
        auto [nogood, back] = analyse(*conflict);
        undo_to(marks_[static_cast<std::size_t>(back)]);
        marks_.resize(static_cast<std::size_t>(back));
        const auto [uip, was] = nogood.back();
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i + 1 < nogood.size(); ++i) others.push_back(nogood[i].first);
        set(uip, !was, store_reason(std::move(others)));
        nogoods_.push_back(std::move(nogood));
        next_ = 0;
        continue;
      }
      while (next_ < bits_.size() && value(next_) != Truth::U) ++next_;
      const std::size_t v = next_;
      if (v == bits_.size()) {
        result_.status = EnumStatus::Sat;
        result_.models = 1;
        result_.model = model_.materialize();
        return;
      }
      if (++result_.decisions > opt_.max_decisions)
        throw CapHit{"decision cap of " + std::to_string(opt_.max_decisions) + " reached"};
      marks_.push_back(trail_.size());
      set(v, false, -1);
    }
  }

  // Plain backtracking over every model; used for counting.
  bool count(std::size_t from) {
    if (propagate()) return false;
    std::size_t v = from;
    while (v < bits_.size() && value(v) != Truth::U) ++v;
    if (v == bits_.size()) {
      if (result_.models++ == 0) {
        result_.status = EnumStatus::Sat;
        result_.model = model_.materialize();
      }
      return false;
    }
    if (++result_.decisions > opt_.max_decisions)
      throw CapHit{"decision cap of " + std::to_string(opt_.max_decisions) + " reached"};
    for (bool b : {false, true}) {
      std::size_t mark = trail_.size();
      marks_.push_back(mark);
      set(v, b, -1);
      count(v + 1);
      undo_to(mark);
      marks_.pop_back();
    }
    return false;
  }

  const ClauseSet& cs_;
  EnumOptions opt_;
  detail::PartialModel model_;
  std::vector<std::unique_ptr<detail::CompiledClause>> clauses_;
  std::vector<std::size_t> offset_;
  std::vector<std::pair<int, std::size_t>> bits_;
  std::vector<std::vector<int>> deps_;       // per clause
  std::vector<std::uint64_t> pred_stamp_;   // tick of the last change
  std::vector<std::uint64_t> clause_stamp_;  // tick of the last evaluation
  std::uint64_t tick_ = 1;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<std::vector<std::size_t>> reasons_;
  std::vector<std::vector<Lit>> nogoods_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> marks_;  // trail size at each decision
  std::size_t next_ = 0;
  EnumResult result_;
};

}  // namespace

EnumResult enumerate_interpretations(const ClauseSet& cs, const Domains& d, const EnumOptions& opt) {
  try {
    Enumerator e(cs, d, opt);
    return e.run();
  } catch (const CapHit& c) {
    EnumResult r;
    r.status = EnumStatus::CapExceeded;
    r.cap_reason = c.reason;
    return r;
  }
}

}  // namespace ctlehc
