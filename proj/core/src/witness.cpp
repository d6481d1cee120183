#include "clause_eval.hpp"
#include "ctlehc/frontend.hpp"
#include "ctlehc/interp.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace ctlehc {

namespace {

// Tuple for a predicate whose parameters are program variables, possibly
// primed: each half is a state valuation.
std::vector<Value> pair_tuple(const FiniteSystem& fs, std::uint32_t s, std::uint32_t t) {
  std::vector<Value> out = fs.states[s];
  out.insert(out.end(), fs.states[t].begin(), fs.states[t].end());
  return out;
}

Relation state_relation(const FiniteSystem& fs, const PredPtr& p, const Domains& d, const StateSet& set) {
  Relation r(axes_for(*p, d));
  for (std::uint32_t s = 0; s < fs.size(); ++s)
    if (set[s]) r.insert(fs.states[s]);
  return r;
}

// reach[s][t]: a path of length >= 1 from s to t.
std::vector<std::vector<bool>> closure(const FiniteSystem& fs) {
  const std::size_t n = fs.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<std::uint32_t> work(fs.succ[s].begin(), fs.succ[s].end());
    for (auto t : work) reach[s][t] = true;
    while (!work.empty()) {
      auto u = work.back();
      work.pop_back();
      for (auto w : fs.succ[u])
        if (!reach[s][w]) {
          reach[s][w] = true;
          work.push_back(w);
        }
    }
  }
  return reach;
}

}  // namespace

Interpretation witness_rule6(const FiniteSystem& fs, const Rule6Preds& preds, const Domains& d) {
  Interpretation out;
  StateSet fair = fair_states(fs, true);
  StateSet p(fs.size());
  for (std::size_t s = 0; s < fs.size(); ++s) p[s] = !fair[s];
  out.set(preds.p->name, state_relation(fs, preds.p, d, p));

  auto reach = closure(fs);
  Relation t(axes_for(*preds.t, d));
  for (std::uint32_t s = 0; s < fs.size(); ++s)
    for (std::uint32_t u = 0; u < fs.size(); ++u)
      if (reach[s][u]) t.insert(pair_tuple(fs, s, u));
  out.set(preds.t->name, std::move(t));

  Relation r(axes_for(*preds.r, d));
  for (std::uint32_t s0 = 0; s0 < fs.size(); ++s0) {
    if (!p[s0]) continue;
    StateSet frontier(fs.size(), false);
    frontier[s0] = true;
    if (fs.fairness.empty()) {
      frontier = reach[s0];
    } else {
      for (const auto& j : fs.fairness) {
        StateSet next(fs.size(), false);
        for (std::uint32_t a = 0; a < fs.size(); ++a) {
          if (!frontier[a]) continue;
          for (std::uint32_t b = 0; b < fs.size(); ++b)
            if (reach[a][b] && j[b]) next[b] = true;
        }
        frontier = std::move(next);
      }
    }
    for (std::uint32_t sk = 0; sk < fs.size(); ++sk)
      if (frontier[sk]) r.insert(pair_tuple(fs, s0, sk));
  }
  out.set(preds.r->name, std::move(r));
  return out;
}

Interpretation witness_rule7(const FiniteSystem& fs, const Rule7Preds& preds, const Domains& d) {
  Interpretation out;
  const bool fair_mode = !preds.r.empty();
  StateSet fair = fair_states(fs, fair_mode);
  for (const auto& q : preds.q) out.set(q->name, state_relation(fs, q, d, fair));
  const std::size_t n = fs.size();
  std::vector<std::vector<std::uint32_t>> pred(n);
  for (std::uint32_t s = 0; s < n; ++s)
    for (auto t : fs.succ[s]) pred[t].push_back(s);
  for (std::size_t i = 0; i < preds.r.size(); ++i) {
    // BFS distance within fair states to a fair state satisfying J_i.
    constexpr auto inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, inf);
    std::deque<std::uint32_t> work;
    for (std::uint32_t s = 0; s < n; ++s)
      if (fair[s] && fs.fairness[i][s]) {
        dist[s] = 0;
        work.push_back(s);
      }
    while (!work.empty()) {
      auto t = work.front();
      work.pop_front();
      for (auto s : pred[t])
        if (fair[s] && dist[s] == inf) {
          dist[s] = dist[t] + 1;
          work.push_back(s);
        }
    }
    Relation r(axes_for(*preds.r[i], d));
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::uint32_t t = 0; t < n; ++t)
        if (dist[s] != inf && dist[t] != inf && dist[t] < dist[s]) r.insert(pair_tuple(fs, s, t));
    out.set(preds.r[i]->name, std::move(r));
  }
  return out;
}

Interpretation complete_derived(const ClauseSet& cs, const Interpretation& base, const Domains& d) {
  detail::PartialModel m(cs, d, true);
  m.load(base);
  Interpretation out = base;
  out.merge(m.materialize());
  return out;
}

namespace {

class Composer {
 public:
  Composer(const Domains& d, Interpretation& out) : d_(d), out_(out) {}

  void step(const TraceStep& s) {
    const Program& prog = s.problem.program;
    switch (s.rule) {
      case Rule::R8:
        return;
      case Rule::R1: {
        Program any = prog;
        any.init = ex::t();
        auto fs = expand_finite(any, d_, &out_);
        for (const auto& [aux, f] : s.splits) {
          ModelChecker mc(fs, &out_);
          out_.set(aux->name, state_relation(fs, aux, d_, mc.label(f)));
        }
        break;
      }
      case Rule::R3:
      case Rule::R4:
      case Rule::R5:
        if (s.aux) {
          const Problem& child = s.children.at(0).problem;
          Program any = child.program;
          any.init = ex::t();
          auto fs = expand_finite(any, d_, &out_);
          ModelChecker mc(fs, &out_);
          out_.set(s.aux->name, state_relation(fs, s.aux, d_, mc.label(child.spec)));
        }
        break;
      case Rule::R6: {
        auto fs = expand_finite(prog, d_, &out_);
        out_.merge(witness_rule6(fs, Rule6Preds{s.preds.at(0), s.preds.at(1), s.preds.at(2)}, d_));
        return;
      }
      case Rule::R7: {
        auto fs = expand_finite(prog, d_, &out_);
        Rule7Preds rp;
        std::size_t k = prog.fairness.size();
        if (k == 0) {
          rp.q = {s.preds.at(0)};
        } else {
          rp.q.assign(s.preds.begin(), s.preds.begin() + static_cast<std::ptrdiff_t>(k));
          rp.r.assign(s.preds.begin() + static_cast<std::ptrdiff_t>(k), s.preds.end());
        }
        out_.merge(witness_rule7(fs, rp, d_));
        return;
      }
      case Rule::R2:
        break;
    }
    for (const auto& c : s.children) step(c);
  }

 private:
  const Domains& d_;
  Interpretation& out_;
};

}  // namespace

Interpretation compose_witness(const Translation& t, const Domains& d, const Interpretation& given) {
  Interpretation base = given;
  for (const auto& der : t.clauses.derived) {
    if (der.kind != Derivation::Kind::Complement || base.has(der.pred->name) || !base.has(der.base->name)) continue;
    const Relation& src = base.at(der.base->name);
    Relation r(axes_for(*der.pred, d));
    for (std::size_t k = 0; k < r.space(); ++k) r.set(k, !src.contains(r.tuple_at(k)));
    base.set(der.pred->name, std::move(r));
  }
  Composer(d, base).step(t.trace);
  for (const auto& p : t.clauses.preds)
    if (!base.has(p->name) && !t.clauses.derivation_of(p->name)) base.ensure(*p, d);
  return complete_derived(t.clauses, base, d);
}

}  // namespace ctlehc
