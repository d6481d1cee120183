#include "clause_eval.hpp"
#include "ctlehc/interp.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace ctlehc {

namespace detail {

std::map<std::string, int> pred_ids(const ClauseSet& cs) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < cs.preds.size(); ++i) out.emplace(cs.preds[i]->name, static_cast<int>(i));
  return out;
}

CompiledClause::CompiledClause(const Clause& c, const std::map<std::string, int>& ids, const Domains& d)
    : universal_(c.all_vars) {
  SlotLayout layout(c.all_vars);
  for (const auto& w : c.exist_vars) layout.add(w);
  slot_count_ = layout.size();
  auto compile_atom = [&](const Atom& a) {
    CompiledAtom out;
    auto it = ids.find(a.pred->name);
    if (it == ids.end()) throw Error("clause uses undeclared predicate " + a.pred->name);
    out.pred = it->second;
    for (const auto& v : a.args) out.slots.push_back(layout.at(v));
    return out;
  };
  for (std::size_t i = 0; i < c.all_vars.size(); ++i) body_.add_var(static_cast<int>(i), d.values(c.all_vars[i]));
  for (std::size_t i = 0; i < c.exist_vars.size(); ++i)
    head_.add_var(static_cast<int>(c.all_vars.size() + i), d.values(c.exist_vars[i]));

  for (const auto& e : conjuncts(c.body_constraint)) body_checks_.emplace_back(e, layout.resolver());
  for (const auto& a : c.body_atoms) body_atoms_.push_back(compile_atom(a));
  for (const auto& e : conjuncts(c.head_constraint)) head_checks_.emplace_back(e, layout.resolver());
  for (const auto& a : c.head_atoms) head_atoms_.push_back(compile_atom(a));

  for (std::size_t i = 0; i < body_checks_.size(); ++i)
    body_.add_check(body_checks_[i].slots_used(), [this, i](std::span<const Value> s) { return body_checks_[i].truth(s); });
  for (std::size_t i = 0; i < body_atoms_.size(); ++i)
    body_.add_check(body_atoms_[i].slots, [this, i](std::span<const Value> s) { return atom_truth(body_atoms_[i], s); });
  for (std::size_t i = 0; i < head_checks_.size(); ++i)
    head_.add_check(head_checks_[i].slots_used(), [this, i](std::span<const Value> s) { return head_checks_[i].truth(s); });
  for (std::size_t i = 0; i < head_atoms_.size(); ++i)
    head_.add_check(head_atoms_[i].slots, [this, i](std::span<const Value> s) { return atom_truth(head_atoms_[i], s); });
}

std::vector<int> CompiledClause::preds() const {
  std::vector<int> out;
  for (const auto& a : body_atoms_) out.push_back(a.pred);
  for (const auto& a : head_atoms_) out.push_back(a.pred);
  return out;
}

std::vector<Value> CompiledClause::tuple(const CompiledAtom& a, std::span<const Value> s) const {
  std::vector<Value> out;
  out.reserve(a.slots.size());
  for (int i : a.slots) out.push_back(s[static_cast<std::size_t>(i)]);
  return out;
}

Truth CompiledClause::atom_truth(const CompiledAtom& a, std::span<const Value> s) const {
  constexpr std::size_t kInline = 32;
  if (a.slots.size() > kInline) return table_->holds(a.pred, tuple(a, s));
  Value buf[kInline];
  for (std::size_t i = 0; i < a.slots.size(); ++i) buf[i] = s[static_cast<std::size_t>(a.slots[i])];
  return table_->holds(a.pred, std::span<const Value>(buf, a.slots.size()));
}

bool CompiledClause::evaluate(const AtomTable& table, std::vector<Unit>* units, std::vector<Value>* violation,
                              std::vector<BitRef>* log, std::vector<BitRef>* conflict) const {
  table_ = &table;
  std::vector<Value> slots(slot_count_);
  bool ok = true;
  const std::size_t n_all = universal_.size();
  body_.run(slots, [&](std::span<const Value> s, int unknown) {
    // The search above read body atoms on partial valuations; re-read them so
    // that the log holds exactly this instance.
    if (log) {
      log->clear();
      for (const auto& a : body_atoms_) atom_truth(a, s);
    }
    Truth head = Truth::F;
    int unknown_witnesses = 0;
    const CompiledAtom* unit_atom = nullptr;
    std::vector<Value> unit_tuple;
    head_.run(slots, [&](std::span<const Value> hs, int hu) {
      if (hu == 0) {
        head = Truth::T;
        return false;
      }
      head = Truth::U;
      if (++unknown_witnesses == 1 && hu == 1 && units) {
        for (const auto& a : head_atoms_)
          if (atom_truth(a, hs) == Truth::U) {
            unit_atom = &a;
            unit_tuple = tuple(a, hs);
            break;
          }
      }
      return true;
    });
    if (head == Truth::T) return true;
    auto reason = [&] { return log ? *log : std::vector<BitRef>{}; };
    if (unknown == 0) {
      if (head == Truth::F) {
        ok = false;
        if (violation) violation->assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n_all));
        if (conflict) *conflict = reason();
        return false;
      }
      if (units && unknown_witnesses == 1 && unit_atom) units->push_back({unit_atom->pred, unit_tuple, true, reason()});
    } else if (units && unknown == 1 && head == Truth::F) {
      for (const auto& a : body_atoms_)
        if (atom_truth(a, s) == Truth::U) {
          units->push_back({a.pred, tuple(a, s), false, reason()});
          break;
        }
    }
    return true;
  });
  return ok;
}

PartialModel::PartialModel(const ClauseSet& cs, const Domains& d, bool macros) : cs_(cs) {
  auto ids = pred_ids(cs);
  const std::size_t n = cs.preds.size();
  rels_.reserve(n);
  vals_.resize(n);
  searched_.assign(n, true);
  macros_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = *cs.preds[i];
    rels_.emplace_back(axes_for(p, d));
    const Derivation* der = macros ? cs.derivation_of(p.name) : nullptr;
    if (!der) {
      vals_[i].assign(rels_[i].space(), Truth::U);
      continue;
    }
    searched_[i] = false;
    auto m = std::make_unique<Macro>();
    m->d = der;
    if (der->kind == Derivation::Kind::Complement) {
      m->base = ids.at(der->base->name);
    } else {
      SlotLayout layout(der->params);
      for (std::size_t k = 0; k < der->params.size(); ++k) m->param_slots.push_back(static_cast<int>(k));
      for (int b = 0; b < 2; ++b)
        for (const auto& w : der->branch[b].exist_vars) layout.add(w);
      for (int b = 0; b < 2; ++b) {
        auto& br = m->branch[b];
        const auto& spec = der->branch[b];
        for (const auto& w : spec.exist_vars) br.exist.emplace_back(layout.at(w), d.values(w));
        br.constraint = CompiledExpr(spec.constraint, layout.resolver());
        for (const auto& a : spec.atoms) {
          CompiledAtom ca;
          ca.pred = ids.at(a.pred->name);
          for (const auto& v : a.args) ca.slots.push_back(layout.at(v));
          br.atoms.push_back(std::move(ca));
        }
      }
      m->slot_count = layout.size();
    }
    macros_[i] = std::move(m);
  }
}

Truth PartialModel::holds(int pred_id, std::span<const Value> args) const {
  auto p = static_cast<std::size_t>(pred_id);
  if (const auto& m = macros_[p]) {
    if (m->d->kind == Derivation::Kind::Complement) return t_not(holds(m->base, args));
    std::vector<Value> slots(m->slot_count);
    std::copy(args.begin(), args.end(), slots.begin());
    int b = args.back() != 0 ? 1 : 0;
    return eval_branch(*m, b, slots, 0);
  }
  auto idx = rels_[p].index_of(args);
  if (!idx) return Truth::F;
  Truth t = vals_[p][*idx];
  if (log_ && t != Truth::U) log_->emplace_back(pred_id, *idx);
  return t;
}

Truth PartialModel::eval_branch(const Macro& m, int b, std::vector<Value>& slots, std::size_t depth) const {
  const auto& br = m.branch[b];
  if (depth == br.exist.size()) {
    Truth t = br.constraint.truth(slots);
    for (const auto& a : br.atoms) {
      if (t == Truth::F) break;
      std::vector<Value> tup;
      for (int s : a.slots) tup.push_back(slots[static_cast<std::size_t>(s)]);
      t = t_and(t, holds(a.pred, tup));
    }
    return t;
  }
  Truth acc = Truth::F;
  const auto& [slot, dom] = br.exist[depth];
  for (const auto& v : dom) {
    slots[static_cast<std::size_t>(slot)] = v;
    acc = t_or(acc, eval_branch(m, b, slots, depth + 1));
    if (acc == Truth::T) break;
  }
  return acc;
}

void PartialModel::load(const Interpretation& interp) {
  for (std::size_t i = 0; i < rels_.size(); ++i) {
    if (!searched_[i]) continue;
    const auto& name = cs_.preds[i]->name;
    if (!interp.has(name)) throw Error("interpretation has no relation for " + name);
    const Relation& src = interp.at(name);
    if (src.axes() == rels_[i].axes()) {
      for (std::size_t k = 0; k < rels_[i].space(); ++k) vals_[i][k] = truth_of(src.test(k));
    } else {
      for (std::size_t k = 0; k < rels_[i].space(); ++k) vals_[i][k] = truth_of(src.contains(rels_[i].tuple_at(k)));
    }
  }
}

Interpretation PartialModel::materialize() const {
  Interpretation out;
  for (std::size_t i = 0; i < rels_.size(); ++i) {
    Relation r = rels_[i];
    for (std::size_t k = 0; k < r.space(); ++k) {
      Truth t = searched_[i] ? vals_[i][k] : holds(static_cast<int>(i), r.tuple_at(k));
      r.set(k, t == Truth::T);
    }
    out.set(cs_.preds[i]->name, std::move(r));
  }
  return out;
}

}  // namespace detail

std::string Violation::str() const {
  std::ostringstream os;
  if (dwf) {
    os << "dwf #" << index << " [" << tag << "] is not well-founded";
  } else {
    os << "clause #" << index << " [" << tag << "] violated";
  }
  if (!valuation.empty()) {
    os << " at";
    for (std::size_t i = 0; i < valuation.size(); ++i)
      os << (i ? ", " : " ") << valuation[i].first.display() << "=" << value_str(valuation[i].second, valuation[i].first.sort);
  }
  return os.str();
}

namespace {

struct Square {
  std::size_t n = 0;  // elements per half
  std::size_t h = 0;
};

Square square_of(const Relation& r) {
  if (r.arity() % 2 != 0) throw Error("relation arity must be even for well-foundedness checks");
  Square s;
  s.h = r.arity() / 2;
  s.n = 1;
  for (std::size_t i = 0; i < s.h; ++i) {
    if (r.axes()[i] != r.axes()[i + s.h]) throw Error("relation halves range over different domains");
    s.n *= r.axes()[i].size();
  }
  return s;
}

}  // namespace

bool is_irreflexive(const Relation& r) {
  auto s = square_of(r);
  for (std::size_t a = 0; a < s.n; ++a)
    if (r.test(a * s.n + a)) return false;
  return true;
}

bool is_well_founded(const Relation& r) {
  auto s = square_of(r);
  // Kahn's algorithm: acyclic iff every vertex gets removed.
  std::vector<std::size_t> indeg(s.n, 0);
  for (std::size_t a = 0; a < s.n; ++a)
    for (std::size_t b = 0; b < s.n; ++b)
      if (r.test(a * s.n + b)) ++indeg[b];
  std::vector<std::size_t> work;
  for (std::size_t a = 0; a < s.n; ++a)
    if (indeg[a] == 0) work.push_back(a);
  std::size_t removed = 0;
  while (!work.empty()) {
    auto a = work.back();
    work.pop_back();
    ++removed;
    for (std::size_t b = 0; b < s.n; ++b)
      if (r.test(a * s.n + b) && --indeg[b] == 0) work.push_back(b);
  }
  return removed == s.n;
}

Relation transitive_closure(const Relation& r) {
  auto s = square_of(r);
  const std::size_t words = (s.n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(s.n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t a = 0; a < s.n; ++a)
    for (std::size_t b = 0; b < s.n; ++b)
      if (r.test(a * s.n + b)) reach[a][b / 64] |= 1ull << (b % 64);
  for (std::size_t k = 0; k < s.n; ++k)
    for (std::size_t a = 0; a < s.n; ++a)
      if (reach[a][k / 64] >> (k % 64) & 1)
        for (std::size_t w = 0; w < words; ++w) reach[a][w] |= reach[k][w];
  Relation out = r;
  for (std::size_t a = 0; a < s.n; ++a)
    for (std::size_t b = 0; b < s.n; ++b) out.set(a * s.n + b, reach[a][b / 64] >> (b % 64) & 1);
  return out;
}

Verdict check_dwf(const DwfClause& c, const Interpretation& interp) {
  const Relation& r = interp.at(c.pred->name);
  if (r.arity() != c.pred->arity()) throw Error("relation for " + c.pred->name + " has the wrong arity");
  Verdict v;
  if (is_irreflexive(r)) return v;
  v.ok = false;
  Violation viol;
  viol.dwf = true;
  viol.tag = c.tag;
  auto s = square_of(r);
  for (std::size_t a = 0; a < s.n; ++a)
    if (r.test(a * s.n + a)) {
      auto tup = r.tuple_at(a * s.n + a);
      for (std::size_t i = 0; i < c.pred->arity(); ++i) viol.valuation.emplace_back(c.pred->params[i], tup[i]);
      break;
    }
  v.violation = std::move(viol);
  return v;
}

ClauseSetChecker::ClauseSetChecker(const ClauseSet& cs, const Domains& d) : cs_(cs), d_(d) {
  auto ids = detail::pred_ids(cs);
  for (const auto& c : cs.clauses) compiled_.push_back(std::make_unique<detail::CompiledClause>(c, ids, d));
}

ClauseSetChecker::~ClauseSetChecker() = default;

namespace {

Verdict run_clause(const detail::CompiledClause& cc, const Clause& c, std::size_t index, const detail::PartialModel& m) {
  std::vector<Value> val;
  Verdict v;
  if (cc.evaluate(m, nullptr, &val)) return v;
  v.ok = false;
  Violation viol;
  viol.index = index;
  viol.tag = c.tag;
  for (std::size_t i = 0; i < val.size(); ++i) viol.valuation.emplace_back(c.all_vars[i], val[i]);
  v.violation = std::move(viol);
  return v;
}

}  // namespace

Verdict ClauseSetChecker::check_one(std::size_t index, const Interpretation& interp) const {
  detail::PartialModel m(cs_, d_, false);
  m.load(interp);
  return run_clause(*compiled_.at(index), cs_.clauses[index], index, m);
}

Verdict ClauseSetChecker::check(const Interpretation& interp) const {
  detail::PartialModel m(cs_, d_, false);
  m.load(interp);
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    auto v = run_clause(*compiled_[i], cs_.clauses[i], i, m);
    if (!v.ok) return v;
  }
  for (std::size_t i = 0; i < cs_.dwf.size(); ++i) {
    auto v = check_dwf(cs_.dwf[i], interp);
    if (!v.ok) {
      v.violation->index = i;
      return v;
    }
  }
  return {};
}

Verdict check_clause(const ClauseSet& cs, std::size_t index, const Interpretation& interp, const Domains& d) {
  return ClauseSetChecker(cs, d).check_one(index, interp);
}

Verdict check_clause_set(const ClauseSet& cs, const Interpretation& interp, const Domains& d) {
  return ClauseSetChecker(cs, d).check(interp);
}

}  // namespace ctlehc
