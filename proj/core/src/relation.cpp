#include "ctlehc/relation.hpp"

#include <algorithm>

namespace ctlehc {

Relation::Relation(std::vector<std::vector<Value>> axes) : axes_(std::move(axes)) {
  strides_.assign(axes_.size(), 1);
  std::size_t total = 1;
  for (std::size_t i = axes_.size(); i-- > 0;) {
    strides_[i] = total;
    total *= axes_[i].size();
    if (total > (std::size_t{1} << 34)) throw Error("relation space too large");
  }
  bits_.assign(total, false);
}

std::optional<std::size_t> Relation::index_of(std::span<const Value> tuple) const {
  if (tuple.size() != axes_.size()) throw Error("tuple arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const auto& ax = axes_[i];
    auto it = std::find(ax.begin(), ax.end(), tuple[i]);
    if (it == ax.end()) return std::nullopt;
    idx += static_cast<std::size_t>(it - ax.begin()) * strides_[i];
  }
  return idx;
}

std::vector<Value> Relation::tuple_at(std::size_t index) const {
  std::vector<Value> out(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    out[i] = axes_[i][(index / strides_[i]) % axes_[i].size()];
  }
  return out;
}

bool Relation::contains(std::span<const Value> tuple) const {
  auto i = index_of(tuple);
  return i && bits_[*i];
}

void Relation::insert(std::span<const Value> tuple) {
  auto i = index_of(tuple);
  if (!i) throw Error("tuple outside the relation's domain");
  bits_[*i] = true;
}

std::size_t Relation::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

void Relation::clear() { std::fill(bits_.begin(), bits_.end(), false); }

std::vector<std::vector<Value>> axes_for(const PredSym& p, const Domains& d) {
  std::vector<std::vector<Value>> axes;
  for (std::size_t i = 0; i < p.arity(); ++i) axes.push_back(d.values(p.arg_domain(i), p.arg_sort(i)));
  return axes;
}

const Relation& Interpretation::at(std::string_view name) const {
  auto it = rels_.find(std::string(name));
  if (it == rels_.end()) throw Error("interpretation has no relation for " + std::string(name));
  return it->second;
}

Relation& Interpretation::at(std::string_view name) {
  auto it = rels_.find(std::string(name));
  if (it == rels_.end()) throw Error("interpretation has no relation for " + std::string(name));
  return it->second;
}

Relation& Interpretation::ensure(const PredSym& p, const Domains& d) {
  auto it = rels_.find(p.name);
  if (it != rels_.end()) return it->second;
  return rels_.emplace(p.name, Relation(axes_for(p, d))).first->second;
}

void Interpretation::merge(const Interpretation& other) {
  for (const auto& [k, v] : other.rels_) rels_[k] = v;
}

InterpretationAtoms::InterpretationAtoms(const Interpretation& interp) : interp_(interp) {}

int InterpretationAtoms::id_of(const PredSym& p) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == p.name) return static_cast<int>(i);
  if (!interp_.has(p.name)) throw Error("interpretation has no relation for " + p.name);
  names_.push_back(p.name);
  rels_.push_back(&interp_.at(p.name));
  return static_cast<int>(names_.size()) - 1;
}

CompiledExpr::PredId InterpretationAtoms::resolver() {
  return [this](const PredSym& p) { return id_of(p); };
}

Truth InterpretationAtoms::holds(int pred_id, std::span<const Value> args) const {
  return truth_of(rels_[static_cast<std::size_t>(pred_id)]->contains(args));
}

}  // namespace ctlehc
