#include "ctlehc/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ctlehc {

namespace {

class GbaBuilder {
 public:
  Gba run(const Formula& root) {
    int r = intern(root);
    std::map<std::vector<int>, int> node_ids;
    std::vector<std::vector<int>> nodes;
    auto node_of = [&](std::vector<int> obl) {
      auto it = node_ids.find(obl);
      if (it != node_ids.end()) return it->second;
      int id = static_cast<int>(nodes.size());
      node_ids.emplace(obl, id);
      nodes.push_back(std::move(obl));
      return id;
    };
    gba_.initial = node_of({r});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::vector<Branch> out;
      Branch b;
      b.todo = nodes[i];
      expand(std::move(b), out);
      std::vector<Gba::Edge> edges;
      for (auto& br : out) {
        Gba::Edge e;
        e.lits.assign(br.lits.begin(), br.lits.end());
        e.target = node_of(std::vector<int>(br.next.begin(), br.next.end()));
        e.acc = all_acc() & ~br.postponed;
        bool dup = std::any_of(edges.begin(), edges.end(), [&](const Gba::Edge& x) {
          return x.lits == e.lits && x.target == e.target && x.acc == e.acc;
        });
        if (!dup) edges.push_back(std::move(e));
      }
      if (gba_.edges.size() <= i) gba_.edges.resize(i + 1);
      gba_.edges[i] = std::move(edges);
    }
    gba_.edges.resize(nodes.size());
    gba_.num_acc = static_cast<int>(acc_count_);
    return std::move(gba_);
  }

 private:
  struct Branch {
    std::vector<int> todo;
    std::set<int> done;
    std::set<int> lits;
    std::set<int> next;
    std::uint64_t postponed = 0;
  };

  std::uint64_t all_acc() const { return acc_count_ >= 64 ? ~0ull : ((1ull << acc_count_) - 1); }

  int intern(const Formula& f) {
    auto key = std::to_string(static_cast<int>(f->kind)) + ":" + to_string(f);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(forms_.size());
    ids_.emplace(key, id);
    forms_.push_back(f);
    acc_bit_.push_back(-1);
    leaf_.push_back(-1);
    if (f->kind == FKind::U) {
      if (acc_count_ >= 64) throw Error("too many until subformulas for the tableau");
      acc_bit_[static_cast<std::size_t>(id)] = static_cast<int>(acc_count_++);
    }
    if (is_state_formula(f)) {
      leaf_[static_cast<std::size_t>(id)] = static_cast<int>(gba_.leaves.size());
      gba_.leaves.push_back(f);
    } else {
      for (const auto& k : f->kids) intern(k);
    }
    return id;
  }

  void expand(Branch b, std::vector<Branch>& out) {
    while (!b.todo.empty()) {
      int id = b.todo.back();
      b.todo.pop_back();
      if (!b.done.insert(id).second) continue;
      const Formula f = forms_[static_cast<std::size_t>(id)];
      if (leaf_[static_cast<std::size_t>(id)] >= 0) {
        if (f->kind == FKind::Atom && is_true(f->atom)) continue;
        if (f->kind == FKind::Atom && is_false(f->atom)) return;
        b.lits.insert(leaf_[static_cast<std::size_t>(id)]);
        continue;
      }
      switch (f->kind) {
        case FKind::And:
          for (const auto& k : f->kids) b.todo.push_back(intern(k));
          break;
        case FKind::Or:
          for (const auto& k : f->kids) {
            Branch c = b;
            c.todo.push_back(intern(k));
            expand(std::move(c), out);
          }
          return;
        case FKind::X:
          b.next.insert(intern(f->kids[0]));
          break;
        case FKind::G:
          b.todo.push_back(intern(f->kids[0]));
          b.next.insert(id);
          break;
        case FKind::U: {
          Branch now = b;
          now.todo.push_back(intern(f->kids[1]));
          expand(std::move(now), out);
          b.todo.push_back(intern(f->kids[0]));
          b.next.insert(id);
          b.postponed |= 1ull << acc_bit_[static_cast<std::size_t>(id)];
          break;
        }
        case FKind::F:
          throw Error("tableau expects F to be rewritten as true U");
        case FKind::Not:
          throw Error("tableau expects a formula in negation normal form");
        default:
          throw Error("unexpected formula in tableau");
      }
    }
    out.push_back(std::move(b));
  }

  Gba gba_;
  std::map<std::string, int> ids_;
  std::vector<Formula> forms_;
  std::vector<int> acc_bit_;
  std::vector<int> leaf_;
  std::size_t acc_count_ = 0;
};

}  // namespace

Gba build_gba(const Formula& path_nnf) { return GbaBuilder().run(path_nnf); }

}  // namespace ctlehc
