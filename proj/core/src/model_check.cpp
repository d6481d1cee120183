#include "ctlehc/frontend.hpp"
#include "ctlehc/oracle.hpp"

#include <algorithm>

namespace ctlehc {

namespace {

struct Graph {
  std::vector<std::vector<std::uint32_t>> adj;
  std::vector<std::vector<std::uint64_t>> acc;  // parallel to adj, may be empty
};

// Iterative Tarjan; returns component id per vertex.
std::vector<int> scc(const std::vector<std::vector<std::uint32_t>>& adj, int& count) {
  const std::size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  int next_index = 0;
  count = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei < adj[v].size()) {
        auto w = adj[v][ei++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          auto w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
          if (w == v) break;
        }
        ++count;
      }
      auto done = v;
      call.pop_back();
      if (!call.empty()) {
        auto parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

// Vertices that can reach a marked vertex.
std::vector<bool> backward_reach(const std::vector<std::vector<std::uint32_t>>& adj, std::vector<bool> marked) {
  const std::size_t n = adj.size();
  std::vector<std::vector<std::uint32_t>> rev(n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (auto w : adj[v]) rev[w].push_back(v);
  std::vector<std::uint32_t> work;
  for (std::uint32_t v = 0; v < n; ++v)
    if (marked[v]) work.push_back(v);
  while (!work.empty()) {
    auto w = work.back();
    work.pop_back();
    for (auto v : rev[w])
      if (!marked[v]) {
        marked[v] = true;
        work.push_back(v);
      }
  }
  return marked;
}

// Good components: contain an internal edge, every acceptance bit on some
// internal edge, and a state of every fairness set.
std::vector<bool> good_vertices(const Graph& g, int num_acc, const std::vector<StateSet>& fairness,
                                const std::function<std::uint32_t(std::uint32_t)>& state_of) {
  int count = 0;
  auto comp = scc(g.adj, count);
  std::vector<char> nontrivial(static_cast<std::size_t>(count), 0);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(count), 0);
  std::vector<std::vector<char>> fair_hit(fairness.size(), std::vector<char>(static_cast<std::size_t>(count), 0));
  for (std::uint32_t v = 0; v < g.adj.size(); ++v) {
    auto c = static_cast<std::size_t>(comp[v]);
    for (std::size_t e = 0; e < g.adj[v].size(); ++e) {
      auto w = g.adj[v][e];
      if (comp[w] != comp[v]) continue;
      nontrivial[c] = 1;
      if (!g.acc.empty()) acc[c] |= g.acc[v][e];
    }
    auto s = state_of(v);
    for (std::size_t j = 0; j < fairness.size(); ++j)
      if (fairness[j][s]) fair_hit[j][c] = 1;
  }
  const std::uint64_t all = num_acc >= 64 ? ~0ull : ((1ull << num_acc) - 1);
  std::vector<bool> good(g.adj.size(), false);
  for (std::uint32_t v = 0; v < g.adj.size(); ++v) {
    auto c = static_cast<std::size_t>(comp[v]);
    bool ok = nontrivial[c] && (acc[c] & all) == all;
    for (std::size_t j = 0; ok && j < fairness.size(); ++j) ok = fair_hit[j][c];
    good[v] = ok;
  }
  return good;
}

}  // namespace

StateSet fair_states(const FiniteSystem& fs, bool use_fairness) {
  Graph g;
  g.adj = fs.succ;
  static const std::vector<StateSet> none;
  auto good = good_vertices(g, 0, use_fairness ? fs.fairness : none, [](std::uint32_t v) { return v; });
  return backward_reach(g.adj, std::move(good));
}

ModelChecker::ModelChecker(const FiniteSystem& fs, const Interpretation* atoms) : fs_(fs), atoms_(atoms) {}

StateSet ModelChecker::label(const Formula& f) {
  auto key = to_string(f) + "#" + std::to_string(static_cast<int>(f->kind));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  StateSet out;
  switch (f->kind) {
    case FKind::Atom:
      out = eval_states(fs_, f->atom, atoms_);
      break;
    case FKind::Not:
      out = label(f->kids[0]);
      out.flip();
      break;
    case FKind::And:
    case FKind::Or: {
      out.assign(fs_.size(), f->kind == FKind::And);
      for (const auto& k : f->kids) {
        auto l = label(k);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = f->kind == FKind::And ? (out[i] && l[i]) : (out[i] || l[i]);
      }
      break;
    }
    case FKind::E:
    case FKind::A:
    case FKind::Ef:
    case FKind::Af:
      out = check_quantified(f->kind, f->kids[0]);
      break;
    default:
      throw Error("path formula outside a path quantifier: " + to_string(f));
  }
  memo_.emplace(key, out);
  return out;
}

StateSet ModelChecker::check_quantified(FKind q, const Formula& path) {
  bool fair = is_fair_quantifier(q);
  if (is_existential(q)) return exists_path(to_nnf(path), fair);
  auto out = exists_path(to_nnf(fm::not_(path)), fair);
  out.flip();
  return out;
}

StateSet ModelChecker::exists_path(const Formula& path, bool fair) {
  Gba gba = build_gba(path);
  std::vector<StateSet> leaf_labels;
  for (const auto& l : gba.leaves) leaf_labels.push_back(label(l));
  const std::size_t n = fs_.size();
  const std::size_t m = gba.edges.size();
  // Product vertex ids are assigned on discovery.
  std::vector<std::int64_t> id_of(n * m, -1);
  std::vector<std::uint32_t> state_of;
  Graph g;
  std::vector<std::uint32_t> work;
  auto vertex = [&](std::uint32_t s, int node) {
    auto key = static_cast<std::size_t>(s) * m + static_cast<std::size_t>(node);
    if (id_of[key] < 0) {
      id_of[key] = static_cast<std::int64_t>(state_of.size());
      state_of.push_back(s);
      g.adj.emplace_back();
      g.acc.emplace_back();
      work.push_back(static_cast<std::uint32_t>(key));
    }
    return static_cast<std::uint32_t>(id_of[key]);
  };
  for (std::uint32_t s = 0; s < n; ++s) vertex(s, gba.initial);
  while (!work.empty()) {
    auto key = work.back();
    work.pop_back();
    auto s = static_cast<std::uint32_t>(key / m);
    int node = static_cast<int>(key % m);
    auto v = static_cast<std::uint32_t>(id_of[key]);
    for (const auto& e : gba.edges[static_cast<std::size_t>(node)]) {
      bool ok = std::all_of(e.lits.begin(), e.lits.end(), [&](int l) { return leaf_labels[static_cast<std::size_t>(l)][s]; });
      if (!ok) continue;
      for (auto t : fs_.succ[s]) {
        auto w = vertex(t, e.target);
        g.adj[v].push_back(w);
        g.acc[v].push_back(e.acc);
      }
    }
  }
  static const std::vector<StateSet> none;
  auto good = good_vertices(g, gba.num_acc, fair ? fs_.fairness : none,
                            [&](std::uint32_t v) { return state_of[v]; });
  auto reach = backward_reach(g.adj, std::move(good));
  StateSet out(n, false);
  for (std::uint32_t s = 0; s < n; ++s) {
    auto key = static_cast<std::size_t>(s) * m + static_cast<std::size_t>(gba.initial);
    out[s] = reach[static_cast<std::size_t>(id_of[key])];
  }
  return out;
}

ModelCheckResult model_check(const FiniteSystem& fs, const Formula& f, const Interpretation* atoms) {
  ModelChecker mc(fs, atoms);
  ModelCheckResult r;
  r.labels = mc.label(f);
  r.holds = true;
  for (std::uint32_t s = 0; s < fs.size(); ++s) {
    if (fs.initial[s] && !r.labels[s]) {
      r.holds = false;
      r.failing_initial.push_back(s);
    }
  }
  return r;
}

ModelCheckResult model_check(const Program& p, const Formula& f, const Domains& d, const Interpretation* atoms) {
  auto fs = expand_finite(p, d, atoms);
  return model_check(fs, f, atoms);
}

}  // namespace ctlehc
