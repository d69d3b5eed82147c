#pragma once

// Shared monitoring core: one recursive evaluator over an abstract value
// semantics (Boolean, quantitative, smooth). Route admissibility, distance
// gates and temporal windows are identical across semantics; only the value
// lattice operations differ.

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

#include "strelgen/formula.hpp"
#include "strelgen/monitor.hpp"
#include "strelgen/scene.hpp"

namespace strelgen::detail_eval {

// Dense-index view of a graph snapshot (agent ids -> trace agent indices).
struct LocalGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;  // by agent index
  double max_edge_weight = 0;
};

inline constexpr long kWorkBudget = 50'000'000;

template <class Sem>
class Evaluator {
 public:
  using V = typename Sem::V;

  Evaluator(const Trace& tr, const GraphConfig& cfg, Sem sem)
      : tr_(tr), cfg_(cfg), sem_(std::move(sem)) {
    for (size_t i = 0; i < tr_.agents.size(); ++i)
      index_of_[tr_.agents[i].id] = static_cast<int>(i);
  }

  V eval(const FormulaPtr& f, int t, int ai) {
    MemoKey key{f.get(), t, ai};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    V v = eval_uncached(f, t, ai);
    memo_.emplace(key, v);
    return v;
  }

  V eval_reach(int t, int ai, const Interval& dist,
               const std::optional<Metric>& metric, const FormulaPtr& phi1,
               const ColorSet& c1, const FormulaPtr& phi2, const ColorSet& c2) {
    const LocalGraph& g = graph_at(t, metric);
    const double d1 = dist.lo, d2 = dist.hi;
    if (d2 == kInf && has_colored_cycle(g, c1))
      throw MonitorError(
          "unbounded route enumeration: infinite distance bound on a graph "
          "with a cycle through the admissible colors");
    const bool simple_only = d1 == 0;
    std::vector<V> cands;
    std::vector<V> prefix;
    std::vector<char> visited(tr_.agents.size(), 0);
    visited[ai] = 1;

    auto dfs = [&](auto&& self, int u, double cum, bool at_start) -> void {
      if (++work_ > kWorkBudget)
        throw MonitorError("route enumeration exceeded work budget");
      if (cum >= d1 && cum <= d2 && c2.contains(color(u)))
        cands.push_back(sem_.conj(with_value(prefix, eval(phi2, t, u))));
      if (!at_start && !c1.contains(color(u))) return;
      prefix.push_back(eval(phi1, t, u));
      for (const auto& [v, w] : g.adj[u]) {
        if (cum + w > d2) continue;
        if (simple_only && visited[v]) continue;
        if (!c1.contains(color(v)) && !c2.contains(color(v))) continue;
        visited[v] = 1;
        self(self, v, cum + w, false);
        visited[v] = 0;
      }
      prefix.pop_back();
    };
    dfs(dfs, ai, 0.0, true);
    return sem_.disj(cands);
  }

  V eval_escape(int t, int ai, const Interval& dist,
                const std::optional<Metric>& metric, const FormulaPtr& phi,
                const ColorSet& c) {
    const LocalGraph& g = graph_at(t, metric);
    const std::vector<double>& sp = shortest_from(t, metric, ai);
    const double d1 = dist.lo, d2 = dist.hi;
    const double cap =
        d2 == kInf ? static_cast<double>(tr_.agents.size()) * g.max_edge_weight
                   : d2;
    std::vector<V> cands;
    std::vector<V> prefix;
    std::vector<char> visited(tr_.agents.size(), 0);
    visited[ai] = 1;

    auto dfs = [&](auto&& self, int u, double cum, bool at_start) -> void {
      if (++work_ > kWorkBudget)
        throw MonitorError("route enumeration exceeded work budget");
      prefix.push_back(eval(phi, t, u));
      if (sp[u] >= d1 && sp[u] <= d2) cands.push_back(sem_.conj(prefix));
      if (at_start || c.contains(color(u))) {
        for (const auto& [v, w] : g.adj[u]) {
          if (visited[v] || cum + w > cap) continue;
          if (!c.contains(color(v))) continue;
          visited[v] = 1;
          self(self, v, cum + w, false);
          visited[v] = 0;
        }
      }
      prefix.pop_back();
    };
    dfs(dfs, ai, 0.0, true);
    return sem_.disj(cands);
  }

  int agent_index(AgentId id) const {
    auto it = index_of_.find(id);
    return it == index_of_.end() ? -1 : it->second;
  }

 private:
  struct MemoKey {
    const Formula* f;
    int t;
    int ai;
    bool operator==(const MemoKey&) const = default;
  };
  struct MemoHash {
    size_t operator()(const MemoKey& k) const {
      size_t h = std::hash<const void*>()(k.f);
      h ^= std::hash<int>()(k.t) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= std::hash<int>()(k.ai) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };

  const std::string& color(int ai) const { return tr_.agents[ai].color; }

  static std::vector<V> with_value(const std::vector<V>& xs, V v) {
    std::vector<V> out = xs;
    out.push_back(std::move(v));
    return out;
  }

  const LocalGraph& graph_at(int t, const std::optional<Metric>& metric) {
    Metric m = metric.value_or(cfg_.metric);
    auto key = std::make_pair(t, static_cast<int>(m));
    auto it = graphs_.find(key);
    if (it != graphs_.end()) return it->second;
    GraphSnapshot snap = build_graph(tr_, cfg_, t, m);
    LocalGraph g;
    g.adj.resize(tr_.agents.size());
    g.max_edge_weight = snap.max_edge_weight();
    for (const GraphEdge& e : snap.edges) {
      int u = agent_index(e.from), v = agent_index(e.to);
      if (u >= 0 && v >= 0) g.adj[u].emplace_back(v, e.weight);
    }
    return graphs_.emplace(key, std::move(g)).first->second;
  }

  const std::vector<double>& shortest_from(int t,
                                           const std::optional<Metric>& metric,
                                           int src) {
    Metric m = metric.value_or(cfg_.metric);
    auto key = std::make_tuple(t, static_cast<int>(m), src);
    auto it = shortest_.find(key);
    if (it != shortest_.end()) return it->second;
    const LocalGraph& g = graph_at(t, metric);
    const size_t n = tr_.agents.size();
    std::vector<double> dist(n, kInf);
    dist[src] = 0;
    // Dijkstra on the dense index space; n is small.
    std::vector<char> done(n, 0);
    for (size_t iter = 0; iter < n; ++iter) {
      int u = -1;
      for (size_t i = 0; i < n; ++i)
        if (!done[i] && (u < 0 || dist[i] < dist[u])) u = static_cast<int>(i);
      if (u < 0 || dist[u] == kInf) break;
      done[u] = 1;
      for (const auto& [v, w] : g.adj[u])
        dist[v] = std::min(dist[v], dist[u] + w);
    }
    return shortest_.emplace(key, std::move(dist)).first->second;
  }

  static bool has_colored_cycle(const LocalGraph& g, const ColorSet& c1,
                                const Trace& tr) {
    const size_t n = g.adj.size();
    std::vector<int> state(n, 0);  // 0 unseen, 1 in stack, 2 done
    auto dfs = [&](auto&& self, int u) -> bool {
      state[u] = 1;
      for (const auto& [v, w] : g.adj[u]) {
        (void)w;
        if (!c1.contains(tr.agents[v].color)) continue;
        if (state[v] == 1) return true;
        if (state[v] == 0 && self(self, v)) return true;
      }
      state[u] = 2;
      return false;
    };
    for (size_t i = 0; i < n; ++i)
      if (state[i] == 0 && c1.contains(tr.agents[i].color) && dfs(dfs, i))
        return true;
    return false;
  }

  bool has_colored_cycle(const LocalGraph& g, const ColorSet& c1) const {
    return has_colored_cycle(g, c1, tr_);
  }

  V eval_uncached(const FormulaPtr& f, int t, int ai) {
    switch (f->kind) {
      case FormulaKind::True:
        return sem_.top();
      case FormulaKind::Atom: {
        if (!f->annot->contains(color(ai))) return sem_.bottom();
        return sem_.atom(f->signal, f->cmp, f->threshold, t, ai);
      }
      case FormulaKind::Not:
        return sem_.neg(eval(f->left, t, ai));
      case FormulaKind::And: {
        std::vector<V> vs{eval(f->left, t, ai), eval(f->right, t, ai)};
        return sem_.conj(vs);
      }
      case FormulaKind::Until: {
        const int T = tr_.horizon;
        if (f->interval.lo == kInf) return sem_.bottom();
        const int a = steps_floor(f->interval.lo, tr_.dt);
        const int b = f->interval.hi == kInf
                          ? T - 1 - t
                          : steps_ceil(f->interval.hi, tr_.dt);
        std::vector<V> cands;
        for (int t2 = t + a; t2 <= std::min(t + b, T - 1); ++t2) {
          std::vector<V> parts{eval(f->right, t2, ai)};
          for (int u = t; u <= t2; ++u) parts.push_back(eval(f->left, u, ai));
          cands.push_back(sem_.conj(parts));
        }
        return sem_.disj(cands);
      }
      case FormulaKind::Reach:
        return eval_reach(t, ai, f->interval, f->metric, f->left,
                          operand_colors(f->left), f->right,
                          operand_colors(f->right));
      case FormulaKind::Escape:
        return eval_escape(t, ai, f->interval, f->metric, f->left,
                           operand_colors(f->left));
      default:
        throw MonitorError(
            "derived operator in monitor input; apply expand_derived first");
    }
  }

  const Trace& tr_;
  const GraphConfig& cfg_;
  Sem sem_;
  std::unordered_map<AgentId, int> index_of_;
  std::unordered_map<MemoKey, V, MemoHash> memo_;
  std::map<std::pair<int, int>, LocalGraph> graphs_;
  std::map<std::tuple<int, int, int>, std::vector<double>> shortest_;
  long work_ = 0;
};

}  // namespace strelgen::detail_eval
