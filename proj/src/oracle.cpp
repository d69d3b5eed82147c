#include "strelgen/oracle.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace strelgen {

namespace {

struct QuantOps {
  using V = double;
  static V bot() { return -kInf; }
  static V top() { return kInf; }
  static V neg(V v) { return -v; }
  static V band(V a, V b) { return std::min(a, b); }
  static V bor(V a, V b) { return std::max(a, b); }
  static V from_margin(double m) { return m; }
};

struct BoolOps {
  using V = bool;
  static V bot() { return false; }
  static V top() { return true; }
  static V neg(V v) { return !v; }
  static V band(V a, V b) { return a && b; }
  static V bor(V a, V b) { return a || b; }
  static V from_margin(double m) { return m > 0; }
};

struct ORoute {
  std::vector<AgentId> nodes;
  std::vector<double> cum;
};

constexpr size_t kRouteLimit = size_t(1) << 22;

// Every walk from `start` (as its own route, prefix-closed) obeying the
// cumulative-distance cap, an optional node-count cap, and the given
// admissibility predicates.
std::vector<ORoute> materialize_routes(
    const GraphSnapshot& g, AgentId start, double max_cum, size_t max_nodes,
    const std::function<bool(AgentId)>& interior_ok,
    const std::function<bool(AgentId)>& enter_ok) {
  std::vector<ORoute> out;
  ORoute cur;
  cur.nodes.push_back(start);
  cur.cum.push_back(0.0);
  std::function<void(AgentId, double, bool)> walk = [&](AgentId u, double cum,
                                                        bool at_start) {
    out.push_back(cur);
    if (out.size() > kRouteLimit)
      throw MonitorError("route enumeration exceeded work budget");
    if (!at_start && !interior_ok(u)) return;
    if (cur.nodes.size() >= max_nodes) return;
    for (const auto& [v, w] : g.neighbors(u)) {
      if (cum + w > max_cum) continue;
      if (!enter_ok(v)) continue;
      cur.nodes.push_back(v);
      cur.cum.push_back(cum + w);
      walk(v, cum + w, false);
      cur.nodes.pop_back();
      cur.cum.pop_back();
    }
  };
  walk(start, 0.0, true);
  return out;
}

bool has_cycle(const GraphSnapshot& g,
               const std::function<bool(AgentId)>& node_ok) {
  std::unordered_map<AgentId, int> state;
  std::function<bool(AgentId)> dfs = [&](AgentId u) {
    state[u] = 1;
    for (const auto& [v, w] : g.neighbors(u)) {
      (void)w;
      if (!node_ok(v)) continue;
      if (state[v] == 1) return true;
      if (state[v] == 0 && dfs(v)) return true;
    }
    state[u] = 2;
    return false;
  };
  for (AgentId n : g.nodes)
    if (node_ok(n) && state[n] == 0 && dfs(n)) return true;
  return false;
}

template <class Ops, bool Colored>
struct OracleEval {
  using V = typename Ops::V;
  const Trace& tr;
  const GraphConfig& cfg;

  const std::string& color(AgentId id) const { return tr.agent(id).color; }

  bool in(const ColorSet& c, AgentId id) const {
    if constexpr (!Colored) return true;
    return c.contains(color(id));
  }

  GraphSnapshot graph(int t, const std::optional<Metric>& m) const {
    return build_graph(tr, cfg, t, m.value_or(cfg.metric));
  }

  // All-pairs shortest distances by repeated relaxation (Floyd-Warshall).
  std::vector<std::vector<double>> all_distances(const GraphSnapshot& g) const {
    const size_t n = tr.agents.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const GraphEdge& e : g.edges) {
      const int u = tr.agent_index(e.from), v = tr.agent_index(e.to);
      d[u][v] = std::min(d[u][v], e.weight);
    }
    for (size_t k = 0; k < n; ++k)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
  }

  V eval(const FormulaPtr& f, int t, AgentId loc) const {
    switch (f->kind) {
      case FormulaKind::True:
        return Ops::top();
      case FormulaKind::Atom: {
        if (!in(*f->annot, loc)) return Ops::bot();
        const double s = derived_signal(tr, loc, f->signal, t);
        return Ops::from_margin(f->cmp == Cmp::Gt ? s - f->threshold
                                                  : f->threshold - s);
      }
      case FormulaKind::Not:
        return Ops::neg(eval(f->left, t, loc));
      case FormulaKind::And:
        return Ops::band(eval(f->left, t, loc), eval(f->right, t, loc));
      case FormulaKind::Or:
        return Ops::bor(eval(f->left, t, loc), eval(f->right, t, loc));
      case FormulaKind::Until: {
        if (f->interval.lo == kInf) return Ops::bot();
        const int a = steps_floor(f->interval.lo, tr.dt);
        const int hi = f->interval.hi == kInf
                           ? tr.horizon - 1
                           : t + steps_ceil(f->interval.hi, tr.dt);
        V out = Ops::bot();
        for (int t2 = t + a; t2 <= std::min(hi, tr.horizon - 1); ++t2) {
          V v = eval(f->right, t2, loc);
          for (int u = t; u <= t2; ++u) v = Ops::band(v, eval(f->left, u, loc));
          out = Ops::bor(out, v);
        }
        return out;
      }
      case FormulaKind::Eventually: {
        if (f->interval.lo == kInf) return Ops::bot();
        const int a = steps_floor(f->interval.lo, tr.dt);
        const int hi = f->interval.hi == kInf
                           ? tr.horizon - 1
                           : t + steps_ceil(f->interval.hi, tr.dt);
        V out = Ops::bot();
        for (int t2 = t + a; t2 <= std::min(hi, tr.horizon - 1); ++t2)
          out = Ops::bor(out, eval(f->left, t2, loc));
        return out;
      }
      case FormulaKind::Globally: {
        if (f->interval.lo == kInf) return Ops::top();
        const int a = steps_floor(f->interval.lo, tr.dt);
        const int hi = f->interval.hi == kInf
                           ? tr.horizon - 1
                           : t + steps_ceil(f->interval.hi, tr.dt);
        V out = Ops::top();
        for (int t2 = t + a; t2 <= std::min(hi, tr.horizon - 1); ++t2)
          out = Ops::band(out, eval(f->left, t2, loc));
        return out;
      }
      case FormulaKind::Reach:
        return reach(f->left, operand_colors(f->left), f->right,
                     operand_colors(f->right), f->interval, f->metric, t, loc);
      case FormulaKind::Escape:
        return escape(f->left, operand_colors(f->left), f->interval, f->metric,
                      t, loc);
      case FormulaKind::Somewhere:
      case FormulaKind::Everywhere: {
        const ColorSet c = operand_colors(f->left);
        const GraphSnapshot g = graph(t, f->metric);
        if (f->interval.hi == kInf && has_cycle(g, [](AgentId) { return true; }))
          throw MonitorError(
              "unbounded route enumeration: infinite distance bound on a "
              "graph with a cycle through the admissible colors");
        auto rts = materialize_routes(
            g, loc, f->interval.hi, SIZE_MAX, [](AgentId) { return true; },
            [](AgentId) { return true; });
        const bool universal = f->kind == FormulaKind::Everywhere;
        V out = universal ? Ops::top() : Ops::bot();
        for (const ORoute& r : rts) {
          const AgentId e = r.nodes.back();
          if (r.cum.back() < f->interval.lo || r.cum.back() > f->interval.hi)
            continue;
          if (!in(c, e)) continue;
          const V v = eval(f->left, t, e);
          out = universal ? Ops::band(out, v) : Ops::bor(out, v);
        }
        return out;
      }
      case FormulaKind::Surround: {
        const V hold = eval(f->left, t, loc);
        const FormulaPtr violation = f_not(f_or(f->left, f->right));
        const V breach =
            reach(f->left, operand_colors(f->left), violation,
                  ColorSet::universe(), f->interval, f->metric, t, loc);
        const V leak = escape(f->left, operand_colors(f->left),
                              Interval{f->interval.hi, kInf}, f->metric, t, loc);
        return Ops::band(hold, Ops::band(Ops::neg(breach), Ops::neg(leak)));
      }
    }
    return Ops::bot();
  }

  V reach(const FormulaPtr& phi1, const ColorSet& c1, const FormulaPtr& phi2,
          const ColorSet& c2, const Interval& dist,
          const std::optional<Metric>& metric, int t, AgentId loc) const {
    const GraphSnapshot g = graph(t, metric);
    auto interior_ok = [&](AgentId id) { return in(c1, id); };
    auto enter_ok = [&](AgentId id) { return in(c1, id) || in(c2, id); };
    if (dist.hi == kInf && has_cycle(g, interior_ok))
      throw MonitorError(
          "unbounded route enumeration: infinite distance bound on a graph "
          "with a cycle through the admissible colors");
    auto rts = materialize_routes(g, loc, dist.hi, SIZE_MAX, interior_ok,
                                  enter_ok);
    V out = Ops::bot();
    for (const ORoute& r : rts) {
      const AgentId e = r.nodes.back();
      if (r.cum.back() < dist.lo || r.cum.back() > dist.hi) continue;
      if (!in(c2, e)) continue;
      V v = eval(phi2, t, e);
      for (size_t j = 0; j + 1 < r.nodes.size(); ++j)
        v = Ops::band(v, eval(phi1, t, r.nodes[j]));
      out = Ops::bor(out, v);
    }
    return out;
  }

  V escape(const FormulaPtr& phi, const ColorSet& c, const Interval& dist,
           const std::optional<Metric>& metric, int t, AgentId loc) const {
    const GraphSnapshot g = graph(t, metric);
    const auto d = all_distances(g);
    const int li = tr.agent_index(loc);
    const size_t n = tr.agents.size();
    const bool unbounded = dist.hi == kInf;
    const double cap = unbounded ? n * g.max_edge_weight() : dist.hi;
    const size_t max_nodes = unbounded ? n + 1 : SIZE_MAX;
    auto node_ok = [&](AgentId id) { return in(c, id); };
    auto rts = materialize_routes(g, loc, cap, max_nodes, node_ok, node_ok);
    V out = Ops::bot();
    for (const ORoute& r : rts) {
      const double de = d[li][tr.agent_index(r.nodes.back())];
      if (de < dist.lo || de > dist.hi) continue;
      V v = Ops::top();
      for (AgentId id : r.nodes) v = Ops::band(v, eval(phi, t, id));
      out = Ops::bor(out, v);
    }
    return out;
  }
};

void check_args(const Trace& trace, int t, AgentId agent) {
  if (t < 0 || t >= trace.horizon)
    throw MonitorError("time step " + std::to_string(t) +
                       " outside horizon [0," + std::to_string(trace.horizon) +
                       ")");
  if (trace.agent_index(agent) < 0)
    throw MonitorError("unknown agent id " + std::to_string(agent));
}

template <bool Colored>
RobustnessValue run_oracle(const Trace& trace, const GraphConfig& cfg,
                           const FormulaPtr& formula, int t, AgentId agent,
                           Domain domain) {
  check_args(trace, t, agent);
  RobustnessValue r;
  r.domain = domain;
  if (domain == Domain::Boolean) {
    OracleEval<BoolOps, Colored> ev{trace, cfg};
    r.boolean = ev.eval(formula, t, agent);
    r.value = r.boolean ? kInf : -kInf;
  } else {
    OracleEval<QuantOps, Colored> ev{trace, cfg};
    r.value = ev.eval(formula, t, agent);
    r.boolean = r.value > 0;
  }
  return r;
}

}  // namespace

RobustnessValue monitor_oracle(const Trace& trace, const GraphConfig& cfg,
                               const FormulaPtr& formula, int t, AgentId agent,
                               Domain domain) {
  return run_oracle<true>(trace, cfg, formula, t, agent, domain);
}

RobustnessValue monitor_uncolored(const Trace& trace, const GraphConfig& cfg,
                                  const FormulaPtr& formula, int t,
                                  AgentId agent, Domain domain) {
  return run_oracle<false>(trace, cfg, formula, t, agent, domain);
}

}  // namespace strelgen
