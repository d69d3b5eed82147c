#include "strelgen/monitor.hpp"

#include <algorithm>

#include "eval_core.hpp"

namespace strelgen {

namespace {

struct QuantSem {
  using V = double;
  const Trace* tr;

  V bottom() const { return -kInf; }
  V top() const { return kInf; }
  V neg(V v) const { return -v; }
  V conj(const std::vector<V>& vs) const {
    V r = kInf;
    for (V v : vs) r = std::min(r, v);
    return r;
  }
  V disj(const std::vector<V>& vs) const {
    V r = -kInf;
    for (V v : vs) r = std::max(r, v);
    return r;
  }
  V atom(SignalKind k, Cmp c, double thr, int t, int ai) const {
    const double s = derived_signal(*tr, tr->agents[ai].id, k, t);
    return c == Cmp::Gt ? s - thr : thr - s;
  }
};

struct BoolSem {
  using V = bool;
  const Trace* tr;

  V bottom() const { return false; }
  V top() const { return true; }
  V neg(V v) const { return !v; }
  V conj(const std::vector<V>& vs) const {
    return std::all_of(vs.begin(), vs.end(), [](bool b) { return b; });
  }
  V disj(const std::vector<V>& vs) const {
    return std::any_of(vs.begin(), vs.end(), [](bool b) { return b; });
  }
  V atom(SignalKind k, Cmp c, double thr, int t, int ai) const {
    const double s = derived_signal(*tr, tr->agents[ai].id, k, t);
    const double margin = c == Cmp::Gt ? s - thr : thr - s;
    return margin > 0;
  }
};

int checked_agent_index(const Trace& trace, AgentId agent) {
  const int ai = trace.agent_index(agent);
  if (ai < 0)
    throw MonitorError("unknown agent id " + std::to_string(agent));
  return ai;
}

void check_time(const Trace& trace, int t) {
  if (t < 0 || t >= trace.horizon)
    throw MonitorError("time step " + std::to_string(t) +
                       " outside horizon [0," + std::to_string(trace.horizon) +
                       ")");
}

}  // namespace

RobustnessValue monitor(const Trace& trace, const GraphConfig& cfg,
                        const FormulaPtr& formula, int t, AgentId agent,
                        Domain domain) {
  check_time(trace, t);
  const int ai = checked_agent_index(trace, agent);
  RobustnessValue r;
  r.domain = domain;
  if (domain == Domain::Boolean) {
    detail_eval::Evaluator<BoolSem> ev(trace, cfg, BoolSem{&trace});
    r.boolean = ev.eval(formula, t, ai);
    r.value = r.boolean ? kInf : -kInf;
  } else {
    detail_eval::Evaluator<QuantSem> ev(trace, cfg, QuantSem{&trace});
    r.value = ev.eval(formula, t, ai);
    r.boolean = r.value > 0;
  }
  return r;
}

RobustnessValue reach_eval(const Trace& trace, const GraphConfig& cfg, int t,
                           AgentId agent, Interval distance,
                           std::optional<Metric> metric, const FormulaPtr& phi1,
                           const ColorSet& c1, const FormulaPtr& phi2,
                           const ColorSet& c2, Domain domain) {
  check_time(trace, t);
  const int ai = checked_agent_index(trace, agent);
  RobustnessValue r;
  r.domain = domain;
  if (domain == Domain::Boolean) {
    detail_eval::Evaluator<BoolSem> ev(trace, cfg, BoolSem{&trace});
    r.boolean = ev.eval_reach(t, ai, distance, metric, phi1, c1, phi2, c2);
    r.value = r.boolean ? kInf : -kInf;
  } else {
    detail_eval::Evaluator<QuantSem> ev(trace, cfg, QuantSem{&trace});
    r.value = ev.eval_reach(t, ai, distance, metric, phi1, c1, phi2, c2);
    r.boolean = r.value > 0;
  }
  return r;
}

RobustnessValue escape_eval(const Trace& trace, const GraphConfig& cfg, int t,
                            AgentId agent, Interval distance,
                            std::optional<Metric> metric, const FormulaPtr& phi,
                            const ColorSet& c, Domain domain) {
  check_time(trace, t);
  const int ai = checked_agent_index(trace, agent);
  RobustnessValue r;
  r.domain = domain;
  if (domain == Domain::Boolean) {
    detail_eval::Evaluator<BoolSem> ev(trace, cfg, BoolSem{&trace});
    r.boolean = ev.eval_escape(t, ai, distance, metric, phi, c);
    r.value = r.boolean ? kInf : -kInf;
  } else {
    detail_eval::Evaluator<QuantSem> ev(trace, cfg, QuantSem{&trace});
    r.value = ev.eval_escape(t, ai, distance, metric, phi, c);
    r.boolean = r.value > 0;
  }
  return r;
}

std::vector<Route> enumerate_routes(const Trace& trace, const GraphSnapshot& g,
                                    AgentId start, double max_dist,
                                    const ColorSet& c1,
                                    const std::optional<ColorSet>& c2) {
  constexpr size_t kRouteLimit = size_t(1) << 22;
  if (std::find(g.nodes.begin(), g.nodes.end(), start) == g.nodes.end())
    throw MonitorError("unknown node " + std::to_string(start));
  auto color_of = [&](AgentId id) -> const std::string& {
    return trace.agent(id).color;
  };
  auto enterable = [&](AgentId id) {
    return c1.contains(color_of(id)) || (c2 && c2->contains(color_of(id)));
  };

  if (max_dist == kInf) {
    // Infinite bound needs an acyclic admissible subgraph to stay finite.
    std::unordered_map<AgentId, int> state;  // 0 unseen, 1 in stack, 2 done
    auto dfs = [&](auto&& self, AgentId u) -> bool {
      state[u] = 1;
      for (const auto& [v, w] : g.neighbors(u)) {
        (void)w;
        if (!c1.contains(color_of(v))) continue;
        if (state[v] == 1) return true;
        if (state[v] == 0 && self(self, v)) return true;
      }
      state[u] = 2;
      return false;
    };
    for (AgentId n : g.nodes)
      if (c1.contains(color_of(n)) && state[n] == 0 && dfs(dfs, n))
        throw MonitorError(
            "unbounded route enumeration: infinite distance bound on a graph "
            "with a cycle through the admissible colors");
  }

  std::vector<Route> out;
  Route cur;
  cur.nodes.push_back(start);
  cur.cum_dist.push_back(0.0);
  auto walk = [&](auto&& self, AgentId u, double cum, bool at_start) -> void {
    Route r = cur;
    r.endpoint_in_target = c2 ? c2->contains(color_of(u)) : true;
    out.push_back(std::move(r));
    if (out.size() > kRouteLimit)
      throw MonitorError("route enumeration exceeded work budget");
    if (!at_start && !c1.contains(color_of(u))) return;
    for (const auto& [v, w] : g.neighbors(u)) {
      if (cum + w > max_dist) continue;
      if (!enterable(v)) continue;
      cur.nodes.push_back(v);
      cur.cum_dist.push_back(cum + w);
      self(self, v, cum + w, false);
      cur.nodes.pop_back();
      cur.cum_dist.pop_back();
    }
  };
  walk(walk, start, 0.0, true);
  return out;
}

}  // namespace strelgen
