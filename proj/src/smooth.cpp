#include "strelgen/smooth.hpp"

#include <algorithm>
#include <cmath>

#include "eval_core.hpp"
#include "strelgen/detail/kinematics.hpp"

namespace strelgen {

std::string to_string(Aggregation a) {
  return a == Aggregation::Max ? "max" : "min";
}

Aggregation aggregation_from_string(const std::string& s) {
  if (s == "max") return Aggregation::Max;
  if (s == "min") return Aggregation::Min;
  throw Error("unknown aggregation '" + s + "' (expected max or min)");
}

DiffScalar smooth_max(const std::vector<DiffScalar>& values, double beta) {
  if (values.empty()) throw Error("smooth_max of an empty list");
  double m = -kInf;
  Tape* tape = nullptr;
  for (const DiffScalar& v : values) {
    m = std::max(m, v.value());
    if (!v.is_const()) tape = v.tape();
  }
  // Shifted by the max for numerical stability.
  double sum = 0;
  for (const DiffScalar& v : values) sum += std::exp(beta * (v.value() - m));
  const double out = m + std::log(sum) / beta;
  if (!tape) return DiffScalar(out);
  std::vector<double> partials(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    partials[i] = std::exp(beta * (values[i].value() - m)) / sum;
  return tape->nary(out, values, partials);
}

DiffScalar smooth_min(const std::vector<DiffScalar>& values, double beta) {
  std::vector<DiffScalar> neg(values.size());
  for (size_t i = 0; i < values.size(); ++i) neg[i] = -values[i];
  return -smooth_max(neg, beta);
}

int DiffTrace::agent_index(AgentId id) const {
  for (size_t i = 0; i < agents.size(); ++i)
    if (agents[i].id == id) return static_cast<int>(i);
  return -1;
}

Trace DiffTrace::values() const {
  Trace tr;
  tr.dt = dt;
  tr.horizon = horizon;
  tr.colors = colors;
  for (const DiffAgent& a : agents) {
    Agent out;
    out.id = a.id;
    out.color = a.color;
    for (int t = 0; t < horizon; ++t)
      out.states.push_back({a.x[t].value(), a.y[t].value(), a.vx[t].value(),
                            a.vy[t].value(), a.heading[t].value()});
    tr.agents.push_back(std::move(out));
  }
  return tr;
}

DiffTrace lift_trace(Tape& tape, const Trace& trace) {
  DiffTrace d;
  d.dt = trace.dt;
  d.horizon = trace.horizon;
  d.colors = trace.colors;
  for (const Agent& a : trace.agents) {
    DiffAgent da;
    da.id = a.id;
    da.color = a.color;
    for (const AgentState& s : a.states) {
      da.x.push_back(tape.var(s.x));
      da.y.push_back(tape.var(s.y));
      da.vx.push_back(tape.var(s.vx));
      da.vy.push_back(tape.var(s.vy));
      da.heading.push_back(tape.var(s.heading));
    }
    d.agents.push_back(std::move(da));
  }
  return d;
}

namespace {

struct SmoothSem {
  using V = DiffScalar;
  const DiffTrace* dtr;
  SmoothConfig scfg;

  V bottom() const { return DiffScalar(-scfg.bound); }
  V top() const { return DiffScalar(scfg.bound); }
  V neg(const V& v) const { return -v; }
  V conj(const std::vector<V>& vs) const {
    if (vs.empty()) return top();
    return smooth_min(vs, scfg.beta);
  }
  V disj(const std::vector<V>& vs) const {
    if (vs.empty()) return bottom();
    return smooth_max(vs, scfg.beta);
  }
  V signal(SignalKind k, int t, int ai) const {
    const DiffAgent& a = dtr->agents[ai];
    switch (k) {
      case SignalKind::X: return a.x[t];
      case SignalKind::Y: return a.y[t];
      case SignalKind::Vx: return a.vx[t];
      case SignalKind::Vy: return a.vy[t];
      case SignalKind::Heading: return a.heading[t];
      case SignalKind::Speed: return detail::speed_of(a.vx[t], a.vy[t]);
      case SignalKind::HeadingChange:
        if (t == 0) return DiffScalar(0.0);
        return detail::heading_change_of(a.heading[t], a.heading[t - 1],
                                         dtr->dt);
    }
    return DiffScalar(0.0);
  }
  V atom(SignalKind k, Cmp c, double thr, int t, int ai) const {
    V s = signal(k, t, ai);
    return c == Cmp::Gt ? s - thr : thr - s;
  }
};

}  // namespace

DiffScalar monitor_smooth(const DiffTrace& trace, const GraphConfig& cfg,
                          const FormulaPtr& formula, int t, AgentId agent,
                          const SmoothConfig& scfg) {
  const Trace values = trace.values();
  if (t < 0 || t >= values.horizon)
    throw MonitorError("time step " + std::to_string(t) +
                       " outside horizon [0," + std::to_string(values.horizon) +
                       ")");
  const int ai = values.agent_index(agent);
  if (ai < 0) throw MonitorError("unknown agent id " + std::to_string(agent));
  detail_eval::Evaluator<SmoothSem> ev(values, cfg, SmoothSem{&trace, scfg});
  return ev.eval(formula, t, ai);
}

double smooth_robustness(const Trace& trace, const GraphConfig& cfg,
                         const FormulaPtr& formula, int t, AgentId agent,
                         const SmoothConfig& scfg) {
  Tape tape;
  DiffTrace d = lift_trace(tape, trace);
  return monitor_smooth(d, cfg, formula, t, agent, scfg).value();
}

DiffScalar aggregate_rho(const DiffTrace& trace, const GraphConfig& cfg,
                         const FormulaPtr& formula, const SmoothConfig& scfg) {
  if (trace.agents.empty()) throw MonitorError("trace has no agents");
  const Trace values = trace.values();
  detail_eval::Evaluator<SmoothSem> ev(values, cfg, SmoothSem{&trace, scfg});
  std::vector<DiffScalar> per_agent;
  for (size_t ai = 0; ai < trace.agents.size(); ++ai)
    per_agent.push_back(ev.eval(formula, 0, static_cast<int>(ai)));
  return scfg.aggregation == Aggregation::Max
             ? smooth_max(per_agent, scfg.beta)
             : smooth_min(per_agent, scfg.beta);
}

double aggregate_rho_hard(const Trace& trace, const GraphConfig& cfg,
                          const FormulaPtr& formula, Aggregation aggregation) {
  if (trace.agents.empty()) throw MonitorError("trace has no agents");
  double r = aggregation == Aggregation::Max ? -kInf : kInf;
  for (const Agent& a : trace.agents) {
    const double v =
        monitor(trace, cfg, formula, 0, a.id, Domain::Quantitative).value;
    r = aggregation == Aggregation::Max ? std::max(r, v) : std::min(r, v);
  }
  return r;
}

}  // namespace strelgen
