#pragma once

#include "strelgen/autodiff.hpp"
#include "strelgen/formula.hpp"
#include "strelgen/monitor.hpp"
#include "strelgen/scene.hpp"

namespace strelgen {

// How per-agent robustness values are combined into one scene score.
enum class Aggregation { Max, Min };

std::string to_string(Aggregation a);
Aggregation aggregation_from_string(const std::string& s);

struct SmoothConfig {
  double beta = 10.0;     // log-sum-exp temperature
  double bound = 1e3;     // finite stand-in for +/-infinity
  Aggregation aggregation = Aggregation::Max;
};

// Temperature-controlled soft maximum: (1/beta) * log(sum_i exp(beta*v_i)),
// evaluated shift-stably. Upper-bounds max(v) by at most log(n)/beta.
DiffScalar smooth_max(const std::vector<DiffScalar>& values, double beta);
// -smooth_max(-v); lower-bounds min(v).
DiffScalar smooth_min(const std::vector<DiffScalar>& values, double beta);

// Differentiable mirror of a Trace: every state field is a tape scalar.
struct DiffAgent {
  AgentId id = 0;
  std::string color;
  std::vector<DiffScalar> x, y, vx, vy, heading;
};

struct DiffTrace {
  double dt = 0.1;
  int horizon = 0;
  std::vector<std::string> colors;
  std::vector<DiffAgent> agents;

  int agent_index(AgentId id) const;
  Trace values() const;  // plain-double snapshot
};

// Lifts every state field of `trace` into tape variables.
DiffTrace lift_trace(Tape& tape, const Trace& trace);

// Smooth robustness of a core-operator formula: structure (graphs, route
// admissibility, distance gates) is computed from the scalar values and held
// crisp; min/max over the value lattice become smooth_min/smooth_max and
// +/-infinity becomes +/-bound, so the result is differentiable in the
// trace's state fields.
DiffScalar monitor_smooth(const DiffTrace& trace, const GraphConfig& cfg,
                          const FormulaPtr& formula, int t, AgentId agent,
                          const SmoothConfig& scfg);

// Convenience: smooth robustness value of a plain trace (no gradients kept).
double smooth_robustness(const Trace& trace, const GraphConfig& cfg,
                         const FormulaPtr& formula, int t, AgentId agent,
                         const SmoothConfig& scfg);

// Scene-level score: per-agent smooth robustness at step 0 combined with
// smooth_max (some agent satisfies) or smooth_min (every agent satisfies).
DiffScalar aggregate_rho(const DiffTrace& trace, const GraphConfig& cfg,
                         const FormulaPtr& formula, const SmoothConfig& scfg);

// Hard counterpart of aggregate_rho: plain max/min over per-agent
// quantitative robustness at step 0.
double aggregate_rho_hard(const Trace& trace, const GraphConfig& cfg,
                          const FormulaPtr& formula, Aggregation aggregation);

}  // namespace strelgen
