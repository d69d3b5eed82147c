#pragma once

#include <optional>

#include "strelgen/formula.hpp"
#include "strelgen/scene.hpp"

namespace strelgen {

enum class Domain { Boolean, Quantitative };

struct RobustnessValue {
  Domain domain = Domain::Quantitative;
  double value = -kInf;  // quantitative robustness (may be +/-inf)
  bool boolean = false;  // Boolean verdict

  bool satisfied() const {
    return domain == Domain::Boolean ? boolean : value > 0;
  }
};

// A walk through a graph snapshot with running cumulative distance.
struct Route {
  std::vector<AgentId> nodes;
  std::vector<double> cum_dist;       // cum_dist[0] == 0
  bool endpoint_in_target = true;     // endpoint color in c2 (when c2 given)
};

// All walks from `start` whose cumulative distance stays within `max_dist`,
// whose interior nodes have colors in c1 (the start node is exempt), and
// whose nodes are in c1 or, when given, c2 (nodes only in c2 end a walk).
// Throws when the walk set is infinite (max_dist == inf on a graph with a
// c1-colored cycle) or absurdly large.
std::vector<Route> enumerate_routes(const Trace& trace, const GraphSnapshot& g,
                                    AgentId start, double max_dist,
                                    const ColorSet& c1,
                                    const std::optional<ColorSet>& c2);

// Monitors a core-operator formula (run expand_derived first) for one agent
// at one step. Boolean domain returns a verdict; quantitative returns a
// robustness margin whose sign agrees with the verdict.
RobustnessValue monitor(const Trace& trace, const GraphConfig& cfg,
                        const FormulaPtr& formula, int t, AgentId agent,
                        Domain domain);

// Standalone spatial-operator evaluation with explicit operand color sets.
RobustnessValue reach_eval(const Trace& trace, const GraphConfig& cfg, int t,
                           AgentId agent, Interval distance,
                           std::optional<Metric> metric, const FormulaPtr& phi1,
                           const ColorSet& c1, const FormulaPtr& phi2,
                           const ColorSet& c2, Domain domain);
RobustnessValue escape_eval(const Trace& trace, const GraphConfig& cfg, int t,
                            AgentId agent, Interval distance,
                            std::optional<Metric> metric, const FormulaPtr& phi,
                            const ColorSet& c, Domain domain);

}  // namespace strelgen
