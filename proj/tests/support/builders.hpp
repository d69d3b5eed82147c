#pragma once

// Compact trace construction for tests.

#include <string>
#include <vector>

#include "strelgen/scene.hpp"

namespace testsupport {

struct AgentSpec {
  strelgen::AgentId id;
  std::string color;
  std::vector<strelgen::AgentState> states;
};

inline strelgen::Trace make_trace(double dt,
                                  std::vector<std::string> colors,
                                  std::vector<AgentSpec> agents) {
  strelgen::Trace tr;
  tr.dt = dt;
  tr.horizon = agents.empty() ? 0 : int(agents[0].states.size());
  tr.colors = std::move(colors);
  for (AgentSpec& a : agents)
    tr.agents.push_back({a.id, std::move(a.color), std::move(a.states)});
  return tr;
}

// One agent per x position, all other state fields zero; handy for
// line-graph spatial tests.
inline strelgen::Trace line_trace(const std::vector<double>& xs,
                                  const std::vector<std::string>& agent_colors,
                                  std::vector<std::string> universe,
                                  int horizon = 1, double dt = 1.0) {
  strelgen::Trace tr;
  tr.dt = dt;
  tr.horizon = horizon;
  tr.colors = std::move(universe);
  for (size_t i = 0; i < xs.size(); ++i) {
    strelgen::Agent a;
    a.id = int(i);
    a.color = agent_colors[i];
    a.states.assign(horizon, {xs[i], 0, 0, 0, 0});
    tr.agents.push_back(std::move(a));
  }
  return tr;
}

}  // namespace testsupport
