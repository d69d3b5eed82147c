#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace strelgen {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Base error type for everything raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : Error {
  using Error::Error;
};
struct MonitorError : Error {
  using Error::Error;
};

using AgentId = int;

struct AgentState {
  double x = 0, y = 0, vx = 0, vy = 0, heading = 0;
};

struct Agent {
  AgentId id = 0;
  std::string color;
  std::vector<AgentState> states;  // one per step, length == horizon
};

// Multi-agent scene sampled at a fixed rate: horizon steps of dt seconds.
struct Trace {
  double dt = 0.1;
  int horizon = 0;
  std::vector<std::string> colors;  // the color universe
  std::vector<Agent> agents;

  int agent_index(AgentId id) const;         // -1 if absent
  const Agent& agent(AgentId id) const;      // throws if absent
  bool has_color(const std::string& c) const;
};

enum class Metric { Euclid, Hops, Front };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);

struct GraphConfig {
  double radius = 10.0;               // connectivity: centers within this distance
  Metric metric = Metric::Euclid;     // default edge-weight metric
  double front_half_angle = 1.0471975511965976;  // pi/3, for Metric::Front
  double min_edge_weight = 1e-6;      // weights are clamped below by this
};

struct GraphEdge {
  AgentId from = 0, to = 0;
  double weight = 0;
};

// Directed weighted proximity graph over the agents at one time step.
struct GraphSnapshot {
  int t = 0;
  std::vector<AgentId> nodes;
  std::vector<GraphEdge> edges;

  // Outgoing (neighbor, weight) pairs; empty for unknown ids.
  const std::vector<std::pair<AgentId, double>>& neighbors(AgentId id) const;
  void rebuild_adjacency();
  double max_edge_weight() const;  // 0 when there are no edges

 private:
  std::unordered_map<AgentId, std::vector<std::pair<AgentId, double>>> adj_;
  static const std::vector<std::pair<AgentId, double>> kNoNeighbors;
};

// Per-agent signals monitorable by atomic predicates.
enum class SignalKind { X, Y, Vx, Vy, Heading, Speed, HeadingChange };

std::string to_string(SignalKind s);
SignalKind signal_from_string(const std::string& s);

// Value of a signal for one agent at step t. `heading_change` is
// |wrap(heading(t) - heading(t-1))| / dt and 0 at t == 0.
double derived_signal(const Trace& trace, AgentId id, SignalKind kind, int t);

GraphSnapshot build_graph(const Trace& trace, const GraphConfig& cfg, int t);
GraphSnapshot build_graph(const Trace& trace, const GraphConfig& cfg, int t,
                          Metric metric);

// Shortest weighted distance between two nodes (+inf if unreachable).
double shortest_distance(const GraphSnapshot& g, AgentId from, AgentId to);
// Shortest distances from one source to every node, keyed by agent id.
std::unordered_map<AgentId, double> shortest_distances(const GraphSnapshot& g,
                                                       AgentId from);

// JSON (de)serialization. Errors mention the offending file/field/agent.
Trace load_trace(const std::string& path);
Trace trace_from_json_text(const std::string& text, const std::string& origin = "<string>");
void save_trace(const Trace& trace, const std::string& path);
std::string trace_to_json_text(const Trace& trace);

GraphConfig load_graph_config(const std::string& path);
GraphConfig graph_config_from_json_text(const std::string& text,
                                        const std::string& origin = "<string>");
std::string graph_config_to_json_text(const GraphConfig& cfg);

}  // namespace strelgen
