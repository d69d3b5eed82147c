#include "strelgen/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "strelgen/detail/kinematics.hpp"

namespace strelgen {

using nlohmann::json;

int Trace::agent_index(AgentId id) const {
  for (size_t i = 0; i < agents.size(); ++i)
    if (agents[i].id == id) return static_cast<int>(i);
  return -1;
}

const Agent& Trace::agent(AgentId id) const {
  int i = agent_index(id);
  if (i < 0) throw Error("unknown agent id " + std::to_string(id));
  return agents[i];
}

bool Trace::has_color(const std::string& c) const {
  return std::find(colors.begin(), colors.end(), c) != colors.end();
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::Euclid: return "euclid";
    case Metric::Hops: return "hops";
    case Metric::Front: return "front";
  }
  return "euclid";
}

Metric metric_from_string(const std::string& s) {
  if (s == "euclid") return Metric::Euclid;
  if (s == "hops") return Metric::Hops;
  if (s == "front") return Metric::Front;
  throw Error("unknown metric '" + s + "' (expected euclid, hops or front)");
}

std::string to_string(SignalKind s) {
  switch (s) {
    case SignalKind::X: return "x";
    case SignalKind::Y: return "y";
    case SignalKind::Vx: return "vx";
    case SignalKind::Vy: return "vy";
    case SignalKind::Heading: return "heading";
    case SignalKind::Speed: return "speed";
    case SignalKind::HeadingChange: return "heading_change";
  }
  return "x";
}

SignalKind signal_from_string(const std::string& s) {
  if (s == "x") return SignalKind::X;
  if (s == "y") return SignalKind::Y;
  if (s == "vx") return SignalKind::Vx;
  if (s == "vy") return SignalKind::Vy;
  if (s == "heading") return SignalKind::Heading;
  if (s == "speed") return SignalKind::Speed;
  if (s == "heading_change") return SignalKind::HeadingChange;
  throw Error("unknown signal '" + s + "'");
}

const std::vector<std::pair<AgentId, double>> GraphSnapshot::kNoNeighbors;

void GraphSnapshot::rebuild_adjacency() {
  adj_.clear();
  for (AgentId n : nodes) adj_[n];
  for (const GraphEdge& e : edges) adj_[e.from].emplace_back(e.to, e.weight);
}

const std::vector<std::pair<AgentId, double>>& GraphSnapshot::neighbors(
    AgentId id) const {
  auto it = adj_.find(id);
  return it == adj_.end() ? kNoNeighbors : it->second;
}

double GraphSnapshot::max_edge_weight() const {
  double m = 0;
  for (const GraphEdge& e : edges) m = std::max(m, e.weight);
  return m;
}

static void check_step(const Trace& trace, int t) {
  if (t < 0 || t >= trace.horizon)
    throw Error("time step " + std::to_string(t) + " outside horizon [0," +
                std::to_string(trace.horizon) + ")");
}

double derived_signal(const Trace& trace, AgentId id, SignalKind kind, int t) {
  check_step(trace, t);
  const Agent& a = trace.agent(id);
  const AgentState& s = a.states[t];
  switch (kind) {
    case SignalKind::X: return s.x;
    case SignalKind::Y: return s.y;
    case SignalKind::Vx: return s.vx;
    case SignalKind::Vy: return s.vy;
    case SignalKind::Heading: return s.heading;
    case SignalKind::Speed: return detail::speed_of(s.vx, s.vy);
    case SignalKind::HeadingChange:
      if (t == 0) return 0.0;
      return detail::heading_change_of(s.heading, a.states[t - 1].heading,
                                       trace.dt);
  }
  return 0.0;
}

GraphSnapshot build_graph(const Trace& trace, const GraphConfig& cfg, int t) {
  return build_graph(trace, cfg, t, cfg.metric);
}

GraphSnapshot build_graph(const Trace& trace, const GraphConfig& cfg, int t,
                          Metric metric) {
  check_step(trace, t);
  GraphSnapshot g;
  g.t = t;
  for (const Agent& a : trace.agents) g.nodes.push_back(a.id);
  const size_t n = trace.agents.size();
  for (size_t i = 0; i < n; ++i) {
    const AgentState& si = trace.agents[i].states[t];
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const AgentState& sj = trace.agents[j].states[t];
      const double dx = sj.x - si.x, dy = sj.y - si.y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      if (dist > cfg.radius) continue;
      if (metric == Metric::Front) {
        // Keep only edges into the forward cone of the source agent.
        const double bearing = std::atan2(dy, dx);
        const double off = detail::wrap_angle(bearing - si.heading);
        if (std::abs(off) > cfg.front_half_angle) continue;
      }
      double w;
      switch (metric) {
        case Metric::Hops: w = 1.0; break;
        default: w = std::max(dist, cfg.min_edge_weight); break;
      }
      g.edges.push_back({trace.agents[i].id, trace.agents[j].id, w});
    }
  }
  g.rebuild_adjacency();
  return g;
}

std::unordered_map<AgentId, double> shortest_distances(const GraphSnapshot& g,
                                                       AgentId from) {
  std::unordered_map<AgentId, double> dist;
  for (AgentId n : g.nodes) dist[n] = kInf;
  if (!dist.count(from)) throw Error("unknown node " + std::to_string(from));
  dist[from] = 0;
  using Item = std::pair<double, AgentId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.push({0, from});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : g.neighbors(u)) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist;
}

double shortest_distance(const GraphSnapshot& g, AgentId from, AgentId to) {
  auto dist = shortest_distances(g, from);
  auto it = dist.find(to);
  if (it == dist.end()) throw Error("unknown node " + std::to_string(to));
  return it->second;
}

// ---- JSON I/O -------------------------------------------------------------

static json parse_json(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError(origin + ": invalid JSON");
  return j;
}

static std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static double require_number(const json& j, const char* field,
                             const std::string& origin) {
  if (!j.contains(field) || !j[field].is_number())
    throw IoError(origin + ": missing or non-numeric field '" + field + "'");
  return j[field].get<double>();
}

Trace trace_from_json_text(const std::string& text, const std::string& origin) {
  json j = parse_json(text, origin);
  Trace tr;
  if (!j.contains("meta") || !j["meta"].is_object())
    throw IoError(origin + ": missing 'meta' object");
  tr.dt = require_number(j["meta"], "dt", origin);
  tr.horizon = static_cast<int>(require_number(j["meta"], "horizon", origin));
  if (tr.dt <= 0) throw IoError(origin + ": dt must be positive");
  if (tr.horizon <= 0) throw IoError(origin + ": horizon must be positive");
  if (!j.contains("colors") || !j["colors"].is_array())
    throw IoError(origin + ": missing 'colors' array");
  for (const auto& c : j["colors"]) {
    if (!c.is_string()) throw IoError(origin + ": colors must be strings");
    tr.colors.push_back(c.get<std::string>());
  }
  if (!j.contains("agents") || !j["agents"].is_array())
    throw IoError(origin + ": missing 'agents' array");
  for (const auto& ja : j["agents"]) {
    Agent a;
    a.id = static_cast<AgentId>(require_number(ja, "id", origin));
    if (!ja.contains("color") || !ja["color"].is_string())
      throw IoError(origin + ": agent " + std::to_string(a.id) +
                    " missing 'color'");
    a.color = ja["color"].get<std::string>();
    if (!tr.has_color(a.color))
      throw IoError(origin + ": agent " + std::to_string(a.id) + " has color '" +
                    a.color + "' not in the declared color universe");
    if (!ja.contains("states") || !ja["states"].is_array())
      throw IoError(origin + ": agent " + std::to_string(a.id) +
                    " missing 'states'");
    for (const auto& js : ja["states"]) {
      AgentState s;
      s.x = require_number(js, "x", origin);
      s.y = require_number(js, "y", origin);
      s.vx = require_number(js, "vx", origin);
      s.vy = require_number(js, "vy", origin);
      s.heading = require_number(js, "heading", origin);
      a.states.push_back(s);
    }
    if (static_cast<int>(a.states.size()) != tr.horizon)
      throw IoError(origin + ": state count mismatch for agent " +
                    std::to_string(a.id) + " (got " +
                    std::to_string(a.states.size()) + ", horizon is " +
                    std::to_string(tr.horizon) + ")");
    if (tr.agent_index(a.id) >= 0)
      throw IoError(origin + ": duplicate agent id " + std::to_string(a.id));
    tr.agents.push_back(std::move(a));
  }
  return tr;
}

Trace load_trace(const std::string& path) {
  return trace_from_json_text(read_file(path), path);
}

std::string trace_to_json_text(const Trace& trace) {
  json j;
  j["meta"] = {{"dt", trace.dt}, {"horizon", trace.horizon}};
  j["colors"] = trace.colors;
  j["agents"] = json::array();
  for (const Agent& a : trace.agents) {
    json ja;
    ja["id"] = a.id;
    ja["color"] = a.color;
    ja["states"] = json::array();
    for (const AgentState& s : a.states)
      ja["states"].push_back({{"x", s.x},
                              {"y", s.y},
                              {"vx", s.vx},
                              {"vy", s.vy},
                              {"heading", s.heading}});
    j["agents"].push_back(std::move(ja));
  }
  return j.dump(2);
}

void save_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << trace_to_json_text(trace) << "\n";
}

GraphConfig graph_config_from_json_text(const std::string& text,
                                        const std::string& origin) {
  json j = parse_json(text, origin);
  GraphConfig cfg;
  if (!j.contains("connectivity") || !j["connectivity"].is_object() ||
      !j["connectivity"].contains("radius"))
    throw IoError(origin + ": missing 'connectivity.radius'");
  cfg.radius = j["connectivity"]["radius"].get<double>();
  if (cfg.radius <= 0) throw IoError(origin + ": radius must be positive");
  if (j.contains("metric"))
    cfg.metric = metric_from_string(j["metric"].get<std::string>());
  if (j.contains("front_half_angle"))
    cfg.front_half_angle = j["front_half_angle"].get<double>();
  if (j.contains("min_edge_weight"))
    cfg.min_edge_weight = j["min_edge_weight"].get<double>();
  if (cfg.min_edge_weight <= 0)
    throw IoError(origin + ": min_edge_weight must be positive");
  return cfg;
}

GraphConfig load_graph_config(const std::string& path) {
  return graph_config_from_json_text(read_file(path), path);
}

std::string graph_config_to_json_text(const GraphConfig& cfg) {
  json j;
  j["connectivity"] = {{"radius", cfg.radius}};
  j["metric"] = to_string(cfg.metric);
  j["front_half_angle"] = cfg.front_half_angle;
  j["min_edge_weight"] = cfg.min_edge_weight;
  return j.dump(2);
}

}  // namespace strelgen
