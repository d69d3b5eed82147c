#include "strelgen/metrics.hpp"

#include <cmath>
#include <vector>

#include "json.hpp"

namespace strelgen {

MetricsReport compute_metrics(const Trace& trace, double threshold) {
  MetricsReport rep;
  rep.threshold = threshold;
  const size_t n = trace.agents.size();
  std::vector<char> colliding(n, 0);
  for (int t = 0; t < trace.horizon; ++t) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        const AgentState& a = trace.agents[i].states[t];
        const AgentState& b = trace.agents[j].states[t];
        const double d = std::hypot(a.x - b.x, a.y - b.y);
        rep.min_pairwise_distance = std::min(rep.min_pairwise_distance, d);
        if (d < threshold) colliding[i] = colliding[j] = 1;
      }
    }
  }
  for (char c : colliding) rep.potential_collisions += c;
  return rep;
}

std::string metrics_to_json_text(const MetricsReport& report) {
  nlohmann::json j;
  if (std::isinf(report.min_pairwise_distance))
    j["min_pairwise_distance"] = report.min_pairwise_distance > 0 ? "inf" : "-inf";
  else
    j["min_pairwise_distance"] = report.min_pairwise_distance;
  j["potential_collisions"] = report.potential_collisions;
  j["threshold"] = report.threshold;
  return j.dump(2);
}

}  // namespace strelgen
