#pragma once

#include "strelgen/scene.hpp"

namespace strelgen {

struct MetricsReport {
  double min_pairwise_distance = kInf;  // +inf when fewer than two agents
  int potential_collisions = 0;  // distinct agents in any too-close pair
  double threshold = 0.9;
};

// Center-to-center distances over all steps and unordered agent pairs. An
// agent counts as potentially colliding when some pair containing it gets
// strictly closer than `threshold` at any step.
MetricsReport compute_metrics(const Trace& trace, double threshold = 0.9);

std::string metrics_to_json_text(const MetricsReport& report);

}  // namespace strelgen
