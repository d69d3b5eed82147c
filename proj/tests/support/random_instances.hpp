#pragma once

// Seeded random scenes, graph configurations and formulas for differential
// testing. Geometry is kept oracle-friendly: few agents, short horizons,
// agent separation bounded away from zero, finite spatial bounds.

#include <random>
#include <string>
#include <vector>

#include "strelgen/formula.hpp"
#include "strelgen/scene.hpp"

namespace testsupport {

struct Rng {
  explicit Rng(uint64_t seed) : eng(seed) {}
  std::mt19937_64 eng;

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng);
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<size_t>(uniform_int(0, int(xs.size()) - 1))];
  }
};

struct FormulaOptions {
  int max_depth = 4;
  bool universe_colors_only = false;  // every color set covers all colors
  bool derived_ok = true;             // allow F/G/Or/SW/EW/Surround
  bool spatial_ok = true;
  // Gradient-friendly mode: smooth-safe signals, inactive distance gates.
  bool differentiable = false;
  int n_agents = 3;       // used to size always-inactive spatial bounds
  double radius = 6.0;    // ditto
};

strelgen::Trace random_trace(Rng& rng, int max_agents = 5, int max_horizon = 8);
strelgen::GraphConfig random_graph_config(Rng& rng);
strelgen::FormulaPtr random_formula(Rng& rng,
                                    const std::vector<std::string>& colors,
                                    const FormulaOptions& opt);

}  // namespace testsupport
