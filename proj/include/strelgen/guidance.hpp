#pragma once

// Gradient-ascent guidance in the decoder's latent space: maximize
// J(z) = smooth_robustness(decode(z)) - lambda * ||z||^2 / 2,
// stopping as soon as the hard robustness clears the stop margin, with
// seeded restarts when an attempt stalls.

#include <cstdint>
#include <optional>

#include "strelgen/formula.hpp"
#include "strelgen/generator.hpp"
#include "strelgen/smooth.hpp"

namespace strelgen {

struct GuidanceParams {
  double eta = 0.05;        // ascent step size
  double lambda = 0.01;     // latent norm penalty weight
  int max_steps = 500;      // ascent steps per attempt
  int max_restarts = 5;     // additional seeded attempts
  double stop_margin = 0.0; // stop once hard robustness exceeds this
  uint64_t restart_seed = 0;
  SmoothConfig smooth;
};

struct ObjectiveValue {
  double j = 0;        // rho - penalty
  double rho = 0;      // smooth aggregated robustness
  double penalty = 0;  // lambda * ||z||^2 / 2
};

ObjectiveValue objective(const std::vector<double>& z, const FormulaPtr& formula,
                         const GeneratorConfig& gcfg, const ContextScene& ctx,
                         const GraphConfig& cfg, double lambda,
                         const SmoothConfig& scfg);

struct GuidanceResult {
  std::vector<double> z;
  Trace trace;
  bool satisfied = false;
  int restarts_used = 0;
  int steps_used = 0;  // ascent steps summed over attempts
  double final_hard_rho = -kInf;
  // One entry per ascent step, across all attempts.
  std::vector<double> rho_history;
  std::vector<double> j_history;
  std::vector<double> z_norm_history;
};

GuidanceResult optimize(const std::vector<double>& z0, const FormulaPtr& formula,
                        const GeneratorConfig& gcfg, const ContextScene& ctx,
                        const GraphConfig& cfg, const GuidanceParams& params);

struct ExperimentSummary {
  int runs = 0;
  double unguided_sat_rate = 0;
  double guided_sat_rate = 0;
  std::vector<double> rho_unguided;
  std::vector<double> rho_guided;
  std::vector<int> restarts;
};

// Paired unguided-vs-guided sampling: run i draws its latent from
// derive_seed(seed, i) and guides that same latent.
ExperimentSummary run_experiment(const FormulaPtr& formula,
                                 const GeneratorConfig& gcfg,
                                 const ContextScene& ctx, const GraphConfig& cfg,
                                 const GuidanceParams& params, int runs,
                                 uint64_t seed);

std::string experiment_to_json_text(const ExperimentSummary& s);

}  // namespace strelgen
