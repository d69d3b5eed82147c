#pragma once

// Deterministic differentiable toy trajectory decoder: a seeded linear map
// sends each agent's latent block to coefficients of low-order cosine
// acceleration bases, integrated with explicit Euler from the context's
// initial states. A zero latent decodes to constant-velocity straight lines.

#include <cstdint>
#include <utility>

#include "strelgen/autodiff.hpp"
#include "strelgen/scene.hpp"
#include "strelgen/smooth.hpp"

namespace strelgen {

struct GeneratorConfig {
  int latent_dim = 8;    // per-agent latent block size; 2 * basis_count
  int basis_count = 4;   // cosine bases per axis
  uint64_t seed = 1234;  // seeds the latent -> coefficient linear map
  double accel_scale = 0.25;  // std-dev scale of the map's entries
};

struct ContextAgent {
  AgentId id = 0;
  std::string color;
  AgentState initial;
};

// Initial conditions plus target length for decoding.
struct ContextScene {
  double dt = 0.1;
  int horizon = 0;
  std::vector<std::string> colors;
  std::vector<ContextAgent> agents;
};

std::pair<ContextScene, GeneratorConfig> load_context(const std::string& path);
std::pair<ContextScene, GeneratorConfig> context_from_json_text(
    const std::string& text, const std::string& origin = "<string>");
std::string context_to_json_text(const ContextScene& ctx,
                                 const GeneratorConfig& gcfg);

// First states of a trace as a decoding context.
ContextScene context_of(const Trace& trace);

// z holds one latent block per agent, in agent order
// (z.size() == agents * latent_dim). Bit-for-bit deterministic.
Trace decode(const GeneratorConfig& gcfg, const ContextScene& ctx,
             const std::vector<double>& z);

// Same computation over tape scalars; values match decode() exactly.
DiffTrace decode_diff(Tape& tape, const GeneratorConfig& gcfg,
                      const ContextScene& ctx,
                      const std::vector<DiffScalar>& z);

std::vector<DiffScalar> lift_latent(Tape& tape, const std::vector<double>& z);

// Standard normal draws, identical on every platform (mt19937_64 plus a
// fixed Box-Muller transform).
std::vector<double> sample_latent(uint64_t seed, size_t dim);

// Decorrelated child seed for restarts and experiment runs.
uint64_t derive_seed(uint64_t base, uint64_t index);

}  // namespace strelgen
