#include "strelgen/guidance.hpp"

#include <cmath>

#include "json.hpp"
#include "strelgen/log.hpp"
#include "strelgen/monitor.hpp"

namespace strelgen {

namespace {

double norm_of(const std::vector<double>& z) {
  double s = 0;
  for (double v : z) s += v * v;
  return std::sqrt(s);
}

struct GradStep {
  ObjectiveValue value;
  std::vector<double> grad;  // dJ/dz
};

GradStep objective_with_gradient(const std::vector<double>& z,
                                 const FormulaPtr& formula,
                                 const GeneratorConfig& gcfg,
                                 const ContextScene& ctx, const GraphConfig& cfg,
                                 double lambda, const SmoothConfig& scfg) {
  Tape tape;
  std::vector<DiffScalar> zv = lift_latent(tape, z);
  DiffTrace dtr = decode_diff(tape, gcfg, ctx, zv);
  DiffScalar rho = aggregate_rho(dtr, cfg, formula, scfg);
  DiffScalar penalty(0.0);
  for (const DiffScalar& v : zv) penalty = penalty + v * v;
  penalty = 0.5 * lambda * penalty;
  DiffScalar j = rho - penalty;
  GradStep out;
  out.value = {j.value(), rho.value(), penalty.value()};
  out.grad = tape.gradient(j, zv);
  return out;
}

}  // namespace

ObjectiveValue objective(const std::vector<double>& z, const FormulaPtr& formula,
                         const GeneratorConfig& gcfg, const ContextScene& ctx,
                         const GraphConfig& cfg, double lambda,
                         const SmoothConfig& scfg) {
  return objective_with_gradient(z, formula, gcfg, ctx, cfg, lambda, scfg).value;
}

GuidanceResult optimize(const std::vector<double>& z0, const FormulaPtr& formula,
                        const GeneratorConfig& gcfg, const ContextScene& ctx,
                        const GraphConfig& cfg, const GuidanceParams& params) {
  GuidanceResult res;
  std::vector<double> z = z0;

  for (int attempt = 0; attempt <= params.max_restarts; ++attempt) {
    if (attempt > 0) {
      z = sample_latent(derive_seed(params.restart_seed, attempt), z0.size());
      logging::info("restart " + std::to_string(attempt));
    }
    res.restarts_used = attempt;
    bool aborted = false;
    for (int step = 0; step <= params.max_steps; ++step) {
      Trace trace = decode(gcfg, ctx, z);
      const double hard =
          aggregate_rho_hard(trace, cfg, formula, params.smooth.aggregation);
      if (hard > params.stop_margin) {
        res.z = z;
        res.trace = std::move(trace);
        res.satisfied = true;
        res.final_hard_rho = hard;
        logging::info("satisfied at attempt " + std::to_string(attempt) +
                      ", step " + std::to_string(step) +
                      ", hard rho = " + std::to_string(hard));
        return res;
      }
      if (step == params.max_steps) break;
      GradStep g = objective_with_gradient(z, formula, gcfg, ctx, cfg,
                                           params.lambda, params.smooth);
      if (!std::isfinite(g.value.j)) {
        logging::info("attempt " + std::to_string(attempt) +
                      " aborted: non-finite objective");
        aborted = true;
        break;
      }
      res.rho_history.push_back(g.value.rho);
      res.j_history.push_back(g.value.j);
      res.z_norm_history.push_back(norm_of(z));
      ++res.steps_used;
      for (size_t i = 0; i < z.size(); ++i) z[i] += params.eta * g.grad[i];
      if (logging::enabled(logging::Level::Debug))
        logging::debug("attempt " + std::to_string(attempt) + " step " +
                       std::to_string(step) + " J=" + std::to_string(g.value.j) +
                       " rho=" + std::to_string(g.value.rho) +
                       " |z|=" + std::to_string(norm_of(z)));
    }
    (void)aborted;
  }

  res.z = z;
  res.trace = decode(gcfg, ctx, z);
  res.final_hard_rho =
      aggregate_rho_hard(res.trace, cfg, formula, params.smooth.aggregation);
  res.satisfied = res.final_hard_rho > params.stop_margin;
  return res;
}

ExperimentSummary run_experiment(const FormulaPtr& formula,
                                 const GeneratorConfig& gcfg,
                                 const ContextScene& ctx, const GraphConfig& cfg,
                                 const GuidanceParams& params, int runs,
                                 uint64_t seed) {
  ExperimentSummary s;
  s.runs = runs;
  const size_t dim = ctx.agents.size() * static_cast<size_t>(gcfg.latent_dim);
  int sat_u = 0, sat_g = 0;
  for (int i = 0; i < runs; ++i) {
    std::vector<double> z0 = sample_latent(derive_seed(seed, i), dim);
    Trace unguided = decode(gcfg, ctx, z0);
    const double rho_u =
        aggregate_rho_hard(unguided, cfg, formula, params.smooth.aggregation);
    s.rho_unguided.push_back(rho_u);
    if (rho_u > 0) ++sat_u;

    GuidanceParams p = params;
    p.restart_seed = derive_seed(seed, 0x100000 + i);
    GuidanceResult r = optimize(z0, formula, gcfg, ctx, cfg, p);
    s.rho_guided.push_back(r.final_hard_rho);
    s.restarts.push_back(r.restarts_used);
    if (r.satisfied) ++sat_g;
    logging::info("run " + std::to_string(i) + ": unguided rho " +
                  std::to_string(rho_u) + ", guided rho " +
                  std::to_string(r.final_hard_rho) + " (" +
                  std::to_string(r.restarts_used) + " restarts)");
  }
  if (runs > 0) {
    s.unguided_sat_rate = static_cast<double>(sat_u) / runs;
    s.guided_sat_rate = static_cast<double>(sat_g) / runs;
  }
  return s;
}

std::string experiment_to_json_text(const ExperimentSummary& s) {
  nlohmann::json j;
  j["runs"] = s.runs;
  j["unguided_sat_rate"] = s.unguided_sat_rate;
  j["guided_sat_rate"] = s.guided_sat_rate;
  auto encode = [](const std::vector<double>& xs) {
    nlohmann::json arr = nlohmann::json::array();
    for (double v : xs) {
      if (std::isinf(v))
        arr.push_back(v > 0 ? "inf" : "-inf");
      else
        arr.push_back(v);
    }
    return arr;
  };
  j["rho_unguided"] = encode(s.rho_unguided);
  j["rho_guided"] = encode(s.rho_guided);
  j["restarts"] = s.restarts;
  return j.dump(2);
}

}  // namespace strelgen
