#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "strelgen/formula.hpp"
#include "strelgen/generator.hpp"
#include "strelgen/guidance.hpp"
#include "strelgen/log.hpp"
#include "strelgen/metrics.hpp"
#include "strelgen/monitor.hpp"
#include "strelgen/oracle.hpp"
#include "strelgen/smooth.hpp"

namespace {

constexpr int kExitSatisfied = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

nlohmann::json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? nlohmann::json("inf") : nlohmann::json("-inf");
  return nlohmann::json(v);
}

std::string show(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::to_string(v);
}

struct MonitorArgs {
  std::string formula_path, trace_path, graph_path;
  int at = 0;
  int agent = -1;
  bool agent_set = false;
  std::string domain = "quant";
  bool smooth = false;
  bool use_oracle = false;
  double beta = 10.0;
  double bound = 1e3;
  std::string aggregate = "max";
  bool as_json = false;
};

int check_formula(const strelgen::FormulaPtr& f, const strelgen::Trace& trace,
                  const strelgen::GraphConfig& cfg) {
  auto issues = strelgen::validate(f, trace, cfg);
  for (const auto& issue : issues)
    std::cerr << "error: " << issue.message << "\n";
  return issues.empty() ? 0 : kExitUsage;
}

int run_monitor(const MonitorArgs& a) {
  using namespace strelgen;
  FormulaPtr f = load_formula(a.formula_path);
  Trace trace = load_trace(a.trace_path);
  GraphConfig cfg = load_graph_config(a.graph_path);
  if (int rc = check_formula(f, trace, cfg)) return rc;
  FormulaPtr core = expand_derived(f);
  const Domain domain =
      a.domain == "bool" ? Domain::Boolean : Domain::Quantitative;
  SmoothConfig scfg;
  scfg.beta = a.beta;
  scfg.bound = a.bound;
  scfg.aggregation = aggregation_from_string(a.aggregate);

  std::vector<AgentId> targets;
  if (a.agent_set)
    targets.push_back(a.agent);
  else
    for (const Agent& ag : trace.agents) targets.push_back(ag.id);

  nlohmann::json results = nlohmann::json::array();
  bool any_sat = false, all_sat = true;
  for (AgentId id : targets) {
    bool sat;
    nlohmann::json row;
    row["agent"] = id;
    if (a.smooth) {
      const double v = smooth_robustness(trace, cfg, core, a.at, id, scfg);
      sat = v > 0;
      row["value"] = json_number(v);
      if (!a.as_json)
        std::cout << "agent " << id << ": smooth rho = " << show(v) << "\n";
    } else {
      RobustnessValue r = a.use_oracle
                              ? monitor_oracle(trace, cfg, f, a.at, id, domain)
                              : monitor(trace, cfg, core, a.at, id, domain);
      sat = r.satisfied();
      if (domain == Domain::Boolean) {
        row["satisfied"] = sat;
        if (!a.as_json)
          std::cout << "agent " << id << ": " << (sat ? "sat" : "unsat") << "\n";
      } else {
        row["value"] = json_number(r.value);
        if (!a.as_json)
          std::cout << "agent " << id << ": rho = " << show(r.value) << "\n";
      }
    }
    row["satisfied"] = sat;
    results.push_back(row);
    any_sat = any_sat || sat;
    all_sat = all_sat && sat;
  }
  const bool verdict =
      scfg.aggregation == Aggregation::Max ? any_sat : all_sat;
  if (a.as_json) {
    nlohmann::json out;
    out["results"] = results;
    out["satisfied"] = verdict;
    std::cout << out.dump(2) << "\n";
  }
  return verdict ? kExitSatisfied : kExitViolated;
}

struct GuideArgs {
  std::string formula_path, context_path, graph_path;
  std::string out_path, result_path;
  uint64_t seed = 0;
  strelgen::GuidanceParams params;
  std::string aggregate = "max";
};

int run_guide(const GuideArgs& a) {
  using namespace strelgen;
  FormulaPtr f = expand_derived(load_formula(a.formula_path));
  auto [ctx, gcfg] = load_context(a.context_path);
  GraphConfig cfg = load_graph_config(a.graph_path);
  GuidanceParams params = a.params;
  params.smooth.aggregation = aggregation_from_string(a.aggregate);
  params.restart_seed = derive_seed(a.seed, 1);

  const size_t dim = ctx.agents.size() * static_cast<size_t>(gcfg.latent_dim);
  std::vector<double> z0 = sample_latent(derive_seed(a.seed, 0), dim);
  GuidanceResult res = optimize(z0, f, gcfg, ctx, cfg, params);

  std::cout << (res.satisfied ? "satisfied" : "violated")
            << ", hard rho = " << show(res.final_hard_rho) << ", steps = "
            << res.steps_used << ", restarts = " << res.restarts_used << "\n";
  if (!a.out_path.empty()) save_trace(res.trace, a.out_path);
  if (!a.result_path.empty()) {
    nlohmann::json j;
    j["satisfied"] = res.satisfied;
    j["final_hard_rho"] = json_number(res.final_hard_rho);
    j["steps_used"] = res.steps_used;
    j["restarts_used"] = res.restarts_used;
    j["z"] = res.z;
    nlohmann::json rho = nlohmann::json::array(), jj = nlohmann::json::array(),
                   zn = nlohmann::json::array();
    for (double v : res.rho_history) rho.push_back(json_number(v));
    for (double v : res.j_history) jj.push_back(json_number(v));
    for (double v : res.z_norm_history) zn.push_back(json_number(v));
    j["rho_history"] = rho;
    j["j_history"] = jj;
    j["z_norm_history"] = zn;
    std::ofstream out(a.result_path);
    if (!out) throw IoError("cannot write " + a.result_path);
    out << j.dump(2) << "\n";
  }
  return res.satisfied ? kExitSatisfied : kExitViolated;
}

struct MetricsArgs {
  std::string trace_path;
  double threshold = 0.9;
};

int run_metrics(const MetricsArgs& a) {
  using namespace strelgen;
  Trace trace = load_trace(a.trace_path);
  MetricsReport rep = compute_metrics(trace, a.threshold);
  std::cout << metrics_to_json_text(rep) << "\n";
  return kExitSatisfied;
}

struct ExperimentArgs {
  std::string formula_path, context_path, graph_path, out_path;
  int runs = 20;
  uint64_t seed = 0;
  strelgen::GuidanceParams params;
  std::string aggregate = "max";
};

int run_experiment_cmd(const ExperimentArgs& a) {
  using namespace strelgen;
  FormulaPtr f = expand_derived(load_formula(a.formula_path));
  auto [ctx, gcfg] = load_context(a.context_path);
  GraphConfig cfg = load_graph_config(a.graph_path);
  GuidanceParams params = a.params;
  params.smooth.aggregation = aggregation_from_string(a.aggregate);
  ExperimentSummary s = run_experiment(f, gcfg, ctx, cfg, params, a.runs, a.seed);
  const std::string text = experiment_to_json_text(s);
  std::cout << text << "\n";
  if (!a.out_path.empty()) {
    std::ofstream out(a.out_path);
    if (!out) throw IoError("cannot write " + a.out_path);
    out << text << "\n";
  }
  return kExitSatisfied;
}

void add_guidance_opts(CLI::App* cmd, strelgen::GuidanceParams& p) {
  cmd->add_option("--eta", p.eta, "ascent step size");
  cmd->add_option("--lambda", p.lambda, "latent norm penalty weight");
  cmd->add_option("--max-steps", p.max_steps, "ascent steps per attempt");
  cmd->add_option("--max-restarts", p.max_restarts, "seeded restarts");
  cmd->add_option("--stop-margin", p.stop_margin, "hard robustness stop margin");
  cmd->add_option("--beta", p.smooth.beta, "log-sum-exp temperature");
  cmd->add_option("--bound", p.smooth.bound, "finite stand-in for infinity");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colored spatio-temporal logic monitoring and latent guidance"};
  app.require_subcommand(1);

  MonitorArgs ma;
  CLI::App* mon = app.add_subcommand("monitor", "evaluate a formula on a trace");
  mon->add_option("--formula", ma.formula_path, "formula file")->required();
  mon->add_option("--trace", ma.trace_path, "trace JSON")->required();
  mon->add_option("--graph", ma.graph_path, "graph config JSON")->required();
  mon->add_option("--at", ma.at, "time step (default 0)");
  mon->add_option("--agent", ma.agent, "agent id (default: all agents)")
      ->each([&ma](const std::string&) { ma.agent_set = true; });
  mon->add_option("--domain", ma.domain, "bool or quant")
      ->check(CLI::IsMember({"bool", "quant"}));
  mon->add_flag("--smooth", ma.smooth, "differentiable robustness value");
  mon->add_flag("--oracle", ma.use_oracle, "use the reference monitor");
  mon->add_option("--beta", ma.beta, "smooth temperature");
  mon->add_option("--bound", ma.bound, "smooth stand-in for infinity");
  mon->add_option("--aggregate", ma.aggregate, "verdict over agents: max or min")
      ->check(CLI::IsMember({"max", "min"}));
  mon->add_flag("--json", ma.as_json, "machine-readable output");

  GuideArgs ga;
  CLI::App* gd = app.add_subcommand("guide", "steer a decoded scene to satisfy a formula");
  gd->add_option("--formula", ga.formula_path, "formula file")->required();
  gd->add_option("--context", ga.context_path, "context JSON")->required();
  gd->add_option("--graph", ga.graph_path, "graph config JSON")->required();
  gd->add_option("--seed", ga.seed, "latent sampling seed");
  gd->add_option("--out", ga.out_path, "write the guided trace here");
  gd->add_option("--result", ga.result_path, "write run details here");
  gd->add_option("--aggregate", ga.aggregate, "scene score over agents")
      ->check(CLI::IsMember({"max", "min"}));
  add_guidance_opts(gd, ga.params);

  MetricsArgs xa;
  CLI::App* mx = app.add_subcommand("metrics", "scene statistics for a trace");
  mx->add_option("--trace", xa.trace_path, "trace JSON")->required();
  mx->add_option("--threshold", xa.threshold, "potential-collision distance");

  ExperimentArgs ea;
  CLI::App* ex = app.add_subcommand("experiment", "guided vs unguided sampling study");
  ex->add_option("--formula", ea.formula_path, "formula file")->required();
  ex->add_option("--context", ea.context_path, "context JSON")->required();
  ex->add_option("--graph", ea.graph_path, "graph config JSON")->required();
  ex->add_option("--runs", ea.runs, "number of paired runs");
  ex->add_option("--seed", ea.seed, "base seed");
  ex->add_option("--out", ea.out_path, "write the summary JSON here");
  ex->add_option("--aggregate", ea.aggregate, "scene score over agents")
      ->check(CLI::IsMember({"max", "min"}));
  add_guidance_opts(ex, ea.params);

  std::string parse_text;
  bool parse_expand = false;
  CLI::App* pr = app.add_subcommand("parse", "parse a formula and print it back");
  pr->add_option("--formula", parse_text, "formula file")->required();
  pr->add_flag("--expand", parse_expand, "rewrite derived operators first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*mon) return run_monitor(ma);
    if (*gd) return run_guide(ga);
    if (*mx) return run_metrics(xa);
    if (*ex) return run_experiment_cmd(ea);
    if (*pr) {
      strelgen::FormulaPtr f = strelgen::load_formula(parse_text);
      if (parse_expand) f = strelgen::expand_derived(f);
      std::cout << strelgen::format(f) << "\n";
      return kExitSatisfied;
    }
  } catch (const strelgen::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
