#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strelgen/formula.hpp"
#include "strelgen/generator.hpp"
#include "strelgen/guidance.hpp"
#include "strelgen/metrics.hpp"
#include "strelgen/monitor.hpp"
#include "strelgen/oracle.hpp"
#include "strelgen/smooth.hpp"

namespace py = pybind11;
using namespace strelgen;

namespace {
// pybind11 holders must be non-const; wrap the shared-pointer-to-const.
struct PyFormula {
  FormulaPtr ptr;
};
}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "colored spatio-temporal logic monitoring and latent guidance";

  py::register_exception<Error>(m, "StrelgenError");

  py::enum_<Domain>(m, "Domain")
      .value("BOOLEAN", Domain::Boolean)
      .value("QUANTITATIVE", Domain::Quantitative);

  py::enum_<Aggregation>(m, "Aggregation")
      .value("MAX", Aggregation::Max)
      .value("MIN", Aggregation::Min);

  py::class_<AgentState>(m, "AgentState")
      .def(py::init<>())
      .def_readwrite("x", &AgentState::x)
      .def_readwrite("y", &AgentState::y)
      .def_readwrite("vx", &AgentState::vx)
      .def_readwrite("vy", &AgentState::vy)
      .def_readwrite("heading", &AgentState::heading);

  py::class_<Agent>(m, "Agent")
      .def_readwrite("id", &Agent::id)
      .def_readwrite("color", &Agent::color)
      .def_readwrite("states", &Agent::states);

  py::class_<Trace>(m, "Trace")
      .def(py::init<>())
      .def_readwrite("dt", &Trace::dt)
      .def_readwrite("horizon", &Trace::horizon)
      .def_readwrite("colors", &Trace::colors)
      .def_readwrite("agents", &Trace::agents)
      .def("to_json", &trace_to_json_text)
      .def_static("from_json", &trace_from_json_text, py::arg("text"),
                  py::arg("origin") = "<string>")
      .def_static("load", &load_trace)
      .def("save", &save_trace);

  py::class_<GraphConfig>(m, "GraphConfig")
      .def(py::init<>())
      .def_readwrite("radius", &GraphConfig::radius)
      .def_readwrite("metric", &GraphConfig::metric)
      .def_readwrite("front_half_angle", &GraphConfig::front_half_angle)
      .def_readwrite("min_edge_weight", &GraphConfig::min_edge_weight)
      .def_static("from_json", &graph_config_from_json_text, py::arg("text"),
                  py::arg("origin") = "<string>")
      .def_static("load", &load_graph_config);

  py::enum_<Metric>(m, "Metric")
      .value("EUCLID", Metric::Euclid)
      .value("HOPS", Metric::Hops)
      .value("FRONT", Metric::Front);

  py::class_<PyFormula>(m, "Formula")
      .def("__str__", [](const PyFormula& f) { return format(f.ptr); })
      .def("__repr__", [](const PyFormula& f) { return format(f.ptr); })
      .def("__eq__", [](const PyFormula& a, const PyFormula& b) {
        return structurally_equal(a.ptr, b.ptr);
      });

  m.def("parse", [](const std::string& s) { return PyFormula{parse(s)}; },
        "parse a formula from text");
  m.def("load_formula",
        [](const std::string& p) { return PyFormula{load_formula(p)}; });
  m.def("format", [](const PyFormula& f) { return format(f.ptr); });
  m.def("expand_derived",
        [](const PyFormula& f) { return PyFormula{expand_derived(f.ptr)}; });
  m.def("structurally_equal", [](const PyFormula& a, const PyFormula& b) {
    return structurally_equal(a.ptr, b.ptr);
  });
  m.def("validate",
        [](const PyFormula& f, const Trace& tr, const GraphConfig& cfg) {
          std::vector<std::string> out;
          for (const auto& issue : validate(f.ptr, tr, cfg))
            out.push_back(issue.message);
          return out;
        });

  py::class_<RobustnessValue>(m, "RobustnessValue")
      .def_readonly("value", &RobustnessValue::value)
      .def_readonly("boolean", &RobustnessValue::boolean)
      .def("satisfied", &RobustnessValue::satisfied)
      .def("__repr__", [](const RobustnessValue& r) {
        return r.domain == Domain::Boolean
                   ? std::string(r.boolean ? "sat" : "unsat")
                   : "rho=" + std::to_string(r.value);
      });

  m.def("monitor",
        [](const Trace& tr, const GraphConfig& cfg, const PyFormula& f, int t,
           AgentId agent, Domain d) { return monitor(tr, cfg, f.ptr, t, agent, d); },
        py::arg("trace"), py::arg("cfg"), py::arg("formula"), py::arg("t"),
        py::arg("agent"), py::arg("domain") = Domain::Quantitative);
  m.def("monitor_oracle",
        [](const Trace& tr, const GraphConfig& cfg, const PyFormula& f, int t,
           AgentId agent, Domain d) {
          return monitor_oracle(tr, cfg, f.ptr, t, agent, d);
        },
        py::arg("trace"), py::arg("cfg"), py::arg("formula"), py::arg("t"),
        py::arg("agent"), py::arg("domain") = Domain::Quantitative);
  m.def("smooth_robustness",
        [](const Trace& tr, const GraphConfig& cfg, const PyFormula& f, int t,
           AgentId agent, double beta, double bound) {
          SmoothConfig scfg;
          scfg.beta = beta;
          scfg.bound = bound;
          return smooth_robustness(tr, cfg, f.ptr, t, agent, scfg);
        },
        py::arg("trace"), py::arg("cfg"), py::arg("formula"), py::arg("t"),
        py::arg("agent"), py::arg("beta") = 10.0, py::arg("bound") = 1e3);

  py::class_<GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init<>())
      .def_readwrite("latent_dim", &GeneratorConfig::latent_dim)
      .def_readwrite("basis_count", &GeneratorConfig::basis_count)
      .def_readwrite("seed", &GeneratorConfig::seed)
      .def_readwrite("accel_scale", &GeneratorConfig::accel_scale);

  py::class_<ContextAgent>(m, "ContextAgent")
      .def_readonly("id", &ContextAgent::id)
      .def_readonly("color", &ContextAgent::color)
      .def_readonly("initial", &ContextAgent::initial);

  py::class_<ContextScene>(m, "ContextScene")
      .def_readonly("dt", &ContextScene::dt)
      .def_readonly("horizon", &ContextScene::horizon)
      .def_readonly("colors", &ContextScene::colors)
      .def_readonly("agents", &ContextScene::agents)
      .def("latent_size",
           [](const ContextScene& c, const GeneratorConfig& g) {
             return c.agents.size() * static_cast<size_t>(g.latent_dim);
           },
           py::arg("generator"),
           "length of the scene latent: one latent_dim block per agent");

  m.def("load_context", &load_context);
  m.def("context_from_json", &context_from_json_text, py::arg("text"),
        py::arg("origin") = "<string>");
  m.def("context_of", &context_of);
  m.def("decode", &decode);
  m.def("sample_latent", &sample_latent);
  m.def("derive_seed", &derive_seed);

  py::class_<GuidanceParams>(m, "GuidanceParams")
      .def(py::init<>())
      .def_readwrite("eta", &GuidanceParams::eta)
      .def_readwrite("lambda_", &GuidanceParams::lambda)
      .def_readwrite("max_steps", &GuidanceParams::max_steps)
      .def_readwrite("max_restarts", &GuidanceParams::max_restarts)
      .def_readwrite("stop_margin", &GuidanceParams::stop_margin)
      .def_readwrite("restart_seed", &GuidanceParams::restart_seed)
      .def_property(
          "beta",
          [](const GuidanceParams& p) { return p.smooth.beta; },
          [](GuidanceParams& p, double b) { p.smooth.beta = b; })
      .def_property(
          "aggregation",
          [](const GuidanceParams& p) { return p.smooth.aggregation; },
          [](GuidanceParams& p, Aggregation a) { p.smooth.aggregation = a; });

  py::class_<GuidanceResult>(m, "GuidanceResult")
      .def_readonly("z", &GuidanceResult::z)
      .def_readonly("satisfied", &GuidanceResult::satisfied)
      .def_readonly("restarts_used", &GuidanceResult::restarts_used)
      .def_readonly("steps_used", &GuidanceResult::steps_used)
      .def_readonly("final_hard_rho", &GuidanceResult::final_hard_rho)
      .def_readonly("rho_history", &GuidanceResult::rho_history)
      .def_readonly("j_history", &GuidanceResult::j_history)
      .def_readonly("z_norm_history", &GuidanceResult::z_norm_history)
      .def_readonly("trace", &GuidanceResult::trace);

  m.def("optimize",
        [](const std::vector<double>& z0, const PyFormula& f,
           const GeneratorConfig& g, const ContextScene& c,
           const GraphConfig& cfg, const GuidanceParams& p) {
          return optimize(z0, f.ptr, g, c, cfg, p);
        },
        py::arg("z0"), py::arg("formula"), py::arg("generator"),
        py::arg("context"), py::arg("cfg"), py::arg("params"));
  m.def("objective",
        [](const std::vector<double>& z, const PyFormula& f,
           const GeneratorConfig& g, const ContextScene& c,
           const GraphConfig& cfg, double lambda, double beta) {
          SmoothConfig scfg;
          scfg.beta = beta;
          ObjectiveValue v = objective(z, f.ptr, g, c, cfg, lambda, scfg);
          return py::make_tuple(v.j, v.rho, v.penalty);
        },
        py::arg("z"), py::arg("formula"), py::arg("generator"),
        py::arg("context"), py::arg("cfg"), py::arg("lambda_") = 0.01,
        py::arg("beta") = 10.0);

  py::class_<ExperimentSummary>(m, "ExperimentSummary")
      .def_readonly("runs", &ExperimentSummary::runs)
      .def_readonly("unguided_sat_rate", &ExperimentSummary::unguided_sat_rate)
      .def_readonly("guided_sat_rate", &ExperimentSummary::guided_sat_rate)
      .def_readonly("rho_unguided", &ExperimentSummary::rho_unguided)
      .def_readonly("rho_guided", &ExperimentSummary::rho_guided)
      .def_readonly("restarts", &ExperimentSummary::restarts)
      .def("to_json", &experiment_to_json_text);

  m.def("run_experiment",
        [](const PyFormula& f, const GeneratorConfig& g, const ContextScene& c,
           const GraphConfig& cfg, const GuidanceParams& p, int runs,
           uint64_t seed) {
          return run_experiment(f.ptr, g, c, cfg, p, runs, seed);
        },
        py::arg("formula"), py::arg("generator"), py::arg("context"),
        py::arg("cfg"), py::arg("params"), py::arg("runs"), py::arg("seed"));

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("min_pairwise_distance",
                    &MetricsReport::min_pairwise_distance)
      .def_readonly("potential_collisions", &MetricsReport::potential_collisions)
      .def_readonly("threshold", &MetricsReport::threshold)
      .def("to_json", &metrics_to_json_text);

  m.def("compute_metrics", &compute_metrics, py::arg("trace"),
        py::arg("threshold") = 0.9);
}
