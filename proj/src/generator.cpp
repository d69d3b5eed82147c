#include "strelgen/generator.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "strelgen/detail/kinematics.hpp"

namespace strelgen {

using nlohmann::json;

static double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

std::vector<double> sample_latent(uint64_t seed, size_t dim) {
  std::mt19937_64 rng(seed);
  std::vector<double> z(dim);
  for (size_t i = 0; i < dim; i += 2) {
    const double u1 = 1.0 - unit_interval(rng);  // (0, 1]
    const double u2 = unit_interval(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    z[i] = r * std::cos(2.0 * detail::kPi * u2);
    if (i + 1 < dim) z[i + 1] = r * std::sin(2.0 * detail::kPi * u2);
  }
  return z;
}

uint64_t derive_seed(uint64_t base, uint64_t index) {
  uint64_t x = base + 0x9e3779b97f4a7c15ull * (index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

static void check_generator_config(const GeneratorConfig& gc) {
  if (gc.basis_count < 1) throw Error("basis_count must be positive");
  if (gc.latent_dim != 2 * gc.basis_count)
    throw Error("latent_dim must equal 2 * basis_count (got " +
                std::to_string(gc.latent_dim) + " and " +
                std::to_string(gc.basis_count) + ")");
}

// The latent -> coefficient map, row-major latent_dim x latent_dim.
static std::vector<double> mixing_matrix(const GeneratorConfig& gc) {
  const int k = gc.latent_dim;
  std::vector<double> theta = sample_latent(gc.seed, size_t(k) * k);
  const double scale = gc.accel_scale / std::sqrt(static_cast<double>(k));
  for (double& v : theta) v *= scale;
  return theta;
}

template <class S>
double value_of(const S& s) {
  if constexpr (std::is_same_v<S, double>) return s;
  else return s.value();
}

// Shared decoding pass; S is double or DiffScalar.
template <class S, class Out>
void decode_core(const GeneratorConfig& gc, const ContextScene& ctx,
                 const std::vector<S>& z, Out&& emit) {
  check_generator_config(gc);
  const int k = gc.latent_dim;
  const int P = gc.basis_count;
  const int T = ctx.horizon;
  if (T <= 0) throw Error("context horizon must be positive");
  if (z.size() != ctx.agents.size() * static_cast<size_t>(k))
    throw Error("latent size mismatch: expected " +
                std::to_string(ctx.agents.size() * k) + " values, got " +
                std::to_string(z.size()));
  const std::vector<double> theta = mixing_matrix(gc);

  for (size_t a = 0; a < ctx.agents.size(); ++a) {
    const AgentState& init = ctx.agents[a].initial;
    // coeffs = theta * z_block; first P entries drive x, the rest y.
    std::vector<S> coeff(k, S(0.0));
    for (int i = 0; i < k; ++i) {
      S acc(0.0);
      for (int j = 0; j < k; ++j) acc = acc + theta[i * k + j] * z[a * k + j];
      coeff[i] = acc;
    }
    std::vector<S> x(T), y(T), vx(T), vy(T), heading(T);
    x[0] = S(init.x);
    y[0] = S(init.y);
    vx[0] = S(init.vx);
    vy[0] = S(init.vy);
    heading[0] = S(init.heading);
    const double denom = T > 1 ? static_cast<double>(T - 1) : 1.0;
    for (int t = 0; t + 1 < T; ++t) {
      S ax(0.0), ay(0.0);
      for (int p = 0; p < P; ++p) {
        const double basis = std::cos(detail::kPi * p * t / denom);
        ax = ax + coeff[p] * basis;
        ay = ay + coeff[P + p] * basis;
      }
      x[t + 1] = x[t] + vx[t] * ctx.dt;
      y[t + 1] = y[t] + vy[t] * ctx.dt;
      vx[t + 1] = vx[t] + ax * ctx.dt;
      vy[t + 1] = vy[t] + ay * ctx.dt;
      using std::atan2;
      const double speed = std::hypot(value_of(vx[t + 1]), value_of(vy[t + 1]));
      if (speed > 1e-6)
        heading[t + 1] = atan2(vy[t + 1], vx[t + 1]);
      else
        heading[t + 1] = heading[t];  // heading is undefined when stopped
    }
    emit(a, std::move(x), std::move(y), std::move(vx), std::move(vy),
         std::move(heading));
  }
}

Trace decode(const GeneratorConfig& gcfg, const ContextScene& ctx,
             const std::vector<double>& z) {
  Trace tr;
  tr.dt = ctx.dt;
  tr.horizon = ctx.horizon;
  tr.colors = ctx.colors;
  tr.agents.resize(ctx.agents.size());
  decode_core<double>(
      gcfg, ctx, z,
      [&](size_t a, std::vector<double> x, std::vector<double> y,
          std::vector<double> vx, std::vector<double> vy,
          std::vector<double> heading) {
        Agent& out = tr.agents[a];
        out.id = ctx.agents[a].id;
        out.color = ctx.agents[a].color;
        out.states.resize(ctx.horizon);
        for (int t = 0; t < ctx.horizon; ++t)
          out.states[t] = {x[t], y[t], vx[t], vy[t], heading[t]};
      });
  return tr;
}

DiffTrace decode_diff(Tape& tape, const GeneratorConfig& gcfg,
                      const ContextScene& ctx,
                      const std::vector<DiffScalar>& z) {
  (void)tape;  // z already lives on the caller's tape
  DiffTrace tr;
  tr.dt = ctx.dt;
  tr.horizon = ctx.horizon;
  tr.colors = ctx.colors;
  tr.agents.resize(ctx.agents.size());
  decode_core<DiffScalar>(
      gcfg, ctx, z,
      [&](size_t a, std::vector<DiffScalar> x, std::vector<DiffScalar> y,
          std::vector<DiffScalar> vx, std::vector<DiffScalar> vy,
          std::vector<DiffScalar> heading) {
        DiffAgent& out = tr.agents[a];
        out.id = ctx.agents[a].id;
        out.color = ctx.agents[a].color;
        out.x = std::move(x);
        out.y = std::move(y);
        out.vx = std::move(vx);
        out.vy = std::move(vy);
        out.heading = std::move(heading);
      });
  return tr;
}

std::vector<DiffScalar> lift_latent(Tape& tape, const std::vector<double>& z) {
  std::vector<DiffScalar> out;
  out.reserve(z.size());
  for (double v : z) out.push_back(tape.var(v));
  return out;
}

// ---- context JSON -----------------------------------------------------------

static std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<ContextScene, GeneratorConfig> context_from_json_text(
    const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError(origin + ": invalid JSON");
  if (!j.contains("generator") || !j["generator"].is_object())
    throw IoError(origin + ": missing 'generator' block");
  GeneratorConfig gc;
  const json& jg = j["generator"];
  if (jg.contains("latent_dim")) gc.latent_dim = jg["latent_dim"].get<int>();
  if (jg.contains("basis_count")) gc.basis_count = jg["basis_count"].get<int>();
  if (jg.contains("seed")) gc.seed = jg["seed"].get<uint64_t>();
  if (jg.contains("accel_scale")) gc.accel_scale = jg["accel_scale"].get<double>();
  check_generator_config(gc);

  json jt = j;
  jt.erase("generator");
  // The scene part is a trace with exactly one state per agent; reuse the
  // trace reader but relax its horizon/state-count coupling.
  if (!jt.contains("meta") || !jt["meta"].is_object() ||
      !jt["meta"].contains("horizon"))
    throw IoError(origin + ": missing 'meta.horizon'");
  const int horizon = jt["meta"]["horizon"].get<int>();
  jt["meta"]["horizon"] = 1;
  Trace one = trace_from_json_text(jt.dump(), origin);
  ContextScene ctx;
  ctx.dt = one.dt;
  ctx.horizon = horizon;
  ctx.colors = one.colors;
  for (const Agent& a : one.agents)
    ctx.agents.push_back({a.id, a.color, a.states[0]});
  if (ctx.horizon <= 0) throw IoError(origin + ": horizon must be positive");
  return {ctx, gc};
}

std::pair<ContextScene, GeneratorConfig> load_context(const std::string& path) {
  return context_from_json_text(read_file(path), path);
}

std::string context_to_json_text(const ContextScene& ctx,
                                 const GeneratorConfig& gcfg) {
  Trace one;
  one.dt = ctx.dt;
  one.horizon = 1;
  one.colors = ctx.colors;
  for (const ContextAgent& a : ctx.agents)
    one.agents.push_back({a.id, a.color, {a.initial}});
  json j = json::parse(trace_to_json_text(one));
  j["meta"]["horizon"] = ctx.horizon;
  j["generator"] = {{"latent_dim", gcfg.latent_dim},
                    {"basis_count", gcfg.basis_count},
                    {"seed", gcfg.seed},
                    {"accel_scale", gcfg.accel_scale}};
  return j.dump(2);
}

ContextScene context_of(const Trace& trace) {
  ContextScene ctx;
  ctx.dt = trace.dt;
  ctx.horizon = trace.horizon;
  ctx.colors = trace.colors;
  for (const Agent& a : trace.agents) {
    if (a.states.empty()) throw Error("trace agent has no states");
    ctx.agents.push_back({a.id, a.color, a.states[0]});
  }
  return ctx;
}

}  // namespace strelgen
