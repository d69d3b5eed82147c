#include "support/random_instances.hpp"

#include <algorithm>
#include <cmath>

namespace testsupport {

using namespace strelgen;

Trace random_trace(Rng& rng, int max_agents, int max_horizon) {
  static const std::vector<std::string> kPalette = {"car", "bus", "ped"};
  Trace tr;
  tr.dt = 0.5;
  tr.horizon = rng.uniform_int(2, max_horizon);
  const int n_colors = rng.uniform_int(1, int(kPalette.size()));
  tr.colors.assign(kPalette.begin(), kPalette.begin() + n_colors);
  const int n = rng.uniform_int(1, max_agents);
  for (int i = 0; i < n; ++i) {
    Agent a;
    a.id = i;
    a.color = rng.pick(tr.colors);
    // Rejection-sample starting positions so agents stay distinguishable.
    double x0 = 0, y0 = 0;
    for (int tries = 0; tries < 100; ++tries) {
      x0 = rng.uniform(-6, 6);
      y0 = rng.uniform(-6, 6);
      bool ok = true;
      for (const Agent& other : tr.agents) {
        const double d = std::hypot(x0 - other.states[0].x, y0 - other.states[0].y);
        if (d < 1.0) ok = false;
      }
      if (ok) break;
    }
    double x = x0, y = y0;
    double vx = rng.uniform(-2, 2), vy = rng.uniform(-2, 2);
    double heading = rng.uniform(-3.0, 3.0);
    for (int t = 0; t < tr.horizon; ++t) {
      a.states.push_back({x, y, vx, vy, heading});
      x += vx * tr.dt;
      y += vy * tr.dt;
      vx += rng.uniform(-0.5, 0.5);
      vy += rng.uniform(-0.5, 0.5);
      heading = std::hypot(vx, vy) > 1e-6 ? std::atan2(vy, vx) : heading;
    }
    tr.agents.push_back(std::move(a));
  }
  return tr;
}

GraphConfig random_graph_config(Rng& rng) {
  GraphConfig cfg;
  cfg.radius = rng.uniform(3.0, 8.0);
  const int m = rng.uniform_int(0, 2);
  cfg.metric = m == 0 ? Metric::Euclid : (m == 1 ? Metric::Hops : Metric::Front);
  cfg.front_half_angle = rng.uniform(0.8, 1.6);
  return cfg;
}

namespace {

ColorSet random_colors(Rng& rng, const std::vector<std::string>& colors,
                       const FormulaOptions& opt) {
  if (opt.universe_colors_only) {
    // Universe either as the wildcard or spelled out in full.
    if (rng.chance(0.5)) return ColorSet::universe();
    ColorSet c;
    c.names.insert(colors.begin(), colors.end());
    return c;
  }
  if (rng.chance(0.3)) return ColorSet::universe();
  ColorSet c;
  for (const std::string& name : colors)
    if (rng.chance(0.55)) c.names.insert(name);
  if (c.names.empty()) c.names.insert(rng.pick(colors));
  return c;
}

FormulaPtr random_atom(Rng& rng, const std::vector<std::string>& colors,
                       const FormulaOptions& opt) {
  struct Sig {
    SignalKind kind;
    double lo, hi;
  };
  static const std::vector<Sig> kAll = {
      {SignalKind::X, -8, 8},       {SignalKind::Y, -8, 8},
      {SignalKind::Vx, -4, 4},      {SignalKind::Vy, -4, 4},
      {SignalKind::Speed, 0, 5},    {SignalKind::Heading, -3.2, 3.2},
      {SignalKind::HeadingChange, 0, 3},
  };
  static const std::vector<Sig> kSmoothSafe = {
      {SignalKind::X, -8, 8},  {SignalKind::Y, -8, 8}, {SignalKind::Vx, -4, 4},
      {SignalKind::Vy, -4, 4}, {SignalKind::Speed, 0, 5},
  };
  const Sig& s = opt.differentiable ? rng.pick(kSmoothSafe) : rng.pick(kAll);
  return f_atom(s.kind, rng.chance(0.5) ? Cmp::Gt : Cmp::Lt,
                rng.uniform(s.lo, s.hi), random_colors(rng, colors, opt));
}

Interval random_temporal(Rng& rng) {
  const double lo = rng.uniform(0.0, 2.0);
  if (rng.chance(0.15)) return {lo, kInf};
  return {lo, lo + rng.uniform(0.0, 3.0)};
}

Interval random_spatial(Rng& rng, const FormulaOptions& opt) {
  if (opt.differentiable) {
    // Bounds an admissible walk can never hit, so the distance gate stays
    // inactive and the smooth value has no structural discontinuity nearby.
    return {0.0, opt.n_agents * opt.radius + 5.0};
  }
  const double lo = rng.chance(0.5) ? 0.0 : rng.uniform(0.3, 2.0);
  return {lo, lo + rng.uniform(0.8, 5.0)};
}

std::optional<Metric> random_metric(Rng& rng, const FormulaOptions& opt) {
  const int m = rng.uniform_int(0, 3);
  if (m == 3) return std::nullopt;  // fall back to the config's metric
  if (opt.differentiable && m == 2) return Metric::Euclid;  // no cone flips
  return m == 0 ? Metric::Euclid : (m == 1 ? Metric::Hops : Metric::Front);
}

// Annotation a spatial operator will read from this operand. Atoms carry
// their own; compound operands get an explicit annotation sometimes.
FormulaPtr maybe_annotate(Rng& rng, FormulaPtr f,
                          const std::vector<std::string>& colors,
                          const FormulaOptions& opt) {
  if (f->kind == FormulaKind::Atom || f->kind == FormulaKind::True) return f;
  if (rng.chance(0.4)) return annotate(f, random_colors(rng, colors, opt));
  return f;
}

FormulaPtr gen(Rng& rng, const std::vector<std::string>& colors,
               const FormulaOptions& opt, int depth, int& spatial_budget) {
  if (depth <= 0) return rng.chance(0.1) ? f_true() : random_atom(rng, colors, opt);

  enum Kind {
    kAtom,
    kNot,
    kAnd,
    kOr,
    kUntil,
    kEventually,
    kGlobally,
    kReach,
    kEscape,
    kSomewhere,
    kEverywhere,
    kSurround,
  };
  std::vector<Kind> kinds = {kAtom, kNot, kAnd, kUntil};
  if (opt.derived_ok) {
    kinds.push_back(kOr);
    kinds.push_back(kEventually);
    kinds.push_back(kGlobally);
  }
  if (opt.spatial_ok && spatial_budget > 0) {
    kinds.push_back(kReach);
    kinds.push_back(kEscape);
    if (opt.derived_ok) {
      kinds.push_back(kSomewhere);
      kinds.push_back(kEverywhere);
      kinds.push_back(kSurround);
    }
  }

  auto sub = [&](int d) { return gen(rng, colors, opt, d, spatial_budget); };
  auto annotated = [&](int d) {
    return maybe_annotate(rng, sub(d), colors, opt);
  };

  switch (rng.pick(kinds)) {
    case kAtom:
      return random_atom(rng, colors, opt);
    case kNot:
      return f_not(sub(depth - 1));
    case kAnd:
      return f_and(sub(depth - 1), sub(depth - 1));
    case kOr:
      return f_or(sub(depth - 1), sub(depth - 1));
    case kUntil:
      return f_until(random_temporal(rng), sub(depth - 1), sub(depth - 1));
    case kEventually:
      return f_eventually(random_temporal(rng), sub(depth - 1));
    case kGlobally:
      return f_globally(random_temporal(rng), sub(depth - 1));
    case kReach:
      --spatial_budget;
      return f_reach(random_spatial(rng, opt), random_metric(rng, opt),
                     annotated(depth - 1), annotated(depth - 1));
    case kEscape: {
      --spatial_budget;
      Interval i = random_spatial(rng, opt);
      if (!opt.differentiable && rng.chance(0.25)) i.hi = kInf;
      if (opt.differentiable) i = {0.0, kInf};
      return f_escape(i, random_metric(rng, opt), annotated(depth - 1));
    }
    case kSomewhere:
      --spatial_budget;
      return f_somewhere(random_spatial(rng, opt), random_metric(rng, opt),
                         annotated(depth - 1));
    case kEverywhere:
      --spatial_budget;
      return f_everywhere(random_spatial(rng, opt), random_metric(rng, opt),
                          annotated(depth - 1));
    case kSurround:
      --spatial_budget;
      return f_surround(random_spatial(rng, opt), random_metric(rng, opt),
                        annotated(depth - 1), annotated(depth - 1));
  }
  return f_true();
}

}  // namespace

FormulaPtr random_formula(Rng& rng, const std::vector<std::string>& colors,
                          const FormulaOptions& opt) {
  int spatial_budget = 3;
  return gen(rng, colors, opt, rng.uniform_int(1, opt.max_depth),
             spatial_budget);
}

}  // namespace testsupport
