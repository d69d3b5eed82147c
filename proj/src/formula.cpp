#include "strelgen/formula.hpp"

#include <charconv>
#include <cmath>

namespace strelgen {

bool is_core(FormulaKind k) {
  switch (k) {
    case FormulaKind::True:
    case FormulaKind::Atom:
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Until:
    case FormulaKind::Reach:
    case FormulaKind::Escape:
      return true;
    default:
      return false;
  }
}

bool is_temporal(FormulaKind k) {
  return k == FormulaKind::Until || k == FormulaKind::Eventually ||
         k == FormulaKind::Globally;
}

bool is_spatial(FormulaKind k) {
  switch (k) {
    case FormulaKind::Reach:
    case FormulaKind::Escape:
    case FormulaKind::Somewhere:
    case FormulaKind::Everywhere:
    case FormulaKind::Surround:
      return true;
    default:
      return false;
  }
}

ColorSet operand_colors(const FormulaPtr& f) {
  return f->annot ? *f->annot : ColorSet::universe();
}

static FormulaPtr make(Formula f) {
  return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr f_true() {
  Formula f;
  f.kind = FormulaKind::True;
  return make(std::move(f));
}

FormulaPtr f_atom(SignalKind signal, Cmp cmp, double threshold, ColorSet colors) {
  Formula f;
  f.kind = FormulaKind::Atom;
  f.signal = signal;
  f.cmp = cmp;
  f.threshold = threshold;
  f.annot = std::move(colors);
  return make(std::move(f));
}

static FormulaPtr unary(FormulaKind k, FormulaPtr a) {
  Formula f;
  f.kind = k;
  f.left = std::move(a);
  return make(std::move(f));
}

static FormulaPtr binary(FormulaKind k, FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = k;
  f.left = std::move(a);
  f.right = std::move(b);
  return make(std::move(f));
}

FormulaPtr f_not(FormulaPtr a) { return unary(FormulaKind::Not, std::move(a)); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::And, std::move(a), std::move(b));
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return binary(FormulaKind::Or, std::move(a), std::move(b));
}

static FormulaPtr with_interval(FormulaPtr f, Interval i,
                                std::optional<Metric> m = std::nullopt) {
  Formula c = *f;
  c.interval = i;
  c.metric = m;
  return make(std::move(c));
}

FormulaPtr f_until(Interval i, FormulaPtr a, FormulaPtr b) {
  return with_interval(binary(FormulaKind::Until, std::move(a), std::move(b)), i);
}
FormulaPtr f_eventually(Interval i, FormulaPtr a) {
  return with_interval(unary(FormulaKind::Eventually, std::move(a)), i);
}
FormulaPtr f_globally(Interval i, FormulaPtr a) {
  return with_interval(unary(FormulaKind::Globally, std::move(a)), i);
}
FormulaPtr f_reach(Interval i, std::optional<Metric> m, FormulaPtr a,
                   FormulaPtr b) {
  return with_interval(binary(FormulaKind::Reach, std::move(a), std::move(b)), i,
                       m);
}
FormulaPtr f_escape(Interval i, std::optional<Metric> m, FormulaPtr a) {
  return with_interval(unary(FormulaKind::Escape, std::move(a)), i, m);
}
FormulaPtr f_somewhere(Interval i, std::optional<Metric> m, FormulaPtr a) {
  return with_interval(unary(FormulaKind::Somewhere, std::move(a)), i, m);
}
FormulaPtr f_everywhere(Interval i, std::optional<Metric> m, FormulaPtr a) {
  return with_interval(unary(FormulaKind::Everywhere, std::move(a)), i, m);
}
FormulaPtr f_surround(Interval i, std::optional<Metric> m, FormulaPtr a,
                      FormulaPtr b) {
  return with_interval(binary(FormulaKind::Surround, std::move(a), std::move(b)),
                       i, m);
}

FormulaPtr annotate(FormulaPtr f, ColorSet colors) {
  Formula c = *f;
  c.annot = std::move(colors);
  return make(std::move(c));
}

// ---- printing ---------------------------------------------------------------

static std::string num_to_string(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

static std::string colors_to_string(const ColorSet& c) {
  if (c.all) return "@{*}";
  std::string out = "@{";
  bool first = true;
  for (const auto& n : c.names) {
    if (!first) out += ",";
    out += n;
    first = false;
  }
  out += "}";
  return out;
}

static std::string interval_to_string(const Interval& i) {
  return "[" + num_to_string(i.lo) + "," + num_to_string(i.hi) + "]";
}

static std::string metric_suffix(const std::optional<Metric>& m) {
  return m ? "{" + to_string(*m) + "}" : "";
}

// Precedence levels: primary 60, ! 50, spatial 40, & 30, | 20, temporal 10.
static int level_of(FormulaKind k) {
  switch (k) {
    case FormulaKind::True:
    case FormulaKind::Atom:
      return 60;
    case FormulaKind::Not:
      return 50;
    case FormulaKind::Reach:
    case FormulaKind::Escape:
    case FormulaKind::Somewhere:
    case FormulaKind::Everywhere:
    case FormulaKind::Surround:
      return 40;
    case FormulaKind::And:
      return 30;
    case FormulaKind::Or:
      return 20;
    case FormulaKind::Until:
    case FormulaKind::Eventually:
    case FormulaKind::Globally:
      return 10;
  }
  return 60;
}

static std::string print(const FormulaPtr& f, int min_level);

// Child in a context requiring at least `min_level` binding strength.
static std::string print_child(const FormulaPtr& f, int min_level) {
  return print(f, min_level);
}

static std::string print(const FormulaPtr& f, int min_level) {
  // An annotated non-atom always prints as (inner)@{...}, a primary.
  if (f->kind != FormulaKind::Atom && f->annot) {
    Formula bare = *f;
    bare.annot.reset();
    return "(" + print(make(std::move(bare)), 0) + ")" +
           colors_to_string(*f->annot);
  }
  const int lvl = level_of(f->kind);
  std::string out;
  switch (f->kind) {
    case FormulaKind::True:
      out = "true";
      break;
    case FormulaKind::Atom:
      out = "(" + to_string(f->signal) + (f->cmp == Cmp::Gt ? " > " : " < ") +
            num_to_string(f->threshold) + ")" + colors_to_string(*f->annot);
      break;
    case FormulaKind::Not:
      out = "!" + print_child(f->left, lvl);
      break;
    case FormulaKind::And:
      out = print_child(f->left, lvl) + " & " + print_child(f->right, lvl + 1);
      break;
    case FormulaKind::Or:
      out = print_child(f->left, lvl) + " | " + print_child(f->right, lvl + 1);
      break;
    case FormulaKind::Until:
      out = print_child(f->left, lvl + 1) + " U" + interval_to_string(f->interval) +
            " " + print_child(f->right, lvl + 1);
      break;
    case FormulaKind::Eventually:
      out = "F" + interval_to_string(f->interval) + " " +
            print_child(f->left, lvl + 1);
      break;
    case FormulaKind::Globally:
      out = "G" + interval_to_string(f->interval) + " " +
            print_child(f->left, lvl + 1);
      break;
    case FormulaKind::Reach:
      out = print_child(f->left, lvl + 1) + " R" + interval_to_string(f->interval) +
            metric_suffix(f->metric) + " " + print_child(f->right, lvl + 1);
      break;
    case FormulaKind::Surround:
      out = print_child(f->left, lvl + 1) + " Surr" +
            interval_to_string(f->interval) + metric_suffix(f->metric) + " " +
            print_child(f->right, lvl + 1);
      break;
    case FormulaKind::Escape:
      out = "E" + interval_to_string(f->interval) + metric_suffix(f->metric) +
            " " + print_child(f->left, lvl + 1);
      break;
    case FormulaKind::Somewhere:
      out = "SW" + interval_to_string(f->interval) + metric_suffix(f->metric) +
            " " + print_child(f->left, lvl + 1);
      break;
    case FormulaKind::Everywhere:
      out = "EW" + interval_to_string(f->interval) + metric_suffix(f->metric) +
            " " + print_child(f->left, lvl + 1);
      break;
  }
  if (lvl < min_level) return "(" + out + ")";
  return out;
}

std::string format(const FormulaPtr& f) { return print(f, 0); }

// ---- derived-operator expansion --------------------------------------------

FormulaPtr expand_derived(const FormulaPtr& f) {
  auto keep_annot = [&](FormulaPtr e) {
    if (f->annot && !e->annot) return annotate(std::move(e), *f->annot);
    return e;
  };
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Not:
      return keep_annot(f_not(expand_derived(f->left)));
    case FormulaKind::And:
      return keep_annot(f_and(expand_derived(f->left), expand_derived(f->right)));
    case FormulaKind::Until:
      return keep_annot(
          f_until(f->interval, expand_derived(f->left), expand_derived(f->right)));
    case FormulaKind::Reach:
      return keep_annot(f_reach(f->interval, f->metric, expand_derived(f->left),
                                expand_derived(f->right)));
    case FormulaKind::Escape:
      return keep_annot(f_escape(f->interval, f->metric, expand_derived(f->left)));
    case FormulaKind::Or: {
      auto a = expand_derived(f->left);
      auto b = expand_derived(f->right);
      return keep_annot(f_not(f_and(f_not(a), f_not(b))));
    }
    case FormulaKind::Eventually:
      return keep_annot(f_until(f->interval, f_true(), expand_derived(f->left)));
    case FormulaKind::Globally:
      return keep_annot(
          f_not(f_until(f->interval, f_true(), f_not(expand_derived(f->left)))));
    case FormulaKind::Somewhere:
      return keep_annot(
          f_reach(f->interval, f->metric, f_true(), expand_derived(f->left)));
    case FormulaKind::Everywhere: {
      auto a = expand_derived(f->left);
      ColorSet c = operand_colors(a);
      return keep_annot(f_not(
          f_reach(f->interval, f->metric, f_true(), annotate(f_not(a), c))));
    }
    case FormulaKind::Surround: {
      auto a = expand_derived(f->left);
      auto b = expand_derived(f->right);
      // a holds here, no reachable boundary violates it within the distance
      // band, and nothing in a escapes beyond the band's outer radius.
      FormulaPtr violation = expand_derived(f_not(f_or(a, b)));
      FormulaPtr no_breach =
          f_not(f_reach(f->interval, f->metric, a, violation));
      FormulaPtr no_escape = f_not(
          f_escape(Interval{f->interval.hi, kInf}, f->metric, a));
      return keep_annot(f_and(a, f_and(no_breach, no_escape)));
    }
  }
  return f;
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->annot != b->annot) return false;
  switch (a->kind) {
    case FormulaKind::True:
      return true;
    case FormulaKind::Atom:
      return a->signal == b->signal && a->cmp == b->cmp &&
             a->threshold == b->threshold;
    default:
      break;
  }
  if (is_temporal(a->kind) || is_spatial(a->kind)) {
    if (!(a->interval == b->interval)) return false;
  }
  if (is_spatial(a->kind) && a->metric != b->metric) return false;
  if (!structurally_equal(a->left, b->left)) return false;
  if (a->right || b->right) {
    if (!a->right || !b->right) return false;
    return structurally_equal(a->right, b->right);
  }
  return true;
}

// ---- validation --------------------------------------------------------------

int steps_floor(double seconds, double dt) {
  return static_cast<int>(std::floor(seconds / dt + 1e-9));
}

int steps_ceil(double seconds, double dt) {
  return static_cast<int>(std::ceil(seconds / dt - 1e-9));
}

static void check_colors(const ColorSet& c, const Trace& trace,
                         const std::string& where,
                         std::vector<ValidationIssue>& out) {
  if (c.all) return;
  for (const auto& n : c.names)
    if (!trace.has_color(n))
      out.push_back({"unknown color '" + n + "' in " + where});
}

static void validate_rec(const FormulaPtr& f, const Trace& trace,
                         const GraphConfig& cfg,
                         std::vector<ValidationIssue>& out) {
  if (!f) return;
  if (f->annot)
    check_colors(*f->annot, trace,
                 f->kind == FormulaKind::Atom ? "atom" : "annotation", out);
  if (is_temporal(f->kind)) {
    const Interval& i = f->interval;
    if (std::isfinite(i.lo) && steps_floor(i.lo, trace.dt) > trace.horizon - 1)
      out.push_back({"temporal bound " + num_to_string(i.lo) +
                     "s exceeds horizon (" + std::to_string(trace.horizon) +
                     " steps of " + num_to_string(trace.dt) + "s)"});
    if (std::isfinite(i.hi) && steps_ceil(i.hi, trace.dt) > trace.horizon - 1)
      out.push_back({"temporal bound " + num_to_string(i.hi) +
                     "s exceeds horizon (" + std::to_string(trace.horizon) +
                     " steps of " + num_to_string(trace.dt) + "s)"});
  }
  if (is_temporal(f->kind) || is_spatial(f->kind)) {
    if (f->interval.lo > f->interval.hi)
      out.push_back({"empty interval " + interval_to_string(f->interval)});
    if (f->interval.lo < 0)
      out.push_back({"negative bound in " + interval_to_string(f->interval)});
  }
  validate_rec(f->left, trace, cfg, out);
  validate_rec(f->right, trace, cfg, out);
}

std::vector<ValidationIssue> validate(const FormulaPtr& f, const Trace& trace,
                                      const GraphConfig& cfg) {
  std::vector<ValidationIssue> out;
  validate_rec(f, trace, cfg, out);
  return out;
}

}  // namespace strelgen
