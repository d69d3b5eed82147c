#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strelgen/scene.hpp"

namespace strelgen {

// A set of agent colors; `all` is the wildcard written @{*} in the DSL.
struct ColorSet {
  bool all = false;
  std::set<std::string> names;

  bool contains(const std::string& color) const {
    return all || names.count(color) > 0;
  }
  static ColorSet universe() { return ColorSet{true, {}}; }
  static ColorSet of(std::initializer_list<std::string> cs) {
    return ColorSet{false, std::set<std::string>(cs)};
  }
  bool operator==(const ColorSet&) const = default;
};

// Closed interval; hi may be +inf. Temporal intervals are in seconds,
// spatial ones in units of the operator's edge-weight metric.
struct Interval {
  double lo = 0;
  double hi = kInf;
  bool operator==(const Interval&) const = default;
};

enum class Cmp { Gt, Lt };

enum class FormulaKind {
  True,
  Atom,
  Not,
  And,
  Or,
  Until,
  Eventually,
  Globally,
  Reach,
  Escape,
  Somewhere,
  Everywhere,
  Surround,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::True;

  // Atom payload.
  SignalKind signal = SignalKind::X;
  Cmp cmp = Cmp::Gt;
  double threshold = 0;

  FormulaPtr left;    // unary child / left operand
  FormulaPtr right;   // right operand
  Interval interval;  // Until/Eventually/Globally (seconds) or spatial bounds
  std::optional<Metric> metric;  // explicit {metric} tag on spatial operators

  // Outermost @{...} annotation on this node. For atoms this always equals
  // the atom's color set. Spatial operators read their operands' color sets
  // from here (absent annotation = every color).
  std::optional<ColorSet> annot;
};

bool is_core(FormulaKind k);        // producible by expand_derived
bool is_temporal(FormulaKind k);    // Until/Eventually/Globally
bool is_spatial(FormulaKind k);     // Reach/Escape/Somewhere/Everywhere/Surround

// The color set a spatial operator applies to this operand.
ColorSet operand_colors(const FormulaPtr& f);

FormulaPtr f_true();
FormulaPtr f_atom(SignalKind signal, Cmp cmp, double threshold, ColorSet colors);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_until(Interval i, FormulaPtr a, FormulaPtr b);
FormulaPtr f_eventually(Interval i, FormulaPtr a);
FormulaPtr f_globally(Interval i, FormulaPtr a);
FormulaPtr f_reach(Interval i, std::optional<Metric> m, FormulaPtr a, FormulaPtr b);
FormulaPtr f_escape(Interval i, std::optional<Metric> m, FormulaPtr a);
FormulaPtr f_somewhere(Interval i, std::optional<Metric> m, FormulaPtr a);
FormulaPtr f_everywhere(Interval i, std::optional<Metric> m, FormulaPtr a);
FormulaPtr f_surround(Interval i, std::optional<Metric> m, FormulaPtr a, FormulaPtr b);

// Copy of `f` with its outermost color annotation replaced.
FormulaPtr annotate(FormulaPtr f, ColorSet colors);

struct ParseError : Error {
  ParseError(const std::string& msg, size_t pos) : Error(msg), position(pos) {}
  size_t position;  // byte offset into the source text
};

FormulaPtr parse(const std::string& text);
FormulaPtr load_formula(const std::string& path);

// Prints a formula the parser accepts; parse(format(f)) is structurally
// equal to f.
std::string format(const FormulaPtr& f);

// Rewrites derived operators (Or, Eventually, Globally, Somewhere,
// Everywhere, Surround) into the core set (True, Atom, Not, And, Until,
// Reach, Escape).
FormulaPtr expand_derived(const FormulaPtr& f);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

struct ValidationIssue {
  std::string message;
};

// Checks a formula against a concrete trace and graph configuration:
// unknown colors, temporal bounds that exceed the trace horizon, and
// degenerate intervals.
std::vector<ValidationIssue> validate(const FormulaPtr& f, const Trace& trace,
                                      const GraphConfig& cfg);

// Seconds -> steps conversion used for temporal bounds.
int steps_floor(double seconds, double dt);
int steps_ceil(double seconds, double dt);

}  // namespace strelgen
