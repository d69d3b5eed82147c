#pragma once

// Reference monitors implemented as literal transcriptions of the semantic
// definitions over materialized route sets, with no memoization and no code
// shared with the production evaluator. Exponential in formula size; meant
// for cross-checking on small instances only.

#include "strelgen/monitor.hpp"

namespace strelgen {

// Handles every operator (including derived ones) directly from its
// defining equation.
RobustnessValue monitor_oracle(const Trace& trace, const GraphConfig& cfg,
                               const FormulaPtr& formula, int t, AgentId agent,
                               Domain domain);

// Classic uncolored spatio-temporal semantics: every color set (on atoms and
// operands) is ignored, route admissibility is unrestricted.
RobustnessValue monitor_uncolored(const Trace& trace, const GraphConfig& cfg,
                                  const FormulaPtr& formula, int t,
                                  AgentId agent, Domain domain);

}  // namespace strelgen
