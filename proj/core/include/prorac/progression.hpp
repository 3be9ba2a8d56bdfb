#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prorac/domain.hpp"

namespace prorac {

struct ApplicabilityResult {
  bool applicable = false;
  std::vector<Literal> unsatisfied;  // precondition literals that fail
};

/// Full record of one progression: S0..Sm, attempted actions, per-attempt
/// applicability checks, and the index of the first inapplicable action if
/// any. Progression halts at the first failure, so states.size() equals
/// failure_index + 1 when a failure occurred and actions.size() + 1 otherwise.
struct Trace {
  std::vector<State> states;
  std::vector<GroundAction> actions;
  std::vector<ApplicabilityResult> checks;
  std::optional<std::size_t> failure_index;

  const State& final_state() const { return states.back(); }
};

struct NotApplicable : Error {
  std::vector<Literal> unsatisfied;
  explicit NotApplicable(std::vector<Literal> unsat);
};

ApplicabilityResult is_applicable(const State& s, const GroundAction& a);

/// (s \ del) ∪ add. Throws NotApplicable when a precondition fails.
State apply_action(const State& s, const GroundAction& a);

Trace progress(const State& s0, const std::vector<GroundAction>& actions);

/// Line-oriented report: one canonical state per line, interleaved with
/// "> action: <canonical>" lines and a trailing "! failed at i: <literals>"
/// line when progression stopped early.
std::string trace_report(const Trace& t);

}  // namespace prorac
