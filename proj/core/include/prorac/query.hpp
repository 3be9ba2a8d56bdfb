#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prorac/progression.hpp"

namespace prorac {

enum class QueryKind { Projection, Executability, PlanVerification, Validation };

struct Query {
  QueryKind kind = QueryKind::Projection;
  std::vector<Literal> literals;  // q, or the goal; empty for Executability
  std::optional<std::size_t> about_step;
};

enum class Answer { True, False, Plan, Applicable, Invalid };

std::string answer_text(Answer a);
std::optional<Answer> answer_from_text(const std::string& s);

struct Verdict {
  Answer answer = Answer::False;
  std::vector<Literal> failing_literals;
  std::optional<std::size_t> failure_index;

  bool is_affirmative() const {
    return answer == Answer::True || answer == Answer::Plan;
  }
};

/// True iff the trace completed and every literal of q holds in the final
/// state. A trace with an inapplicable step answers False (no well-defined
/// final state exists).
Verdict eval_projection(const Trace& t, const std::vector<Literal>& q);

Verdict eval_executability(const Trace& t);

Verdict eval_plan_verification(const Trace& t, const std::vector<Literal>& goal);

/// Three-way: Plan / Applicable / Invalid.
Verdict classify_sequence(const Trace& t, const std::vector<Literal>& goal);

}  // namespace prorac
