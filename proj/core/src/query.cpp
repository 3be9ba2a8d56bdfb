#include "prorac/query.hpp"

#include <algorithm>
#include <cctype>

namespace prorac {

std::string answer_text(Answer a) {
  switch (a) {
    case Answer::True: return "true";
    case Answer::False: return "false";
    case Answer::Plan: return "plan";
    case Answer::Applicable: return "applicable";
    case Answer::Invalid: return "invalid";
  }
  return "false";
}

std::optional<Answer> answer_from_text(const std::string& s) {
  std::string t;
  for (char c : s)
    t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "true") return Answer::True;
  if (t == "false") return Answer::False;
  if (t == "plan") return Answer::Plan;
  if (t == "applicable") return Answer::Applicable;
  if (t == "invalid") return Answer::Invalid;
  return std::nullopt;
}

Verdict eval_projection(const Trace& t, const std::vector<Literal>& q) {
  Verdict v;
  if (t.failure_index) {
    v.answer = Answer::False;
    v.failure_index = t.failure_index;
    v.failing_literals = t.checks[*t.failure_index].unsatisfied;
    return v;
  }
  for (const auto& l : q) {
    if (!literal_holds(t.final_state(), l)) v.failing_literals.push_back(l);
  }
  v.answer = v.failing_literals.empty() ? Answer::True : Answer::False;
  return v;
}

Verdict eval_executability(const Trace& t) {
  Verdict v;
  if (t.failure_index) {
    v.answer = Answer::False;
    v.failure_index = t.failure_index;
    v.failing_literals = t.checks[*t.failure_index].unsatisfied;
  } else {
    v.answer = Answer::True;
  }
  return v;
}

Verdict eval_plan_verification(const Trace& t,
                               const std::vector<Literal>& goal) {
  Verdict exe = eval_executability(t);
  if (exe.answer != Answer::True) return exe;
  return eval_projection(t, goal);
}

Verdict classify_sequence(const Trace& t, const std::vector<Literal>& goal) {
  Verdict v;
  if (t.failure_index) {
    v.answer = Answer::Invalid;
    v.failure_index = t.failure_index;
    v.failing_literals = t.checks[*t.failure_index].unsatisfied;
    return v;
  }
  Verdict proj = eval_projection(t, goal);
  if (proj.answer == Answer::True) {
    v.answer = Answer::Plan;
  } else {
    v.answer = Answer::Applicable;
    v.failing_literals = proj.failing_literals;
  }
  return v;
}

}  // namespace prorac
