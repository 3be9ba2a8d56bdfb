#include "prorac/progression.hpp"

#include <sstream>

namespace prorac {

namespace {

std::string join_literals(const std::vector<Literal>& ls) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) os << ' ';
    os << ls[i].text();
  }
  return os.str();
}

}  // namespace

NotApplicable::NotApplicable(std::vector<Literal> unsat)
    : Error("action is not applicable; unsatisfied: " + join_literals(unsat)),
      unsatisfied(std::move(unsat)) {}

ApplicabilityResult is_applicable(const State& s, const GroundAction& a) {
  ApplicabilityResult r;
  for (const auto& l : a.precondition) {
    if (!literal_holds(s, l)) r.unsatisfied.push_back(l);
  }
  r.applicable = r.unsatisfied.empty();
  return r;
}

State apply_action(const State& s, const GroundAction& a) {
  ApplicabilityResult check = is_applicable(s, a);
  if (!check.applicable) throw NotApplicable(check.unsatisfied);
  State next = s;
  for (const auto& f : a.del) next.erase(f);
  for (const auto& f : a.add) next.insert(f);
  return next;
}

Trace progress(const State& s0, const std::vector<GroundAction>& actions) {
  Trace t;
  t.states.push_back(s0);
  t.actions = actions;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    ApplicabilityResult check = is_applicable(t.states.back(), actions[i]);
    t.checks.push_back(check);
    if (!check.applicable) {
      t.failure_index = i;
      break;
    }
    t.states.push_back(apply_action(t.states.back(), actions[i]));
  }
  return t;
}

std::string trace_report(const Trace& t) {
  std::ostringstream os;
  os << t.states[0].canonical_text() << '\n';
  for (std::size_t i = 0; i + 1 < t.states.size(); ++i) {
    os << "> action: " << t.actions[i].text() << '\n';
    os << t.states[i + 1].canonical_text() << '\n';
  }
  if (t.failure_index) {
    std::size_t i = *t.failure_index;
    os << "> action: " << t.actions[i].text() << '\n';
    os << "! failed at " << i << ": " << join_literals(t.checks[i].unsatisfied)
       << '\n';
  }
  return os.str();
}

}  // namespace prorac
