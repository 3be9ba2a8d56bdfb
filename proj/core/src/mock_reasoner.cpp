#include "prorac/mock_reasoner.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "prorac/structured.hpp"
#include "prorac/templates.hpp"

namespace prorac {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

/// Text of a bracketed prompt section, up to the next blank line.
std::string section(const std::string& prompt, const std::string& tag) {
  std::string marker = "[" + tag + "]: ";
  auto pos = prompt.find(marker);
  if (pos == std::string::npos)
    throw MockUnparseablePrompt("prompt has no [" + tag + "] section");
  auto start = pos + marker.size();
  auto end = prompt.find("\n\n", start);
  if (end == std::string::npos) end = prompt.size();
  return trim(prompt.substr(start, end - start));
}

bool has(const std::string& prompt, const char* marker) {
  return prompt.find(marker) != std::string::npos;
}

/// Object universe covering a state plus one action's arguments.
std::map<Name, Name> universe(const Domain& d, const State& s,
                              const GroundAction* a) {
  std::map<Name, Name> objects = infer_objects(d, s.fluents());
  if (a) {
    const ActionSchema& schema = d.schemas.at(a->schema);
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      if (!objects.count(a->args[i]))
        objects[a->args[i]] = schema.params[i].type;
    }
  }
  return objects;
}

/// First type-correct fluent outside add∪del and outside `state`, in
/// lexicographic order; used for frame-violation injection.
std::optional<Fluent> unrelated_fluent(const Domain& d, const State& state,
                                       const GroundAction& a,
                                       const std::map<Name, Name>& objects) {
  std::set<Fluent> forbidden = a.add;
  forbidden.insert(a.del.begin(), a.del.end());
  std::optional<Fluent> best;
  for (const auto& [pname, decl] : d.predicates) {
    std::vector<std::vector<Name>> candidates(decl.arity());
    for (std::size_t i = 0; i < decl.arity(); ++i) {
      for (const auto& [obj, type] : objects)
        if (d.is_subtype(type, decl.params[i].type))
          candidates[i].push_back(obj);
    }
    std::vector<Name> pick(decl.arity());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      if (i == decl.arity()) {
        Fluent f{pname, pick};
        if (!forbidden.count(f) && !state.contains(f)) {
          if (!best || f < *best) best = f;
          return true;
        }
        return false;
      }
      for (const auto& obj : candidates[i]) {
        pick[i] = obj;
        if (rec(i + 1)) return true;
      }
      return false;
    };
    rec(0);
  }
  return best;
}

/// Parse the [ACTION] section of a check/progress prompt, grounding against
/// the objects visible in the current state (arguments absent from the state
/// take their declared parameter types).
GroundAction parse_action_in_prompt(const std::string& prompt, const Domain& d,
                                    const State& s) {
  std::string term = section(prompt, "ACTION");
  std::map<Name, Name> objects = infer_objects(d, s.fluents());
  std::istringstream is(term);
  std::string tok;
  std::vector<std::string> toks;
  while (is >> tok) {
    while (!tok.empty() && tok.front() == '(') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ')') tok.pop_back();
    if (!tok.empty()) toks.push_back(tok);
  }
  if (!toks.empty()) {
    auto sit = d.schemas.find(Name(toks[0]));
    if (sit != d.schemas.end()) {
      for (std::size_t i = 1; i < toks.size() && i <= sit->second.params.size();
           ++i) {
        Name obj(toks[i]);
        const Name& declared = sit->second.params[i - 1].type;
        auto oit = objects.find(obj);
        if (oit == objects.end()) {
          objects[obj] = declared;
        } else if (d.is_subtype(declared, oit->second)) {
          oit->second = declared;
        }
      }
    }
  }
  return parse_action_term(term, d, objects);
}

std::string solve_query(const Trace& t, const StructuredQuery& q) {
  if (q.is_mcq()) {
    for (const auto& c : q.choices) {
      if (eval_projection(t, c.literals).answer == Answer::True)
        return c.letter;
    }
    return "False";  // no choice holds; fixtures avoid this
  }
  Verdict v;
  switch (q.kind) {
    case QueryKind::Projection:
      v = eval_projection(t, q.literals);
      break;
    case QueryKind::Executability:
      v = eval_executability(t);
      break;
    case QueryKind::PlanVerification:
      v = eval_plan_verification(t, q.literals);
      break;
    case QueryKind::Validation:
      v = classify_sequence(t, q.literals);
      break;
  }
  std::string text = answer_text(v.answer);
  text[0] = static_cast<char>(std::toupper(text[0]));
  return text;
}

}  // namespace

std::vector<std::string> SymbolicMockReasoner::complete(
    const ReasonerRequest& req) {
  std::string prompt;
  for (const auto& m : req.messages) prompt += m.text + "\n";
  std::string response = respond(prompt);
  return std::vector<std::string>(std::max(1, req.n), response);
}

std::string SymbolicMockReasoner::respond(const std::string& prompt) const {
  const DomainRegistry::Entry* entry = registry_.find_by_description(prompt);
  if (!entry)
    throw MockUnparseablePrompt(
        "prompt does not contain any registered domain description");
  const Domain& d = entry->domain;

  if (has(prompt, PromptTemplates::kMarkExtractState)) {
    StructuredQuestion q =
        parse_structured_question(section(prompt, "QUESTION"), d);
    State init = q.init;
    if (fault_ == FaultKind::CorruptExtraction && init.size() > 0)
      init.erase(*init.fluents().begin());
    return "The objects and their initial states follow from the problem "
           "statement.\n\n" +
           init.canonical_text();
  }

  if (has(prompt, PromptTemplates::kMarkExtractActions)) {
    StructuredQuestion q =
        parse_structured_question(section(prompt, "QUESTION"), d);
    if (q.plan.empty()) return "No actions.";
    std::ostringstream os;
    for (std::size_t i = 0; i < q.plan.size(); ++i) {
      if (i) os << ' ';
      os << q.plan[i].text() << '.';
    }
    return os.str();
  }

  if (has(prompt, PromptTemplates::kMarkExtractQuestion)) {
    StructuredQuestion q =
        parse_structured_question(section(prompt, "QUESTION"), d);
    return format_query_section(q.query);
  }

  if (has(prompt, PromptTemplates::kMarkCheck)) {
    State s = parse_state_text(section(prompt, "CURRENT STATE"), d);
    GroundAction a = parse_action_in_prompt(prompt, d, s);
    ApplicabilityResult r = is_applicable(s, a);
    bool verdict = r.applicable;
    if (fault_ == FaultKind::FlipExecutability) verdict = !verdict;
    std::ostringstream os;
    if (r.applicable) {
      os << "All preconditions of " << a.text()
         << " are satisfied in the current state.";
    } else {
      os << "The following preconditions of " << a.text() << " fail:";
      for (const auto& l : r.unsatisfied) os << ' ' << l.text();
      os << '.';
    }
    os << "\n\nFinal Answer: " << (verdict ? "True" : "False");
    return os.str();
  }

  if (has(prompt, PromptTemplates::kMarkProgress)) {
    State s = parse_state_text(section(prompt, "CURRENT STATE"), d);
    GroundAction a = parse_action_in_prompt(prompt, d, s);
    State next = apply_action(s, a);
    if (fault_ == FaultKind::DropEffect) {
      if (!a.add.empty()) {
        next.erase(*a.add.begin());
      } else if (!a.del.empty()) {
        next.insert(*a.del.begin());
      }
    } else if (fault_ == FaultKind::MutateUnrelatedFluent) {
      auto objects = universe(d, s, &a);
      if (auto extra = unrelated_fluent(d, next, a, objects))
        next.insert(*extra);
    }
    return "Executing " + a.text() +
           " updates the states of the related objects.\n\nSTATE: " +
           next.canonical_text();
  }

  if (has(prompt, PromptTemplates::kMarkQuery)) {
    State s = parse_state_text(section(prompt, "FINAL STATE"), d);
    StructuredQuery q = parse_query_section(section(prompt, "QUESTION"), d);
    // the final state already incorporates every executed action
    Trace t;
    t.states.push_back(s);
    return "Comparing the question with the final state.\n\nFinal Answer: " +
           solve_query(t, q);
  }

  if (has(prompt, PromptTemplates::kMarkBaseline)) {
    StructuredQuestion q =
        parse_structured_question(section(prompt, "QUESTION"), d);
    Trace t = progress(q.init, q.plan);
    return "Working through the action sequence step by step.\n\nFinal "
           "Answer: " +
           solve_query(t, q.query);
  }

  throw MockUnparseablePrompt("prompt matches no known template shape");
}

}  // namespace prorac
