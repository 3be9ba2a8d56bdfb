#include "prorac/baselines.hpp"

#include <map>

namespace prorac {

std::string majority_vote(const std::vector<std::string>& answers) {
  if (answers.empty())
    throw AnswerParseError("no parseable samples to vote over");
  std::map<std::string, int> counts;
  for (const auto& a : answers) ++counts[a];
  // std::map iterates in sorted order, so the first maximal entry is the
  // lexicographically smallest tie-breaker
  std::string winner;
  int best = -1;
  for (const auto& [answer, count] : counts) {
    if (count > best) {
      best = count;
      winner = answer;
    }
  }
  return winner;
}

BaselineResult run_baseline(const PipelineTask& task, MethodKind kind,
                            const DomainRegistry& registry,
                            const PipelineConfig& cfg, Reasoner& r) {
  if (kind == MethodKind::ProRAC)
    throw ValidationError("ProRAC is not a prompting baseline");
  const DomainRegistry::Entry& entry = registry.at(task.domain);

  std::map<std::string, std::string> values;
  values["question"] = task.question;
  values["domain_description"] = entry.annotations.description;
  std::string prompt;
  if (kind == MethodKind::TwoShotCoT) {
    auto it = entry.annotations.examples.find("two_shot");
    if (it == entry.annotations.examples.end())
      throw ValidationError("two-shot baseline needs a 'two_shot' example for '" +
                            task.domain.str() + "'");
    values["examples"] = it->second;
    prompt = cfg.templates.render("baseline_two_shot", values);
  } else {
    prompt = cfg.templates.render("baseline_zero_shot", values);
    if (kind != MethodKind::ZeroShot)
      prompt += "\n" + cfg.templates.get("cot_trigger");
  }

  ReasonerRequest req;
  req.messages = {{"user", prompt}};
  req.model = cfg.model;
  req.max_tokens = cfg.max_tokens;
  if (kind == MethodKind::SelfConsistency) {
    req.n = 5;
    req.temperature = cfg.sc_temperature;
  } else {
    req.n = 1;
    req.temperature = cfg.temperature;
  }

  BaselineResult out;
  std::vector<std::string> responses = r.complete(req);
  out.transcript.append({req, responses, 0, false});

  if (kind == MethodKind::SelfConsistency) {
    std::vector<std::string> parsed;
    std::optional<AnswerParseError> last_error;
    for (const auto& resp : responses) {
      try {
        parsed.push_back(parse_final_answer(resp));
      } catch (const AnswerParseError& e) {
        last_error = e;
      }
    }
    if (parsed.empty()) throw *last_error;
    out.answer_norm = majority_vote(parsed);
  } else {
    out.answer_norm = parse_final_answer(responses.at(0));
  }
  return out;
}

}  // namespace prorac
