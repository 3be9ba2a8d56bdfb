#include "prorac/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prorac {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string build_prompt(const std::string& tmpl_name,
                         const DomainRegistry::Entry& entry,
                         const PipelineConfig& cfg,
                         std::map<std::string, std::string> values) {
  values["domain_description"] = entry.annotations.description;
  if (!values.count("examples")) {
    auto it = entry.annotations.examples.find(tmpl_name);
    values["examples"] =
        it == entry.annotations.examples.end() ? "" : it->second;
  }
  return cfg.templates.render(tmpl_name, values);
}

std::vector<std::string> call(Reasoner& r, const PipelineConfig& cfg,
                              const std::string& prompt, int n,
                              double temperature, Transcript* transcript) {
  ReasonerRequest req;
  req.messages = {{"user", prompt}};
  req.model = cfg.model;
  req.temperature = temperature;
  req.max_tokens = cfg.max_tokens;
  req.n = n;
  std::vector<std::string> responses = r.complete(req);
  if (transcript) transcript->append({req, responses, 0, false});
  return responses;
}

bool looks_markdown(const std::string& s) {
  if (s.find("```") != std::string::npos) return true;
  if (s.find("**") != std::string::npos) return true;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.rfind("# ", 0) == 0 || t.rfind("- ", 0) == 0 || t.rfind("* ", 0) == 0)
      return true;
  }
  return false;
}

}  // namespace

std::string method_name(MethodKind m) {
  switch (m) {
    case MethodKind::ZeroShot: return "zero-shot";
    case MethodKind::ZeroShotCoT: return "zero-shot-cot";
    case MethodKind::TwoShotCoT: return "two-shot-cot";
    case MethodKind::SelfConsistency: return "self-consistency";
    case MethodKind::ProRAC: return "prorac";
  }
  return "prorac";
}

MethodKind method_from_name(const std::string& s) {
  std::string t = lowercase(s);
  if (t == "zero-shot") return MethodKind::ZeroShot;
  if (t == "zero-shot-cot" || t == "0cot") return MethodKind::ZeroShotCoT;
  if (t == "two-shot-cot" || t == "2cot") return MethodKind::TwoShotCoT;
  if (t == "self-consistency" || t == "sc") return MethodKind::SelfConsistency;
  if (t == "prorac") return MethodKind::ProRAC;
  throw ValidationError("unknown method '" + s + "'");
}

std::string parse_final_answer(const std::string& response) {
  std::istringstream is(response);
  std::string line;
  std::optional<std::string> payload;
  while (std::getline(is, line)) {
    std::string low = lowercase(line);
    auto pos = low.find("final answer:");
    if (pos != std::string::npos)
      payload = trim(line.substr(pos + std::string("final answer:").size()));
  }
  if (!payload)
    throw AnswerParseError("no 'Final Answer:' line in response");
  std::string p = *payload;
  while (!p.empty() && (p.back() == '.' || p.back() == '!')) p.pop_back();
  return lowercase(trim(p));
}

std::string extraction_paragraph(const std::string& response) {
  if (looks_markdown(response))
    throw ExtractionParseError("extractor response contains markdown");
  // last non-empty paragraph
  std::vector<std::string> paragraphs;
  std::string cur;
  std::istringstream is(response);
  std::string line;
  while (std::getline(is, line)) {
    if (trim(line).empty()) {
      if (!trim(cur).empty()) paragraphs.push_back(trim(cur));
      cur.clear();
    } else {
      cur += line + "\n";
    }
  }
  if (!trim(cur).empty()) paragraphs.push_back(trim(cur));
  if (paragraphs.empty())
    throw ExtractionParseError("extractor response is empty");
  return paragraphs.back();
}

Extraction extract_elements(const std::string& question_text,
                            const DomainRegistry::Entry& entry,
                            const PipelineConfig& cfg, Reasoner& r,
                            Transcript* transcript) {
  Extraction ex;

  std::string state_prompt = build_prompt("extract_state", entry, cfg,
                                          {{"question", question_text}});
  ex.init_state_text = extraction_paragraph(
      call(r, cfg, state_prompt, 1, cfg.temperature, transcript)[0]);

  std::string actions_prompt = build_prompt("extract_actions", entry, cfg,
                                            {{"question", question_text}});
  std::string actions_paragraph = extraction_paragraph(
      call(r, cfg, actions_prompt, 1, cfg.temperature, transcript)[0]);
  std::string normalized = lowercase(trim(actions_paragraph));
  while (!normalized.empty() && normalized.back() == '.') normalized.pop_back();
  if (!normalized.empty() && normalized != "no actions") {
    std::string cur;
    for (char c : actions_paragraph) {
      if (c == '.') {
        std::string sentence = trim(cur);
        cur.clear();
        if (sentence.empty()) continue;
        if (sentence.find(',') != std::string::npos)
          throw ExtractionParseError("extracted action contains a comma: " +
                                     sentence);
        ex.action_texts.push_back(sentence);
      } else {
        cur.push_back(c);
      }
    }
    std::string tail = trim(cur);
    if (!tail.empty()) {
      if (tail.find(',') != std::string::npos)
        throw ExtractionParseError("extracted action contains a comma: " + tail);
      ex.action_texts.push_back(tail);
    }
  }

  std::string question_prompt = build_prompt("extract_question", entry, cfg,
                                             {{"question", question_text}});
  ex.query_text = extraction_paragraph(
      call(r, cfg, question_prompt, 1, cfg.temperature, transcript)[0]);
  return ex;
}

StepCheck check_step_executability(const std::string& state_text,
                                   const std::string& action_text,
                                   const DomainRegistry::Entry& entry,
                                   const PipelineConfig& cfg, Reasoner& r,
                                   Transcript* transcript) {
  std::string prompt =
      build_prompt("check", entry, cfg,
                   {{"current_state", state_text}, {"action", action_text}});
  std::string response = call(r, cfg, prompt, 1, cfg.temperature, transcript)[0];
  std::string payload = parse_final_answer(response);
  if (payload != "true" && payload != "false")
    throw AnswerParseError("executability check answered '" + payload +
                           "', expected True or False");
  return {payload == "true", response};
}

std::string progress_step(const std::string& state_text,
                          const std::string& action_text,
                          const DomainRegistry::Entry& entry,
                          const PipelineConfig& cfg, Reasoner& r,
                          Transcript* transcript) {
  std::string prompt =
      build_prompt("progress", entry, cfg,
                   {{"current_state", state_text}, {"action", action_text}});
  std::string response = call(r, cfg, prompt, 1, cfg.temperature, transcript)[0];
  if (cfg.mode != "structured") return response;

  // last "STATE:" line carries the new state
  std::istringstream is(response);
  std::string line;
  std::optional<std::string> state_line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (lowercase(t).rfind("state:", 0) == 0)
      state_line = trim(t.substr(6));
  }
  if (!state_line)
    throw StateParseError("progression response has no STATE: block");
  try {
    State s = parse_state_text(*state_line, entry.domain);
    return s.canonical_text();
  } catch (const Error& e) {
    throw StateParseError(std::string("malformed STATE block: ") + e.what());
  }
}

std::string answer_query(const std::string& final_state_text,
                         const std::string& query_text,
                         const DomainRegistry::Entry& entry,
                         const PipelineConfig& cfg, Reasoner& r,
                         Transcript* transcript) {
  std::string prompt =
      build_prompt("query", entry, cfg,
                   {{"current_state", final_state_text}, {"question", query_text}});
  std::string response = call(r, cfg, prompt, 1, cfg.temperature, transcript)[0];
  return parse_final_answer(response);
}

namespace {

std::string short_circuit_answer(QueryKind kind) {
  return kind == QueryKind::Validation ? "invalid" : "false";
}

}  // namespace

PipelineRun run_prorac(const PipelineTask& task, const DomainRegistry& registry,
                       const PipelineConfig& cfg, Reasoner& r) {
  const DomainRegistry::Entry& entry = registry.at(task.domain);
  PipelineRun run;
  run.mode = cfg.mode;

  run.extraction =
      extract_elements(task.question, entry, cfg, r, &run.transcript);
  run.step_states.push_back(run.extraction.init_state_text);

  bool short_circuited = false;
  for (std::size_t i = 0; i < run.extraction.action_texts.size(); ++i) {
    StepCheck check =
        check_step_executability(run.step_states.back(),
                                 run.extraction.action_texts[i], entry, cfg, r,
                                 &run.transcript);
    run.step_checks.push_back(check);
    if (!check.executable) {
      run.verdict.failure_index = i;
      short_circuited = true;
      break;
    }
    run.step_states.push_back(
        progress_step(run.step_states.back(), run.extraction.action_texts[i],
                      entry, cfg, r, &run.transcript));
  }

  if (short_circuited) {
    run.answer_norm = short_circuit_answer(task.kind);
    run.verdict.answer = task.kind == QueryKind::Validation ? Answer::Invalid
                                                            : Answer::False;
    return run;
  }

  run.answer_norm = answer_query(run.step_states.back(),
                                 run.extraction.query_text, entry, cfg, r,
                                 &run.transcript);
  if (auto a = answer_from_text(run.answer_norm)) {
    run.verdict.answer = *a;
  } else if (task.mcq) {
    run.verdict.answer = Answer::True;  // MCQ correctness is the letter match
  } else {
    throw AnswerParseError("query answered '" + run.answer_norm + "'");
  }
  return run;
}

std::vector<std::string> render_all_prompts(const PipelineTask& task,
                                            const DomainRegistry& registry,
                                            const PipelineConfig& cfg) {
  const DomainRegistry::Entry& entry = registry.at(task.domain);
  std::vector<std::string> prompts;
  for (const char* name : {"extract_state", "extract_actions", "extract_question"})
    prompts.push_back(
        build_prompt(name, entry, cfg, {{"question", task.question}}));

  if (looks_structured(task.question)) {
    StructuredQuestion q = parse_structured_question(task.question, entry.domain);
    Trace t = progress(q.init, q.plan);
    for (std::size_t i = 0; i < q.plan.size(); ++i) {
      std::string state_text = t.states[std::min(i, t.states.size() - 1)]
                                   .canonical_text();
      prompts.push_back(build_prompt("check", entry, cfg,
                                     {{"current_state", state_text},
                                      {"action", q.plan[i].text()}}));
      if (t.failure_index && *t.failure_index <= i) break;
      prompts.push_back(build_prompt("progress", entry, cfg,
                                     {{"current_state", state_text},
                                      {"action", q.plan[i].text()}}));
    }
    if (!t.failure_index) {
      prompts.push_back(build_prompt(
          "query", entry, cfg,
          {{"current_state", t.final_state().canonical_text()},
           {"question", format_query_section(q.query)}}));
    }
  }

  prompts.push_back(build_prompt("baseline_zero_shot", entry, cfg,
                                 {{"question", task.question}}));
  return prompts;
}

}  // namespace prorac
