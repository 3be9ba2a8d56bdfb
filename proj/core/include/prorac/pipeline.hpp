#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prorac/query.hpp"
#include "prorac/reasoner.hpp"
#include "prorac/registry.hpp"
#include "prorac/structured.hpp"
#include "prorac/templates.hpp"

namespace prorac {

struct Extraction {
  std::string init_state_text;
  std::vector<std::string> action_texts;  // one comma-free action per entry
  std::string query_text;
};

struct StepCheck {
  bool executable = false;
  std::string rationale;
};

struct PipelineRun {
  std::string mode;  // "structured" | "nl", copied from the config
  Extraction extraction;
  std::vector<std::string> step_states;  // state texts, S0 first
  std::vector<StepCheck> step_checks;
  Verdict verdict;
  std::string answer_norm;  // "true"/"false"/"plan"/"applicable"/"invalid"/letter
  Transcript transcript;
};

enum class MethodKind { ZeroShot, ZeroShotCoT, TwoShotCoT, SelfConsistency, ProRAC };

std::string method_name(MethodKind m);
MethodKind method_from_name(const std::string& s);

/// One benchmark question routed through the pipeline.
struct PipelineTask {
  std::string question;
  Name domain;
  QueryKind kind = QueryKind::Projection;
  bool mcq = false;
};

struct PipelineConfig {
  std::string mode = "structured";  // structured | nl
  PromptTemplates templates = PromptTemplates::defaults();
  std::string model = "mock";
  double temperature = 0.0;
  double sc_temperature = 0.7;
  int max_tokens = 2048;
};

/// Payload of the last "Final Answer:" line, trimmed of trailing periods and
/// lowercased. Throws AnswerParseError when no such line exists.
std::string parse_final_answer(const std::string& response);

/// Last paragraph of an extractor response; rejects markdown output.
std::string extraction_paragraph(const std::string& response);

Extraction extract_elements(const std::string& question_text,
                            const DomainRegistry::Entry& entry,
                            const PipelineConfig& cfg, Reasoner& r,
                            Transcript* transcript = nullptr);

StepCheck check_step_executability(const std::string& state_text,
                                   const std::string& action_text,
                                   const DomainRegistry::Entry& entry,
                                   const PipelineConfig& cfg, Reasoner& r,
                                   Transcript* transcript = nullptr);

std::string progress_step(const std::string& state_text,
                          const std::string& action_text,
                          const DomainRegistry::Entry& entry,
                          const PipelineConfig& cfg, Reasoner& r,
                          Transcript* transcript = nullptr);

/// Boolean/validation/MCQ answer for the final state; the normalized answer
/// string is returned.
std::string answer_query(const std::string& final_state_text,
                         const std::string& query_text,
                         const DomainRegistry::Entry& entry,
                         const PipelineConfig& cfg, Reasoner& r,
                         Transcript* transcript = nullptr);

PipelineRun run_prorac(const PipelineTask& task, const DomainRegistry& registry,
                       const PipelineConfig& cfg, Reasoner& r);

/// All prompts a ProRAC run over `task` would issue, rendered without any
/// reasoner call. For structured questions the intermediate states come from
/// the symbolic engine; for free-text questions only the preprocessing and
/// baseline prompts can be rendered.
std::vector<std::string> render_all_prompts(const PipelineTask& task,
                                            const DomainRegistry& registry,
                                            const PipelineConfig& cfg);

}  // namespace prorac
