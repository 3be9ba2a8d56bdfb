#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prorac/baselines.hpp"
#include "prorac/pipeline.hpp"

namespace prorac {

/// One benchmark question as stored in the line-delimited instance files.
struct Instance {
  std::string question_id;
  Name domain_name;
  std::string question_category;  // canonical task tag
  std::string answer_type;        // "bool" | "mcq"
  std::string question;
  std::string gold;  // normalized answer
  int plan_length = 0;
  std::string initial_state_nl;
  std::optional<StructuredQuestion> structured;
  std::string validation_semantics = "three_way";

  QueryKind kind() const { return query_kind_from_tag(question_category); }
  bool mcq() const { return answer_type == "mcq"; }

  PipelineTask task() const {
    return {question, domain_name, kind(), mcq()};
  }
};

/// Map benchmark task names onto the four evaluator kinds: effects, fluent
/// tracking, state tracking and progression all reduce to projection;
/// applicability and action executability to executability.
std::string canonical_category(const std::string& raw);

std::vector<Instance> load_instances(const std::string& path,
                                     const DomainRegistry& registry);

/// Normalized oracle answer for a structured instance.
std::string oracle_answer(const Instance& inst);

struct InstanceOutcome {
  std::string question_id;
  std::string answer;  // normalized; empty on method error
  std::string gold;
  bool correct = false;
  std::string error;  // method-error description, when any
};

struct ResultsCell {
  int correct = 0;
  int total = 0;
  int method_errors = 0;
  std::vector<InstanceOutcome> outcomes;  // ordered by question_id
};

struct CellKey {
  std::string domain;
  std::string task;
  std::string method;
  auto operator<=>(const CellKey&) const = default;
};

struct ResultsTable {
  std::map<CellKey, ResultsCell> cells;
};

/// 100*correct/total rounded half-up to two decimals, e.g. "88.89".
std::string accuracy_percent(int correct, int total);

struct RunSuiteOptions {
  int parallelism = 1;
  std::string record_dir;  // when set, one JSON run record per instance
};

ResultsTable run_suite(const std::vector<Instance>& instances,
                       MethodKind method, const DomainRegistry& registry,
                       const PipelineConfig& cfg, Reasoner& reasoner,
                       const RunSuiteOptions& opts = {});

struct AuditEntry {
  std::string question_id;
  std::string gold;
  std::string oracle;
  bool flagged = false;
  std::string evidence;
};

struct AuditReport {
  std::vector<AuditEntry> entries;

  int flagged_count() const {
    int n = 0;
    for (const auto& e : entries) n += e.flagged;
    return n;
  }
};

AuditReport audit_labels(const std::vector<Instance>& instances,
                         const DomainRegistry& registry);

/// Patch file: one JSON line per flagged instance with the oracle's answer.
std::string audit_patch_text(const AuditReport& report);

enum class ErrorLabel {
  None,
  FrameViolation,
  EffectMiss,
  QualificationError,
  ExtractionError,
};

std::string error_label_name(ErrorLabel e);

/// Locate the first divergence of a structured-mode pipeline run from the
/// symbolic oracle and name it after the classic failure it exhibits.
ErrorLabel classify_error(const PipelineRun& run, const Instance& inst,
                          const DomainRegistry& registry);

enum class TableFormat { Markdown, Csv };

std::string emit_table(const ResultsTable& table, TableFormat format);

}  // namespace prorac
