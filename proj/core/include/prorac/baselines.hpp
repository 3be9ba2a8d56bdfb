#pragma once

#include "prorac/pipeline.hpp"

namespace prorac {

struct BaselineResult {
  std::string answer_norm;
  Transcript transcript;
};

/// Majority vote over normalized answers; ties break to the
/// lexicographically smallest answer. Empty input is an AnswerParseError.
std::string majority_vote(const std::vector<std::string>& answers);

/// Run one of the four prompting baselines. SelfConsistency samples n=5 at
/// cfg.sc_temperature and votes; every other method is a single call at
/// cfg.temperature. Unparseable samples are excluded from the vote; if all
/// samples fail to parse, AnswerParseError propagates.
BaselineResult run_baseline(const PipelineTask& task, MethodKind kind,
                            const DomainRegistry& registry,
                            const PipelineConfig& cfg, Reasoner& r);

}  // namespace prorac
