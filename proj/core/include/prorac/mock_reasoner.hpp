#pragma once

#include "prorac/reasoner.hpp"
#include "prorac/registry.hpp"

namespace prorac {

enum class FaultKind {
  None,
  FlipExecutability,    // executability checks report the opposite verdict
  MutateUnrelatedFluent,  // progression states gain a fluent outside add∪del
  DropEffect,           // progression states miss one effect
  CorruptExtraction,    // the extracted initial state is perturbed
};

/// Test double for the LLM: recognizes the pipeline's prompt shapes, parses
/// the embedded structured state/action/question, and renders the symbolic
/// oracle's answer in the exact textual contract the pipeline parses.
/// Optional fault injection produces the canonical error-taxonomy failures.
class SymbolicMockReasoner : public Reasoner {
 public:
  explicit SymbolicMockReasoner(const DomainRegistry& registry,
                                FaultKind fault = FaultKind::None)
      : registry_(registry), fault_(fault) {}

  std::vector<std::string> complete(const ReasonerRequest& req) override;

 private:
  std::string respond(const std::string& prompt) const;

  const DomainRegistry& registry_;
  FaultKind fault_;
};

/// Wrapper counting calls to an inner reasoner; used to verify call-count
/// laws and the zero-call property of prompt rendering.
class CountingReasoner : public Reasoner {
 public:
  explicit CountingReasoner(std::shared_ptr<Reasoner> inner)
      : inner_(std::move(inner)) {}

  std::vector<std::string> complete(const ReasonerRequest& req) override {
    ++calls_;
    return inner_->complete(req);
  }

  std::size_t calls() const { return calls_; }
  void reset() { calls_ = 0; }

 private:
  std::shared_ptr<Reasoner> inner_;
  std::size_t calls_ = 0;
};

/// Returns scripted responses in order; used to exercise parser error paths.
class ScriptedReasoner : public Reasoner {
 public:
  explicit ScriptedReasoner(std::vector<std::string> responses)
      : responses_(std::move(responses)) {}

  std::vector<std::string> complete(const ReasonerRequest& req) override {
    std::vector<std::string> out;
    for (int i = 0; i < req.n; ++i) {
      if (next_ >= responses_.size())
        throw ReasonerError("scripted reasoner ran out of responses");
      out.push_back(responses_[next_++]);
    }
    return out;
  }

 private:
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
};

}  // namespace prorac
