#pragma once

#include <map>
#include <string>

#include "prorac/domain.hpp"

namespace prorac {

/// Prompt-facing natural-language sidecar for a Domain: a free-text domain
/// description plus per-schema and per-predicate phrase templates.
struct NlAnnotations {
  Name domain;
  std::string description;
  // schema name -> sentence template with {param} placeholders
  std::map<Name, std::string> action_templates;
  // predicate name -> property phrase; the first parameter is the owning
  // object, remaining parameters appear as {param} placeholders
  std::map<Name, std::string> fluent_templates;
  // zero-arity predicate name -> clause for the trailing "World:" sentence
  std::map<Name, std::string> zero_arity_templates;
  // optional named example blocks used in prompts (extract_state,
  // extract_actions, extract_question, check, progress, query, two_shot)
  std::map<std::string, std::string> examples;
  // predicate name -> declared parameter names, captured at load so the
  // renderer can resolve {param} placeholders without the Domain
  std::map<Name, std::vector<std::string>> fluent_params;

  /// Parse from the JSON sidecar document and validate template coverage
  /// against the domain.
  static NlAnnotations from_json_text(const std::string& text, const Domain& d);
};

/// Object-grouped rendering: "Crate0: at depot1, clear." one sentence per
/// object in lexicographic order, zero-arity fluents in a final "World: ..."
/// sentence.
std::string render_state_nl(const State& s, const NlAnnotations& ann,
                            const std::map<Name, Name>& objects);

/// Single comma-free sentence for one ground action.
std::string render_action_nl(const GroundAction& a, const Domain& d,
                             const NlAnnotations& ann);

}  // namespace prorac
