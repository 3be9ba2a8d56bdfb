#pragma once

#include <map>
#include <string>

#include "prorac/errors.hpp"

namespace prorac {

/// Prompt templates with named placeholders {domain_description}, {examples},
/// {current_state}, {action}, {question}. Each template carries a fixed
/// instruction sentence that also serves as its machine-recognizable marker
/// (the symbolic mock keys on these to tell prompt kinds apart).
class PromptTemplates {
 public:
  /// Built-in defaults.
  static PromptTemplates defaults();

  /// Load <name>.txt files from a directory, falling back to defaults for
  /// any missing template.
  static PromptTemplates load_from_dir(const std::string& dir);

  const std::string& get(const std::string& name) const;

  std::string render(const std::string& name,
                     const std::map<std::string, std::string>& values) const;

  // markers, one per prompt kind
  static constexpr const char* kMarkExtractState =
      "extract every object's initial state";
  static constexpr const char* kMarkExtractActions =
      "extract actions from this plan";
  static constexpr const char* kMarkExtractQuestion =
      "extract the question from the given content";
  static constexpr const char* kMarkCheck =
      "check whether this action is executable at the current state";
  static constexpr const char* kMarkProgress =
      "execute the action and return all objects' states";
  static constexpr const char* kMarkQuery =
      "evaluate whether the final state satisfies the question";
  static constexpr const char* kMarkBaseline =
      "answer the question about the action sequence";

 private:
  std::map<std::string, std::string> templates_;
};

}  // namespace prorac
