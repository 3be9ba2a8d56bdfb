#include "prorac/templates.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace prorac {

namespace {

const std::map<std::string, std::string>& default_templates() {
  static const std::map<std::string, std::string> t = {
      {"extract_state",
       "{domain_description}\n\n"
       "[EXAMPLES]\n{examples}\n\n----------\n\n"
       "[QUESTION]: {question}\n\n"
       "Based on the domain description and examples above, extract every "
       "object's initial state from the given content. Organize the states "
       "you extracted into one paragraph at the end of your answer. Remember "
       "you only need to extract states, not solve the question. Don't use "
       "any markdown formatting.\n"},
      {"extract_actions",
       "{domain_description}\n\n"
       "[EXAMPLES]\n{examples}\n\n----------\n\n"
       "[QUESTION]: {question}\n\n"
       "This is a plan. You are required to think and understand the entire "
       "plan, then extract actions from this plan. Each sentence should "
       "contain only one action and must not contain any comma. Put all "
       "sentences into one paragraph. Remember you only need to extract "
       "actions, not solve the question. Don't use any markdown "
       "formatting.\n"},
      {"extract_question",
       "{domain_description}\n\n"
       "[EXAMPLES]\n{examples}\n\n----------\n\n"
       "[QUESTION]: {question}\n\n"
       "Based on the examples above, extract the question from the given "
       "content. Organize the question you extracted in one paragraph. "
       "Remember you only need to extract the question, not solve it. Don't "
       "use any markdown formatting.\n"},
      {"check",
       "{domain_description}\n\n"
       "[EXAMPLES]\n{examples}\n\n----------\n\n"
       "[CURRENT STATE]: {current_state}\n\n[ACTION]: {action}\n\n"
       "Based on the domain description and examples above, check whether "
       "this action is executable at the current state. After your analysis "
       "give your final answer in the last paragraph, and the last paragraph "
       "should be like \"Final Answer: False(True if executable)\". Don't "
       "use any markdown formatting.\n"},
      {"progress",
       "{domain_description}\n\n"
       "[EXAMPLES]\n{examples}\n\n----------\n\n"
       "[CURRENT STATE]: {current_state}\n\n[ACTION]: {action}\n\n"
       "Based on the domain description and examples above, execute the "
       "action and return all objects' states after the action. End your "
       "answer with a line starting with \"STATE:\" followed by the full new "
       "state. Don't use any markdown formatting.\n"},
      {"query",
       "{domain_description}\n\n"
       "[FINAL STATE]: {current_state}\n\n[QUESTION]: {question}\n\n"
       "Based on the domain description above, evaluate whether the final "
       "state satisfies the question. Give your final answer in the last "
       "paragraph as \"Final Answer: True\" or \"Final Answer: False\" (for "
       "a multiple choice question answer with the choice letter; for a "
       "validation question answer with Plan, Applicable or Invalid). Don't "
       "use any markdown formatting.\n"},
      {"baseline_zero_shot",
       "{domain_description}\n\n"
       "[QUESTION]: {question}\n\n"
       "Based on the domain description above, answer the question about the "
       "action sequence. Give your final answer in the last paragraph as "
       "\"Final Answer: ...\". Don't use any markdown formatting.\n"},
      {"baseline_two_shot",
       "{domain_description}\n\n"
       "[EXAMPLES]\n{examples}\n\n----------\n\n"
       "[QUESTION]: {question}\n\n"
       "Based on the domain description and the two worked examples above, "
       "answer the question about the action sequence following the same "
       "steps: identify the objects, check the executability of each action, "
       "execute the actions to obtain the final state, and compare the query "
       "with the final state. Give your final answer in the last paragraph "
       "as \"Final Answer: ...\". Don't use any markdown formatting.\n"},
      {"cot_trigger", "Let's think step by step.\n"},
  };
  return t;
}

}  // namespace

PromptTemplates PromptTemplates::defaults() {
  PromptTemplates p;
  p.templates_ = default_templates();
  return p;
}

PromptTemplates PromptTemplates::load_from_dir(const std::string& dir) {
  PromptTemplates p = defaults();
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    std::ostringstream os;
    os << in.rdbuf();
    p.templates_[entry.path().stem().string()] = os.str();
  }
  return p;
}

const std::string& PromptTemplates::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end())
    throw MissingTemplate("no prompt template named '" + name + "'");
  return it->second;
}

std::string PromptTemplates::render(
    const std::string& name,
    const std::map<std::string, std::string>& values) const {
  const std::string& tmpl = get(name);
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{') {
      auto close = tmpl.find('}', i);
      std::string key =
          close == std::string::npos ? "" : tmpl.substr(i + 1, close - i - 1);
      auto it = values.find(key);
      if (close == std::string::npos || it == values.end())
        throw MissingTemplate("template '" + name +
                              "' references unknown placeholder {" + key + "}");
      out += it->second;
      i = close;
    } else {
      out.push_back(tmpl[i]);
    }
  }
  return out;
}

}  // namespace prorac
