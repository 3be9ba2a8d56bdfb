#include "prorac/annotations.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace prorac {

namespace {

std::string substitute_placeholders(const std::string& tmpl,
                                    const std::map<std::string, std::string>& binding,
                                    const std::string& context) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{') {
      auto close = tmpl.find('}', i);
      if (close == std::string::npos)
        throw MissingTemplate("unterminated placeholder in template for " +
                              context);
      std::string key = tmpl.substr(i + 1, close - i - 1);
      auto it = binding.find(key);
      if (it == binding.end())
        throw MissingTemplate("unknown placeholder {" + key +
                              "} in template for " + context);
      out += it->second;
      i = close;
    } else {
      out.push_back(tmpl[i]);
    }
  }
  return out;
}

std::string capitalize(const std::string& s) {
  std::string out = s;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(out[0]));
  return out;
}

}  // namespace

NlAnnotations NlAnnotations::from_json_text(const std::string& text,
                                            const Domain& d) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("annotation sidecar is not valid JSON: ") +
                          e.what());
  }

  NlAnnotations ann;
  ann.domain = Name(j.at("domain").get<std::string>());
  if (ann.domain != d.name)
    throw ValidationError("annotations are for domain '" + ann.domain.str() +
                          "', not '" + d.name.str() + "'");
  ann.description = j.at("description").get<std::string>();

  for (auto& [k, v] : j.at("action_templates").items())
    ann.action_templates[Name(k)] = v.get<std::string>();
  for (auto& [k, v] : j.at("fluent_templates").items())
    ann.fluent_templates[Name(k)] = v.get<std::string>();
  if (j.contains("zero_arity_templates")) {
    for (auto& [k, v] : j["zero_arity_templates"].items())
      ann.zero_arity_templates[Name(k)] = v.get<std::string>();
  }
  if (j.contains("examples")) {
    for (auto& [k, v] : j["examples"].items())
      ann.examples[k] = v.get<std::string>();
  }

  for (const auto& [sname, schema] : d.schemas) {
    if (!ann.action_templates.count(sname))
      throw ValidationError("missing action template for '" + sname.str() + "'");
  }
  for (const auto& [pname, decl] : d.predicates) {
    if (decl.arity() == 0) {
      if (!ann.zero_arity_templates.count(pname))
        throw ValidationError("missing zero-arity template for '" +
                              pname.str() + "'");
    } else if (!ann.fluent_templates.count(pname)) {
      throw ValidationError("missing fluent template for '" + pname.str() + "'");
    }
    std::vector<std::string> params;
    for (const auto& p : decl.params) params.push_back(p.var.str());
    ann.fluent_params[pname] = std::move(params);
  }
  return ann;
}

std::string render_state_nl(const State& s, const NlAnnotations& ann,
                            const std::map<Name, Name>& objects) {
  // owner object -> property phrases, in lexicographic fluent order
  std::map<Name, std::vector<std::string>> props;
  for (const auto& [obj, type] : objects) props[obj];

  std::vector<std::string> world;
  for (const auto& f : s.fluents()) {
    if (f.args.empty()) {
      auto it = ann.zero_arity_templates.find(f.predicate);
      if (it == ann.zero_arity_templates.end())
        throw MissingTemplate("no zero-arity template for '" +
                              f.predicate.str() + "'");
      world.push_back(it->second);
      continue;
    }
    auto it = ann.fluent_templates.find(f.predicate);
    if (it == ann.fluent_templates.end())
      throw MissingTemplate("no fluent template for '" + f.predicate.str() + "'");
    // placeholder names follow the predicate declaration; the first
    // parameter names the owning object
    std::map<std::string, std::string> binding;
    auto pit = ann.fluent_params.find(f.predicate);
    if (pit != ann.fluent_params.end()) {
      for (std::size_t i = 0; i < f.args.size() && i < pit->second.size(); ++i)
        binding[pit->second[i]] = f.args[i].str();
    }
    props[f.args[0]].push_back(
        substitute_placeholders(it->second, binding, f.predicate.str()));
  }

  std::ostringstream os;
  bool first = true;
  for (const auto& [obj, phrases] : props) {
    if (!first) os << ' ';
    first = false;
    os << capitalize(obj.str()) << ": ";
    if (phrases.empty()) {
      os << "(no properties).";
    } else {
      for (std::size_t i = 0; i < phrases.size(); ++i) {
        if (i) os << ", ";
        os << phrases[i];
      }
      os << '.';
    }
  }
  if (!world.empty()) {
    if (!first) os << ' ';
    os << "World: ";
    for (std::size_t i = 0; i < world.size(); ++i) {
      if (i) os << ", ";
      os << world[i];
    }
    os << '.';
  }
  return os.str();
}

std::string render_action_nl(const GroundAction& a, const Domain& d,
                             const NlAnnotations& ann) {
  auto it = ann.action_templates.find(a.schema);
  if (it == ann.action_templates.end())
    throw MissingTemplate("no action template for '" + a.schema.str() + "'");
  const ActionSchema& schema = d.schemas.at(a.schema);
  std::map<std::string, std::string> binding;
  for (std::size_t i = 0; i < schema.params.size(); ++i)
    binding[schema.params[i].var.str()] = a.args[i].str();
  std::string out = substitute_placeholders(it->second, binding, a.schema.str());
  if (out.find(',') != std::string::npos)
    throw ValidationError("action template for '" + a.schema.str() +
                          "' renders with a comma");
  return out;
}

}  // namespace prorac
