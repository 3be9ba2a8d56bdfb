#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "prorac/annotations.hpp"
#include "prorac/parser.hpp"
#include "prorac/registry.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(PRORAC_FIXTURES) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline prorac::Domain load_domain(const std::string& name) {
  return prorac::parse_domain(read_fixture(name + ".pddl"));
}

inline void add_domain(prorac::DomainRegistry& r, const std::string& name) {
  prorac::Domain d = load_domain(name);
  prorac::NlAnnotations ann =
      prorac::NlAnnotations::from_json_text(read_fixture(name + ".nl.json"), d);
  r.add(std::move(d), std::move(ann));
}

inline prorac::DomainRegistry registry_with(
    std::initializer_list<const char*> names) {
  prorac::DomainRegistry r;
  for (const char* n : names) add_domain(r, n);
  return r;
}

inline prorac::DomainRegistry full_registry() {
  return registry_with({"blocksworld", "depots", "grippers"});
}

}  // namespace testutil
