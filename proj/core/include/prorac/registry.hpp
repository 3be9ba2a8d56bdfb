#pragma once

#include <map>
#include <optional>

#include "prorac/annotations.hpp"
#include "prorac/domain.hpp"

namespace prorac {

/// Registered domains, keyed by name: the formal Domain plus its NL sidecar.
class DomainRegistry {
 public:
  void add(Domain d, NlAnnotations ann) {
    Name n = d.name;
    entries_[n] = Entry{std::move(d), std::move(ann)};
  }

  struct Entry {
    Domain domain;
    NlAnnotations annotations;
  };

  const Entry& at(const Name& n) const {
    auto it = entries_.find(n);
    if (it == entries_.end())
      throw ValidationError("domain '" + n.str() + "' is not registered");
    return it->second;
  }

  bool has(const Name& n) const { return entries_.count(n) > 0; }

  /// Resolve a registered domain by matching its description text inside a
  /// prompt (descriptions are unique per domain).
  const Entry* find_by_description(const std::string& prompt) const {
    for (const auto& [name, e] : entries_) {
      if (!e.annotations.description.empty() &&
          prompt.find(e.annotations.description) != std::string::npos)
        return &e;
    }
    return nullptr;
  }

  const std::map<Name, Entry>& entries() const { return entries_; }

 private:
  std::map<Name, Entry> entries_;
};

}  // namespace prorac
