#pragma once

#include <compare>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prorac/errors.hpp"

namespace prorac {

/// Lowercase identifier: letters, digits, hyphen, underscore; starts with a
/// letter. Construction normalizes (trim + lowercase) and validates.
class Name {
 public:
  Name() = default;
  explicit Name(const std::string& raw);

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  auto operator<=>(const Name&) const = default;

 private:
  std::string text_;
};

Name normalize_name(const std::string& raw);

/// Ground atom: predicate applied to zero or more object names.
struct Fluent {
  Name predicate;
  std::vector<Name> args;

  /// Canonical text form, e.g. "(on a b)", "(handempty)".
  std::string text() const;

  auto operator<=>(const Fluent&) const = default;
};

struct Literal {
  Fluent fluent;
  bool positive = true;

  Literal negated() const { return {fluent, !positive}; }

  /// "(on a b)" or "(not (on a b))".
  std::string text() const;

  auto operator<=>(const Literal&) const = default;
};

/// Closed-world state: set of true fluents, everything else false.
class State {
 public:
  State() = default;
  explicit State(std::set<Fluent> fluents) : fluents_(std::move(fluents)) {}

  const std::set<Fluent>& fluents() const { return fluents_; }
  bool contains(const Fluent& f) const { return fluents_.count(f) > 0; }
  std::size_t size() const { return fluents_.size(); }
  void insert(const Fluent& f) { fluents_.insert(f); }
  void erase(const Fluent& f) { fluents_.erase(f); }

  /// Canonical text: fluents in lexicographic order, space-separated.
  std::string canonical_text() const;

  auto operator<=>(const State&) const = default;

 private:
  std::set<Fluent> fluents_;
};

bool literal_holds(const State& s, const Literal& l);

struct StateDiff {
  std::set<Fluent> added;
  std::set<Fluent> removed;
};

StateDiff state_diff(const State& before, const State& after);

}  // namespace prorac
