#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prorac/model.hpp"

namespace prorac {

struct TypedParam {
  Name var;   // without the leading '?'
  Name type;  // "object" when untyped

  auto operator<=>(const TypedParam&) const = default;
};

/// Fluent over schema parameters: each arg is either a variable (bound to a
/// param) or a constant name.
struct FluentTemplate {
  Name predicate;
  struct Term {
    bool is_var = false;
    Name name;
    auto operator<=>(const Term&) const = default;
  };
  std::vector<Term> args;

  auto operator<=>(const FluentTemplate&) const = default;
};

struct LiteralTemplate {
  FluentTemplate fluent;
  bool positive = true;

  auto operator<=>(const LiteralTemplate&) const = default;
};

struct ActionSchema {
  Name name;
  std::vector<TypedParam> params;
  std::vector<LiteralTemplate> precondition;
  std::vector<FluentTemplate> add;
  std::vector<FluentTemplate> del;
};

struct PredicateDecl {
  Name name;
  std::vector<TypedParam> params;

  std::size_t arity() const { return params.size(); }
};

struct Domain {
  Name name;
  std::map<Name, std::optional<Name>> types;  // type -> optional parent
  std::map<Name, PredicateDecl> predicates;
  std::map<Name, ActionSchema> schemas;

  /// True when `t` equals `ancestor` or derives from it through the
  /// single-parent hierarchy. "object" is the implicit root.
  bool is_subtype(const Name& t, const Name& ancestor) const;
};

struct Problem {
  Name name;
  Name domain;
  std::map<Name, Name> objects;  // object -> type
  State init;
  std::optional<std::vector<Literal>> goal;
};

struct GroundAction {
  Name schema;
  std::vector<Name> args;
  std::vector<Literal> precondition;
  std::set<Fluent> add;
  std::set<Fluent> del;

  /// Canonical term form, e.g. "(pickup a)".
  std::string text() const;

  auto operator<=>(const GroundAction&) const = default;
};

/// Instantiate a schema with concrete arguments. Types are checked against
/// the object map when the object is known there; unknown objects are
/// rejected.
GroundAction ground_action(const Domain& d, const Name& schema,
                           const std::vector<Name>& args,
                           const std::map<Name, Name>& objects);

/// Enumerate every type-correct grounding of every schema over `objects`.
std::vector<GroundAction> all_ground_actions(const Domain& d,
                                             const std::map<Name, Name>& objects);

/// Infer an object->type map from fluents, using predicate declarations.
/// Conflicting requirements resolve to the most derived type; incompatible
/// ones raise ValidationError.
std::map<Name, Name> infer_objects(const Domain& d,
                                   const std::set<Fluent>& fluents);

}  // namespace prorac
