#include "prorac/domain.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace prorac {

namespace {
const Name kObject("object");
}

bool Domain::is_subtype(const Name& t, const Name& ancestor) const {
  if (ancestor == kObject) return true;
  Name cur = t;
  for (int depth = 0; depth < 64; ++depth) {
    if (cur == ancestor) return true;
    auto it = types.find(cur);
    if (it == types.end() || !it->second) return false;
    cur = *it->second;
  }
  return false;
}

std::string GroundAction::text() const {
  std::ostringstream os;
  os << '(' << schema.str();
  for (const auto& a : args) os << ' ' << a.str();
  os << ')';
  return os.str();
}

namespace {

Fluent substitute(const FluentTemplate& t,
                  const std::map<Name, Name>& binding) {
  Fluent f;
  f.predicate = t.predicate;
  f.args.reserve(t.args.size());
  for (const auto& term : t.args) {
    if (term.is_var) {
      f.args.push_back(binding.at(term.name));
    } else {
      f.args.push_back(term.name);
    }
  }
  return f;
}

}  // namespace

GroundAction ground_action(const Domain& d, const Name& schema,
                           const std::vector<Name>& args,
                           const std::map<Name, Name>& objects) {
  auto sit = d.schemas.find(schema);
  if (sit == d.schemas.end())
    throw UnknownSchema("unknown action schema '" + schema.str() + "'");
  const ActionSchema& s = sit->second;
  if (args.size() != s.params.size())
    throw ArityMismatch("action '" + schema.str() + "' expects " +
                        std::to_string(s.params.size()) + " arguments, got " +
                        std::to_string(args.size()));

  std::map<Name, Name> binding;
  for (std::size_t i = 0; i < args.size(); ++i) {
    auto oit = objects.find(args[i]);
    if (oit == objects.end())
      throw TypeMismatch("unknown object '" + args[i].str() + "' for action '" +
                         schema.str() + "'");
    if (!d.is_subtype(oit->second, s.params[i].type))
      throw TypeMismatch("object '" + args[i].str() + "' of type '" +
                         oit->second.str() + "' does not fit parameter '" +
                         s.params[i].var.str() + "' of type '" +
                         s.params[i].type.str() + "'");
    binding[s.params[i].var] = args[i];
  }

  GroundAction g;
  g.schema = schema;
  g.args = args;
  for (const auto& lt : s.precondition)
    g.precondition.push_back({substitute(lt.fluent, binding), lt.positive});
  for (const auto& ft : s.add) g.add.insert(substitute(ft, binding));
  for (const auto& ft : s.del) g.del.insert(substitute(ft, binding));
  return g;
}

std::vector<GroundAction> all_ground_actions(
    const Domain& d, const std::map<Name, Name>& objects) {
  std::vector<GroundAction> out;
  for (const auto& [sname, schema] : d.schemas) {
    std::vector<std::vector<Name>> candidates(schema.params.size());
    for (std::size_t i = 0; i < schema.params.size(); ++i) {
      for (const auto& [obj, type] : objects) {
        if (d.is_subtype(type, schema.params[i].type))
          candidates[i].push_back(obj);
      }
    }
    std::vector<Name> pick(schema.params.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == schema.params.size()) {
        out.push_back(ground_action(d, sname, pick, objects));
        return;
      }
      for (const auto& obj : candidates[i]) {
        pick[i] = obj;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

std::map<Name, Name> infer_objects(const Domain& d,
                                   const std::set<Fluent>& fluents) {
  std::map<Name, Name> out;
  for (const auto& f : fluents) {
    auto pit = d.predicates.find(f.predicate);
    if (pit == d.predicates.end())
      throw ValidationError("undeclared predicate '" + f.predicate.str() + "'");
    if (pit->second.arity() != f.args.size())
      throw ValidationError("arity mismatch for predicate '" +
                            f.predicate.str() + "'");
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      const Name& required = pit->second.params[i].type;
      auto it = out.find(f.args[i]);
      if (it == out.end()) {
        out[f.args[i]] = required;
      } else if (d.is_subtype(it->second, required)) {
        // keep the more derived type already recorded
      } else if (d.is_subtype(required, it->second)) {
        it->second = required;
      } else {
        throw ValidationError("object '" + f.args[i].str() +
                              "' used with incompatible types '" +
                              it->second.str() + "' and '" + required.str() +
                              "'");
      }
    }
  }
  return out;
}

}  // namespace prorac
