#pragma once

#include <string>

#include "prorac/domain.hpp"

namespace prorac {

/// Parse a domain definition:
///   (define (domain N)
///     (:types t - parent ...)
///     (:predicates (p ?v - t ...) ...)
///     (:action N :parameters (?v - t ...)
///              :precondition (and lit*) :effect (and lit*)))
/// A negative effect literal is a delete. Line comments start with ';'.
Domain parse_domain(const std::string& text);

/// Parse a problem definition:
///   (define (problem N) (:domain D) (:objects o - t ...)
///     (:init (p a b) ...) (:goal (and lit*)))
Problem parse_problem(const std::string& text, const Domain& d);

/// Parse canonical state text, e.g. "(clear a) (handempty) (ontable a)".
/// Every fluent is checked against the predicate declarations and the given
/// object map (arity, types, known objects). Empty text is the empty state.
State parse_state_text(const std::string& text, const Domain& d,
                       const std::map<Name, Name>& objects);

/// As above but with the object universe inferred from the text itself.
State parse_state_text(const std::string& text, const Domain& d);

/// Parse one action term such as "(pickup a)" or "pickup a" and ground it.
GroundAction parse_action_term(const std::string& text, const Domain& d,
                               const std::map<Name, Name>& objects);

/// Parse one literal such as "(on a b)" or "(not (on a b))".
Literal parse_literal_text(const std::string& text, const Domain& d);

}  // namespace prorac
