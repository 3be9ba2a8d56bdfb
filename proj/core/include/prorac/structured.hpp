#pragma once

#include <string>
#include <vector>

#include "prorac/parser.hpp"
#include "prorac/query.hpp"

namespace prorac {

/// Structured fixture questions use a one-paragraph pipe-separated form:
///
///   init: (clear a) (handempty) ... | plan: (pickup a) ; (stack a b) |
///   query[projection]: (on a b) (not (clear b))
///
/// An empty plan section means a zero-action sequence. Multiple-choice
/// questions list lettered literal sets instead of a single query:
///
///   query[projection]: choices A = (on a b) ; B = (on b a)
///
/// The symbolic mock reasoner and the harness oracle both parse this form;
/// free-text benchmark questions bypass it entirely.

struct StructuredChoice {
  std::string letter;  // normalized uppercase
  std::vector<Literal> literals;
};

struct StructuredQuery {
  QueryKind kind = QueryKind::Projection;
  std::vector<Literal> literals;
  std::vector<StructuredChoice> choices;  // nonempty for MCQ

  bool is_mcq() const { return !choices.empty(); }
};

struct StructuredQuestion {
  State init;
  std::vector<GroundAction> plan;
  StructuredQuery query;
};

std::string query_kind_tag(QueryKind k);
QueryKind query_kind_from_tag(const std::string& tag);

StructuredQuestion parse_structured_question(const std::string& text,
                                             const Domain& d);

/// Parse just a "query[kind]: ..." section (the question extractor's output).
StructuredQuery parse_query_section(const std::string& text, const Domain& d);

std::string format_query_section(const StructuredQuery& q);
std::string format_structured_question(const StructuredQuestion& q);

/// True when the text looks like the structured form (starts with "init:").
bool looks_structured(const std::string& text);

}  // namespace prorac
