#include "prorac/structured.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prorac {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Literal> parse_literal_list(const std::string& text,
                                        const Domain& d) {
  std::vector<Literal> out;
  // literals are parenthesized; scan balanced groups
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(')
      throw ValidationError("expected '(' in literal list: " + text);
    int depth = 0;
    std::size_t start = i;
    for (; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') {
        --depth;
        if (depth == 0) {
          ++i;
          break;
        }
      }
    }
    if (depth != 0) throw ValidationError("unbalanced literal list: " + text);
    out.push_back(parse_literal_text(text.substr(start, i - start), d));
  }
  return out;
}

}  // namespace

std::string query_kind_tag(QueryKind k) {
  switch (k) {
    case QueryKind::Projection: return "projection";
    case QueryKind::Executability: return "executability";
    case QueryKind::PlanVerification: return "plan_verification";
    case QueryKind::Validation: return "validation";
  }
  return "projection";
}

QueryKind query_kind_from_tag(const std::string& tag) {
  if (tag == "projection") return QueryKind::Projection;
  if (tag == "executability") return QueryKind::Executability;
  if (tag == "plan_verification") return QueryKind::PlanVerification;
  if (tag == "validation") return QueryKind::Validation;
  throw ValidationError("unknown query kind tag '" + tag + "'");
}

bool looks_structured(const std::string& text) {
  return trim(text).rfind("init:", 0) == 0;
}

StructuredQuery parse_query_section(const std::string& text, const Domain& d) {
  std::string t = trim(text);
  if (t.rfind("query[", 0) != 0)
    throw ValidationError("query section must start with 'query[': " + t);
  auto close = t.find(']');
  auto colon = t.find(':', close);
  if (close == std::string::npos || colon == std::string::npos)
    throw ValidationError("malformed query section: " + t);
  StructuredQuery q;
  q.kind = query_kind_from_tag(t.substr(6, close - 6));
  std::string body = trim(t.substr(colon + 1));
  if (body.rfind("choices", 0) == 0) {
    for (const std::string& part : split(body.substr(7), ';')) {
      std::string p = trim(part);
      if (p.empty()) continue;
      auto eq = p.find('=');
      if (eq == std::string::npos)
        throw ValidationError("malformed choice '" + p + "'");
      StructuredChoice c;
      c.letter = trim(p.substr(0, eq));
      std::transform(c.letter.begin(), c.letter.end(), c.letter.begin(),
                     [](unsigned char ch) { return std::toupper(ch); });
      c.literals = parse_literal_list(trim(p.substr(eq + 1)), d);
      q.choices.push_back(std::move(c));
    }
    if (q.choices.empty())
      throw ValidationError("MCQ query with no choices: " + t);
  } else {
    q.literals = parse_literal_list(body, d);
  }
  return q;
}

StructuredQuestion parse_structured_question(const std::string& text,
                                             const Domain& d) {
  StructuredQuestion out;
  bool saw_init = false, saw_plan = false, saw_query = false;
  for (const std::string& raw : split(text, '|')) {
    std::string section = trim(raw);
    if (section.empty()) continue;
    if (section.rfind("init:", 0) == 0) {
      out.init = parse_state_text(trim(section.substr(5)), d);
      saw_init = true;
    } else if (section.rfind("plan:", 0) == 0) {
      saw_plan = true;
      std::string body = trim(section.substr(5));
      if (body.empty()) continue;
      auto objects = infer_objects(d, out.init.fluents());
      for (const std::string& term : split(body, ';')) {
        std::string t = trim(term);
        if (t.empty()) continue;
        // an action argument absent from the init state takes its declared
        // parameter type
        std::istringstream is(t);
        std::string tok;
        std::vector<std::string> toks;
        while (is >> tok) {
          while (!tok.empty() && (tok.front() == '(')) tok.erase(tok.begin());
          while (!tok.empty() && (tok.back() == ')')) tok.pop_back();
          if (!tok.empty()) toks.push_back(tok);
        }
        if (!toks.empty()) {
          auto sit = d.schemas.find(Name(toks[0]));
          if (sit != d.schemas.end()) {
            for (std::size_t i = 1;
                 i < toks.size() && i <= sit->second.params.size(); ++i) {
              Name obj(toks[i]);
              const Name& declared = sit->second.params[i - 1].type;
              auto oit = objects.find(obj);
              if (oit == objects.end()) {
                objects[obj] = declared;
              } else if (d.is_subtype(declared, oit->second)) {
                // the action usage pins down a more derived type than the
                // init-state fluents alone could
                oit->second = declared;
              }
            }
          }
        }
        out.plan.push_back(parse_action_term(t, d, objects));
      }
    } else if (section.rfind("query[", 0) == 0) {
      out.query = parse_query_section(section, d);
      saw_query = true;
    } else {
      throw ValidationError("unknown structured section: " + section);
    }
  }
  if (!saw_init || !saw_plan || !saw_query)
    throw ValidationError("structured question needs init, plan and query");
  return out;
}

std::string format_query_section(const StructuredQuery& q) {
  std::ostringstream os;
  os << "query[" << query_kind_tag(q.kind) << "]:";
  if (q.is_mcq()) {
    os << " choices";
    for (std::size_t i = 0; i < q.choices.size(); ++i) {
      os << (i ? " ; " : " ") << q.choices[i].letter << " =";
      for (const auto& l : q.choices[i].literals) os << ' ' << l.text();
    }
  } else {
    for (const auto& l : q.literals) os << ' ' << l.text();
  }
  return os.str();
}

std::string format_structured_question(const StructuredQuestion& q) {
  std::ostringstream os;
  os << "init: " << q.init.canonical_text() << " | plan:";
  for (std::size_t i = 0; i < q.plan.size(); ++i)
    os << (i ? " ; " : " ") << q.plan[i].text();
  os << " | " << format_query_section(q.query);
  return os.str();
}

}  // namespace prorac
