#include "prorac/parser.hpp"

#include <cctype>
#include <memory>
#include <sstream>
#include <vector>

namespace prorac {

namespace {

// Minimal s-expression reader with line/column tracking.
struct Sexp {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexp> items;
  int line = 0;
  int column = 0;

  const Sexp& at(std::size_t i) const {
    if (i >= items.size())
      throw ParseError("expected more elements in list", line, column);
    return items[i];
  }
  const std::string& head() const {
    if (items.empty() || !items[0].is_atom)
      throw ParseError("expected list starting with an atom", line, column);
    return items[0].atom;
  }
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Sexp read() {
    skip_ws();
    if (eof()) throw ParseError("unexpected end of input", line_, col_);
    if (peek() == '(') return read_list();
    return read_atom();
  }

  bool at_end() {
    skip_ws();
    return eof();
  }

  int line() const { return line_; }
  int column() const { return col_; }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexp read_list() {
    Sexp s;
    s.line = line_;
    s.column = col_;
    advance();  // '('
    while (true) {
      skip_ws();
      if (eof()) throw ParseError("unclosed '('", s.line, s.column);
      if (peek() == ')') {
        advance();
        return s;
      }
      s.items.push_back(read());
    }
  }

  Sexp read_atom() {
    Sexp s;
    s.is_atom = true;
    s.line = line_;
    s.column = col_;
    while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) &&
           peek() != '(' && peek() != ')' && peek() != ';') {
      s.atom.push_back(advance());
    }
    if (s.atom.empty())
      throw ParseError("empty atom", s.line, s.column);
    return s;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

Name atom_name(const Sexp& s) {
  if (!s.is_atom) throw ParseError("expected an atom", s.line, s.column);
  try {
    return Name(s.atom);
  } catch (const InvalidName& e) {
    throw ParseError(e.what(), s.line, s.column);
  }
}

bool is_var(const Sexp& s) { return s.is_atom && !s.atom.empty() && s.atom[0] == '?'; }

Name var_name(const Sexp& s) {
  if (!is_var(s)) throw ParseError("expected a ?variable", s.line, s.column);
  try {
    return Name(s.atom.substr(1));
  } catch (const InvalidName& e) {
    throw ParseError(e.what(), s.line, s.column);
  }
}

// Parse "a b - t c d - u" style typed lists; callback gets (name, type, sexp).
template <typename F>
void parse_typed_list(const std::vector<Sexp>& items, std::size_t begin, F emit) {
  std::vector<const Sexp*> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const Sexp& s = items[i];
    if (s.is_atom && s.atom == "-") {
      if (i + 1 >= items.size())
        throw ParseError("dangling '-' in typed list", s.line, s.column);
      Name type = atom_name(items[i + 1]);
      for (const Sexp* p : pending) emit(*p, type);
      pending.clear();
      ++i;
    } else {
      pending.push_back(&s);
    }
  }
  Name object("object");
  for (const Sexp* p : pending) emit(*p, object);
}

FluentTemplate parse_fluent_template(const Sexp& s, const Domain& d,
                                     const std::vector<TypedParam>& params) {
  if (s.is_atom) throw ParseError("expected a fluent list", s.line, s.column);
  FluentTemplate ft;
  ft.predicate = atom_name(s.at(0));
  auto pit = d.predicates.find(ft.predicate);
  if (pit == d.predicates.end())
    throw ValidationError("undeclared predicate '" + ft.predicate.str() + "'");
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    FluentTemplate::Term term;
    if (is_var(s.items[i])) {
      term.is_var = true;
      term.name = var_name(s.items[i]);
      bool declared = false;
      for (const auto& p : params) declared = declared || p.var == term.name;
      if (!declared)
        throw ValidationError("variable '?" + term.name.str() +
                              "' not in parameters of the action");
    } else {
      term.name = atom_name(s.items[i]);
    }
    ft.args.push_back(term);
  }
  if (ft.args.size() != pit->second.arity())
    throw ValidationError("predicate '" + ft.predicate.str() + "' expects " +
                          std::to_string(pit->second.arity()) + " arguments");
  return ft;
}

LiteralTemplate parse_literal_template(const Sexp& s, const Domain& d,
                                       const std::vector<TypedParam>& params) {
  if (!s.is_atom && !s.items.empty() && s.items[0].is_atom &&
      s.items[0].atom == "not") {
    if (s.items.size() != 2)
      throw ParseError("'not' takes exactly one fluent", s.line, s.column);
    return {parse_fluent_template(s.at(1), d, params), false};
  }
  return {parse_fluent_template(s, d, params), true};
}

std::vector<Sexp> conjunction_items(const Sexp& s) {
  if (!s.is_atom && !s.items.empty() && s.items[0].is_atom &&
      s.items[0].atom == "and") {
    return {s.items.begin() + 1, s.items.end()};
  }
  return {s};
}

ActionSchema parse_action(const Sexp& s, const Domain& d) {
  ActionSchema a;
  a.name = atom_name(s.at(1));
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    const Sexp& key = s.items[i];
    if (!key.is_atom || key.atom.empty() || key.atom[0] != ':')
      throw ParseError("expected :keyword in action body", key.line, key.column);
    if (i + 1 >= s.items.size())
      throw ParseError("missing value after " + key.atom, key.line, key.column);
    const Sexp& val = s.items[++i];
    if (key.atom == ":parameters") {
      parse_typed_list(val.items, 0, [&](const Sexp& v, const Name& type) {
        a.params.push_back({var_name(v), type});
      });
    } else if (key.atom == ":precondition") {
      for (const auto& item : conjunction_items(val))
        a.precondition.push_back(parse_literal_template(item, d, a.params));
    } else if (key.atom == ":effect") {
      for (const auto& item : conjunction_items(val)) {
        LiteralTemplate lt = parse_literal_template(item, d, a.params);
        if (lt.positive) {
          a.add.push_back(lt.fluent);
        } else {
          a.del.push_back(lt.fluent);
        }
      }
    } else {
      throw ParseError("unknown action section " + key.atom, key.line,
                       key.column);
    }
  }
  for (const auto& f : a.add) {
    for (const auto& g : a.del) {
      if (f == g)
        throw ValidationError("action '" + a.name.str() +
                              "' both adds and deletes " + f.predicate.str());
    }
  }
  return a;
}

Fluent parse_ground_fluent(const Sexp& s, const Domain& d) {
  if (s.is_atom) throw ParseError("expected a fluent list", s.line, s.column);
  Fluent f;
  f.predicate = atom_name(s.at(0));
  auto pit = d.predicates.find(f.predicate);
  if (pit == d.predicates.end())
    throw ValidationError("undeclared predicate '" + f.predicate.str() + "'");
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    if (is_var(s.items[i]))
      throw ValidationError("variable not allowed in ground fluent");
    f.args.push_back(atom_name(s.items[i]));
  }
  if (f.args.size() != pit->second.arity())
    throw ValidationError("predicate '" + f.predicate.str() + "' expects " +
                          std::to_string(pit->second.arity()) +
                          " arguments, got " + std::to_string(f.args.size()));
  return f;
}

void check_fluent_objects(const Fluent& f, const Domain& d,
                          const std::map<Name, Name>& objects) {
  const PredicateDecl& decl = d.predicates.at(f.predicate);
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    auto oit = objects.find(f.args[i]);
    if (oit == objects.end())
      throw ValidationError("unknown object '" + f.args[i].str() + "' in " +
                            f.text());
    if (!d.is_subtype(oit->second, decl.params[i].type))
      throw ValidationError("object '" + f.args[i].str() +
                            "' has wrong type in " + f.text());
  }
}

}  // namespace

Domain parse_domain(const std::string& text) {
  Lexer lex(text);
  if (lex.at_end()) throw ParseError("empty domain text", 1, 1);
  Sexp top = lex.read();
  if (top.is_atom || top.head() != "define")
    throw ParseError("expected (define (domain ...))", top.line, top.column);
  const Sexp& hd = top.at(1);
  if (hd.is_atom || hd.head() != "domain")
    throw ParseError("expected (domain N)", hd.line, hd.column);

  Domain d;
  d.name = atom_name(hd.at(1));
  d.types[Name("object")] = std::nullopt;

  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const Sexp& sec = top.items[i];
    const std::string& kind = sec.head();
    if (kind == ":types") {
      parse_typed_list(sec.items, 1, [&](const Sexp& v, const Name& parent) {
        Name t = atom_name(v);
        d.types[t] = (parent.str() == "object")
                         ? std::optional<Name>{}
                         : std::optional<Name>{parent};
        if (!d.types.count(parent)) d.types[parent] = std::nullopt;
      });
    } else if (kind == ":predicates") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const Sexp& p = sec.items[j];
        PredicateDecl decl;
        decl.name = atom_name(p.at(0));
        parse_typed_list(p.items, 1, [&](const Sexp& v, const Name& type) {
          decl.params.push_back({var_name(v), type});
        });
        if (d.predicates.count(decl.name))
          throw ValidationError("duplicate predicate '" + decl.name.str() + "'");
        d.predicates[decl.name] = std::move(decl);
      }
    } else if (kind == ":action") {
      ActionSchema a = parse_action(sec, d);
      if (d.schemas.count(a.name))
        throw ValidationError("duplicate action '" + a.name.str() + "'");
      d.schemas[a.name] = std::move(a);
    } else {
      throw ParseError("unknown domain section " + kind, sec.line, sec.column);
    }
  }

  // Referenced types must exist.
  for (const auto& [pname, decl] : d.predicates) {
    for (const auto& p : decl.params) {
      if (p.type.str() != "object" && !d.types.count(p.type))
        throw ValidationError("predicate '" + pname.str() +
                              "' uses undeclared type '" + p.type.str() + "'");
    }
  }
  for (const auto& [sname, schema] : d.schemas) {
    for (const auto& p : schema.params) {
      if (p.type.str() != "object" && !d.types.count(p.type))
        throw ValidationError("action '" + sname.str() +
                              "' uses undeclared type '" + p.type.str() + "'");
    }
  }
  return d;
}

Problem parse_problem(const std::string& text, const Domain& d) {
  Lexer lex(text);
  if (lex.at_end()) throw ParseError("empty problem text", 1, 1);
  Sexp top = lex.read();
  if (top.is_atom || top.head() != "define")
    throw ParseError("expected (define (problem ...))", top.line, top.column);
  const Sexp& hd = top.at(1);
  if (hd.is_atom || hd.head() != "problem")
    throw ParseError("expected (problem N)", hd.line, hd.column);

  Problem p;
  p.name = atom_name(hd.at(1));

  for (std::size_t i = 2; i < top.items.size(); ++i) {
    const Sexp& sec = top.items[i];
    const std::string& kind = sec.head();
    if (kind == ":domain") {
      p.domain = atom_name(sec.at(1));
      if (p.domain != d.name)
        throw ValidationError("problem names domain '" + p.domain.str() +
                              "' but '" + d.name.str() + "' was given");
    } else if (kind == ":objects") {
      parse_typed_list(sec.items, 1, [&](const Sexp& v, const Name& type) {
        Name obj = atom_name(v);
        if (type.str() != "object" && !d.types.count(type))
          throw ValidationError("object '" + obj.str() +
                                "' has undeclared type '" + type.str() + "'");
        p.objects[obj] = type;
      });
    } else if (kind == ":init") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        Fluent f = parse_ground_fluent(sec.items[j], d);
        check_fluent_objects(f, d, p.objects);
        p.init.insert(f);
      }
    } else if (kind == ":goal") {
      std::vector<Literal> goal;
      for (const auto& item : conjunction_items(sec.at(1))) {
        bool positive = true;
        const Sexp* fl = &item;
        if (!item.is_atom && !item.items.empty() && item.items[0].is_atom &&
            item.items[0].atom == "not") {
          positive = false;
          fl = &item.at(1);
        }
        Fluent f = parse_ground_fluent(*fl, d);
        check_fluent_objects(f, d, p.objects);
        goal.push_back({f, positive});
      }
      p.goal = std::move(goal);
    } else {
      throw ParseError("unknown problem section " + kind, sec.line, sec.column);
    }
  }
  if (p.domain.empty())
    throw ValidationError("problem is missing a (:domain ...) section");
  return p;
}

State parse_state_text(const std::string& text, const Domain& d,
                       const std::map<Name, Name>& objects) {
  Lexer lex(text);
  State s;
  while (!lex.at_end()) {
    Sexp item = lex.read();
    Fluent f = parse_ground_fluent(item, d);
    check_fluent_objects(f, d, objects);
    s.insert(f);
  }
  return s;
}

State parse_state_text(const std::string& text, const Domain& d) {
  Lexer lex(text);
  std::set<Fluent> fs;
  while (!lex.at_end()) fs.insert(parse_ground_fluent(lex.read(), d));
  infer_objects(d, fs);  // type-consistency check
  return State(fs);
}

GroundAction parse_action_term(const std::string& text, const Domain& d,
                               const std::map<Name, Name>& objects) {
  Lexer lex(text);
  if (lex.at_end()) throw ParseError("empty action term", 1, 1);
  Sexp s = lex.read();
  std::vector<Sexp> parts;
  if (s.is_atom) {
    // bare "pickup a" form
    parts.push_back(s);
    while (!lex.at_end()) parts.push_back(lex.read());
  } else {
    parts = s.items;
  }
  if (parts.empty()) throw ParseError("empty action term", s.line, s.column);
  Name schema = atom_name(parts[0]);
  std::vector<Name> args;
  for (std::size_t i = 1; i < parts.size(); ++i)
    args.push_back(atom_name(parts[i]));
  return ground_action(d, schema, args, objects);
}

Literal parse_literal_text(const std::string& text, const Domain& d) {
  Lexer lex(text);
  if (lex.at_end()) throw ParseError("empty literal", 1, 1);
  Sexp s = lex.read();
  if (!s.is_atom && !s.items.empty() && s.items[0].is_atom &&
      s.items[0].atom == "not") {
    return {parse_ground_fluent(s.at(1), d), false};
  }
  return {parse_ground_fluent(s, d), true};
}

}  // namespace prorac
