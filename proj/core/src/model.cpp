#include "prorac/model.hpp"

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

}  // namespace

Name::Name(const std::string& raw) {
  std::string t = trim(raw);
  if (t.empty()) throw InvalidName("empty name");
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (!std::isalpha(static_cast<unsigned char>(t.front())))
    throw InvalidName("name must start with a letter: '" + t + "'");
  for (char c : t) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    if (!ok) throw InvalidName("invalid character in name: '" + t + "'");
  }
  text_ = std::move(t);
}

Name normalize_name(const std::string& raw) { return Name(raw); }

std::string Fluent::text() const {
  std::ostringstream os;
  os << '(' << predicate.str();
  for (const auto& a : args) os << ' ' << a.str();
  os << ')';
  return os.str();
}

std::string Literal::text() const {
  if (positive) return fluent.text();
  return "(not " + fluent.text() + ")";
}

std::string State::canonical_text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : fluents_) {
    if (!first) os << ' ';
    os << f.text();
    first = false;
  }
  return os.str();
}

bool literal_holds(const State& s, const Literal& l) {
  return s.contains(l.fluent) == l.positive;
}

StateDiff state_diff(const State& before, const State& after) {
  StateDiff d;
  std::set_difference(after.fluents().begin(), after.fluents().end(),
                      before.fluents().begin(), before.fluents().end(),
                      std::inserter(d.added, d.added.end()));
  std::set_difference(before.fluents().begin(), before.fluents().end(),
                      after.fluents().begin(), after.fluents().end(),
                      std::inserter(d.removed, d.removed.end()));
  return d;
}

}  // namespace prorac
