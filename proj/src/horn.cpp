#include "iltab/horn.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "iltab/errors.hpp"

namespace iltab {

std::string HornAtom::str() const {
  if (pred == Pred::R) return "R(" + args[0] + "," + args[1] + ")";
  return "S(" + args[0] + ";" + args[1] + "," + args[2] + ")";
}

std::string HornClause::str() const {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i > 0) out += ", ";
    out += body[i].str();
  }
  out += " -> ";
  out += head.str();
  return out;
}

namespace {

void validate_clause(const HornClause& clause) {
  auto check_atom = [](const HornAtom& a) {
    std::size_t want = a.pred == HornAtom::Pred::R ? 2 : 3;
    if (a.args.size() != want) {
      throw std::invalid_argument("atom " + a.str() + " has the wrong arity");
    }
    for (const std::string& v : a.args) {
      if (v.empty()) throw std::invalid_argument("empty variable name in " + a.str());
    }
  };
  if (clause.body.empty()) {
    throw std::invalid_argument(
        "clause '" + clause.str() +
        "' has an empty body; its head variables would be unrestricted");
  }
  check_atom(clause.head);
  std::set<std::string> bound;
  for (const HornAtom& a : clause.body) {
    check_atom(a);
    bound.insert(a.args.begin(), a.args.end());
  }
  for (const std::string& v : clause.head.args) {
    if (!bound.count(v)) {
      throw std::invalid_argument("head variable '" + v + "' of clause '" + clause.str() +
                                  "' does not occur in the body");
    }
  }
}

}  // namespace

FrameCondition::FrameCondition(std::string name, std::vector<HornClause> clauses)
    : name_(std::move(name)), clauses_(std::move(clauses)) {
  for (const HornClause& c : clauses_) validate_clause(c);
}

std::string FrameCondition::str() const {
  std::string out;
  for (const HornClause& c : clauses_) {
    out += c.str();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct LineParser {
  std::string_view text;
  std::size_t pos = 0;     // within the line
  std::size_t offset = 0;  // of the line within the whole input

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  bool try_consume(std::string_view s) {
    skip_space();
    if (text.substr(pos).substr(0, s.size()) == s) {
      pos += s.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view s) {
    if (!try_consume(s)) {
      throw ParseError("expected '" + std::string(s) + "'", offset + pos);
    }
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    if (pos == start) throw ParseError("expected an identifier", offset + pos);
    return std::string(text.substr(start, pos - start));
  }

  HornAtom atom() {
    skip_space();
    std::size_t start = pos;
    std::string pred = identifier();
    HornAtom a;
    if (pred == "R") {
      a.pred = HornAtom::Pred::R;
      expect("(");
      a.args.push_back(identifier());
      expect(",");
      a.args.push_back(identifier());
      expect(")");
    } else if (pred == "S") {
      a.pred = HornAtom::Pred::S;
      expect("(");
      a.args.push_back(identifier());
      expect(";");
      a.args.push_back(identifier());
      expect(",");
      a.args.push_back(identifier());
      expect(")");
    } else {
      throw ParseError("unknown predicate '" + pred + "'", offset + start);
    }
    return a;
  }
};

}  // namespace

FrameCondition parse_horn(std::string_view text, std::string name) {
  std::vector<HornClause> clauses;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t eol = text.find('\n', line_start);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(line_start, eol - line_start);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    LineParser p{line, 0, line_start};
    if (!p.at_end()) {
      HornClause clause;
      clause.body.push_back(p.atom());
      while (p.try_consume(",")) clause.body.push_back(p.atom());
      p.expect("->");
      clause.head = p.atom();
      if (!p.at_end()) throw ParseError("unexpected trailing input", line_start + p.pos);
      try {
        validate_clause(clause);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_start);
      }
      clauses.push_back(std::move(clause));
    }
    line_start = eol + 1;
  }
  return FrameCondition(std::move(name), std::move(clauses));
}

FrameCondition preset(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "IL") return FrameCondition("IL", {});
  if (upper == "ILM") return parse_horn("S(x;y,z), R(z,u) -> R(y,u)", "ILM");
  if (upper == "ILP") return parse_horn("R(x,y), R(y,z), S(x;z,u) -> S(y;z,u)", "ILP");
  throw std::invalid_argument("unknown logic preset: " + std::string(name));
}

}  // namespace iltab
