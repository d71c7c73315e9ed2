#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace iltab {

// One relational atom over world variables: R(x,y) or S(x;y,z).
// For S the first argument is the base, so S(x;y,z) reads "y S_x z".
struct HornAtom {
  enum class Pred { R, S };

  Pred pred = Pred::R;
  std::vector<std::string> args;  // 2 for R, 3 for S

  std::string str() const;

  bool operator==(const HornAtom& o) const { return pred == o.pred && args == o.args; }
  bool operator!=(const HornAtom& o) const { return !(*this == o); }
};

// body_1, ..., body_n -> head, all atoms positive, n >= 1, and every head
// variable occurs in the body.
struct HornClause {
  std::vector<HornAtom> body;
  HornAtom head;

  std::string str() const;

  bool operator==(const HornClause& o) const { return body == o.body && head == o.head; }
  bool operator!=(const HornClause& o) const { return !(*this == o); }
};

class FrameCondition {
 public:
  FrameCondition() = default;  // no clauses
  // Validates every clause; throws std::invalid_argument.
  FrameCondition(std::string name, std::vector<HornClause> clauses);

  const std::string& name() const { return name_; }
  const std::vector<HornClause>& clauses() const { return clauses_; }
  bool empty() const { return clauses_.empty(); }

  std::string str() const;  // one clause per line, parseable by parse_horn

  bool operator==(const FrameCondition& o) const { return clauses_ == o.clauses_; }
  bool operator!=(const FrameCondition& o) const { return !(*this == o); }

 private:
  std::string name_ = "user";
  std::vector<HornClause> clauses_;
};

// One clause per line; blank lines and '#' comments are skipped.
// Throws ParseError.
FrameCondition parse_horn(std::string_view text, std::string name = "user");

// Built-in logics: "IL" (no condition), "ILM", "ILP". Case-insensitive.
// Throws std::invalid_argument on unknown names.
FrameCondition preset(std::string_view name);

}  // namespace iltab
