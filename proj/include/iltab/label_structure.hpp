#pragma once

#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "iltab/horn.hpp"
#include "iltab/label.hpp"

namespace iltab {

// The relational closure of a set of labels: the least R and S containing the
// steps spelled out by the labels themselves and closed under the frame rules
// (R transitive; S_rho transitive, reflexive on R-successors, spanning
// R-chains, and confined to R-successors of its base) plus the clauses of a
// frame condition. S is stored as (base, from, to) triples.
class LabelStructure {
 public:
  struct Delta {
    std::vector<std::pair<Label, Label>> r_pairs;
    std::vector<std::tuple<Label, Label, Label>> s_triples;

    bool empty() const { return r_pairs.empty() && s_triples.empty(); }
  };

  LabelStructure() = default;  // empty label set, no condition

  static LabelStructure close(const std::set<Label>& lambda, FrameCondition condition);

  // Closure of labels() + {label}. The delta lists every tuple not present
  // before, sorted canonically. Throws std::invalid_argument on duplicates.
  std::pair<LabelStructure, Delta> add_label(const Label& label) const;

  const std::set<Label>& labels() const { return lambda_; }
  const std::set<std::pair<Label, Label>>& r_pairs() const { return r_; }
  const std::set<std::tuple<Label, Label, Label>>& s_triples() const { return s_; }
  const FrameCondition& condition() const { return condition_; }

  // Throw std::out_of_range when a label is not in labels().
  bool r_related(const Label& a, const Label& b) const;
  bool s_related(const Label& base, const Label& from, const Label& to) const;

  std::vector<Label> r_successors(const Label& a) const;
  std::vector<Label> s_successors(const Label& base, const Label& from) const;

  // R is kept transitively closed, so a cycle shows up as a reflexive pair.
  bool has_r_cycle() const;

  // "R <from> <to>" and "S <base> <from> <to>" lines, token-rendered labels,
  // canonically sorted, R before S.
  std::string dump() const;

  bool operator==(const LabelStructure& o) const {
    return lambda_ == o.lambda_ && r_ == o.r_ && s_ == o.s_ &&
           condition_ == o.condition_;
  }
  bool operator!=(const LabelStructure& o) const { return !(*this == o); }

 private:
  void require_member(const Label& l) const;

  std::set<Label> lambda_;
  std::set<std::pair<Label, Label>> r_;
  std::set<std::tuple<Label, Label, Label>> s_;
  FrameCondition condition_;
};

}  // namespace iltab
