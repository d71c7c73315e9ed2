#include "iltab/label_structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "iltab/relation_closure.hpp"

namespace iltab {

namespace {

using LabelFact = detail::Fact<Label>;

// The step spelled by each label seeds the relations, provided the labels it
// mentions are all present: sigma R sigmaRn, and sigma S_rho sigmaS_rho-n.
std::vector<LabelFact> syntactic_seeds(const std::set<Label>& lambda) {
  std::vector<LabelFact> seeds;
  for (const Label& l : lambda) {
    if (l.is_root()) continue;
    Label par = l.parent();
    if (!lambda.count(par)) continue;
    if (l.last_step() == Label::StepKind::R) {
      seeds.push_back({false, par, l, Label::root()});
    } else {
      Label base = l.last_base();
      if (lambda.count(base)) seeds.push_back({true, base, par, l});
    }
  }
  return seeds;
}

}  // namespace

LabelStructure LabelStructure::close(const std::set<Label>& lambda,
                                     FrameCondition condition) {
  LabelStructure out;
  out.lambda_ = lambda;
  out.condition_ = std::move(condition);
  detail::Relations<Label> rels;
  detail::saturate(rels, detail::rule_set<Label>(out.condition_),
                   syntactic_seeds(lambda));
  out.r_ = std::move(rels.r);
  out.s_ = std::move(rels.s);
  return out;
}

std::pair<LabelStructure, LabelStructure::Delta> LabelStructure::add_label(
    const Label& label) const {
  if (lambda_.count(label)) {
    throw std::invalid_argument("label " + label.str() + " is already present");
  }
  LabelStructure out = *this;
  out.lambda_.insert(label);
  detail::Relations<Label> rels{out.r_, out.s_};
  std::vector<LabelFact> fresh;
  for (const LabelFact& f : syntactic_seeds(out.lambda_)) {
    if (!rels.contains(f)) fresh.push_back(f);
  }
  std::vector<LabelFact> added =
      detail::saturate(rels, detail::rule_set<Label>(condition_), fresh);
  out.r_ = std::move(rels.r);
  out.s_ = std::move(rels.s);

  Delta delta;
  for (const LabelFact& f : added) {
    if (f.is_s) {
      delta.s_triples.emplace_back(f.a, f.b, f.c);
    } else {
      delta.r_pairs.emplace_back(f.a, f.b);
    }
  }
  std::sort(delta.r_pairs.begin(), delta.r_pairs.end());
  std::sort(delta.s_triples.begin(), delta.s_triples.end());
  return {std::move(out), std::move(delta)};
}

void LabelStructure::require_member(const Label& l) const {
  if (!lambda_.count(l)) {
    throw std::out_of_range("label " + l.str() + " is not in the structure");
  }
}

bool LabelStructure::r_related(const Label& a, const Label& b) const {
  require_member(a);
  require_member(b);
  return r_.count({a, b}) > 0;
}

bool LabelStructure::s_related(const Label& base, const Label& from,
                               const Label& to) const {
  require_member(base);
  require_member(from);
  require_member(to);
  return s_.count({base, from, to}) > 0;
}

std::vector<Label> LabelStructure::r_successors(const Label& a) const {
  require_member(a);
  std::vector<Label> out;
  for (const auto& [x, y] : r_) {
    if (x == a) out.push_back(y);
  }
  return out;
}

std::vector<Label> LabelStructure::s_successors(const Label& base,
                                                const Label& from) const {
  require_member(base);
  require_member(from);
  std::vector<Label> out;
  for (const auto& [b, x, y] : s_) {
    if (b == base && x == from) out.push_back(y);
  }
  return out;
}

bool LabelStructure::has_r_cycle() const {
  for (const auto& [a, b] : r_) {
    if (a == b) return true;
  }
  return false;
}

std::string LabelStructure::dump() const {
  std::string out;
  for (const auto& [a, b] : r_) {
    out += "R " + a.token() + " " + b.token() + "\n";
  }
  for (const auto& [base, from, to] : s_) {
    out += "S " + base.token() + " " + from.token() + " " + to.token() + "\n";
  }
  return out;
}

}  // namespace iltab
