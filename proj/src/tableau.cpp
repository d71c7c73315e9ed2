#include "iltab/tableau.hpp"

#include <algorithm>

namespace iltab {

const char* to_string(Mark mark) {
  switch (mark) {
    case Mark::Awake: return "awake";
    case Mark::Asleep: return "asleep";
    case Mark::Finished: return "finished";
  }
  return "?";
}

const char* to_string(Status status) {
  switch (status) {
    case Status::Closed: return "closed";
    case Status::Open: return "open";
    case Status::Exhausted: return "exhausted";
    case Status::Unsupported: return "unsupported";
  }
  return "?";
}

const char* rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::Neg: return "neg";
    case RuleId::Imp: return "imp";
    case RuleId::NegImp: return "neg-imp";
    case RuleId::NuBox: return "nu-box";
    case RuleId::NuS: return "nu-s";
    case RuleId::NuRhd: return "nu-rhd";
    case RuleId::PiBox: return "pi-box";
    case RuleId::PiS: return "pi-s";
    case RuleId::PiRhd: return "pi-rhd";
  }
  return "?";
}

bool is_nu(RuleId rule) {
  return rule == RuleId::NuBox || rule == RuleId::NuS || rule == RuleId::NuRhd;
}

bool is_pi(RuleId rule) {
  return rule == RuleId::PiBox || rule == RuleId::PiS || rule == RuleId::PiRhd;
}

std::optional<RuleId> rule_for(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var: return std::nullopt;
    case Formula::Kind::Imp: return RuleId::Imp;
    case Formula::Kind::Box: return RuleId::NuBox;
    case Formula::Kind::BoxAt: return RuleId::NuS;
    case Formula::Kind::Rhd: return RuleId::NuRhd;
    case Formula::Kind::Neg:
      switch (f.body().kind()) {
        case Formula::Kind::Var: return std::nullopt;
        case Formula::Kind::Neg: return RuleId::Neg;
        case Formula::Kind::Imp: return RuleId::NegImp;
        case Formula::Kind::Box: return RuleId::PiBox;
        case Formula::Kind::BoxAt: return RuleId::PiS;
        case Formula::Kind::Rhd: return RuleId::PiRhd;
      }
  }
  return std::nullopt;
}

namespace {

LabelledFormula lf(Label label, Formula f) { return LabelledFormula{std::move(label), std::move(f)}; }

// The succedent template shared by apply_rule and the stage loop. "other" is
// the nu target or the pi fresh label; in-place rules ignore it.
std::vector<std::vector<LabelledFormula>> rule_forks(const LabelledFormula& item,
                                                     RuleId rule, const Label& other) {
  const Formula& f = item.formula;
  auto need = [&](bool ok) {
    if (!ok) {
      throw std::invalid_argument(std::string("rule ") + rule_name(rule) +
                                  " does not apply to " + item.str());
    }
  };
  switch (rule) {
    case RuleId::Neg:
      need(f.kind() == Formula::Kind::Neg && f.body().kind() == Formula::Kind::Neg);
      return {{lf(item.label, f.body().body())}};
    case RuleId::Imp:
      need(f.kind() == Formula::Kind::Imp);
      return {{lf(item.label, Formula::neg(f.left()))}, {lf(item.label, f.right())}};
    case RuleId::NegImp: {
      need(f.kind() == Formula::Kind::Neg && f.body().kind() == Formula::Kind::Imp);
      const Formula g = f.body();
      return {{lf(item.label, g.left()), lf(item.label, Formula::neg(g.right()))}};
    }
    case RuleId::NuBox:
      need(f.kind() == Formula::Kind::Box);
      return {{lf(other, f.body())}};
    case RuleId::NuS:
      need(f.kind() == Formula::Kind::BoxAt);
      return {{lf(other, f.body())}};
    case RuleId::NuRhd:
      need(f.kind() == Formula::Kind::Rhd);
      return {{lf(other, Formula::neg(f.left()))},
              {lf(other, Formula::neg(Formula::box_at(item.label, Formula::neg(f.right()))))}};
    case RuleId::PiBox: {
      need(f.kind() == Formula::Kind::Neg && f.body().kind() == Formula::Kind::Box);
      const Formula a = f.body().body();
      return {{lf(other, Formula::neg(a)), lf(other, Formula::box(a))}};
    }
    case RuleId::PiS: {
      need(f.kind() == Formula::Kind::Neg && f.body().kind() == Formula::Kind::BoxAt);
      const Formula a = f.body().body();
      return {{lf(other, Formula::neg(a)), lf(other, Formula::box(a))}};
    }
    case RuleId::PiRhd: {
      need(f.kind() == Formula::Kind::Neg && f.body().kind() == Formula::Kind::Rhd);
      const Formula g = f.body();
      return {{lf(other, g.left()),
               lf(other, Formula::box_at(item.label, Formula::neg(g.right()))),
               lf(other, Formula::box(Formula::neg(g.left())))}};
    }
  }
  throw std::invalid_argument("unknown rule");
}

[[noreturn]] void bad_s_extension(const Label& base, const Label& sigma) {
  throw UnsupportedError("cannot extend " + sigma.str() + " with an S-step: its base " +
                         base.str() + " is not a strict prefix of it");
}

Label pick_fresh(const std::set<Label>& labels, const Label& sigma, RuleId rule,
                 const Label& base, std::optional<std::size_t> forced) {
  auto candidate = [&](std::size_t n) {
    return rule == RuleId::PiS ? sigma.extend_s(base, n) : sigma.extend_r(n);
  };
  if (forced) {
    Label l = candidate(*forced);
    if (labels.count(l) > 0) {
      throw std::invalid_argument("label " + l.str() + " is not fresh");
    }
    return l;
  }
  for (std::size_t n = 0;; ++n) {
    Label l = candidate(n);
    if (labels.count(l) == 0) return l;
  }
}

}  // namespace

RuleApplication apply_rule(const Branch& branch, std::size_t item_index, RuleId rule,
                           const std::optional<Label>& target,
                           std::optional<std::size_t> fresh_index) {
  if (item_index >= branch.items.size()) {
    throw std::invalid_argument("item index out of range");
  }
  const LabelledFormula& item = branch.items[item_index];
  if (rule_for(item.formula) != rule) {
    throw std::invalid_argument(std::string("rule ") + rule_name(rule) +
                                " does not apply to " + item.str());
  }
  const LabelStructure& st = branch.structure;
  RuleApplication out;
  if (is_nu(rule)) {
    if (!target) {
      throw std::invalid_argument(std::string(rule_name(rule)) + " needs a target label");
    }
    bool eligible = st.labels().count(item.label) > 0 && st.labels().count(*target) > 0;
    if (eligible) {
      if (rule == RuleId::NuS) {
        const Label& base = item.formula.at_label();
        eligible = st.labels().count(base) > 0 && st.s_related(base, item.label, *target);
      } else {
        eligible = st.r_related(item.label, *target);
      }
    }
    if (!eligible) {
      throw std::invalid_argument("target " + target->str() + " is not eligible for " +
                                  item.str());
    }
    out.forks = rule_forks(item, rule, *target);
  } else if (is_pi(rule)) {
    Label base = Label::root();
    if (rule == RuleId::PiS) {
      base = item.formula.body().at_label();
      if (!is_strict_prefix(base, item.label)) bad_s_extension(base, item.label);
    }
    Label fresh = pick_fresh(st.labels(), item.label, rule, base, fresh_index);
    out.forks = rule_forks(item, rule, fresh);
    out.fresh_label = std::move(fresh);
  } else {
    out.forks = rule_forks(item, rule, item.label);
  }
  return out;
}

Tableau::Tableau(const std::vector<Formula>& gamma, FrameCondition condition)
    : condition_(std::move(condition)) {
  std::vector<Formula> unique;
  for (const Formula& f : gamma) {
    if (f.contains_box_at()) {
      throw std::invalid_argument("input formulas cannot contain the indexed box");
    }
    if (std::find(unique.begin(), unique.end(), f) == unique.end()) unique.push_back(f);
  }
  if (unique.empty()) throw std::invalid_argument("no formulas to start a tableau from");

  BranchState start;
  start.structure = LabelStructure::close({Label::root()}, condition_);
  branches_.push_back(std::move(start));
  for (const Formula& f : unique) {
    append_item(branches_[0], lf(Label::root(), f));
  }
}

void Tableau::append_item(BranchState& st, const LabelledFormula& item) {
  if (st.closed) return;
  st.saturation_known = false;
  const std::size_t parent = st.nodes.empty() ? npos : st.nodes.back();
  const Mark mark = rule_for(item.formula) ? Mark::Awake : Mark::Finished;
  const std::size_t depth = parent == npos ? 0 : nodes_[parent].depth + 1;
  nodes_.push_back(Node{item, mark, parent, depth, stages_, {}});
  const std::size_t index = nodes_.size() - 1;
  if (parent != npos) nodes_[parent].children.push_back(index);
  st.nodes.push_back(index);
  st.items.insert(item);

  bool clash = st.items.count(lf(item.label, Formula::neg(item.formula))) > 0;
  if (!clash && item.formula.kind() == Formula::Kind::Neg) {
    clash = st.items.count(lf(item.label, item.formula.body())) > 0;
  }
  if (clash) st.closed = true;
}

std::size_t Tableau::find_awake() const {
  std::size_t best = npos;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].mark != Mark::Awake) continue;
    if (best == npos || nodes_[i].depth < nodes_[best].depth) best = i;
  }
  return best;
}

std::vector<Label> Tableau::nu_targets(const BranchState& st, const LabelledFormula& principal,
                                       RuleId rule) const {
  if (rule == RuleId::NuS) {
    const Label& base = principal.formula.at_label();
    if (st.structure.labels().count(base) == 0) return {};
    return st.structure.s_successors(base, principal.label);
  }
  return st.structure.r_successors(principal.label);
}

void Tableau::extend(std::vector<BranchState>& out, BranchState st, std::size_t chosen,
                     RuleId rule, const LabelledFormula& principal) {
  st.saturation_known = false;
  switch (rule) {
    case RuleId::Neg:
    case RuleId::NegImp: {
      const auto forks = rule_forks(principal, rule, principal.label);
      for (const LabelledFormula& x : forks[0]) append_item(st, x);
      out.push_back(std::move(st));
      return;
    }
    case RuleId::Imp: {
      const auto forks = rule_forks(principal, rule, principal.label);
      BranchState right = st;
      for (const LabelledFormula& x : forks[0]) append_item(st, x);
      out.push_back(std::move(st));
      for (const LabelledFormula& x : forks[1]) append_item(right, x);
      out.push_back(std::move(right));
      return;
    }
    case RuleId::NuBox:
    case RuleId::NuS:
    case RuleId::NuRhd: {
      std::set<Label>& covered = st.covered[chosen];
      std::vector<Label> fresh_targets;
      for (const Label& t : nu_targets(st, principal, rule)) {
        if (covered.insert(t).second) fresh_targets.push_back(t);
      }
      if (fresh_targets.empty()) {
        out.push_back(std::move(st));
        return;
      }
      std::vector<BranchState> states;
      states.push_back(std::move(st));
      for (const Label& t : fresh_targets) {
        const auto forks = rule_forks(principal, rule, t);
        std::vector<BranchState> next;
        for (BranchState& s : states) {
          if (s.closed) {
            next.push_back(std::move(s));
            continue;
          }
          for (std::size_t k = 0; k + 1 < forks.size(); ++k) {
            BranchState copy = s;
            for (const LabelledFormula& x : forks[k]) append_item(copy, x);
            next.push_back(std::move(copy));
          }
          for (const LabelledFormula& x : forks.back()) append_item(s, x);
          next.push_back(std::move(s));
        }
        states = std::move(next);
      }
      for (BranchState& s : states) out.push_back(std::move(s));
      return;
    }
    case RuleId::PiBox:
    case RuleId::PiS:
    case RuleId::PiRhd: {
      Label base = Label::root();
      if (rule == RuleId::PiS) base = principal.formula.body().at_label();
      const Label fresh =
          pick_fresh(st.structure.labels(), principal.label, rule, base, std::nullopt);
      auto [grown, delta] = st.structure.add_label(fresh);
      st.structure = std::move(grown);
      const auto forks = rule_forks(principal, rule, fresh);
      for (const LabelledFormula& x : forks[0]) append_item(st, x);

      // New relational facts can give sleeping boxes and conditionals on this
      // branch new targets; wake them.
      for (std::size_t n : st.nodes) {
        Node& nd = nodes_[n];
        if (nd.mark != Mark::Asleep) continue;
        const Formula& g = nd.item.formula;
        bool woken = false;
        if (g.kind() == Formula::Kind::Box || g.kind() == Formula::Kind::Rhd) {
          for (const auto& [a, b] : delta.r_pairs) {
            if (a == nd.item.label) {
              woken = true;
              break;
            }
          }
        } else if (g.kind() == Formula::Kind::BoxAt) {
          for (const auto& [x, y, z] : delta.s_triples) {
            if (x == g.at_label() && y == nd.item.label) {
              woken = true;
              break;
            }
          }
        }
        if (woken) nd.mark = Mark::Awake;
      }
      out.push_back(std::move(st));
      return;
    }
  }
}

bool Tableau::step() {
  const std::size_t chosen = find_awake();
  if (chosen == npos) return false;
  ++stages_;
  const RuleId rule = *rule_for(nodes_[chosen].item.formula);
  const LabelledFormula principal = nodes_[chosen].item;

  // Check the S-extension shape before touching any branch, so a failure
  // leaves the tableau intact.
  if (rule == RuleId::PiS) {
    const Label& base = principal.formula.body().at_label();
    if (!is_strict_prefix(base, principal.label)) bad_s_extension(base, principal.label);
  }

  std::vector<BranchState> out;
  out.reserve(branches_.size());
  for (BranchState& st : branches_) {
    const bool through = !st.closed &&
                         std::find(st.nodes.begin(), st.nodes.end(), chosen) != st.nodes.end();
    if (through) {
      extend(out, std::move(st), chosen, rule, principal);
    } else {
      out.push_back(std::move(st));
    }
  }
  branches_ = std::move(out);

  nodes_[chosen].mark = is_nu(rule) ? Mark::Asleep : Mark::Finished;
  return true;
}

Tableau::NodeView Tableau::node(std::size_t i) const {
  if (i >= nodes_.size()) throw std::out_of_range("node index out of range");
  const Node& n = nodes_[i];
  return NodeView{n.item, n.mark, n.parent, n.depth, n.birth_stage, n.children};
}

bool Tableau::branch_closed(std::size_t i) const {
  if (i >= branches_.size()) throw std::out_of_range("branch index out of range");
  return branches_[i].closed;
}

bool Tableau::branch_saturated(std::size_t i) const {
  if (i >= branches_.size()) throw std::out_of_range("branch index out of range");
  const BranchState& st = branches_[i];
  if (st.saturation_known) return st.saturation_value;
  const auto compute = [&]() {
    if (st.closed) return false;
    for (std::size_t n : st.nodes) {
      const Node& nd = nodes_[n];
      const std::optional<RuleId> rule = rule_for(nd.item.formula);
      if (!rule) continue;
      if (is_nu(*rule)) {
        const std::set<Label>* covered = nullptr;
        if (auto it = st.covered.find(n); it != st.covered.end()) covered = &it->second;
        for (const Label& t : nu_targets(st, nd.item, *rule)) {
          if (covered == nullptr || covered->count(t) == 0) return false;
        }
      } else if (nd.mark == Mark::Awake) {
        return false;
      }
    }
    return true;
  };
  st.saturation_value = compute();
  st.saturation_known = true;
  return st.saturation_value;
}

Branch Tableau::branch(std::size_t i) const {
  if (i >= branches_.size()) throw std::out_of_range("branch index out of range");
  const BranchState& st = branches_[i];
  Branch b;
  b.items.reserve(st.nodes.size());
  for (std::size_t n : st.nodes) b.items.push_back(nodes_[n].item);
  b.structure = st.structure;
  return b;
}

bool Tableau::all_closed() const {
  return std::all_of(branches_.begin(), branches_.end(),
                     [](const BranchState& st) { return st.closed; });
}

std::optional<std::size_t> Tableau::leftmost_saturated_open() const {
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (branch_saturated(i)) return i;
  }
  return std::nullopt;
}

std::size_t Tableau::distinct_labels() const {
  std::set<Label> labels;
  for (const Node& n : nodes_) labels.insert(n.item.label);
  return labels.size();
}

std::size_t Tableau::max_open_branch_labels() const {
  std::size_t most = 0;
  for (const BranchState& st : branches_) {
    if (!st.closed) most = std::max(most, st.structure.labels().size());
  }
  return most;
}

std::string Tableau::render_text() const {
  std::set<std::size_t> closed_leaves;
  for (const BranchState& st : branches_) {
    if (st.closed && !st.nodes.empty()) closed_leaves.insert(st.nodes.back());
  }
  std::string out;
  std::vector<std::size_t> stack;
  if (!nodes_.empty()) stack.push_back(0);
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const Node& n = nodes_[i];
    out.append(2 * n.depth, ' ');
    out += n.item.str();
    out += "  [";
    out += to_string(n.mark);
    out += "]";
    if (closed_leaves.count(i) > 0) out += "  ✗";
    out += "\n";
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

namespace {

std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string Tableau::render_dot() const {
  std::set<std::size_t> closed_leaves;
  for (const BranchState& st : branches_) {
    if (st.closed && !st.nodes.empty()) closed_leaves.insert(st.nodes.back());
  }
  std::string out = "digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(n.item.str()) + "\\n[" +
           to_string(n.mark) + "]\"";
    if (closed_leaves.count(i) > 0) out += ", color=red";
    out += "];\n";
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t c : nodes_[i].children) {
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(c) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

ProverResult run(const std::vector<Formula>& gamma, const FrameCondition& condition,
                 const Bounds& bounds) {
  ProverResult res;
  res.tableau = Tableau(gamma, condition);
  Tableau& t = res.tableau;
  try {
    while (true) {
      if (t.all_closed()) {
        res.status = Status::Closed;
        break;
      }
      if (std::optional<std::size_t> open = t.leftmost_saturated_open()) {
        Branch b = t.branch(*open);
        if (b.structure.has_r_cycle()) {
          res.status = Status::Unsupported;
          res.reason =
              "the frame condition forces a cycle in the accessibility relation, "
              "so the open branch has no Noetherian model";
          break;
        }
        res.countermodel = extract_model(b);
        res.open_branch = std::move(b);
        res.status = Status::Open;
        break;
      }
      if (t.stages() >= bounds.max_stages) {
        res.status = Status::Exhausted;
        res.reason = "stage limit " + std::to_string(bounds.max_stages) + " reached";
        break;
      }
      if (t.max_open_branch_labels() >= bounds.max_labels_per_branch) {
        res.status = Status::Exhausted;
        res.reason = "label limit " + std::to_string(bounds.max_labels_per_branch) +
                     " reached on a branch";
        break;
      }
      if (!t.step()) {
        throw std::logic_error("no rule fires, yet some open branch is not saturated");
      }
    }
  } catch (const UnsupportedError& e) {
    res.status = Status::Unsupported;
    res.reason = e.what();
  }
  res.stages = t.stages();
  res.labels = t.distinct_labels();
  return res;
}

ProverResult prove(const Formula& goal, const FrameCondition& condition, const Bounds& bounds) {
  return run({Formula::neg(goal)}, condition, bounds);
}

}  // namespace iltab
