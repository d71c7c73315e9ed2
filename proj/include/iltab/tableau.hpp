#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iltab/branch.hpp"
#include "iltab/formula.hpp"
#include "iltab/horn.hpp"
#include "iltab/label.hpp"
#include "iltab/semantics.hpp"

namespace iltab {

// Scheduling state of a tableau node. Awake nodes are waiting for their rule
// to fire; asleep nodes have instantiated every target currently available
// and get woken when a new label brings new targets; finished nodes never
// fire again. Literals are born finished.
enum class Mark { Awake, Asleep, Finished };
const char* to_string(Mark mark);

// The nine rules. Neg/Imp/NegImp rewrite in place, the nu rules instantiate
// a box or conditional at an accessible label, the pi rules create a fresh
// label witnessing a negated box or conditional.
enum class RuleId { Neg, Imp, NegImp, NuBox, NuS, NuRhd, PiBox, PiS, PiRhd };
const char* rule_name(RuleId rule);
bool is_nu(RuleId rule);
bool is_pi(RuleId rule);

// The rule whose principal shape the formula has; nullopt for literals.
std::optional<RuleId> rule_for(const Formula& f);

// Raised when the procedure cannot continue faithfully under the given frame
// condition (an S-extension whose base is not a prefix of the extended
// label, or a cyclic accessibility relation on a saturated branch).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The succedent of one rule application: each fork extends its own copy of
// the branch, so two forks split the branch. Pi rules report the label they
// created.
struct RuleApplication {
  std::vector<std::vector<LabelledFormula>> forks;
  std::optional<Label> fresh_label;
};

// Computes the succedent of applying a rule to branch.items[item_index]. Nu
// rules need a target label eligible in the branch structure; pi rules pick
// the least fresh index unless fresh_index is forced. Throws
// std::invalid_argument on shape or eligibility mismatches, UnsupportedError
// when a pi S-extension is impossible.
RuleApplication apply_rule(const Branch& branch, std::size_t item_index, RuleId rule,
                           const std::optional<Label>& target = std::nullopt,
                           std::optional<std::size_t> fresh_index = std::nullopt);

struct Bounds {
  std::size_t max_stages = 2000;
  std::size_t max_labels_per_branch = 64;
};

enum class Status { Closed, Open, Exhausted, Unsupported };
const char* to_string(Status status);

// The systematic tableau for a finite set of formulas, all placed at the
// root label. Each stage fires one rule: the awake node closest to the root
// (leftmost on ties), applied across every open branch it sits on.
class Tableau {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct NodeView {
    LabelledFormula item;
    Mark mark = Mark::Awake;
    std::size_t parent = npos;
    std::size_t depth = 0;
    std::size_t birth_stage = 0;
    std::vector<std::size_t> children;
  };

  Tableau() = default;  // empty placeholder; use the constructor below
  // Deduplicates gamma preserving order. Throws std::invalid_argument when
  // gamma is empty or contains an indexed box.
  Tableau(const std::vector<Formula>& gamma, FrameCondition condition);

  // Fires one rule; false when no node is awake.
  bool step();

  std::size_t stages() const { return stages_; }
  const FrameCondition& condition() const { return condition_; }

  std::size_t node_count() const { return nodes_.size(); }
  NodeView node(std::size_t i) const;

  std::size_t branch_count() const { return branches_.size(); }
  bool branch_closed(std::size_t i) const;
  // Open, every non-instantiating node on it finished, and every box or
  // conditional instantiated at every target the branch structure offers.
  // Saturated branches never change again.
  bool branch_saturated(std::size_t i) const;
  Branch branch(std::size_t i) const;

  bool all_closed() const;
  std::optional<std::size_t> leftmost_saturated_open() const;

  std::size_t distinct_labels() const;
  std::size_t max_open_branch_labels() const;

  // Indented tree, one node per line with its mark; closed leaves carry ✗.
  std::string render_text() const;
  // Graphviz digraph of the same tree.
  std::string render_dot() const;

 private:
  struct Node {
    LabelledFormula item;
    Mark mark = Mark::Awake;
    std::size_t parent = npos;
    std::size_t depth = 0;
    std::size_t birth_stage = 0;
    std::vector<std::size_t> children;
  };

  struct BranchState {
    std::vector<std::size_t> nodes;
    std::set<LabelledFormula> items;
    LabelStructure structure;
    std::map<std::size_t, std::set<Label>> covered;  // nu node -> targets done
    bool closed = false;
    // Saturation is re-derived only after the state changes; untouched
    // branches keep their verdict across stages.
    mutable bool saturation_known = false;
    mutable bool saturation_value = false;
  };

  void append_item(BranchState& st, const LabelledFormula& item);
  std::size_t find_awake() const;
  void extend(std::vector<BranchState>& out, BranchState st, std::size_t chosen,
              RuleId rule, const LabelledFormula& principal);
  std::vector<Label> nu_targets(const BranchState& st, const LabelledFormula& principal,
                                RuleId rule) const;

  std::vector<Node> nodes_;
  std::vector<BranchState> branches_;
  FrameCondition condition_;
  std::size_t stages_ = 0;
};

struct ProverResult {
  Status status = Status::Exhausted;
  std::size_t stages = 0;
  std::size_t labels = 0;
  std::optional<Branch> open_branch;    // set when status == Open
  std::optional<Model> countermodel;    // set when status == Open, verified
  std::string reason;                   // set when Exhausted or Unsupported
  Tableau tableau;
};

// Runs the systematic procedure on gamma until every branch closes (Closed),
// some branch saturates open (Open, with the model read off it), a bound
// trips (Exhausted), or the frame condition defeats the procedure
// (Unsupported).
ProverResult run(const std::vector<Formula>& gamma, const FrameCondition& condition,
                 const Bounds& bounds = {});

// Validity via refutation: runs {~goal}. Closed means goal is valid.
ProverResult prove(const Formula& goal, const FrameCondition& condition,
                   const Bounds& bounds = {});

}  // namespace iltab
