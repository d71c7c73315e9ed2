#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "iltab/branch.hpp"
#include "iltab/formula.hpp"
#include "iltab/horn.hpp"
#include "iltab/label.hpp"

namespace iltab {

// A finite model: a transitive acyclic accessibility relation R, one
// successor relation S_x per world (stored as (base, from, to) index
// triples), and a valuation. Worlds are named; relations use indices into
// worlds.
struct Model {
  std::vector<std::string> worlds;
  std::set<std::pair<std::size_t, std::size_t>> r;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> s;
  std::map<std::string, std::set<std::size_t>> valuation;

  std::optional<std::size_t> world_index(std::string_view name) const;
  bool r_holds(std::size_t a, std::size_t b) const { return r.count({a, b}) > 0; }
  bool s_holds(std::size_t base, std::size_t from, std::size_t to) const {
    return s.count({base, from, to}) > 0;
  }

  // First broken frame invariant, if any: R transitive and irreflexive, each
  // S_x transitive, reflexive on R-successors of x, containing R-chains
  // through x, and confined to R-successors of x.
  std::optional<std::string> invariant_violation() const;

  bool operator==(const Model& o) const = default;
};

class EvalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolves the bases of indexed boxes to worlds. Without an explicit
// interpretation, a base resolves to the world named by its token rendering.
using Interpretation = std::map<Label, std::size_t>;

// Forcing at a world. Throws EvalError on out-of-range worlds or indexed
// boxes whose base cannot be resolved.
bool eval(const Model& m, std::size_t world, const Formula& f,
          const Interpretation* interp = nullptr);

struct FrameCheckResult {
  bool ok = true;
  std::size_t clause_index = 0;                  // violated clause
  std::map<std::string, std::string> witness;    // variable -> world name

  std::string str() const;
};

// Checks every clause under every assignment of worlds to its variables.
FrameCheckResult check_frame(const Model& m, const FrameCondition& condition);

struct SaturationCheck {
  bool ok = true;
  int condition = 0;   // 1..10, which requirement failed
  std::string detail;  // witness description
};

// The ten saturation conditions an open finished branch must satisfy: no
// complementary pair, double negations and implications unfolded both ways,
// each box statement propagated along the matching relation, and each negated
// box or conditional witnessed.
SaturationCheck verify_hintikka(const Branch& branch);

class HintikkaViolation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class CyclicR : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a model off a branch: worlds are the branch labels, relations come
// from the branch structure, and a variable holds exactly where the branch
// asserts it. Verifies that every branch item evaluates true at its own
// label before returning. Throws HintikkaViolation or CyclicR.
Model extract_model(const Branch& branch);

// Deterministic pseudo-random model satisfying the frame invariants and the
// condition. Retries internally when the condition forces a cycle; throws
// std::runtime_error when every attempt fails.
Model random_model(std::size_t n_worlds, const FrameCondition& condition,
                   std::uint64_t seed,
                   const std::vector<std::string>& vars = {"p", "q", "r"});

// Text format, one item per line:
//   worlds: a b c
//   R: a b
//   S: a; b c
//   V p: a b
// write_model emits canonical order; read_model(write_model(m)) == m.
Model read_model(std::string_view text);
std::string write_model(const Model& m);

}  // namespace iltab
