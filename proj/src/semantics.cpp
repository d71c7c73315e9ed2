#include "iltab/semantics.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "iltab/errors.hpp"
#include "iltab/relation_closure.hpp"

namespace iltab {

namespace {

std::string pair_str(const Model& m, std::size_t a, std::size_t b) {
  return "(" + m.worlds.at(a) + ", " + m.worlds.at(b) + ")";
}

std::string triple_str(const Model& m, std::size_t x, std::size_t y, std::size_t z) {
  return "(" + m.worlds.at(x) + "; " + m.worlds.at(y) + ", " + m.worlds.at(z) + ")";
}

}  // namespace

std::optional<std::size_t> Model::world_index(std::string_view name) const {
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (worlds[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::string> Model::invariant_violation() const {
  const std::size_t n = worlds.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (worlds[i] == worlds[j]) return "duplicate world name " + worlds[i];
    }
  }
  for (const auto& [a, b] : r) {
    if (a >= n || b >= n) return "world index out of range in R";
  }
  for (const auto& [x, y, z] : s) {
    if (x >= n || y >= n || z >= n) return "world index out of range in S";
  }
  for (const auto& [v, ws] : valuation) {
    for (std::size_t w : ws) {
      if (w >= n) return "world index out of range in the valuation of " + v;
    }
  }
  for (const auto& [a, b] : r) {
    if (a == b) return "R is not irreflexive: R" + pair_str(*this, a, b);
    for (const auto& [b2, c] : r) {
      if (b2 == b && !r_holds(a, c)) {
        return "R is not transitive: R" + pair_str(*this, a, b) + " and R" +
               pair_str(*this, b, c) + " but not R" + pair_str(*this, a, c);
      }
    }
  }
  for (const auto& [x, y, z] : s) {
    if (!r_holds(x, y) || !r_holds(x, z)) {
      return "S" + triple_str(*this, x, y, z) +
             " relates worlds that are not both R-successors of the base";
    }
  }
  for (const auto& [a, b] : r) {
    if (!s_holds(a, b, b)) {
      return "S is not reflexive on R-successors: R" + pair_str(*this, a, b) +
             " but not S" + triple_str(*this, a, b, b);
    }
    for (const auto& [b2, c] : r) {
      if (b2 == b && !s_holds(a, b, c)) {
        return "R-chain not in S: R" + pair_str(*this, a, b) + " and R" +
               pair_str(*this, b, c) + " but not S" + triple_str(*this, a, b, c);
      }
    }
  }
  for (const auto& [x, y, z] : s) {
    for (const auto& [x2, z2, u] : s) {
      if (x2 == x && z2 == z && !s_holds(x, y, u)) {
        return "S is not transitive: S" + triple_str(*this, x, y, z) + " and S" +
               triple_str(*this, x, z, u) + " but not S" + triple_str(*this, x, y, u);
      }
    }
  }
  return std::nullopt;
}

namespace {

std::size_t resolve_base(const Model& m, const Label& base, const Interpretation* interp) {
  if (interp != nullptr) {
    auto it = interp->find(base);
    if (it != interp->end()) return it->second;
  }
  if (std::optional<std::size_t> i = m.world_index(base.token())) return *i;
  throw EvalError("cannot resolve the base of an indexed box: " + base.str());
}

}  // namespace

bool eval(const Model& m, std::size_t world, const Formula& f, const Interpretation* interp) {
  if (world >= m.worlds.size()) throw EvalError("world index out of range");
  switch (f.kind()) {
    case Formula::Kind::Var: {
      auto it = m.valuation.find(f.var_name());
      return it != m.valuation.end() && it->second.count(world) > 0;
    }
    case Formula::Kind::Neg:
      return !eval(m, world, f.body(), interp);
    case Formula::Kind::Imp:
      return !eval(m, world, f.left(), interp) || eval(m, world, f.right(), interp);
    case Formula::Kind::Box: {
      for (const auto& [a, b] : m.r) {
        if (a == world && !eval(m, b, f.body(), interp)) return false;
      }
      return true;
    }
    case Formula::Kind::BoxAt: {
      std::size_t base = resolve_base(m, f.at_label(), interp);
      for (const auto& [x, y, z] : m.s) {
        if (x == base && y == world && !eval(m, z, f.body(), interp)) return false;
      }
      return true;
    }
    case Formula::Kind::Rhd: {
      for (const auto& [a, b] : m.r) {
        if (a != world || !eval(m, b, f.left(), interp)) continue;
        bool witnessed = false;
        for (const auto& [x, y, z] : m.s) {
          if (x == world && y == b && eval(m, z, f.right(), interp)) {
            witnessed = true;
            break;
          }
        }
        if (!witnessed) return false;
      }
      return true;
    }
  }
  throw EvalError("malformed formula");
}

std::string FrameCheckResult::str() const {
  if (ok) return "ok";
  std::string out = "clause " + std::to_string(clause_index) + " fails with";
  for (const auto& [var, world] : witness) out += " " + var + "=" + world;
  return out;
}

namespace {

bool atom_holds(const Model& m, const HornAtom& atom,
                const std::map<std::string, std::size_t>& env) {
  if (atom.pred == HornAtom::Pred::R) {
    return m.r_holds(env.at(atom.args[0]), env.at(atom.args[1]));
  }
  return m.s_holds(env.at(atom.args[0]), env.at(atom.args[1]), env.at(atom.args[2]));
}

std::vector<std::string> clause_vars(const HornClause& clause) {
  std::vector<std::string> vars;
  for (const HornAtom& atom : clause.body) {
    for (const std::string& v : atom.args) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  return vars;
}

}  // namespace

FrameCheckResult check_frame(const Model& m, const FrameCondition& condition) {
  const std::size_t n = m.worlds.size();
  for (std::size_t ci = 0; ci < condition.clauses().size(); ++ci) {
    const HornClause& clause = condition.clauses()[ci];
    const std::vector<std::string> vars = clause_vars(clause);
    if (n == 0) continue;
    std::vector<std::size_t> pick(vars.size(), 0);
    while (true) {
      std::map<std::string, std::size_t> env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = pick[i];
      bool body_holds = true;
      for (const HornAtom& atom : clause.body) {
        if (!atom_holds(m, atom, env)) {
          body_holds = false;
          break;
        }
      }
      if (body_holds && !atom_holds(m, clause.head, env)) {
        FrameCheckResult bad;
        bad.ok = false;
        bad.clause_index = ci;
        for (const auto& [v, w] : env) bad.witness[v] = m.worlds.at(w);
        return bad;
      }
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < n) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  return FrameCheckResult{};
}

namespace {

std::vector<Label> r_succ(const LabelStructure& st, const Label& from) {
  if (st.labels().count(from) == 0) return {};
  return st.r_successors(from);
}

std::vector<Label> s_succ(const LabelStructure& st, const Label& base, const Label& from) {
  if (st.labels().count(base) == 0 || st.labels().count(from) == 0) return {};
  return st.s_successors(base, from);
}

SaturationCheck broken(int condition, std::string detail) {
  SaturationCheck c;
  c.ok = false;
  c.condition = condition;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

SaturationCheck verify_hintikka(const Branch& branch) {
  const LabelStructure& st = branch.structure;
  std::set<LabelledFormula> items(branch.items.begin(), branch.items.end());
  auto has = [&](const Label& l, const Formula& f) {
    return items.count(LabelledFormula{l, f}) > 0;
  };

  for (const LabelledFormula& it : branch.items) {
    if (it.formula.kind() == Formula::Kind::Neg && has(it.label, it.formula.body())) {
      return broken(1, "complementary pair " + it.str() + " and " +
                           LabelledFormula{it.label, it.formula.body()}.str());
    }
  }

  for (const LabelledFormula& it : branch.items) {
    const Label& sigma = it.label;
    const Formula& f = it.formula;
    switch (f.kind()) {
      case Formula::Kind::Var:
        break;
      case Formula::Kind::Imp: {
        if (!has(sigma, Formula::neg(f.left())) && !has(sigma, f.right())) {
          return broken(3, it.str() + " has neither side");
        }
        break;
      }
      case Formula::Kind::Box: {
        for (const Label& tau : r_succ(st, sigma)) {
          if (!has(tau, f.body())) {
            return broken(5, it.str() + " not propagated to " + tau.str());
          }
        }
        break;
      }
      case Formula::Kind::BoxAt: {
        for (const Label& tau : s_succ(st, f.at_label(), sigma)) {
          if (!has(tau, f.body())) {
            return broken(6, it.str() + " not propagated to " + tau.str());
          }
        }
        break;
      }
      case Formula::Kind::Rhd: {
        const Formula skip = Formula::neg(f.left());
        const Formula dive = Formula::neg(Formula::box_at(sigma, Formula::neg(f.right())));
        for (const Label& tau : r_succ(st, sigma)) {
          if (!has(tau, skip) && !has(tau, dive)) {
            return broken(7, it.str() + " undecided at " + tau.str());
          }
        }
        break;
      }
      case Formula::Kind::Neg: {
        const Formula b = f.body();
        switch (b.kind()) {
          case Formula::Kind::Var:
            break;
          case Formula::Kind::Neg: {
            if (!has(sigma, b.body())) return broken(2, it.str() + " not unfolded");
            break;
          }
          case Formula::Kind::Imp: {
            if (!has(sigma, b.left()) || !has(sigma, Formula::neg(b.right()))) {
              return broken(4, it.str() + " not unfolded");
            }
            break;
          }
          case Formula::Kind::Box: {
            bool found = false;
            for (const Label& tau : r_succ(st, sigma)) {
              if (has(tau, Formula::neg(b.body()))) {
                found = true;
                break;
              }
            }
            if (!found) return broken(8, it.str() + " has no witness");
            break;
          }
          case Formula::Kind::BoxAt: {
            bool found = false;
            for (const Label& tau : s_succ(st, b.at_label(), sigma)) {
              if (has(tau, Formula::neg(b.body()))) {
                found = true;
                break;
              }
            }
            if (!found) return broken(9, it.str() + " has no witness");
            break;
          }
          case Formula::Kind::Rhd: {
            const Formula head = b.left();
            const Formula fence = Formula::box_at(sigma, Formula::neg(b.right()));
            bool found = false;
            for (const Label& tau : r_succ(st, sigma)) {
              if (has(tau, head) && has(tau, fence)) {
                found = true;
                break;
              }
            }
            if (!found) return broken(10, it.str() + " has no witness");
            break;
          }
        }
        break;
      }
    }
  }
  return SaturationCheck{};
}

Model extract_model(const Branch& branch) {
  if (branch.structure.has_r_cycle()) {
    throw CyclicR("the accessibility relation of the branch has a cycle");
  }
  SaturationCheck check = verify_hintikka(branch);
  if (!check.ok) {
    throw HintikkaViolation("branch not saturated (condition " +
                            std::to_string(check.condition) + "): " + check.detail);
  }

  Model m;
  Interpretation index;
  for (const Label& l : branch.structure.labels()) {
    index[l] = m.worlds.size();
    m.worlds.push_back(l.token());
  }
  for (const auto& [a, b] : branch.structure.r_pairs()) {
    m.r.insert({index.at(a), index.at(b)});
  }
  for (const auto& [x, y, z] : branch.structure.s_triples()) {
    m.s.insert({index.at(x), index.at(y), index.at(z)});
  }
  for (const LabelledFormula& it : branch.items) {
    if (it.formula.kind() == Formula::Kind::Var) {
      m.valuation[it.formula.var_name()].insert(index.at(it.label));
    }
  }

  if (std::optional<std::string> bad = m.invariant_violation()) {
    throw std::logic_error("extracted model breaks a frame invariant: " + *bad);
  }
  for (const LabelledFormula& it : branch.items) {
    if (!eval(m, index.at(it.label), it.formula, &index)) {
      throw std::logic_error("extracted model does not satisfy " + it.str());
    }
  }
  return m;
}

Model random_model(std::size_t n_worlds, const FrameCondition& condition,
                   std::uint64_t seed, const std::vector<std::string>& vars) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(0.4);
  std::bernoulli_distribution extra(0.25);
  std::bernoulli_distribution holds(0.5);
  const std::vector<const HornClause*> rules = detail::rule_set<std::size_t>(condition);

  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<std::size_t> order(n_worlds);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    detail::Relations<std::size_t> rels;
    std::vector<detail::Fact<std::size_t>> seeds;
    for (std::size_t i = 0; i < n_worlds; ++i) {
      for (std::size_t j = i + 1; j < n_worlds; ++j) {
        if (edge(rng)) seeds.push_back({false, order[i], order[j], 0});
      }
    }
    detail::saturate(rels, rules, seeds);

    std::vector<detail::Fact<std::size_t>> sprinkles;
    for (const auto& [x, y] : rels.r) {
      for (const auto& [x2, z] : rels.r) {
        if (x2 == x && extra(rng)) sprinkles.push_back({true, x, y, z});
      }
    }
    detail::saturate(rels, rules, sprinkles);

    bool cyclic = false;
    for (std::size_t i = 0; i < n_worlds; ++i) {
      if (rels.r.count({i, i}) > 0) {
        cyclic = true;
        break;
      }
    }
    if (cyclic) continue;

    Model m;
    for (std::size_t i = 0; i < n_worlds; ++i) m.worlds.push_back("w" + std::to_string(i));
    m.r = std::move(rels.r);
    m.s = std::move(rels.s);
    for (const std::string& v : vars) {
      std::set<std::size_t> where;
      for (std::size_t i = 0; i < n_worlds; ++i) {
        if (holds(rng)) where.insert(i);
      }
      m.valuation[v] = std::move(where);
    }
    if (std::optional<std::string> bad = m.invariant_violation()) {
      throw std::logic_error("random model breaks a frame invariant: " + *bad);
    }
    return m;
  }
  throw std::runtime_error(
      "could not build an acyclic model for this frame condition in 50 attempts");
}

namespace {

// Whitespace-separated tokens within one line of a model file; ':' and ';'
// are their own tokens.
class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t offset) : line_(line), offset_(offset) {}

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  bool try_punct(char c) {
    skip_space();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_punct(char c) {
    if (!try_punct(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_space();
    std::size_t begin = pos_;
    while (pos_ < line_.size() && !is_space(line_[pos_]) && line_[pos_] != ':' &&
           line_[pos_] != ';') {
      ++pos_;
    }
    if (begin == pos_) fail("expected a name");
    return std::string(line_.substr(begin, pos_ - begin));
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, offset_ + pos_);
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
  void skip_space() {
    while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
  }

  std::string_view line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Model read_model(std::string_view text) {
  Model m;
  std::map<std::string, std::size_t> index;
  bool have_worlds = false;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }

    LineCursor cur(line, start);
    if (!cur.at_end()) {
      std::string kind = cur.word();
      auto world = [&]() -> std::size_t {
        std::string name = cur.word();
        auto it = index.find(name);
        if (it == index.end()) cur.fail("unknown world " + name);
        return it->second;
      };
      if (kind == "worlds") {
        if (have_worlds) cur.fail("duplicate worlds line");
        cur.expect_punct(':');
        while (!cur.at_end()) {
          std::string name = cur.word();
          if (!index.emplace(name, m.worlds.size()).second) {
            cur.fail("duplicate world " + name);
          }
          m.worlds.push_back(name);
        }
        have_worlds = true;
      } else if (!have_worlds) {
        cur.fail("the worlds line must come first");
      } else if (kind == "R") {
        cur.expect_punct(':');
        std::size_t a = world();
        std::size_t b = world();
        if (!cur.at_end()) cur.fail("trailing input after R pair");
        m.r.insert({a, b});
      } else if (kind == "S") {
        cur.expect_punct(':');
        std::size_t base = world();
        cur.expect_punct(';');
        std::size_t from = world();
        std::size_t to = world();
        if (!cur.at_end()) cur.fail("trailing input after S triple");
        m.s.insert({base, from, to});
      } else if (kind == "V") {
        std::string var = cur.word();
        cur.expect_punct(':');
        if (m.valuation.count(var) > 0) cur.fail("duplicate valuation line for " + var);
        std::set<std::size_t>& where = m.valuation[var];
        while (!cur.at_end()) where.insert(world());
      } else {
        cur.fail("expected worlds:, R:, S: or V");
      }
    }

    if (end == text.size()) break;
    start = end + 1;
  }
  if (!have_worlds) throw ParseError("missing worlds line", 0);
  return m;
}

std::string write_model(const Model& m) {
  std::ostringstream out;
  out << "worlds:";
  for (const std::string& w : m.worlds) out << ' ' << w;
  out << '\n';
  for (const auto& [a, b] : m.r) {
    out << "R: " << m.worlds.at(a) << ' ' << m.worlds.at(b) << '\n';
  }
  for (const auto& [x, y, z] : m.s) {
    out << "S: " << m.worlds.at(x) << "; " << m.worlds.at(y) << ' ' << m.worlds.at(z) << '\n';
  }
  for (const auto& [v, ws] : m.valuation) {
    out << "V " << v << ':';
    for (std::size_t w : ws) out << ' ' << m.worlds.at(w);
    out << '\n';
  }
  return out.str();
}

}  // namespace iltab
