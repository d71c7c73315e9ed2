#include "oracles.hpp"

#include <iterator>
#include <stdexcept>

namespace testutil {

using iltab::Formula;
using iltab::FrameCondition;
using iltab::HornAtom;
using iltab::HornClause;
using iltab::Label;

namespace {

std::vector<std::string> clause_vars(const HornClause& clause) {
  std::vector<std::string> vars;
  auto add = [&](const std::string& v) {
    for (const std::string& u : vars)
      if (u == v) return;
    vars.push_back(v);
  };
  for (const HornAtom& atom : clause.body)
    for (const std::string& v : atom.args) add(v);
  for (const std::string& v : clause.head.args) add(v);
  return vars;
}

struct GroundAtom {
  bool is_s = false;
  Label a, b, c;
};

GroundAtom ground(const HornAtom& atom, const std::vector<std::string>& vars,
                  const std::vector<Label>& values) {
  auto lookup = [&](const std::string& v) -> const Label& {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return values[i];
    throw std::logic_error("unbound variable in test oracle");
  };
  GroundAtom g;
  g.is_s = atom.pred == HornAtom::Pred::S;
  g.a = lookup(atom.args[0]);
  g.b = lookup(atom.args[1]);
  if (g.is_s) g.c = lookup(atom.args[2]);
  return g;
}

// Calls fn with every assignment of k labels drawn from ls (with repetition).
template <class Fn>
void for_each_assignment(const std::vector<Label>& ls, std::size_t k, const Fn& fn) {
  if (ls.empty()) return;
  if (k == 0) {
    fn(std::vector<Label>{});
    return;
  }
  std::vector<std::size_t> idx(k, 0);
  std::vector<Label> vals(k, ls[0]);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) vals[i] = ls[idx[i]];
    fn(vals);
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == ls.size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
}

}  // namespace

NaiveClosure naive_close(const std::set<Label>& lambda, const FrameCondition& condition) {
  std::vector<Label> ls(lambda.begin(), lambda.end());
  NaiveClosure c;
  for (const Label& l : ls) {
    if (l.is_root()) continue;
    if (l.last_step() == Label::StepKind::R) {
      c.r.insert({l.parent(), l});
    } else {
      c.s.insert({l.last_base(), l.parent(), l});
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    const auto r0 = c.r;
    const auto s0 = c.s;
    auto add_r = [&](const Label& a, const Label& b) {
      if (c.r.insert({a, b}).second) changed = true;
    };
    auto add_s = [&](const Label& w, const Label& x, const Label& y) {
      if (c.s.insert({w, x, y}).second) changed = true;
    };
    for (const auto& [a, b] : r0) {
      add_s(a, b, b);
      for (const auto& [b2, d] : r0) {
        if (b == b2) {
          add_r(a, d);
          add_s(a, b, d);
        }
      }
    }
    for (const auto& [w, x, y] : s0) {
      add_r(w, x);
      add_r(w, y);
      for (const auto& [w2, x2, y2] : s0) {
        if (w == w2 && y == x2) add_s(w, x, y2);
      }
    }
    for (const HornClause& clause : condition.clauses()) {
      const std::vector<std::string> vars = clause_vars(clause);
      for_each_assignment(ls, vars.size(), [&](const std::vector<Label>& vals) {
        for (const HornAtom& atom : clause.body) {
          GroundAtom g = ground(atom, vars, vals);
          bool holds = g.is_s ? s0.count({g.a, g.b, g.c}) > 0 : r0.count({g.a, g.b}) > 0;
          if (!holds) return;
        }
        GroundAtom h = ground(clause.head, vars, vals);
        if (h.is_s) {
          add_s(h.a, h.b, h.c);
        } else {
          add_r(h.a, h.b);
        }
      });
    }
  }
  return c;
}

std::optional<std::string> structure_items_violation(
    const std::set<Label>& lambda,
    const std::set<std::pair<Label, Label>>& r,
    const std::set<std::tuple<Label, Label, Label>>& s,
    const FrameCondition& condition) {
  auto member = [&](const Label& l) { return lambda.count(l) > 0; };
  for (const auto& [a, b] : r) {
    if (!member(a) || !member(b))
      return "R pair outside the label set: " + a.token() + " " + b.token();
  }
  for (const auto& [w, x, y] : s) {
    if (!member(w) || !member(x) || !member(y))
      return "S triple outside the label set: " + w.token() + "; " + x.token() + " " + y.token();
  }
  for (const Label& l : lambda) {
    if (l.is_root()) continue;
    if (l.last_step() == Label::StepKind::R) {
      if (r.count({l.parent(), l}) == 0)
        return "item 1: missing seed R pair for " + l.token();
    } else if (s.count({l.last_base(), l.parent(), l}) == 0) {
      return "item 3: missing seed S triple for " + l.token();
    }
  }
  for (const auto& [a, b] : r) {
    for (const auto& [b2, c] : r) {
      if (b == b2 && r.count({a, c}) == 0)
        return "item 2: R not transitive at " + a.token() + " " + b.token() + " " + c.token();
    }
  }
  for (const auto& [a, b] : r) {
    if (s.count({a, b, b}) == 0)
      return "item 4: missing reflexive S triple for R pair " + a.token() + " " + b.token();
  }
  for (const auto& [a, b] : r) {
    for (const auto& [b2, c] : r) {
      if (b == b2 && s.count({a, b, c}) == 0)
        return "item 5: R chain " + a.token() + " " + b.token() + " " + c.token() +
               " not inside S";
    }
  }
  for (const auto& [w, x, y] : s) {
    for (const auto& [w2, x2, y2] : s) {
      if (w == w2 && y == x2 && s.count({w, x, y2}) == 0)
        return "item 6: S_" + w.token() + " not transitive at " + x.token() + " " +
               y.token() + " " + y2.token();
    }
  }
  for (const auto& [w, x, y] : s) {
    if (r.count({w, x}) == 0 || r.count({w, y}) == 0)
      return "item 7: S_" + w.token() + " relates a non-successor: " + x.token() + " " +
             y.token();
  }
  std::vector<Label> ls(lambda.begin(), lambda.end());
  for (const HornClause& clause : condition.clauses()) {
    const std::vector<std::string> vars = clause_vars(clause);
    std::optional<std::string> bad;
    for_each_assignment(ls, vars.size(), [&](const std::vector<Label>& vals) {
      if (bad) return;
      for (const HornAtom& atom : clause.body) {
        GroundAtom g = ground(atom, vars, vals);
        bool holds = g.is_s ? s.count({g.a, g.b, g.c}) > 0 : r.count({g.a, g.b}) > 0;
        if (!holds) return;
      }
      GroundAtom h = ground(clause.head, vars, vals);
      bool holds = h.is_s ? s.count({h.a, h.b, h.c}) > 0 : r.count({h.a, h.b}) > 0;
      if (!holds) bad = "item 8: clause \"" + clause.str() + "\" violated";
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

std::set<Label> random_label_set(Rng& rng, std::size_t max_labels) {
  std::set<Label> out{Label::root()};
  std::size_t target = 1 + rng() % max_labels;
  std::size_t attempts = 0;
  while (out.size() < target && attempts++ < 20 * max_labels) {
    auto it = out.begin();
    std::advance(it, rng() % out.size());
    Label sigma = *it;
    std::size_t n = rng() % 3;
    if (!sigma.is_root() && rng() % 100 < 35) {
      std::vector<Label> prefixes;
      for (Label p = sigma.parent();; p = p.parent()) {
        prefixes.push_back(p);
        if (p.is_root()) break;
      }
      out.insert(sigma.extend_s(prefixes[rng() % prefixes.size()], n));
    } else {
      out.insert(sigma.extend_r(n));
    }
  }
  return out;
}

FrameCondition random_condition(Rng& rng) {
  static const std::vector<std::string> pool = {"x", "y", "z", "w"};
  auto atom_over = [&](const std::vector<std::string>& vars) {
    HornAtom a;
    a.pred = rng() % 2 == 0 ? HornAtom::Pred::R : HornAtom::Pred::S;
    std::size_t arity = a.pred == HornAtom::Pred::S ? 3 : 2;
    for (std::size_t i = 0; i < arity; ++i) a.args.push_back(vars[rng() % vars.size()]);
    return a;
  };
  std::vector<HornClause> clauses;
  std::size_t n_clauses = 1 + rng() % 2;
  for (std::size_t i = 0; i < n_clauses; ++i) {
    HornClause c;
    std::size_t n_body = 1 + rng() % 2;
    for (std::size_t j = 0; j < n_body; ++j) c.body.push_back(atom_over(pool));
    std::vector<std::string> body_vars;
    for (const HornAtom& atom : c.body) {
      for (const std::string& v : atom.args) {
        bool seen = false;
        for (const std::string& u : body_vars) seen = seen || u == v;
        if (!seen) body_vars.push_back(v);
      }
    }
    c.head = atom_over(body_vars);
    clauses.push_back(c);
  }
  return FrameCondition("random", clauses);
}

Formula random_formula(Rng& rng, int depth, const std::vector<std::string>& vars) {
  auto leaf = [&] { return Formula::var(vars[rng() % vars.size()]); };
  if (depth <= 0) return leaf();
  auto sub = [&] { return random_formula(rng, depth - 1, vars); };
  switch (rng() % 10) {
    case 0:
    case 1:
      return leaf();
    case 2:
    case 3:
      return Formula::neg(sub());
    case 4:
    case 5:
      return Formula::imp(sub(), sub());
    case 6:
      return Formula::box(sub());
    case 7:
      return Formula::rhd(sub(), sub());
    case 8:
      return Formula::diamond(sub());
    default:
      return Formula::conj(sub(), sub());
  }
}

std::set<Formula> naive_subformulas(const Formula& f) {
  std::set<Formula> out{f};
  auto merge = [&](const Formula& g) {
    std::set<Formula> sub = naive_subformulas(g);
    out.insert(sub.begin(), sub.end());
  };
  switch (f.kind()) {
    case Formula::Kind::Var:
      break;
    case Formula::Kind::Neg:
    case Formula::Kind::Box:
    case Formula::Kind::BoxAt:
      merge(f.body());
      break;
    case Formula::Kind::Imp:
    case Formula::Kind::Rhd:
      merge(f.left());
      merge(f.right());
      break;
  }
  return out;
}

}  // namespace testutil
