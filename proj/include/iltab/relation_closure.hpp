#pragma once

#include <deque>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "iltab/horn.hpp"

namespace iltab::detail {

// Ground relational fact over elements of type Elem. For R only a and b are
// meaningful; for S the triple is (base, from, to).
template <class Elem>
struct Fact {
  bool is_s = false;
  Elem a, b, c;

  bool operator==(const Fact& o) const {
    return is_s == o.is_s && a == o.a && b == o.b && (!is_s || c == o.c);
  }
};

template <class Elem>
struct Relations {
  std::set<std::pair<Elem, Elem>> r;
  std::set<std::tuple<Elem, Elem, Elem>> s;

  bool contains(const Fact<Elem>& f) const {
    if (f.is_s) return s.count({f.a, f.b, f.c}) > 0;
    return r.count({f.a, f.b}) > 0;
  }

  bool insert(const Fact<Elem>& f) {
    if (f.is_s) return s.insert({f.a, f.b, f.c}).second;
    return r.insert({f.a, f.b}).second;
  }
};

// The built-in closure rules shared by label structures and frames: R is
// transitive, each S_x is transitive and reflexive on R-successors of x,
// R-chains embed into S, and S_x only relates R-successors of x.
inline const std::vector<HornClause>& frame_closure_clauses() {
  static const std::vector<HornClause> rules = [] {
    FrameCondition c = parse_horn(
        "R(x,y), R(y,z) -> R(x,z)\n"
        "R(x,y) -> S(x;y,y)\n"
        "R(x,y), R(y,z) -> S(x;y,z)\n"
        "S(w;x,y), S(w;y,z) -> S(w;x,z)\n"
        "S(w;x,y) -> R(w,x)\n"
        "S(w;x,y) -> R(w,y)\n",
        "frame-closure");
    return c.clauses();
  }();
  return rules;
}

template <class Elem>
class Binding {
 public:
  const Elem* find(const std::string& var) const {
    for (const auto& [v, e] : slots_)
      if (v == var) return &e;
    return nullptr;
  }

  bool bind(const std::string& var, const Elem& value) {
    if (const Elem* e = find(var)) return *e == value;
    slots_.emplace_back(var, value);
    return true;
  }

  void truncate(std::size_t n) { slots_.resize(n); }
  std::size_t size() const { return slots_.size(); }

 private:
  std::vector<std::pair<std::string, Elem>> slots_;
};

template <class Elem>
bool unify(const HornAtom& atom, const Fact<Elem>& fact, Binding<Elem>& binding) {
  if ((atom.pred == HornAtom::Pred::S) != fact.is_s) return false;
  if (!binding.bind(atom.args[0], fact.a)) return false;
  if (!binding.bind(atom.args[1], fact.b)) return false;
  if (fact.is_s && !binding.bind(atom.args[2], fact.c)) return false;
  return true;
}

template <class Elem>
Fact<Elem> instantiate(const HornAtom& atom, const Binding<Elem>& binding) {
  Fact<Elem> f;
  f.is_s = atom.pred == HornAtom::Pred::S;
  f.a = *binding.find(atom.args[0]);
  f.b = *binding.find(atom.args[1]);
  if (f.is_s) f.c = *binding.find(atom.args[2]);
  return f;
}

template <class Elem, class Emit>
void match_rest(const Relations<Elem>& rels, const HornClause& clause,
                std::size_t skip, std::size_t next, Binding<Elem>& binding,
                const Emit& emit) {
  if (next == clause.body.size()) {
    emit(instantiate(clause.head, binding));
    return;
  }
  if (next == skip) {
    match_rest(rels, clause, skip, next + 1, binding, emit);
    return;
  }
  const HornAtom& atom = clause.body[next];
  std::size_t mark = binding.size();
  if (atom.pred == HornAtom::Pred::R) {
    for (const auto& [a, b] : rels.r) {
      if (binding.bind(atom.args[0], a) && binding.bind(atom.args[1], b)) {
        match_rest(rels, clause, skip, next + 1, binding, emit);
      }
      binding.truncate(mark);
    }
  } else {
    for (const auto& [a, b, c] : rels.s) {
      if (binding.bind(atom.args[0], a) && binding.bind(atom.args[1], b) &&
          binding.bind(atom.args[2], c)) {
        match_rest(rels, clause, skip, next + 1, binding, emit);
      }
      binding.truncate(mark);
    }
  }
}

// Forward chaining driven by newly added facts: every derivation step uses at
// least one fact that was not present before, so work is proportional to the
// delta rather than the whole relation. Inserts the seeds (ignoring ones
// already present) and returns every fact newly added, seeds included.
template <class Elem>
std::vector<Fact<Elem>> saturate(Relations<Elem>& rels,
                                 const std::vector<const HornClause*>& rules,
                                 const std::vector<Fact<Elem>>& seeds) {
  std::deque<Fact<Elem>> agenda;
  std::vector<Fact<Elem>> added;
  auto push = [&](const Fact<Elem>& f) {
    if (rels.insert(f)) {
      agenda.push_back(f);
      added.push_back(f);
    }
  };
  for (const Fact<Elem>& f : seeds) push(f);
  while (!agenda.empty()) {
    Fact<Elem> fact = agenda.front();
    agenda.pop_front();
    for (const HornClause* rule : rules) {
      for (std::size_t i = 0; i < rule->body.size(); ++i) {
        Binding<Elem> binding;
        if (!unify(rule->body[i], fact, binding)) continue;
        match_rest(rels, *rule, i, 0, binding, push);
      }
    }
  }
  return added;
}

template <class Elem>
std::vector<const HornClause*> rule_set(const FrameCondition& condition) {
  std::vector<const HornClause*> rules;
  for (const HornClause& c : frame_closure_clauses()) rules.push_back(&c);
  for (const HornClause& c : condition.clauses()) rules.push_back(&c);
  return rules;
}

}  // namespace iltab::detail
