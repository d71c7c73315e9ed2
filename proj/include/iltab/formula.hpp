#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "iltab/label.hpp"

namespace iltab {

// Modal formulas over negation, implication, the unary box, the binary
// relativized conditional (|>) and the label-indexed box. Conjunction,
// disjunction, equivalence, the diamond and the constants are parser sugar
// and never appear in the tree. Immutable value type with shared subtrees.
class Formula {
 public:
  enum class Kind { Var, Neg, Imp, Box, Rhd, BoxAt };

  static Formula var(std::string name);
  static Formula neg(Formula a);
  static Formula imp(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula rhd(Formula a, Formula b);
  static Formula box_at(Label at, Formula a);

  // Desugared forms of the derived connectives.
  static Formula conj(Formula a, Formula b);     // ~(a -> ~b)
  static Formula disj(Formula a, Formula b);     // ~a -> b
  static Formula iff(Formula a, Formula b);      // (a -> b) & (b -> a)
  static Formula diamond(Formula a);             // ~[]~a
  static Formula top();                          // _T -> _T, reserved variable
  static Formula bottom();                       // ~top

  Kind kind() const;
  const std::string& var_name() const;  // Var only
  Formula body() const;                 // Neg, Box, BoxAt
  Formula left() const;                 // Imp, Rhd
  Formula right() const;                // Imp, Rhd
  const Label& at_label() const;        // BoxAt only

  bool is_literal() const;  // a variable or a negated variable
  bool contains_box_at() const;

  int compare(const Formula& o) const;
  bool operator==(const Formula& o) const { return compare(o) == 0; }
  bool operator!=(const Formula& o) const { return compare(o) != 0; }
  bool operator<(const Formula& o) const { return compare(o) < 0; }

  std::size_t hash() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula reserved_var();

  std::shared_ptr<const Node> node_;
};

// Parses the input grammar. Binding strength, strongest first:
//   ~ [] <> [prefix]   then   & |   then   |>   then   ->   then   <->
// -> is right-associative; |> and <-> do not chain without parentheses.
// Throws ParseError.
Formula parse_formula(std::string_view text);

// Minimal-parentheses rendering. Prints the sugared forms for conjunction,
// diamond and the constants, so parse(render(f)) == f for BoxAt-free f.
std::string render(const Formula& f);

std::set<Formula> subformulas(const Formula& f);

// Subformulas of every member plus the negation of each such subformula.
std::set<Formula> closure_set(const std::set<Formula>& gamma);

}  // namespace iltab

template <>
struct std::hash<iltab::Formula> {
  std::size_t operator()(const iltab::Formula& f) const noexcept { return f.hash(); }
};
