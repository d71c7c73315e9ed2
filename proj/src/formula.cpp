#include "iltab/formula.hpp"

#include <cassert>
#include <cctype>
#include <optional>
#include <utility>
#include <vector>

#include "iltab/errors.hpp"

namespace iltab {

namespace {
constexpr const char* kReservedVar = "_T";
}

struct Formula::Node {
  Kind kind;
  std::string name;                  // Var
  std::shared_ptr<const Node> a, b;  // children
  std::unique_ptr<Label> at;         // BoxAt base
  std::size_t hashed = 0;
};

namespace {

std::size_t node_hash(Formula::Kind kind, const std::string& name, std::size_t a,
                      std::size_t b, std::size_t at) {
  std::size_t h = detail::hash_mix(0x8f1bbcdcull, static_cast<std::size_t>(kind));
  h = detail::hash_mix(h, std::hash<std::string>{}(name));
  h = detail::hash_mix(h, a);
  h = detail::hash_mix(h, b);
  return detail::hash_mix(h, at);
}

bool valid_var_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return name != "true" && name != "false";
}

}  // namespace

Formula Formula::var(std::string name) {
  if (!valid_var_name(name)) {
    throw std::invalid_argument("invalid variable name: " + name);
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->name = std::move(name);
  node->hashed = node_hash(Kind::Var, node->name, 0, 0, 0);
  return Formula(std::move(node));
}

Formula Formula::reserved_var() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->name = kReservedVar;
  node->hashed = node_hash(Kind::Var, node->name, 0, 0, 0);
  return Formula(std::move(node));
}

Formula Formula::neg(Formula a) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Neg;
  node->a = std::move(a.node_);
  node->hashed = node_hash(Kind::Neg, "", node->a->hashed, 0, 0);
  return Formula(std::move(node));
}

Formula Formula::imp(Formula a, Formula b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Imp;
  node->a = std::move(a.node_);
  node->b = std::move(b.node_);
  node->hashed = node_hash(Kind::Imp, "", node->a->hashed, node->b->hashed, 0);
  return Formula(std::move(node));
}

Formula Formula::box(Formula a) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Box;
  node->a = std::move(a.node_);
  node->hashed = node_hash(Kind::Box, "", node->a->hashed, 0, 0);
  return Formula(std::move(node));
}

Formula Formula::rhd(Formula a, Formula b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Rhd;
  node->a = std::move(a.node_);
  node->b = std::move(b.node_);
  node->hashed = node_hash(Kind::Rhd, "", node->a->hashed, node->b->hashed, 0);
  return Formula(std::move(node));
}

Formula Formula::box_at(Label at, Formula a) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::BoxAt;
  node->a = std::move(a.node_);
  node->at = std::make_unique<Label>(std::move(at));
  node->hashed = node_hash(Kind::BoxAt, "", node->a->hashed, 0, node->at->hash());
  return Formula(std::move(node));
}

Formula Formula::conj(Formula a, Formula b) { return neg(imp(std::move(a), neg(std::move(b)))); }

Formula Formula::disj(Formula a, Formula b) { return imp(neg(std::move(a)), std::move(b)); }

Formula Formula::iff(Formula a, Formula b) {
  Formula ab = imp(a, b);
  Formula ba = imp(std::move(b), std::move(a));
  return conj(std::move(ab), std::move(ba));
}

Formula Formula::diamond(Formula a) { return neg(box(neg(std::move(a)))); }

Formula Formula::top() { return imp(reserved_var(), reserved_var()); }

Formula Formula::bottom() { return neg(top()); }

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::var_name() const {
  assert(node_->kind == Kind::Var);
  return node_->name;
}

Formula Formula::body() const {
  assert(node_->kind == Kind::Neg || node_->kind == Kind::Box || node_->kind == Kind::BoxAt);
  return Formula(node_->a);
}

Formula Formula::left() const {
  assert(node_->kind == Kind::Imp || node_->kind == Kind::Rhd);
  return Formula(node_->a);
}

Formula Formula::right() const {
  assert(node_->kind == Kind::Imp || node_->kind == Kind::Rhd);
  return Formula(node_->b);
}

const Label& Formula::at_label() const {
  assert(node_->kind == Kind::BoxAt);
  return *node_->at;
}

bool Formula::is_literal() const {
  if (node_->kind == Kind::Var) return true;
  return node_->kind == Kind::Neg && node_->a->kind == Kind::Var;
}

bool Formula::contains_box_at() const {
  if (node_->kind == Kind::BoxAt) return true;
  if (node_->a && Formula(node_->a).contains_box_at()) return true;
  if (node_->b && Formula(node_->b).contains_box_at()) return true;
  return false;
}

std::size_t Formula::hash() const { return node_->hashed; }

int Formula::compare(const Formula& o) const {
  if (node_ == o.node_) return 0;
  if (node_->kind != o.node_->kind) return node_->kind < o.node_->kind ? -1 : 1;
  switch (node_->kind) {
    case Kind::Var:
      return node_->name.compare(o.node_->name);
    case Kind::Neg:
    case Kind::Box:
      return Formula(node_->a).compare(Formula(o.node_->a));
    case Kind::Imp:
    case Kind::Rhd: {
      int c = Formula(node_->a).compare(Formula(o.node_->a));
      if (c != 0) return c;
      return Formula(node_->b).compare(Formula(o.node_->b));
    }
    case Kind::BoxAt: {
      int c = node_->at->compare(*o.node_->at);
      if (c != 0) return c;
      return Formula(node_->a).compare(Formula(o.node_->a));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
  Ident, True, False, Not, Box, Diamond, And, Or, Rhd, Imp, Iff, LParen, RParen, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  bool starts_with(std::string_view s) const {
    return text_.substr(pos_).substr(0, s.size()) == s;
  }

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    struct Fixed {
      std::string_view spell;
      Tok kind;
    };
    static const Fixed fixed[] = {
        {"<->", Tok::Iff},  {"->", Tok::Imp},  {"|>", Tok::Rhd}, {"<>", Tok::Diamond},
        {"[]", Tok::Box},   {"~", Tok::Not},   {"&", Tok::And},  {"|", Tok::Or},
        {"(", Tok::LParen}, {")", Tok::RParen},
        {"¬", Tok::Not},      // ¬
        {"□", Tok::Box},      // □
        {"◇", Tok::Diamond},  // ◇
        {"▷", Tok::Rhd},      // ▷
        {"→", Tok::Imp},      // →
        {"∧", Tok::And},      // ∧
        {"∨", Tok::Or},       // ∨
    };
    for (const Fixed& f : fixed) {
      if (starts_with(f.spell)) {
        pos_ += f.spell.size();
        current_ = {f.kind, std::string(f.spell), start};
        return;
      }
    }
    char c = text_[pos_];
    if (c == '[') {
      // "[_..." is the internal indexed box; user input may not contain it.
      throw ParseError("the indexed box is internal and cannot be written", start);
    }
    if (c == '_') {
      throw ParseError("identifiers starting with '_' are reserved", start);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      std::string word(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "true") {
        current_ = {Tok::True, word, start};
      } else if (word == "false") {
        current_ = {Tok::False, word, start};
      } else {
        current_ = {Tok::Ident, word, start};
      }
      return;
    }
    throw ParseError("unexpected character", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, "", 0};
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Formula parse() {
    Formula f = parse_iff();
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    }
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (lex_.peek().kind == Tok::Iff) {
      lex_.take();
      Formula rhs = parse_imp();
      if (lex_.peek().kind == Tok::Iff) {
        throw ParseError("'<->' does not chain; add parentheses", lex_.peek().pos);
      }
      return Formula::iff(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_rhd();
    if (lex_.peek().kind == Tok::Imp) {
      lex_.take();
      return Formula::imp(std::move(lhs), parse_imp());  // right-associative
    }
    return lhs;
  }

  Formula parse_rhd() {
    Formula lhs = parse_and_or();
    if (lex_.peek().kind == Tok::Rhd) {
      lex_.take();
      Formula rhs = parse_and_or();
      if (lex_.peek().kind == Tok::Rhd) {
        throw ParseError("'|>' does not chain; add parentheses", lex_.peek().pos);
      }
      return Formula::rhd(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_and_or() {
    Formula acc = parse_unary();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::And) {
        lex_.take();
        acc = Formula::conj(std::move(acc), parse_unary());
      } else if (k == Tok::Or) {
        lex_.take();
        acc = Formula::disj(std::move(acc), parse_unary());
      } else {
        return acc;
      }
    }
  }

  Formula parse_unary() {
    Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Not:
        lex_.take();
        return Formula::neg(parse_unary());
      case Tok::Box:
        lex_.take();
        return Formula::box(parse_unary());
      case Tok::Diamond:
        lex_.take();
        return Formula::diamond(parse_unary());
      default:
        return parse_atom();
    }
  }

  Formula parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Ident:
        return Formula::var(t.text);
      case Tok::True:
        return Formula::top();
      case Tok::False:
        return Formula::bottom();
      case Tok::LParen: {
        Formula f = parse_iff();
        Token close = lex_.take();
        if (close.kind != Tok::RParen) {
          throw ParseError("expected ')'", close.pos);
        }
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding levels: atoms 5, prefix operators 4, & 3, |> 2, -> 1.
struct Rendered {
  std::string text;
  int level;
};

bool is_top(const Formula& f) {
  return f.kind() == Formula::Kind::Imp && f.left().kind() == Formula::Kind::Var &&
         f.left().var_name() == kReservedVar && f.right() == f.left();
}

Rendered render_core(const Formula& f);

std::string render_at(const Formula& f, int min_level) {
  Rendered r = render_core(f);
  if (r.level < min_level) return "(" + r.text + ")";
  return r.text;
}

Rendered render_core(const Formula& f) {
  if (is_top(f)) return {"true", 5};
  switch (f.kind()) {
    case Formula::Kind::Var:
      return {f.var_name(), 5};
    case Formula::Kind::Neg: {
      Formula g = f.body();
      if (is_top(g)) return {"false", 5};
      if (g.kind() == Formula::Kind::Box && g.body().kind() == Formula::Kind::Neg) {
        return {"<>" + render_at(g.body().body(), 4), 4};
      }
      if (g.kind() == Formula::Kind::Imp && g.right().kind() == Formula::Kind::Neg) {
        return {render_at(g.left(), 3) + " & " + render_at(g.right().body(), 4), 3};
      }
      return {"~" + render_at(g, 4), 4};
    }
    case Formula::Kind::Box:
      return {"[]" + render_at(f.body(), 4), 4};
    case Formula::Kind::BoxAt:
      return {"[_" + f.at_label().str() + "]" + render_at(f.body(), 4), 4};
    case Formula::Kind::Rhd:
      return {render_at(f.left(), 3) + " |> " + render_at(f.right(), 3), 2};
    case Formula::Kind::Imp:
      return {render_at(f.left(), 2) + " -> " + render_at(f.right(), 1), 1};
  }
  return {"", 5};
}

}  // namespace

std::string render(const Formula& f) { return render_core(f).text; }

// ---------------------------------------------------------------------------
// Closure

namespace {

void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case Formula::Kind::Var:
      break;
    case Formula::Kind::Neg:
    case Formula::Kind::Box:
    case Formula::Kind::BoxAt:
      collect_subformulas(f.body(), out);
      break;
    case Formula::Kind::Imp:
    case Formula::Kind::Rhd:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      break;
  }
}

}  // namespace

std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect_subformulas(f, out);
  return out;
}

std::set<Formula> closure_set(const std::set<Formula>& gamma) {
  std::set<Formula> subs;
  for (const Formula& f : gamma) collect_subformulas(f, subs);
  std::set<Formula> out = subs;
  for (const Formula& f : subs) out.insert(Formula::neg(f));
  return out;
}

}  // namespace iltab
