#include "iltab/label.hpp"

#include <cassert>
#include <vector>

#include "iltab/errors.hpp"

namespace iltab {

struct Label::Node {
  std::shared_ptr<const Node> parent;  // null on the root
  StepKind kind = StepKind::Root;
  std::size_t index = 0;
  std::shared_ptr<const Node> base;  // S-steps only
  std::size_t length = 1;
  std::size_t hashed = 0;
};

const std::shared_ptr<const Label::Node>& Label::root_node() {
  static const std::shared_ptr<const Node> node = [] {
    auto n = std::make_shared<Node>();
    n->hashed = 0x517cc1b727220a95ull;
    return n;
  }();
  return node;
}

Label::Label() : node_(root_node()) {}

Label Label::root() { return Label(); }

Label Label::extend_r(std::size_t n) const {
  auto node = std::make_shared<Node>();
  node->parent = node_;
  node->kind = StepKind::R;
  node->index = n;
  node->length = node_->length + 1;
  node->hashed = detail::hash_mix(detail::hash_mix(node_->hashed, 1), n);
  return Label(std::move(node));
}

Label Label::extend_s(const Label& base, std::size_t n) const {
  if (!base.is_strict_prefix_of(*this)) {
    throw PrefixViolation("S-step base " + base.str() +
                          " is not a strict prefix of " + str());
  }
  auto node = std::make_shared<Node>();
  node->parent = node_;
  node->kind = StepKind::S;
  node->index = n;
  node->base = base.node_;
  node->length = node_->length + 1;
  node->hashed = detail::hash_mix(
      detail::hash_mix(detail::hash_mix(node_->hashed, 2), base.node_->hashed), n);
  return Label(std::move(node));
}

bool Label::is_root() const { return node_->kind == StepKind::Root; }

std::size_t Label::length() const { return node_->length; }

Label::StepKind Label::last_step() const { return node_->kind; }

std::size_t Label::last_index() const {
  assert(!is_root());
  return node_->index;
}

Label Label::last_base() const {
  assert(node_->kind == StepKind::S);
  return Label(node_->base);
}

Label Label::parent() const {
  assert(!is_root());
  return Label(node_->parent);
}

std::size_t Label::hash() const { return node_->hashed; }

int Label::compare(const Label& other) const {
  if (node_ == other.node_) return 0;
  std::vector<const Node*> a, b;
  a.reserve(node_->length);
  b.reserve(other.node_->length);
  for (const Node* n = node_.get(); n != nullptr; n = n->parent.get()) a.push_back(n);
  for (const Node* n = other.node_.get(); n != nullptr; n = n->parent.get()) b.push_back(n);
  // Chains were gathered leaf-first; compare from the root.
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
    const Node* x = *ia;
    const Node* y = *ib;
    if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
    if (x->kind == StepKind::S) {
      int c = Label(x->base).compare(Label(y->base));
      if (c != 0) return c;
    }
    if (x->index != y->index) return x->index < y->index ? -1 : 1;
  }
  if (ia != a.rend()) return 1;
  if (ib != b.rend()) return -1;
  return 0;
}

bool Label::is_strict_prefix_of(const Label& sigma) const {
  if (node_->length >= sigma.node_->length) return false;
  const Node* n = sigma.node_.get();
  for (std::size_t k = sigma.node_->length - node_->length; k > 0; --k) n = n->parent.get();
  if (n == node_.get()) return true;
  // Equal labels built independently do not share nodes.
  std::shared_ptr<const Node> held(sigma.node_, n);
  return Label(held).compare(*this) == 0;
}

void Label::render_node(const Node* node, std::string& out, bool spaced) {
  if (node->parent == nullptr) {
    out += '0';
    return;
  }
  render_node(node->parent.get(), out, spaced);
  if (node->kind == StepKind::R) {
    out += 'R';
    out += std::to_string(node->index);
  } else {
    out += "S_{";
    render_node(node->base.get(), out, spaced);
    out += '}';
    if (spaced) out += ' ';
    out += std::to_string(node->index);
  }
}

std::string Label::str() const {
  std::string out;
  render_node(node_.get(), out, true);
  return out;
}

std::string Label::token() const {
  std::string out;
  render_node(node_.get(), out, false);
  return out;
}

namespace {

std::size_t read_index(std::string_view text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') {
    throw ParseError("expected a step index", pos);
  }
  std::size_t value = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
    ++pos;
  }
  return value;
}

Label parse_label(std::string_view text, std::size_t offset) {
  std::size_t pos = 0;
  if (pos >= text.size() || text[pos] != '0') {
    throw ParseError("label must start with the root segment '0'", offset + pos);
  }
  ++pos;
  Label current = Label::root();
  while (pos < text.size()) {
    if (text[pos] == 'R') {
      ++pos;
      current = current.extend_r(read_index(text, pos));
    } else if (text[pos] == 'S') {
      ++pos;
      if (pos >= text.size() || text[pos] != '_') throw ParseError("expected '_' after 'S'", offset + pos);
      ++pos;
      if (pos >= text.size() || text[pos] != '{') throw ParseError("expected '{' after 'S_'", offset + pos);
      std::size_t open = ++pos;
      std::size_t depth = 1;
      while (pos < text.size() && depth > 0) {
        if (text[pos] == '{') ++depth;
        if (text[pos] == '}') --depth;
        ++pos;
      }
      if (depth != 0) throw ParseError("unterminated S-step base", offset + open - 1);
      Label base = parse_label(text.substr(open, pos - 1 - open), offset + open);
      if (pos < text.size() && text[pos] == ' ') ++pos;
      std::size_t index = read_index(text, pos);
      if (!base.is_strict_prefix_of(current)) {
        throw ParseError("S-step base " + base.str() + " is not a strict prefix of " +
                             current.str(),
                         offset + open);
      }
      current = current.extend_s(base, index);
    } else {
      throw ParseError("unexpected character in label", offset + pos);
    }
  }
  return current;
}

}  // namespace

Label Label::parse(std::string_view text) { return parse_label(text, 0); }

}  // namespace iltab
