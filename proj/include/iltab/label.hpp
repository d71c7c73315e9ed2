#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iltab {

namespace detail {
inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  return seed;
}
}  // namespace detail

// Thrown when an S-step base is not a strict prefix of the extended label.
class PrefixViolation : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A world label: the root "0" followed by R-steps ("R<n>") and S-steps
// ("S_{<base>} <n>", where the base is a strict prefix of the label built so
// far). Immutable value type; extensions share their prefix.
class Label {
 public:
  enum class StepKind { Root, R, S };

  Label();  // the root label "0"
  static Label root();

  Label extend_r(std::size_t n) const;
  // Requires base to be a strict prefix of *this; throws PrefixViolation.
  Label extend_s(const Label& base, std::size_t n) const;

  bool is_root() const;
  std::size_t length() const;  // number of segments, root counts as 1

  StepKind last_step() const;
  std::size_t last_index() const;  // last step only; not defined on the root
  Label last_base() const;         // S-steps only
  Label parent() const;            // label without its last step

  bool is_strict_prefix_of(const Label& sigma) const;

  // Canonical rendering, e.g. "0R0S_{0} 1". token() is the same string with
  // the space removed, safe for whitespace-separated file formats.
  std::string str() const;
  std::string token() const;

  // Accepts both the spaced and the token form. Throws ParseError.
  static Label parse(std::string_view text);

  int compare(const Label& other) const;
  bool operator==(const Label& o) const { return compare(o) == 0; }
  bool operator!=(const Label& o) const { return compare(o) != 0; }
  bool operator<(const Label& o) const { return compare(o) < 0; }
  bool operator<=(const Label& o) const { return compare(o) <= 0; }
  bool operator>(const Label& o) const { return compare(o) > 0; }
  bool operator>=(const Label& o) const { return compare(o) >= 0; }

  std::size_t hash() const;

 private:
  struct Node;
  explicit Label(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static const std::shared_ptr<const Node>& root_node();
  static void render_node(const Node* node, std::string& out, bool spaced);

  std::shared_ptr<const Node> node_;
};

inline bool is_strict_prefix(const Label& rho, const Label& sigma) {
  return rho.is_strict_prefix_of(sigma);
}

}  // namespace iltab

template <>
struct std::hash<iltab::Label> {
  std::size_t operator()(const iltab::Label& l) const noexcept { return l.hash(); }
};
