#pragma once

#include <stdexcept>
#include <string>

namespace iltab {

// Syntax error in a formula, label, frame-condition or model text.
// position() is the byte offset into the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace iltab
