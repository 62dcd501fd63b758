#pragma once
#include <stdexcept>
#include <string>

namespace fliess {

// Malformed textual input (series files, words, rationals, JSON, CSV).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension mismatch or violated operation precondition.
struct precondition_error : std::invalid_argument {
  explicit precondition_error(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace fliess
