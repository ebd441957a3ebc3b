#pragma once

#include <stdexcept>
#include <string>

namespace ncp {

// Error taxonomy shared across the library. CLI exit codes map onto these:
// ParseError -> 1, ValidationError/DegenerateInput -> 2, NonConvergence -> 3,
// anything else -> 4.

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyCell : std::runtime_error {
  explicit EmptyCell(const std::string& msg) : std::runtime_error(msg) {}
};

struct MissingFeatures : ValidationError {
  explicit MissingFeatures(const std::string& msg) : ValidationError(msg) {}
};

struct MissingLabels : ValidationError {
  explicit MissingLabels(const std::string& msg) : ValidationError(msg) {}
};

struct MissingEmbedding : ValidationError {
  explicit MissingEmbedding(const std::string& msg) : ValidationError(msg) {}
};

struct IndexOutOfRange : ValidationError {
  explicit IndexOutOfRange(const std::string& msg) : ValidationError(msg) {}
};

}  // namespace ncp
