#pragma once

#include <stdexcept>
#include <string>

namespace dvhop {

enum class Errc {
  InvalidConfig,
  GenerationFailed,
  DimensionMismatch,
  NoReachableAnchor,
  DegenerateGeometry,
  EmptyFront,
  EmptyInput,
  InsufficientSamples,
  MissingCells,
  ParseError,
  Io,
};

const char* to_string(Errc code) noexcept;

/// Exception type thrown by every fallible operation in the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dvhop
