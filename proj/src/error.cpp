#include "dvhop/error.hpp"

namespace dvhop {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoReachableAnchor: return "NoReachableAnchor";
    case Errc::DegenerateGeometry: return "DegenerateGeometry";
    case Errc::EmptyFront: return "EmptyFront";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::MissingCells: return "MissingCells";
    case Errc::ParseError: return "ParseError";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace dvhop
