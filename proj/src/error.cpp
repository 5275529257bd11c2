#include "carriersig/error.hpp"

namespace carriersig {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidMeasurement: return "invalid measurement";
    case ErrorCode::MalformedInput: return "malformed input";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::Shape: return "shape error";
    case ErrorCode::UnknownCarrier: return "unknown carrier";
    case ErrorCode::InvalidParameter: return "invalid parameter";
    case ErrorCode::Decomposition: return "decomposition error";
    case ErrorCode::DegenerateInput: return "degenerate input";
    case ErrorCode::Gap: return "measurement gap";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidMeasurement: return 3;
    case ErrorCode::MalformedInput: return 4;
    case ErrorCode::InsufficientData: return 5;
    case ErrorCode::Shape: return 6;
    case ErrorCode::UnknownCarrier: return 7;
    case ErrorCode::InvalidParameter: return 8;
    case ErrorCode::Decomposition: return 9;
    case ErrorCode::DegenerateInput: return 10;
    case ErrorCode::Gap: return 11;
    case ErrorCode::Io: return 12;
  }
  return 1;
}

}  // namespace carriersig
