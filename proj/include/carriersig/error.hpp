#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carriersig {

// Each code maps to a distinct CLI exit status (see exit_status()).
enum class ErrorCode {
  InvalidMeasurement,
  MalformedInput,
  InsufficientData,
  Shape,
  UnknownCarrier,
  InvalidParameter,
  Decomposition,
  DegenerateInput,
  Gap,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

std::string_view to_string(ErrorCode code) noexcept;

/// Process exit status for an error of the given kind. 0 and 1 are never
/// returned; 2 is reserved for command-line usage errors.
int exit_status(ErrorCode code) noexcept;

}  // namespace carriersig
