#pragma once

#include <stdexcept>
#include <string>

namespace droneqc {

// Error categories map onto CLI exit codes: invalid input or configuration
// (2), numeric failure (3), I/O failure (4).
enum class ErrorCategory { kInvalidInput, kNumeric, kIo };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what)
      : Error(ErrorCategory::kInvalidInput, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorCategory::kNumeric, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what)
      : Error(ErrorCategory::kIo, what) {}
};

struct AltitudeOutOfRange : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NonPositiveWavenumber : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct ZeroDistance : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct EmptyInput : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct MalformedRecord : InvalidInputError {
  MalformedRecord(std::size_t row, const std::string& what)
      : InvalidInputError("row " + std::to_string(row) + ": " + what),
        row(row) {}
  std::size_t row;
};
struct FactorOutOfRange : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NegativeVariance : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct InvalidGeometry : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NonPositiveGeometry : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NonPositiveDefiniteCovariance : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct InvalidState : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct InvalidTopology : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct NonNormalizedReference : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};
struct QuadratureFailure : NumericError {
  using NumericError::NumericError;
};
struct ConfigParseError : InvalidInputError {
  using InvalidInputError::InvalidInputError;
};

}  // namespace droneqc
