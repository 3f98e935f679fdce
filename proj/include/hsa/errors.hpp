#pragma once

#include <stdexcept>
#include <string>

namespace hsa {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidOperand : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct InsufficientField : Error {
  using Error::Error;
};

struct SearchExhausted : Error {
  using Error::Error;
};

struct CertificationTooLarge : Error {
  using Error::Error;
};

struct EnumerationTooLarge : Error {
  using Error::Error;
};

struct InfeasibleParams : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct MissingMessage : Error {
  using Error::Error;
};

struct NotSurviving : Error {
  using Error::Error;
};

struct TooFewSurvivors : Error {
  using Error::Error;
};

struct InsufficientSymbols : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace hsa
