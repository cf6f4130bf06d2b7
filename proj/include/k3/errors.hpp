#pragma once

#include <stdexcept>
#include <string>

namespace k3 {

enum class ErrorKind {
  ParseError,
  InvalidInput,
  DivisionByZero,
  DivisionByZeroJet,
  DenominatorVanishesIdentically,
  UnknownFamily,
  DegreeBoundViolated,
  RamificationCollision,
  NonMinimalUnresolved,
  DegenerateParameters,
  UnknownLatticeName,
  DegenerateGram,
  CorankNotOne,
  ResonantShift,
  PrecisionExhausted,
  DivergentArgument,
  StepSizeUnderflow,
  BasisMatchingIllConditioned,
  SigmaOutOfRange,
  TruncationBoundViolated,
  SizeCapExceeded,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  // true for numerical failures (precision, convergence, step size)
  bool is_numerical() const;

 private:
  ErrorKind kind_;
};

}  // namespace k3
