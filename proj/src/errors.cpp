#include "k3/errors.hpp"

namespace k3 {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DivisionByZeroJet: return "DivisionByZeroJet";
    case ErrorKind::DenominatorVanishesIdentically: return "DenominatorVanishesIdentically";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::DegreeBoundViolated: return "DegreeBoundViolated";
    case ErrorKind::RamificationCollision: return "RamificationCollision";
    case ErrorKind::NonMinimalUnresolved: return "NonMinimalUnresolved";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::UnknownLatticeName: return "UnknownLatticeName";
    case ErrorKind::DegenerateGram: return "DegenerateGram";
    case ErrorKind::CorankNotOne: return "CorankNotOne";
    case ErrorKind::ResonantShift: return "ResonantShift";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DivergentArgument: return "DivergentArgument";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::BasisMatchingIllConditioned: return "BasisMatchingIllConditioned";
    case ErrorKind::SigmaOutOfRange: return "SigmaOutOfRange";
    case ErrorKind::TruncationBoundViolated: return "TruncationBoundViolated";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
  }
  return "Error";
}

bool Error::is_numerical() const {
  switch (kind_) {
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::StepSizeUnderflow:
    case ErrorKind::BasisMatchingIllConditioned:
    case ErrorKind::TruncationBoundViolated:
    case ErrorKind::NonMinimalUnresolved:
      return true;
    default:
      return false;
  }
}

}  // namespace k3
