#include "finsler/error.hpp"

namespace finsler {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidFamily: return "InvalidFamily";
    case ErrorKind::NonGenericPoint: return "NonGenericPoint";
    case ErrorKind::NonGenericCut: return "NonGenericCut";
    case ErrorKind::StaleConfig: return "StaleConfig";
    case ErrorKind::ComplexityRefusal: return "ComplexityRefusal";
    case ErrorKind::NumericBudgetExceeded: return "NumericBudgetExceeded";
    case ErrorKind::UnsupportedClosedForm: return "UnsupportedClosedForm";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::RayDegenerate: return "RayDegenerate";
    case ErrorKind::DegenerateArrangement: return "DegenerateArrangement";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse:
      return 1;
    case ErrorKind::NumericBudgetExceeded:
    case ErrorKind::GridTooCoarse:
    case ErrorKind::ComplexityRefusal:
      return 3;
    case ErrorKind::InternalInvariant:
      return 4;
    default:
      return 2;
  }
}

}  // namespace finsler
