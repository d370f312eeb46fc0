#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finsler {

enum class ErrorKind {
  Parse,
  InvalidFamily,
  NonGenericPoint,
  NonGenericCut,
  StaleConfig,
  ComplexityRefusal,
  NumericBudgetExceeded,
  UnsupportedClosedForm,
  ZeroMass,
  GridTooCoarse,
  RayDegenerate,
  DegenerateArrangement,
  InvalidArgument,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind) noexcept;

// CLI exit status: 1 parse, 2 precondition, 3 numeric budget, 4 internal invariant.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace finsler
