#pragma once

#include <stdexcept>
#include <string>

namespace hzeta {

enum class Errc {
  InvalidInput,
  NonUnit,
  DomainError,
  SingularLeadingCoefficient,
  ValuationViolation,
  GuardExhausted,
  PrecisionExhausted,
  InsufficientPrecision,
  SingularCurve,
  BadBaseCurve,
  LinearSolveFailure,
  DegreeOverflow,
  LiftOutOfWindow,
  FunctionalEquationViolation,
  NegativeCount,
  BudgetExceeded,
};

const char* errc_name(Errc code) noexcept;

// Process exit code used by the CLI: 1 invalid input, 2 math domain, 3 internal.
int exit_code_for(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hzeta
