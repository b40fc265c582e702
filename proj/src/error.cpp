#include "hzeta/error.hpp"

namespace hzeta {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NonUnit: return "NonUnit";
    case Errc::DomainError: return "DomainError";
    case Errc::SingularLeadingCoefficient: return "SingularLeadingCoefficient";
    case Errc::ValuationViolation: return "ValuationViolation";
    case Errc::GuardExhausted: return "GuardExhausted";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::BadBaseCurve: return "BadBaseCurve";
    case Errc::LinearSolveFailure: return "LinearSolveFailure";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::LiftOutOfWindow: return "LiftOutOfWindow";
    case Errc::FunctionalEquationViolation: return "FunctionalEquationViolation";
    case Errc::NegativeCount: return "NegativeCount";
    case Errc::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput:
    case Errc::BudgetExceeded:
      return 1;
    case Errc::SingularCurve:
    case Errc::BadBaseCurve:
    case Errc::NonUnit:
    case Errc::DomainError:
    case Errc::SingularLeadingCoefficient:
    case Errc::ValuationViolation:
      return 2;
    default:
      return 3;
  }
}

}  // namespace hzeta
