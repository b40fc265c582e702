#pragma once

// From the solution at Gamma = 1 to the zeta numerator: F(1), the q-power
// Frobenius, det(1 - F t) lifted to Z[t], and the derived point counts.

#include <gmpxx.h>

#include <vector>

#include "hzeta/deformation.hpp"
#include "hzeta/matrix.hpp"
#include "hzeta/padic.hpp"

namespace hzeta {

/// A matrix together with the absolute precision of its values.
struct FrobeniusMatrix {
  PadicContext ctx;
  Matrix F;
  int precision = 0;
};

struct ZetaChecks {
  bool constant_term = false;
  bool functional_equation = false;
  bool weil_windows = false;
  bool hasse = false;
  bool counts_positive = false;

  bool all() const { return constant_term && functional_equation && weil_windows && hasse && counts_positive; }
};

struct ZetaResult {
  unsigned long p = 0;
  int n = 0, g = 0;
  mpz_class q;
  /// c_0 .. c_{2g}
  std::vector<mpz_class> P;
  /// #C(F_{q^k}) for k = 1 .. g+1
  std::vector<mpz_class> counts;
  ZetaChecks checks;
};

/// F(1) = r(1)^{-M} K1; `precision` is that of K1.
FrobeniusMatrix specialize_frobenius(const Family& fam, const PadicContext& ctx, const Matrix& K1,
                                     int precision);
/// A matrix over an arbitrary context (r1 is r(1) there).
FrobeniusMatrix specialize_frobenius(const PadicContext& ctx, const Matrix& K1, int precision,
                                     const ZqElement& r1, long M);

/// sigma^{n-1}(F) ... sigma(F) F, or the cyclic rotation starting at
/// sigma^{shift}. The context is widened so no digits are dropped.
FrobeniusMatrix norm_frobenius(const FrobeniusMatrix& F1, int n, int shift = 0);

/// det(1 - F t) expanded by minors; every c[k] is a mantissa at scale d * F.scale.
std::vector<ZqElement> charpoly_coefficients(const PadicContext& ctx, const Matrix& F);

/// Lifted and validated numerator. Throws LiftOutOfWindow,
/// FunctionalEquationViolation, or InsufficientPrecision when the precision
/// cannot pin the Weil windows.
std::vector<mpz_class> charpoly_lift(const FrobeniusMatrix& Fq, const mpz_class& q, int g);

/// |c_i| <= binom(2g, i) q^{i/2}, returned as floor of the bound.
mpz_class weil_bound(const mpz_class& q, int g, int i);

/// Newton identities on P; counts for k = 1 .. kmax (default g + 1).
ZetaResult assemble_zeta(const std::vector<mpz_class>& P, unsigned long p, int n, int kmax = 0);

/// Power sums s_k = sum alpha_i^k of the inverse roots, k = 1 .. kmax.
std::vector<mpz_class> inverse_root_power_sums(const std::vector<mpz_class>& P, int kmax);

}  // namespace hzeta
