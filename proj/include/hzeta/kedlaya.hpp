#pragma once

// Frobenius on H^1 of y^2 = Q0(x) over Q_p, Q0 monic of degree 2g+1 with
// integer coefficients: expand sigma(1/y), apply to x^i dx / y, reduce.

#include <gmpxx.h>

#include <vector>

#include "hzeta/matrix.hpp"
#include "hzeta/padic.hpp"

namespace hzeta {

/// sigma(1/y) = y^{-p} sum_k s_k(x) y^{-2k}, deg s_k <= 2g, coefficients
/// reduced mod p^precision.
struct InvSqrtSeries {
  std::vector<std::vector<mpz_class>> levels;
  long terms = 0;
  int precision = 0;
};

/// Binomial expansion of (1 + u)^{-1/2}, u = (Q0(x^p) - Q0(x)^p) / Q0^p, up to
/// u^terms.
InvSqrtSeries frobenius_inverse_sqrt_series(unsigned long p, const std::vector<long>& Q0, long terms,
                                            int precision);

struct FiberFrobenius {
  /// Z_p at the mantissa width used.
  PadicContext ctx;
  /// Rows: Frobenius images of x^i dx / y.
  Matrix F0;
  /// Absolute precision of the entries.
  int precision = 0;
  long series_terms = 0;

  /// F0 with mantissas reduced into another context over the same p.
  Matrix embed(const PadicContext& target) const;
};

/// `Q0` holds the coefficients of x^0 .. x^{2g+1} (leading 1).
FiberFrobenius fiber_frobenius_matrix(unsigned long p, const std::vector<long>& Q0, int precision);

}  // namespace hzeta
