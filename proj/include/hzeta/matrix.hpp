#pragma once

// Matrices and matrix polynomials over Q_q with one shared scale: the value is
// mantissa * p^{-scale}, mantissas reduced modulo the context width.

#include <optional>
#include <vector>

#include "hzeta/padic.hpp"

namespace hzeta {

struct Matrix {
  int d = 0;
  int scale = 0;
  std::vector<ZqElement> e;  // row-major, d*d

  ZqElement& operator()(int i, int j) { return e[static_cast<size_t>(i) * d + j]; }
  const ZqElement& operator()(int i, int j) const { return e[static_cast<size_t>(i) * d + j]; }
};

/// Sum_i c[i] Gamma^i with d x d coefficients, all at one scale.
struct MatPoly {
  int d = 0;
  int scale = 0;
  std::vector<std::vector<ZqElement>> c;

  /// Highest index holding a nonzero coefficient, -1 for the zero polynomial.
  int degree(const PadicContext& ctx) const;
  Matrix coeff(int i) const;
};

Matrix mat_zero(const PadicContext& ctx, int d, int scale = 0);
Matrix mat_identity(const PadicContext& ctx, int d);
Matrix mat_scalar(const PadicContext& ctx, int d, const ZqElement& s, int scale = 0);

Matrix mat_mul(const PadicContext& ctx, const Matrix& a, const Matrix& b);
/// Aligns scales before adding.
Matrix mat_add(const PadicContext& ctx, const Matrix& a, const Matrix& b);
Matrix mat_sub(const PadicContext& ctx, const Matrix& a, const Matrix& b);
Matrix mat_scale_by(const PadicContext& ctx, const Matrix& a, const ZqElement& s);
/// Change the scale. Lowering it requires exact divisibility of the mantissas.
Matrix mat_rescale(const PadicContext& ctx, const Matrix& a, int new_scale);
/// Lower the scale as far as the mantissas allow (never below `floor_scale`).
Matrix mat_normalize(const PadicContext& ctx, const Matrix& a, int floor_scale = 0);
Matrix mat_frobenius(const PadicContext& ctx, const Matrix& a, int k);
/// Re-reduce mantissas into `ctx` (e.g. after narrowing the width).
Matrix mat_reduce(const PadicContext& ctx, const Matrix& a);
/// Minimum entry valuation; nullopt when every mantissa is zero.
std::optional<int> mat_valuation(const PadicContext& ctx, const Matrix& a);
/// Values agree modulo p^prec (compares exact integer representatives).
bool mat_equal_mod(const Matrix& a, const Matrix& b, unsigned long p, int prec);

Matrix matpoly_eval(const PadicContext& ctx, const MatPoly& P, const ZqElement& x);
std::optional<int> matpoly_valuation(const PadicContext& ctx, const MatPoly& P);
/// Truncate/extend to exactly `len` coefficients.
MatPoly matpoly_resize(const PadicContext& ctx, MatPoly P, int len);

/// Values of two scaled elements agree modulo p^prec.
bool scaled_equal_mod(const ZqElement& a, int sa, const ZqElement& b, int sb, unsigned long p,
                      int prec);

}  // namespace hzeta
