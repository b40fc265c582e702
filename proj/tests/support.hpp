#pragma once

// Shared helpers for unit and acceptance tests: synthetic systems with exact
// rational twins, and conversions between rationals and scaled p-adics.

#include <random>

#include "hzeta/matrix.hpp"
#include "hzeta/odesolver.hpp"
#include "hzeta/oracle.hpp"

namespace hzeta::testing {

/// Value of an exact rational as a mantissa at `scale` (requires a p-adic
/// valuation >= -scale).
inline ZqElement rational_to_mantissa(const PadicContext& ctx, const mpq_class& q, int scale) {
  mpz_class num = q.get_num(), den = q.get_den();
  const mpz_class pz(ctx.p());
  int v = 0;
  while (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t())) {
    den /= pz;
    --v;
  }
  if (sgn(num) != 0)
    while (mpz_divisible_p(num.get_mpz_t(), pz.get_mpz_t())) {
      num /= pz;
      ++v;
    }
  if (sgn(num) == 0) return ctx.zero();
  if (v + scale < 0) throw std::runtime_error("rational below the representable scale");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), ctx.modulus().get_mpz_t());
  return ctx.from_mpz(num * inv * ctx.pow_p(v + scale));
}

inline Matrix qmatrix_to_matrix(const PadicContext& ctx, const oracle::QMatrix& q, int d, int scale) {
  Matrix m = mat_zero(ctx, d, scale);
  for (size_t i = 0; i < q.size(); ++i) m.e[i] = rational_to_mantissa(ctx, q[i], scale);
  return m;
}

inline MatPoly qpoly_to_matpoly(const PadicContext& ctx, const std::vector<oracle::QMatrix>& P, int d) {
  MatPoly out;
  out.d = d;
  out.scale = 0;
  for (const auto& q : P) out.c.push_back(qmatrix_to_matrix(ctx, q, d, 0).e);
  return out;
}

/// A random integral system over Z_p with unit A_0, B_0 and p | X, Y, so the
/// solution stays integral. Degrees are bounded by `deg`.
struct SyntheticSystem {
  oracle::RationalSystem exact;
  bool scalar = false;
};

inline SyntheticSystem random_system(std::mt19937_64& rng, unsigned long p, int d, int deg,
                                     bool scalar_ab) {
  std::uniform_int_distribution<long> coef(-20, 20);
  auto unit = [&]() {
    long x;
    do x = coef(rng);
    while (x % static_cast<long>(p) == 0);
    return x;
  };
  const size_t dd = static_cast<size_t>(d) * d;
  auto rand_mat = [&](long mult, bool unit_det) {
    for (;;) {
      oracle::QMatrix m(dd);
      for (auto& x : m) x = coef(rng) * mult;
      if (!unit_det) return m;
      // take a unit diagonal plus p-divisible off-diagonal: determinant is a unit
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i * d + j] = (i == j) ? mpq_class(unit()) : mpq_class(coef(rng) * long(p));
      return m;
    }
  };
  auto scalar_mat = [&](long x) {
    oracle::QMatrix m(dd, 0);
    for (int i = 0; i < d; ++i) m[i * d + i] = x;
    return m;
  };
  SyntheticSystem s;
  s.scalar = scalar_ab;
  s.exact.d = d;
  std::uniform_int_distribution<int> dg(0, deg);
  const int dA = dg(rng), dB = dg(rng), dX = dg(rng), dY = dg(rng);
  for (int i = 0; i <= dA; ++i)
    s.exact.A.push_back(scalar_ab ? scalar_mat(i == 0 ? unit() : coef(rng)) : rand_mat(1, i == 0));
  for (int i = 0; i <= dB; ++i)
    s.exact.B.push_back(scalar_ab ? scalar_mat(i == 0 ? unit() : coef(rng)) : rand_mat(1, i == 0));
  for (int i = 0; i <= dX; ++i) s.exact.X.push_back(rand_mat(long(p), false));
  for (int i = 0; i <= dY; ++i) s.exact.Y.push_back(rand_mat(long(p), false));
  s.exact.K0 = rand_mat(1, true);
  return s;
}

/// Zero constants: the solution is integral, so alpha = gamma = delta = 0.
inline DiffEqSystem assemble_synthetic(const PadicContext& ctx, const oracle::RationalSystem& r,
                                       int m, long ell) {
  SystemConstants k;
  k.alpha = LogReal(ctx.p(), 0);
  k.gamma = LogReal(ctx.p(), 0);
  k.delta = LogReal(ctx.p(), 0);
  k.m = m;
  k.ell = ell;
  return assemble_system(ctx, qpoly_to_matpoly(ctx, r.A, r.d), qpoly_to_matpoly(ctx, r.B, r.d),
                         qpoly_to_matpoly(ctx, r.X, r.d), qpoly_to_matpoly(ctx, r.Y, r.d),
                         qmatrix_to_matrix(ctx, r.K0, r.d, 0), k);
}

/// Context wide enough for a synthetic system's epsilon.
inline PadicContext synthetic_context(unsigned long p, int n, int m, long ell) {
  const long Lp = ceil_log(p, mpz_class(ell));
  return PadicContext::make(p, n, m + static_cast<int>(Lp) + 30);
}

}  // namespace hzeta::testing
