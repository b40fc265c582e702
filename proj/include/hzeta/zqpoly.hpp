#pragma once

// Univariate polynomials over Z_q / p^W (used for the deformation parameter
// Gamma) and a division-free determinant over any commutative ring.

#include <bit>
#include <cstdint>
#include <vector>

#include "hzeta/padic.hpp"

namespace hzeta {

using ZqPoly = std::vector<ZqElement>;

namespace zqpoly {

void trim(const PadicContext& ctx, ZqPoly& a);
int degree(const PadicContext& ctx, const ZqPoly& a);
ZqPoly add(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& b);
ZqPoly sub(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& b);
ZqPoly mul(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& b);
ZqPoly scale(const PadicContext& ctx, const ZqPoly& a, const ZqElement& s);
ZqPoly scale_int(const PadicContext& ctx, const ZqPoly& a, const mpz_class& s);
ZqPoly derivative(const PadicContext& ctx, const ZqPoly& a);
ZqElement eval(const PadicContext& ctx, const ZqPoly& a, const ZqElement& x);
/// sigma applied to every coefficient.
ZqPoly frobenius(const PadicContext& ctx, const ZqPoly& a, int k = 1);
/// a(Gamma^e).
ZqPoly compose_power(const PadicContext& ctx, const ZqPoly& a, int e);
ZqPoly reduce(const PadicContext& ctx, const ZqPoly& a);
ZqPoly pow(const PadicContext& ctx, const ZqPoly& a, unsigned e);
/// Remainder modulo a monic polynomial.
ZqPoly rem_monic(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& m);
int valuation(const PadicContext& ctx, const ZqPoly& a);

}  // namespace zqpoly

/// All minors of the rows [row0, row0 + popcount(mask)) and the columns in
/// `mask`, for an N x N matrix with N <= 20. Expansion along the last row;
/// only ring operations, no division.
template <class T, class Ring>
std::vector<T> minor_table(const std::vector<std::vector<T>>& M, int row0, const Ring& R) {
  const int N = static_cast<int>(M.size());
  const int rows = N - row0;
  std::vector<T> dp(size_t(1) << N, R.zero());
  dp[0] = R.one();
  for (std::uint32_t mask = 1; mask < (1u << N); ++mask) {
    const int k = std::popcount(mask);
    if (k > rows) continue;
    const int row = row0 + k - 1;
    T acc = R.zero();
    int pos = 0;
    for (int j = 0; j < N; ++j) {
      if (!(mask & (1u << j))) continue;
      const std::uint32_t sub = mask & ~(1u << j);
      if (!R.is_zero(M[row][j])) {
        T t = R.mul(M[row][j], dp[sub]);
        // sign (-1)^{(k-1) + pos}
        acc = ((k - 1 + pos) % 2 == 0) ? R.add(acc, t) : R.sub(acc, t);
      }
      ++pos;
    }
    dp[mask] = acc;
  }
  return dp;
}

template <class T, class Ring>
T determinant(const std::vector<std::vector<T>>& M, const Ring& R) {
  if (M.empty()) return R.one();
  const int N = static_cast<int>(M.size());
  return minor_table(M, 0, R)[(size_t(1) << N) - 1];
}

/// Ring adaptors for minor_table / determinant.
struct ZqRing {
  const PadicContext& ctx;
  ZqElement zero() const { return ctx.zero(); }
  ZqElement one() const { return ctx.one(); }
  bool is_zero(const ZqElement& a) const { return ctx.is_zero(a); }
  ZqElement add(const ZqElement& a, const ZqElement& b) const { return ctx.add(a, b); }
  ZqElement sub(const ZqElement& a, const ZqElement& b) const { return ctx.sub(a, b); }
  ZqElement mul(const ZqElement& a, const ZqElement& b) const { return ctx.mul(a, b); }
};

struct ZqPolyRing {
  const PadicContext& ctx;
  ZqPoly zero() const { return {}; }
  ZqPoly one() const { return {ctx.one()}; }
  bool is_zero(const ZqPoly& a) const { return zqpoly::degree(ctx, a) < 0; }
  ZqPoly add(const ZqPoly& a, const ZqPoly& b) const { return zqpoly::add(ctx, a, b); }
  ZqPoly sub(const ZqPoly& a, const ZqPoly& b) const { return zqpoly::sub(ctx, a, b); }
  ZqPoly mul(const ZqPoly& a, const ZqPoly& b) const { return zqpoly::mul(ctx, a, b); }
};

}  // namespace hzeta
