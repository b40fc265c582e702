#include "hzeta/zeta.hpp"

#include <algorithm>

#include "hzeta/error.hpp"
#include "hzeta/zqpoly.hpp"

namespace hzeta {

namespace {

mpz_class ui_pow(const mpz_class& b, int e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Matrix widen(const PadicContext& wide, const Matrix& a) {
  Matrix r = a;
  for (auto& x : r.e) x = wide.reduce(x);
  return r;
}

}  // namespace

FrobeniusMatrix specialize_frobenius(const PadicContext& ctx, const Matrix& K1, int precision,
                                     const ZqElement& r1, long M) {
  const ZqElement u = ctx.pow(ctx.invert(r1), mpz_class(M));
  FrobeniusMatrix out{ctx, mat_normalize(ctx, mat_scale_by(ctx, K1, u)), precision};
  return out;
}

FrobeniusMatrix specialize_frobenius(const Family& fam, const PadicContext& ctx, const Matrix& K1,
                                     int precision) {
  ZqElement r1 = ctx.zero();
  for (const auto& c : fam.r) r1 = ctx.add(r1, ctx.reduce(c));
  if (!ctx.is_unit(r1)) throw Error(Errc::NonUnit, "r(1) is not a unit");
  return specialize_frobenius(ctx, K1, precision, r1, fam.M);
}

FrobeniusMatrix norm_frobenius(const FrobeniusMatrix& F1, int n, int shift) {
  if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
  const int s = std::max(0, F1.F.scale);
  const int prec = F1.precision - (n - 1) * s;
  const PadicContext ctx = F1.ctx.with_precision(std::max(F1.ctx.precision(), F1.precision + n * s + 2));
  const Matrix F = widen(ctx, F1.F);
  shift = ((shift % n) + n) % n;
  Matrix acc;
  for (int t = 0; t < n; ++t) {
    const int j = ((shift - 1 - t) % n + n) % n;
    const Matrix Fj = j == 0 ? F : mat_frobenius(ctx, F, j);
    acc = t == 0 ? Fj : mat_mul(ctx, acc, Fj);
  }
  return {ctx, mat_normalize(ctx, acc), prec};
}

std::vector<ZqElement> charpoly_coefficients(const PadicContext& ctx, const Matrix& F) {
  const int d = F.d;
  const ZqElement ps = ctx.from_mpz(ctx.pow_p(std::max(0, F.scale)));
  std::vector<std::vector<ZqPoly>> T(d, std::vector<ZqPoly>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) T[i][j] = {i == j ? ps : ctx.zero(), ctx.neg(F(i, j))};
  ZqPoly det = determinant(T, ZqPolyRing{ctx});
  det.resize(d + 1, ctx.zero());
  return det;
}

mpz_class weil_bound(const mpz_class& q, int g, int i) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), 2 * g, i);
  mpz_class r = b * b * ui_pow(q, i);
  mpz_sqrt(r.get_mpz_t(), r.get_mpz_t());
  return r;
}

std::vector<mpz_class> charpoly_lift(const FrobeniusMatrix& Fq, const mpz_class& q, int g) {
  const int d = 2 * g;
  if (Fq.F.d != d) throw Error(Errc::InvalidInput, "matrix size is not 2g");
  const int s = std::max(0, Fq.F.scale);
  const PadicContext ctx = Fq.ctx.with_precision(Fq.precision + (d + 1) * s + 2);
  const Matrix F = widen(ctx, Fq.F);
  const auto c = charpoly_coefficients(ctx, F);
  const mpz_class den = ctx.pow_p(d * s);

  std::vector<mpz_class> P(d + 1);
  P[0] = 1;
  for (int k = 1; k <= d; ++k) {
    const int prec = Fq.precision - (k - 1) * s;
    const mpz_class bound = weil_bound(q, g, k);
    if (prec <= 0 || 2 * bound >= ctx.pow_p(prec))
      throw Error(Errc::InsufficientPrecision,
                  "precision " + std::to_string(prec) + " cannot pin coefficient " + std::to_string(k));
    const mpz_class modk = ctx.pow_p(prec) * den;
    for (int i = 1; i < ctx.n(); ++i) {
      mpz_class r = c[k].c[i] % modk;
      if (r != 0) throw Error(Errc::LiftOutOfWindow, "coefficient " + std::to_string(k) + " is not in Z_p");
    }
    mpz_class v = c[k].c[0] % modk;
    if (v % den != 0) throw Error(Errc::LiftOutOfWindow, "coefficient " + std::to_string(k) + " is not integral");
    v /= den;
    const mpz_class mod = ctx.pow_p(prec);
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    if (2 * v > mod) v -= mod;
    if (abs(v) > bound)
      throw Error(Errc::LiftOutOfWindow, "coefficient " + std::to_string(k) + " outside the Weil window");
    P[k] = v;
  }
  for (int i = 0; i <= g; ++i)
    if (P[d - i] != ui_pow(q, g - i) * P[i])
      throw Error(Errc::FunctionalEquationViolation, "c_" + std::to_string(d - i) + " != q^" +
                                                         std::to_string(g - i) + " c_" + std::to_string(i));
  return P;
}

std::vector<mpz_class> inverse_root_power_sums(const std::vector<mpz_class>& P, int kmax) {
  const int d = static_cast<int>(P.size()) - 1;
  std::vector<mpz_class> s(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    mpz_class v = k <= d ? mpz_class(-k * P[k]) : mpz_class(0);
    for (int i = 1; i < k && i <= d; ++i) v -= P[i] * s[k - i];
    s[k] = v;
  }
  return s;
}

ZetaResult assemble_zeta(const std::vector<mpz_class>& P, unsigned long p, int n, int kmax) {
  if (P.size() < 3 || P.size() % 2 == 0) throw Error(Errc::InvalidInput, "numerator degree must be 2g");
  ZetaResult z;
  z.p = p;
  z.n = n;
  z.g = static_cast<int>(P.size() - 1) / 2;
  z.q = ui_pow(mpz_class(p), n);
  z.P = P;
  if (kmax <= 0) kmax = z.g + 1;
  const auto s = inverse_root_power_sums(P, kmax);
  z.checks.counts_positive = true;
  for (int k = 1; k <= kmax; ++k) {
    const mpz_class N = ui_pow(z.q, k) + 1 - s[k];
    if (N < 0) throw Error(Errc::NegativeCount, "derived count for k=" + std::to_string(k) + " is negative");
    if (N < 1) z.checks.counts_positive = false;
    z.counts.push_back(N);
  }
  const int g = z.g;
  z.checks.constant_term = P[0] == 1;
  z.checks.functional_equation = true;
  for (int i = 0; i <= g; ++i)
    if (P[2 * g - i] != ui_pow(z.q, g - i) * P[i]) z.checks.functional_equation = false;
  z.checks.weil_windows = true;
  for (int i = 0; i <= 2 * g; ++i)
    if (abs(P[i]) > weil_bound(z.q, g, i)) z.checks.weil_windows = false;
  const mpz_class t = z.counts[0] - z.q - 1;
  z.checks.hasse = t * t <= 4 * g * g * z.q;
  return z;
}

}  // namespace hzeta
