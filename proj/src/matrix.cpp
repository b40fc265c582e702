#include "hzeta/matrix.hpp"

#include <algorithm>

#include "hzeta/error.hpp"

namespace hzeta {

int MatPoly::degree(const PadicContext& ctx) const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    for (const auto& x : c[i])
      if (!ctx.is_zero(x)) return i;
  return -1;
}

Matrix MatPoly::coeff(int i) const {
  Matrix m;
  m.d = d;
  m.scale = scale;
  m.e = c[i];
  return m;
}

Matrix mat_zero(const PadicContext& ctx, int d, int scale) {
  Matrix m;
  m.d = d;
  m.scale = scale;
  m.e.assign(static_cast<size_t>(d) * d, ctx.zero());
  return m;
}

Matrix mat_identity(const PadicContext& ctx, int d) {
  return mat_scalar(ctx, d, ctx.one());
}

Matrix mat_scalar(const PadicContext& ctx, int d, const ZqElement& s, int scale) {
  Matrix m = mat_zero(ctx, d, scale);
  for (int i = 0; i < d; ++i) m(i, i) = s;
  return m;
}

Matrix mat_mul(const PadicContext& ctx, const Matrix& a, const Matrix& b) {
  if (a.d != b.d) throw Error(Errc::InvalidInput, "matrix dimension mismatch");
  const int d = a.d;
  Matrix r = mat_zero(ctx, d, a.scale + b.scale);
  ZqAccumulator acc(ctx.n());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      acc.clear();
      for (int k = 0; k < d; ++k) acc.addmul(a(i, k), b(k, j));
      acc.reduce_into(ctx, r(i, j), ctx.modulus());
    }
  return r;
}

Matrix mat_add(const PadicContext& ctx, const Matrix& a, const Matrix& b) {
  const int s = std::max(a.scale, b.scale);
  const Matrix x = mat_rescale(ctx, a, s), y = mat_rescale(ctx, b, s);
  Matrix r = x;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = ctx.add(x.e[i], y.e[i]);
  return r;
}

Matrix mat_sub(const PadicContext& ctx, const Matrix& a, const Matrix& b) {
  const int s = std::max(a.scale, b.scale);
  const Matrix x = mat_rescale(ctx, a, s), y = mat_rescale(ctx, b, s);
  Matrix r = x;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = ctx.sub(x.e[i], y.e[i]);
  return r;
}

Matrix mat_scale_by(const PadicContext& ctx, const Matrix& a, const ZqElement& s) {
  Matrix r = a;
  for (auto& x : r.e) x = ctx.mul(x, s);
  return r;
}

Matrix mat_rescale(const PadicContext& ctx, const Matrix& a, int new_scale) {
  if (new_scale == a.scale) return a;
  Matrix r = a;
  r.scale = new_scale;
  if (new_scale > a.scale) {
    const mpz_class f = ctx.pow_p(new_scale - a.scale);
    for (auto& x : r.e) x = ctx.mul_int(x, f);
    return r;
  }
  const mpz_class f = ctx.pow_p(a.scale - new_scale);
  for (auto& x : r.e)
    for (auto& c : x.c) {
      if (!mpz_divisible_p(c.get_mpz_t(), f.get_mpz_t()))
        throw Error(Errc::PrecisionExhausted, "rescale would drop digits");
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), f.get_mpz_t());
    }
  return r;
}

Matrix mat_normalize(const PadicContext& ctx, const Matrix& a, int floor_scale) {
  const auto v = mat_valuation(ctx, a);
  if (!v) return mat_rescale(ctx, a, std::min(a.scale, std::max(floor_scale, 0)));
  // mantissa valuation = v + scale
  const int mv = *v + a.scale;
  const int target = std::max(floor_scale, a.scale - mv);
  if (target >= a.scale) return a;
  return mat_rescale(ctx, a, target);
}

Matrix mat_frobenius(const PadicContext& ctx, const Matrix& a, int k) {
  Matrix r = a;
  for (auto& x : r.e) x = ctx.frobenius(x, k);
  return r;
}

Matrix mat_reduce(const PadicContext& ctx, const Matrix& a) {
  Matrix r = a;
  for (auto& x : r.e) x = ctx.reduce(x);
  return r;
}

std::optional<int> mat_valuation(const PadicContext& ctx, const Matrix& a) {
  std::optional<int> best;
  for (const auto& x : a.e) {
    if (ctx.is_zero(x)) continue;
    const int v = ctx.valuation(x) - a.scale;
    if (!best || v < *best) best = v;
  }
  return best;
}

bool scaled_equal_mod(const ZqElement& a, int sa, const ZqElement& b, int sb, unsigned long p,
                      int prec) {
  const int S = std::max(sa, sb);
  mpz_class fa, fb, mod;
  mpz_ui_pow_ui(fa.get_mpz_t(), p, S - sa);
  mpz_ui_pow_ui(fb.get_mpz_t(), p, S - sb);
  if (S + prec < 0) return true;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, S + prec);
  const size_t n = std::max(a.c.size(), b.c.size());
  for (size_t i = 0; i < n; ++i) {
    mpz_class x = (i < a.c.size() ? a.c[i] : mpz_class(0)) * fa;
    x -= (i < b.c.size() ? b.c[i] : mpz_class(0)) * fb;
    if (!mpz_divisible_p(x.get_mpz_t(), mod.get_mpz_t())) return false;
  }
  return true;
}

bool mat_equal_mod(const Matrix& a, const Matrix& b, unsigned long p, int prec) {
  if (a.d != b.d) return false;
  for (size_t i = 0; i < a.e.size(); ++i)
    if (!scaled_equal_mod(a.e[i], a.scale, b.e[i], b.scale, p, prec)) return false;
  return true;
}

Matrix matpoly_eval(const PadicContext& ctx, const MatPoly& P, const ZqElement& x) {
  Matrix r = mat_zero(ctx, P.d, P.scale);
  for (int i = static_cast<int>(P.c.size()) - 1; i >= 0; --i)
    for (size_t j = 0; j < r.e.size(); ++j) r.e[j] = ctx.add(ctx.mul(r.e[j], x), P.c[i][j]);
  return r;
}

std::optional<int> matpoly_valuation(const PadicContext& ctx, const MatPoly& P) {
  std::optional<int> best;
  for (size_t i = 0; i < P.c.size(); ++i) {
    auto v = mat_valuation(ctx, P.coeff(static_cast<int>(i)));
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

MatPoly matpoly_resize(const PadicContext& ctx, MatPoly P, int len) {
  P.c.resize(len, std::vector<ZqElement>(static_cast<size_t>(P.d) * P.d, ctx.zero()));
  return P;
}

}  // namespace hzeta
