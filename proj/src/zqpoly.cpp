#include "hzeta/zqpoly.hpp"

#include <algorithm>

#include "hzeta/error.hpp"

namespace hzeta::zqpoly {

void trim(const PadicContext& ctx, ZqPoly& a) {
  while (!a.empty() && ctx.is_zero(a.back())) a.pop_back();
}

int degree(const PadicContext& ctx, const ZqPoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!ctx.is_zero(a[i])) return i;
  return -1;
}

ZqPoly add(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& b) {
  ZqPoly r(std::max(a.size(), b.size()), ctx.zero());
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = ctx.add(a[i], b[i]);
    else
      r[i] = i < a.size() ? a[i] : b[i];
  }
  trim(ctx, r);
  return r;
}

ZqPoly sub(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& b) {
  ZqPoly r(std::max(a.size(), b.size()), ctx.zero());
  for (size_t i = 0; i < r.size(); ++i) {
    const ZqElement& x = i < a.size() ? a[i] : r[i];
    r[i] = i < b.size() ? ctx.sub(x, b[i]) : x;
  }
  trim(ctx, r);
  return r;
}

ZqPoly mul(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& b) {
  if (a.empty() || b.empty()) return {};
  const size_t len = a.size() + b.size() - 1;
  ZqPoly r(len);
  ZqAccumulator acc(ctx.n());
  for (size_t k = 0; k < len; ++k) {
    acc.clear();
    const size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
    const size_t hi = std::min(k, a.size() - 1);
    for (size_t i = lo; i <= hi; ++i) acc.addmul(a[i], b[k - i]);
    acc.reduce_into(ctx, r[k], ctx.modulus());
  }
  trim(ctx, r);
  return r;
}

ZqPoly scale(const PadicContext& ctx, const ZqPoly& a, const ZqElement& s) {
  ZqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = ctx.mul(a[i], s);
  trim(ctx, r);
  return r;
}

ZqPoly scale_int(const PadicContext& ctx, const ZqPoly& a, const mpz_class& s) {
  ZqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = ctx.mul_int(a[i], s);
  trim(ctx, r);
  return r;
}

ZqPoly derivative(const PadicContext& ctx, const ZqPoly& a) {
  if (a.size() <= 1) return {};
  ZqPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = ctx.mul_int(a[i], mpz_class(static_cast<unsigned long>(i)));
  trim(ctx, r);
  return r;
}

ZqElement eval(const PadicContext& ctx, const ZqPoly& a, const ZqElement& x) {
  ZqElement r = ctx.zero();
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) r = ctx.add(ctx.mul(r, x), a[i]);
  return r;
}

ZqPoly frobenius(const PadicContext& ctx, const ZqPoly& a, int k) {
  ZqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = ctx.frobenius(a[i], k);
  return r;
}

ZqPoly compose_power(const PadicContext& ctx, const ZqPoly& a, int e) {
  if (a.empty()) return {};
  ZqPoly r((a.size() - 1) * e + 1, ctx.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i * e] = a[i];
  return r;
}

ZqPoly reduce(const PadicContext& ctx, const ZqPoly& a) {
  ZqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = ctx.reduce(a[i]);
  trim(ctx, r);
  return r;
}

ZqPoly pow(const PadicContext& ctx, const ZqPoly& a, unsigned e) {
  ZqPoly r{ctx.one()}, b = a;
  while (e) {
    if (e & 1) r = mul(ctx, r, b);
    e >>= 1;
    if (e) b = mul(ctx, b, b);
  }
  return r;
}

ZqPoly rem_monic(const PadicContext& ctx, const ZqPoly& a, const ZqPoly& m) {
  const int dm = static_cast<int>(m.size()) - 1;
  if (dm < 0) throw Error(Errc::InvalidInput, "division by empty polynomial");
  if (static_cast<int>(a.size()) <= dm) return a;
  std::vector<ZqElement> r = a;
  for (int k = static_cast<int>(r.size()) - 1; k >= dm; --k) {
    if (ctx.is_zero(r[k])) continue;
    const ZqElement c = r[k];
    for (int i = 0; i < dm; ++i) r[k - dm + i] = ctx.sub(r[k - dm + i], ctx.mul(c, m[i]));
    r[k] = ctx.zero();
  }
  r.resize(dm);
  return r;
}

int valuation(const PadicContext& ctx, const ZqPoly& a) {
  int best = ctx.precision();
  for (const auto& x : a) best = std::min(best, ctx.valuation(x));
  return best;
}

}  // namespace hzeta::zqpoly
