#include "hzeta/padic.hpp"

#include <algorithm>
#include <cstdint>

#include "hzeta/error.hpp"

namespace hzeta {

namespace fp {
namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
Poly mod_monic(Poly a, const Poly& f, std::uint64_t p) {
  const size_t n = f.size() - 1;
  trim(a);
  while (a.size() > n) {
    const std::uint64_t c = a.back();
    const size_t shift = a.size() - 1 - n;
    for (size_t i = 0; i < n; ++i) a[shift + i] = (a[shift + i] + (p - f[i]) % p * c) % p;
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod_monic(std::move(r), f, p);
}

Poly pow_mod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = mod_monic(std::move(base), f, p);
  while (e) {
    if (e & 1) r = mul_mod(r, base, f, p);
    base = mul_mod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    const std::uint64_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = c * li % p;
    a = mod_monic(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(unsigned long p, const std::vector<unsigned long>& phi_low) {
  const int n = static_cast<int>(phi_low.size());
  if (n < 1) return false;
  Poly f(phi_low.begin(), phi_low.end());
  for (auto& c : f) c %= p;
  f.push_back(1);
  // x^{p^k} mod f for k = 1..n
  std::vector<Poly> frob(n + 1);
  frob[0] = mod_monic(Poly{0, 1}, f, p);
  for (int k = 1; k <= n; ++k) frob[k] = pow_mod(frob[k - 1], p, f, p);
  if (frob[n] != frob[0]) return false;
  for (int r : prime_factors(n)) {
    Poly h = frob[n / r];
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    const Poly g = gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<unsigned long> canonical_modulus(unsigned long p, int n) {
  std::vector<unsigned long> digits(n, 0);
  for (;;) {
    if (is_irreducible(p, digits)) return digits;
    int i = 0;
    while (i < n && ++digits[i] == p) digits[i++] = 0;
    if (i == n) throw Error(Errc::InvalidInput, "no irreducible polynomial found");
  }
}

}  // namespace fp

namespace {

bool is_prime(unsigned long p) {
  mpz_class z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

}  // namespace

std::shared_ptr<PadicContext::Data> PadicContext::build(unsigned long p,
                                                        const std::vector<unsigned long>& phi,
                                                        int precision) {
  if (p == 2) throw Error(Errc::InvalidInput, "even characteristic is not supported");
  if (p < 3 || !is_prime(p)) throw Error(Errc::InvalidInput, "p must be an odd prime");
  if (p >= (1ul << 31)) throw Error(Errc::InvalidInput, "p too large");
  if (precision < 1) throw Error(Errc::InvalidInput, "precision must be >= 1");
  if (phi.empty()) throw Error(Errc::InvalidInput, "extension degree must be >= 1");
  for (auto c : phi)
    if (c >= p) throw Error(Errc::InvalidInput, "modulus coefficient out of range");
  if (!fp::is_irreducible(p, phi)) throw Error(Errc::InvalidInput, "modulus is reducible mod p");

  auto d = std::make_shared<Data>();
  d->p = p;
  d->n = static_cast<int>(phi.size());
  d->W = precision;
  d->phi = phi;
  d->pows.resize(precision + 1);
  d->pows[0] = 1;
  for (int i = 1; i <= precision; ++i) d->pows[i] = d->pows[i - 1] * p;
  d->pW = d->pows[precision];
  mpz_ui_pow_ui(d->q.get_mpz_t(), p, d->n);
  return d;
}

PadicContext PadicContext::make(unsigned long p, int n, int precision) {
  if (p == 2) throw Error(Errc::InvalidInput, "even characteristic is not supported");
  if (n < 1) throw Error(Errc::InvalidInput, "extension degree must be >= 1");
  if (p < 3 || !is_prime(p)) throw Error(Errc::InvalidInput, "p must be an odd prime");
  return make_with_modulus(p, fp::canonical_modulus(p, n), precision);
}

PadicContext PadicContext::make_with_modulus(unsigned long p,
                                             const std::vector<unsigned long>& phi_low,
                                             int precision) {
  auto d = build(p, phi_low, precision);
  const int n = d->n;
  d->sigma_pow.assign(n, {});
  PadicContext tmp(d);
  // sigma^0(t)^i = t^i
  for (int i = 0; i < n; ++i) {
    ZqElement e = tmp.zero();
    e.c[i] = 1;
    d->sigma_pow[0].push_back(e);
  }
  if (n > 1) {
    // Newton iteration for the root of phi congruent to t^p.
    ZqElement t = tmp.zero();
    t.c[1] = 1;
    ZqElement z = tmp.pow(t, mpz_class(p));
    for (int iter = 0; iter < 200; ++iter) {
      ZqElement f = tmp.one(), fd = tmp.from_int(n);
      // Horner for phi and phi'
      ZqElement acc = tmp.one();
      ZqElement dacc = tmp.from_int(n);
      for (int i = n - 1; i >= 0; --i) {
        acc = tmp.add(tmp.mul(acc, z), tmp.from_int(static_cast<long>(phi_low[i])));
        if (i >= 1)
          dacc = tmp.add(tmp.mul(dacc, z), tmp.from_int(static_cast<long>(i * phi_low[i])));
      }
      f = acc;
      fd = dacc;
      if (tmp.is_zero(f)) break;
      z = tmp.sub(z, tmp.mul(f, tmp.invert(fd)));
    }
    for (int k = 1; k < n; ++k) {
      // sigma^k(t) = sigma(sigma^{k-1}(t)), sigma(y) = sum_j y_j z^j
      const ZqElement& prev = d->sigma_pow[k - 1][std::min(1, n - 1)];
      ZqElement sk = tmp.zero();
      ZqElement zp = tmp.one();
      for (int j = 0; j < n; ++j) {
        sk = tmp.add(sk, tmp.mul_int(zp, prev.c[j]));
        zp = tmp.mul(zp, z);
      }
      // for k == 1 prev = t, so sk = z
      std::vector<ZqElement> powers;
      ZqElement cur = tmp.one();
      for (int i = 0; i < n; ++i) {
        powers.push_back(cur);
        cur = tmp.mul(cur, sk);
      }
      d->sigma_pow[k] = std::move(powers);
    }
  }
  return PadicContext(d);
}

PadicContext PadicContext::with_precision(int precision) const {
  return make_with_modulus(d_->p, d_->phi, precision);
}

mpz_class PadicContext::pow_p(int e) const {
  if (e < 0) throw Error(Errc::InvalidInput, "negative exponent");
  if (e <= d_->W) return d_->pows[e];
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), d_->p, static_cast<unsigned long>(e));
  return r;
}

ZqElement PadicContext::zero() const {
  ZqElement z;
  z.c.assign(d_->n, 0);
  return z;
}

ZqElement PadicContext::one() const {
  ZqElement z = zero();
  z.c[0] = 1;
  if (d_->W == 0) z.c[0] = 0;
  return z;
}

ZqElement PadicContext::from_int(long v) const {
  return from_mpz(mpz_class(v));
}

ZqElement PadicContext::from_mpz(const mpz_class& v) const {
  ZqElement z = zero();
  mpz_fdiv_r(z.c[0].get_mpz_t(), v.get_mpz_t(), d_->pW.get_mpz_t());
  return z;
}

ZqElement PadicContext::from_coeffs(const std::vector<mpz_class>& coeffs) const {
  std::vector<mpz_class> acc = coeffs;
  if (acc.size() < static_cast<size_t>(d_->n)) acc.resize(d_->n, 0);
  fold(acc, d_->pW);
  ZqElement z;
  z.c.assign(acc.begin(), acc.begin() + d_->n);
  return z;
}

ZqElement PadicContext::lift(const Residue& r) const {
  if (r.size() > static_cast<size_t>(d_->n))
    throw Error(Errc::InvalidInput, "residue has more than n digits");
  ZqElement z = zero();
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i] >= d_->p) throw Error(Errc::InvalidInput, "residue digit out of range");
    z.c[i] = r[i];
  }
  if (d_->W == 0) return zero();
  return z;
}

Residue PadicContext::residue(const ZqElement& x) const {
  Residue r(d_->n, 0);
  for (int i = 0; i < d_->n; ++i) r[i] = mpz_fdiv_ui(x.c[i].get_mpz_t(), d_->p);
  return r;
}

ZqElement PadicContext::reduce(const ZqElement& x) const {
  ZqElement z = zero();
  for (int i = 0; i < d_->n && i < static_cast<int>(x.c.size()); ++i)
    mpz_fdiv_r(z.c[i].get_mpz_t(), x.c[i].get_mpz_t(), d_->pW.get_mpz_t());
  return z;
}

void PadicContext::fold(std::vector<mpz_class>& a, const mpz_class& mod) const {
  const int n = d_->n;
  for (int k = static_cast<int>(a.size()) - 1; k >= n; --k) {
    if (sgn(a[k]) != 0) {
      for (int i = 0; i < n; ++i)
        if (d_->phi[i]) mpz_submul_ui(a[k - n + i].get_mpz_t(), a[k].get_mpz_t(), d_->phi[i]);
      a[k] = 0;
    }
  }
  for (int i = 0; i < n && i < static_cast<int>(a.size()); ++i)
    mpz_fdiv_r(a[i].get_mpz_t(), a[i].get_mpz_t(), mod.get_mpz_t());
}

ZqElement PadicContext::add(const ZqElement& a, const ZqElement& b) const {
  ZqElement z = zero();
  for (int i = 0; i < d_->n; ++i) {
    z.c[i] = a.c[i] + b.c[i];
    if (z.c[i] >= d_->pW) z.c[i] -= d_->pW;
    if (sgn(z.c[i]) < 0 || z.c[i] >= d_->pW) mpz_fdiv_r(z.c[i].get_mpz_t(), z.c[i].get_mpz_t(), d_->pW.get_mpz_t());
  }
  return z;
}

ZqElement PadicContext::sub(const ZqElement& a, const ZqElement& b) const {
  ZqElement z = zero();
  for (int i = 0; i < d_->n; ++i) {
    z.c[i] = a.c[i] - b.c[i];
    if (sgn(z.c[i]) < 0) z.c[i] += d_->pW;
    if (sgn(z.c[i]) < 0 || z.c[i] >= d_->pW) mpz_fdiv_r(z.c[i].get_mpz_t(), z.c[i].get_mpz_t(), d_->pW.get_mpz_t());
  }
  return z;
}

ZqElement PadicContext::neg(const ZqElement& a) const {
  return sub(zero(), a);
}

ZqElement PadicContext::mul(const ZqElement& a, const ZqElement& b) const {
  ZqAccumulator acc(d_->n);
  acc.addmul(a, b);
  ZqElement z;
  acc.reduce_into(*this, z, d_->pW);
  return z;
}

ZqElement PadicContext::mul_int(const ZqElement& a, const mpz_class& k) const {
  ZqElement z = zero();
  for (int i = 0; i < d_->n; ++i) {
    z.c[i] = a.c[i] * k;
    mpz_fdiv_r(z.c[i].get_mpz_t(), z.c[i].get_mpz_t(), d_->pW.get_mpz_t());
  }
  return z;
}

ZqElement PadicContext::pow(const ZqElement& a, const mpz_class& e) const {
  if (sgn(e) < 0) return pow(invert(a), -e);
  ZqElement r = one();
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t b = bits; b-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), b)) r = mul(r, a);
  }
  return r;
}

bool PadicContext::is_zero(const ZqElement& x) const {
  for (const auto& c : x.c)
    if (mpz_divisible_p(c.get_mpz_t(), d_->pW.get_mpz_t()) == 0) return false;
  return true;
}

bool PadicContext::is_unit(const ZqElement& x) const {
  for (const auto& c : x.c)
    if (mpz_fdiv_ui(c.get_mpz_t(), d_->p) != 0) return true;
  return false;
}

int PadicContext::valuation(const ZqElement& x) const {
  int best = d_->W;
  mpz_class tmp;
  const mpz_class pz(d_->p);
  for (const auto& c : x.c) {
    mpz_fdiv_r(tmp.get_mpz_t(), c.get_mpz_t(), d_->pW.get_mpz_t());
    if (sgn(tmp) == 0) continue;
    const int v = static_cast<int>(mpz_remove(tmp.get_mpz_t(), tmp.get_mpz_t(), pz.get_mpz_t()));
    best = std::min(best, v);
  }
  return best;
}

ZqElement PadicContext::invert(const ZqElement& a) const {
  if (!is_unit(a)) throw Error(Errc::NonUnit, "element is not a unit");
  const int n = d_->n;
  if (n == 1) {
    ZqElement z = zero();
    if (mpz_invert(z.c[0].get_mpz_t(), a.c[0].get_mpz_t(), d_->pW.get_mpz_t()) == 0)
      throw Error(Errc::NonUnit, "element is not a unit");
    return z;
  }
  // inverse mod p as a^{q-2} in F_q, then Newton y <- y(2 - a y)
  const mpz_class p1(d_->p);
  auto mulmod = [&](const ZqElement& x, const ZqElement& y, const mpz_class& m) {
    ZqAccumulator acc(n);
    acc.addmul(x, y);
    ZqElement z;
    acc.reduce_into(*this, z, m);
    return z;
  };
  ZqElement base;
  base.c.resize(n);
  for (int i = 0; i < n; ++i) mpz_fdiv_r(base.c[i].get_mpz_t(), a.c[i].get_mpz_t(), p1.get_mpz_t());
  ZqElement y = one();
  const mpz_class e = d_->q - 2;
  for (size_t b = mpz_sizeinbase(e.get_mpz_t(), 2); b-- > 0;) {
    y = mulmod(y, y, p1);
    if (mpz_tstbit(e.get_mpz_t(), b)) y = mulmod(y, base, p1);
  }
  int prec = 1;
  while (prec < d_->W) {
    prec = std::min(2 * prec, d_->W);
    const mpz_class m = pow_p(prec);
    ZqElement ay = mulmod(a, y, m);
    for (auto& c : ay.c) c = -c;
    ay.c[0] += 2;
    y = mulmod(y, ay, m);
  }
  return reduce(y);
}

ZqElement PadicContext::frobenius(const ZqElement& x, int k) const {
  const int n = d_->n;
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return reduce(x);
  ZqAccumulator acc(n);
  std::vector<mpz_class>& raw = acc.raw();
  for (int i = 0; i < n; ++i) {
    if (sgn(x.c[i]) == 0) continue;
    const ZqElement& s = d_->sigma_pow[k][i];
    for (int j = 0; j < n; ++j) mpz_addmul(raw[j].get_mpz_t(), x.c[i].get_mpz_t(), s.c[j].get_mpz_t());
  }
  ZqElement z;
  acc.reduce_into(*this, z, d_->pW);
  return z;
}

ZqElement PadicContext::teichmuller(const Residue& r) const {
  ZqElement z = lift(r);
  if (!is_unit(z)) return zero();
  const mpz_class qm1 = d_->q - 1;
  const mpz_class qm2 = d_->q - 2;
  for (int iter = 0; iter < 200; ++iter) {
    const ZqElement zq2 = pow(z, qm2);
    ZqElement f = mul(z, zq2);
    f = sub(f, one());
    if (is_zero(f)) break;
    const ZqElement fd = mul_int(zq2, qm1);
    z = sub(z, mul(f, invert(fd)));
  }
  return z;
}

std::optional<int> valuation(const PadicContext& ctx, const ScaledElement& x) {
  if (ctx.is_zero(x.mantissa)) return std::nullopt;
  return ctx.valuation(x.mantissa) - x.scale;
}

}  // namespace hzeta
