#include "hzeta/kedlaya.hpp"

#include <algorithm>

#include "hzeta/deformation.hpp"
#include "hzeta/error.hpp"
#include "hzeta/logreal.hpp"

namespace hzeta {

namespace {

using Poly = std::vector<mpz_class>;

void reduce_mod(Poly& a, const mpz_class& mod) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  return r;
}

void add_into(Poly& a, const Poly& b, size_t shift = 0) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift);
  for (size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
}

// P = quo * Q + rem with deg rem < deg Q (Q monic); P becomes rem.
Poly divmod_monic(Poly& P, const Poly& Q) {
  const int D = static_cast<int>(Q.size()) - 1;
  const int deg = static_cast<int>(P.size()) - 1;
  Poly quo(std::max(0, deg - D + 1));
  for (int k = deg; k >= D; --k) {
    if (P[k] == 0) continue;
    const mpz_class c = P[k];
    quo[k - D] = c;
    for (int i = 0; i <= D; ++i) mpz_submul(P[k - D + i].get_mpz_t(), c.get_mpz_t(), Q[i].get_mpz_t());
  }
  if (static_cast<int>(P.size()) > D) P.resize(D);
  return quo;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& mod) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()))
    throw Error(Errc::NonUnit, "division by a non-unit");
  return r;
}

int vp(unsigned long p, long x, long* unit) {
  int v = 0;
  while (x % static_cast<long>(p) == 0) {
    x /= static_cast<long>(p);
    ++v;
  }
  *unit = x;
  return v;
}

}  // namespace

InvSqrtSeries frobenius_inverse_sqrt_series(unsigned long p, const std::vector<long>& Q0, long terms,
                                            int precision) {
  const int D = static_cast<int>(Q0.size()) - 1;
  if (D < 3 || D % 2 == 0 || Q0.back() != 1) throw Error(Errc::InvalidInput, "Q0 must be monic of odd degree");
  Poly Q(Q0.begin(), Q0.end());

  // E = Q(x^p) - Q(x)^p and its Q-adic digits e_0 .. e_{p-1}
  Poly Qp = {1};
  for (unsigned long i = 0; i < p; ++i) Qp = mul(Qp, Q);
  Poly E(p * D + 1);
  for (int i = 0; i <= D; ++i) E[i * p] = Q[i];
  for (size_t i = 0; i < Qp.size(); ++i) E[i] -= Qp[i];
  std::vector<Poly> e(p);
  for (unsigned long l = 0; l < p; ++l) {
    Poly quo = divmod_monic(E, Q);
    e[l] = E;
    E = std::move(quo);
  }

  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, precision);
  // binom(-1/2, j) = (-1/4)^j binom(2j, j)
  const mpz_class inv4 = inverse_mod(mpz_class(-4), mod);
  std::vector<mpz_class> bin(terms + 1);
  mpz_class pw = 1;
  for (long j = 0; j <= terms; ++j) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * j, j);
    bin[j] = c * pw % mod;
    pw = pw * inv4 % mod;
  }

  // Horner: acc_j = binom_j + u acc_{j+1}; acc_j is later multiplied by u^j,
  // so it is only needed mod p^{precision - j}
  std::vector<Poly> acc = {Poly{bin[terms]}};
  const int P = static_cast<int>(p);
  for (long j = terms - 1; j >= 0; --j) {
    mpz_class modj;
    mpz_ui_pow_ui(modj.get_mpz_t(), p, std::max<long>(precision - j, 1));
    std::vector<Poly> buf(acc.size() + P);
    for (size_t k = 0; k < acc.size(); ++k) {
      if (acc[k].empty()) continue;
      for (int l = 0; l < P; ++l) {
        if (e[l].empty()) continue;
        add_into(buf[k + P - l], mul(acc[k], e[l]));
      }
    }
    for (size_t L = buf.size(); L-- > 1;) {
      Poly quo = divmod_monic(buf[L], Q);
      add_into(buf[L - 1], quo);
    }
    if (buf[0].empty()) buf[0].resize(1);
    buf[0][0] += bin[j];
    for (auto& b : buf) reduce_mod(b, modj);
    while (!buf.empty() && buf.back().empty()) buf.pop_back();
    acc = std::move(buf);
  }
  InvSqrtSeries out;
  out.levels = std::move(acc);
  for (auto& l : out.levels) l.resize(D);
  out.terms = terms;
  out.precision = precision;
  return out;
}

Matrix FiberFrobenius::embed(const PadicContext& target) const {
  Matrix m = mat_zero(target, F0.d, F0.scale);
  for (size_t i = 0; i < F0.e.size(); ++i) m.e[i] = target.from_mpz(F0.e[i].c[0]);
  return m;
}

FiberFrobenius fiber_frobenius_matrix(unsigned long p, const std::vector<long>& Q0, int target) {
  const int D = static_cast<int>(Q0.size()) - 1;
  const int g = (D - 1) / 2;
  const int h = static_cast<int>(p - 1) / 2;
  if (target < 1) throw Error(Errc::InvalidInput, "precision must be positive");

  const long N0 = 2L * (target + 10);
  const int Sf = static_cast<int>(ceil_log(p, mpz_class(2 * N0 * D))) + 2;
  const long N = target + Sf + 1;
  const int Wf = target + 3 * Sf;
  const InvSqrtSeries S = frobenius_inverse_sqrt_series(p, Q0, N, Wf - Sf);

  const PadicContext ctx = PadicContext::make(p, 1, Wf);
  const mpz_class& mod = ctx.modulus();
  const Poly Q(Q0.begin(), Q0.end());
  Poly Qx;
  for (int i = 1; i <= D; ++i) Qx.push_back(Q[i] * i);

  // Bezout identity a0 Q + b0 Q' = r0
  XGPoly QX;
  for (long c : Q0) QX.push_back({ctx.from_int(c)});
  XGPoly a0x, b0x;
  ZqPoly r0p;
  bezout_cofactors(ctx, QX, g, a0x, b0x, &r0p);
  auto flat = [](const XGPoly& P) {
    Poly r;
    for (const auto& c : P) r.push_back(c.empty() ? mpz_class(0) : c[0].c[0]);
    return r;
  };
  const Poly a0 = flat(a0x), b0 = flat(b0x);
  const mpz_class r0 = r0p.empty() ? mpz_class(0) : r0p[0].c[0];
  if (r0 % p == 0) throw Error(Errc::BadBaseCurve, "fiber curve is singular");
  // x^k a0 and 2 (x^k b0)'
  std::vector<Poly> Ak(D), Bk(D);
  for (int k = 0; k < D; ++k) {
    Ak[k] = Poly(k);
    add_into(Ak[k], a0, k);
    Poly xb(k);
    add_into(xb, b0, k);
    for (size_t i = 1; i < xb.size(); ++i) Bk[k].push_back(xb[i] * static_cast<unsigned long>(2 * i));
  }
  std::vector<Poly> Qpow = {Poly{1}};
  for (unsigned long i = 0; i <= p + 1; ++i) Qpow.push_back(mul(Qpow.back(), Q));

  const mpz_class lift = ctx.pow_p(1 + Sf);
  Matrix F0 = mat_zero(ctx, 2 * g, Sf);
  for (int i = 0; i < 2 * g; ++i) {
    const int e = static_cast<int>(p) * (i + 1) - 1;
    // Q-adic digits of x^{e+m}, m < D
    std::vector<std::vector<Poly>> dig(D);
    for (int m = 0; m < D; ++m) {
      Poly X(e + m + 1);
      X[e + m] = 1;
      while (!X.empty()) {
        Poly quo = divmod_monic(X, Q);
        dig[m].push_back(X);
        X = std::move(quo);
        while (!X.empty() && X.back() == 0) X.pop_back();
      }
    }
    const int Lmax = static_cast<int>(S.levels.size()) - 1 + h;
    std::vector<Poly> lev(Lmax + 1);
    Poly P0;
    for (size_t k = 0; k < S.levels.size(); ++k) {
      const Poly& s = S.levels[k];
      for (size_t t = 0;; ++t) {
        bool any = false;
        Poly c;
        for (int m = 0; m < D; ++m) {
          if (t >= dig[m].size()) continue;
          any = true;
          if (s[m] == 0) continue;
          Poly term = dig[m][t];
          for (auto& x : term) x *= s[m];
          add_into(c, term);
        }
        if (!any) break;
        for (auto& x : c) x *= lift;
        const long L = static_cast<long>(k) + h - static_cast<long>(t);
        if (L >= 1)
          add_into(lev[L], c);
        else
          add_into(P0, mul(c, Qpow[-L]));
      }
    }
    for (auto& l : lev) reduce_mod(l, mod);
    reduce_mod(P0, mod);

    // P / Q^{L+1/2} = [(2L-1) P a0 + 2 (P b0)'] / ((2L-1) r0) / Q^{L-1/2}
    for (int L = Lmax; L >= 1; --L) {
      Poly& N = lev[L];
      if (N.empty()) continue;
      Poly quo = divmod_monic(N, Q);
      Poly& below = (L == 1) ? P0 : lev[L - 1];
      add_into(below, quo);
      Poly num;
      for (int k = 0; k < static_cast<int>(N.size()); ++k) {
        if (N[k] == 0) continue;
        Poly t = Ak[k];
        for (auto& x : t) x *= N[k] * (2L * L - 1);
        add_into(num, t);
        t = Bk[k];
        for (auto& x : t) x *= N[k];
        add_into(num, t);
      }
      long u = 0;
      const int v = vp(p, 2L * L - 1, &u);
      const mpz_class pv = ctx.pow_p(v);
      const mpz_class w = inverse_mod(r0 * u, mod);
      for (auto& x : num) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
        if (!mpz_divisible_p(x.get_mpz_t(), pv.get_mpz_t()))
          throw Error(Errc::PrecisionExhausted, "pole reduction needs more guard digits");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
        x *= w;
      }
      add_into(below, num);
      reduce_mod(below, mod);
      N.clear();
    }

    // 2 d(x^j y) = (2j x^{j-1} Q + x^j Q') dx / y
    for (int k = static_cast<int>(P0.size()) - 1; k >= 2 * g; --k) {
      mpz_fdiv_r(P0[k].get_mpz_t(), P0[k].get_mpz_t(), mod.get_mpz_t());
      if (P0[k] == 0) continue;
      const int j = k - 2 * g;
      long u = 0;
      const int v = vp(p, 2L * j + 2 * g + 1, &u);
      const mpz_class pv = ctx.pow_p(v);
      if (!mpz_divisible_p(P0[k].get_mpz_t(), pv.get_mpz_t()))
        throw Error(Errc::PrecisionExhausted, "degree reduction needs more guard digits");
      mpz_class t;
      mpz_divexact(t.get_mpz_t(), P0[k].get_mpz_t(), pv.get_mpz_t());
      t = t * inverse_mod(mpz_class(u), mod) % mod;
      if (j > 0)
        for (int a = 0; a <= D; ++a) { const mpz_class tq = t * Q[a]; mpz_submul_ui(P0[a + j - 1].get_mpz_t(), tq.get_mpz_t(), 2 * j); }
      for (int a = 0; a < D; ++a) P0[a + j] -= t * Qx[a];
      P0[k] = 0;
    }
    reduce_mod(P0, mod);
    for (int j = 0; j < 2 * g; ++j) F0(i, j) = ctx.from_mpz(j < static_cast<int>(P0.size()) ? P0[j] : mpz_class(0));
  }

  FiberFrobenius out;
  out.ctx = ctx;
  out.F0 = mat_normalize(ctx, F0);
  out.precision = Wf - 2 * Sf;
  out.series_terms = N;
  const auto v = mat_valuation(ctx, out.F0);
  const LogReal alpha = (LogReal::log(p, static_cast<unsigned long>(g)) + mpq_class(2)) * mpq_class(2 * g - 1) +
                        mpq_class(g);
  if (v && (alpha + mpq_class(*v)).sign() < 0)
    throw Error(Errc::ValuationViolation, "ord(F0) below -alpha");
  return out;
}

}  // namespace hzeta
