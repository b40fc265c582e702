#include "hzeta/deformation.hpp"

#include <algorithm>

#include "hzeta/error.hpp"

namespace hzeta {

namespace {

int vp(unsigned long p, long x, long* unit = nullptr) {
  int v = 0;
  if (x < 0) x = -x;
  while (x != 0 && x % static_cast<long>(p) == 0) {
    x /= static_cast<long>(p);
    ++v;
  }
  if (unit) *unit = x;
  return v;
}

void xg_trim(const PadicContext& ctx, XGPoly& a) {
  for (auto& c : a) zqpoly::trim(ctx, c);
  while (!a.empty() && a.back().empty()) a.pop_back();
}

XGPoly xg_add(const PadicContext& ctx, const XGPoly& a, const XGPoly& b) {
  XGPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = a[i];
    if (i < b.size()) r[i] = zqpoly::add(ctx, r[i], b[i]);
  }
  xg_trim(ctx, r);
  return r;
}

XGPoly xg_mul(const PadicContext& ctx, const XGPoly& a, const XGPoly& b) {
  if (a.empty() || b.empty()) return {};
  XGPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].empty()) continue;
      r[i + j] = zqpoly::add(ctx, r[i + j], zqpoly::mul(ctx, a[i], b[j]));
    }
  }
  xg_trim(ctx, r);
  return r;
}

XGPoly xg_dx(const PadicContext& ctx, const XGPoly& a) {
  XGPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(zqpoly::scale_int(ctx, a[i], mpz_class(static_cast<unsigned long>(i))));
  xg_trim(ctx, r);
  return r;
}

XGPoly xg_scale(const PadicContext& ctx, const XGPoly& a, const ZqPoly& c) {
  XGPoly r;
  for (const auto& x : a) r.push_back(zqpoly::mul(ctx, x, c));
  xg_trim(ctx, r);
  return r;
}

XGPoly xg_scale_int(const PadicContext& ctx, const XGPoly& a, const mpz_class& k) {
  XGPoly r;
  for (const auto& x : a) r.push_back(zqpoly::scale_int(ctx, x, k));
  xg_trim(ctx, r);
  return r;
}

mpz_class unit_inverse(const PadicContext& ctx, long u) {
  mpz_class inv, uu(u);
  mpz_invert(inv.get_mpz_t(), uu.get_mpz_t(), ctx.modulus().get_mpz_t());
  return inv;
}

}  // namespace

DeformationConstants deformation_constants(unsigned long p, int n, int g, int rho) {
  DeformationConstants k;
  const LogReal lg = LogReal::log(p, static_cast<unsigned long>(g));
  k.alpha = (lg + mpq_class(2)) * mpq_class(2 * g - 1) + mpq_class(g);
  k.gamma = lg * mpq_class(2 * g) + mpq_class(g);
  k.delta = k.alpha * mpq_class(2);
  k.psi = k.alpha * mpq_class(12);
  const mpz_class m1 = (LogReal::log(p, 2) * mpq_class(2 * g + 1) + mpq_class(n * g, 2)).ceil();
  const mpz_class m2 = (lg + mpq_class(2)).floor() * n;
  const mpz_class m3 = ((lg + mpq_class(3)) * mpq_class(2 * g * n)).floor();
  k.m = mpz_class(m1 + m2 + m3).get_si();
  k.M = static_cast<long>(p) * (2 * k.m + 4) + static_cast<long>(p - 1) / 2;
  k.ell = (2 * k.m + 5) * (8L * g + 2) * static_cast<long>(p) + 1;
  const long Lp = ceil_log(p, mpz_class(k.ell));
  k.epsilon = k.gamma * mpq_class(5 * Lp) + mpq_class(k.m + Lp) + k.psi;
  k.epsilon_ceil = static_cast<int>(k.epsilon.ceil().get_si());
  k.m_prime = mpz_class((k.alpha + mpq_class(k.m)).ceil()).get_si();
  const long P = static_cast<long>(p);
  k.zeta = std::max({(P + 1) * rho, P * rho + 8L * g + 1, P + 8 * P * g + rho});
  return k;
}

ZqPoly resultant(const PadicContext& ctx, const XGPoly& Q, int g) {
  XGPoly a, b;
  ZqPoly r;
  bezout_cofactors(ctx, Q, g, a, b, &r);
  return r;
}

void bezout_cofactors(const PadicContext& ctx, const XGPoly& Q, int g, XGPoly& a, XGPoly& b,
                      ZqPoly* res) {
  const int N = 4 * g + 1;
  const XGPoly Qx = xg_dx(ctx, Q);
  auto at = [](const XGPoly& P, int i) -> ZqPoly { return (i >= 0 && i < static_cast<int>(P.size())) ? P[i] : ZqPoly{}; };
  std::vector<std::vector<ZqPoly>> S(N, std::vector<ZqPoly>(N));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < 2 * g; ++j) S[i][j] = at(Q, i - j);
    for (int j = 0; j <= 2 * g; ++j) S[i][2 * g + j] = at(Qx, i - j);
  }
  const ZqPolyRing R{ctx};
  const auto dp = minor_table(S, 1, R);
  const std::uint32_t full = (1u << N) - 1;
  std::vector<ZqPoly> cof(N);
  ZqPoly r;
  for (int j = 0; j < N; ++j) {
    cof[j] = dp[full & ~(1u << j)];
    if (j % 2) cof[j] = zqpoly::sub(ctx, {}, cof[j]);
    r = zqpoly::add(ctx, r, zqpoly::mul(ctx, S[0][j], cof[j]));
  }
  a.assign(cof.begin(), cof.begin() + 2 * g);
  b.assign(cof.begin() + 2 * g, cof.end());
  xg_trim(ctx, a);
  xg_trim(ctx, b);
  zqpoly::trim(ctx, r);
  if (res) *res = r;
}

ReducedRow reduce_degree(const PadicContext& ctx, const XGPoly& Q, int g, XGPoly P, int scale) {
  const unsigned long p = ctx.p();
  const XGPoly Qx = xg_dx(ctx, Q);
  xg_trim(ctx, P);
  for (int k = static_cast<int>(P.size()) - 1; k >= 2 * g; --k) {
    if (P[k].empty()) continue;
    const int j = k - 2 * g;
    long u = 0;
    const int v = vp(p, 2L * j + 2 * g + 1, &u);
    const ZqPoly c = P[k];
    if (v > 0) {
      P = xg_scale_int(ctx, P, ctx.pow_p(v));
      scale += v;
      if (scale >= ctx.precision()) throw Error(Errc::PrecisionExhausted, "degree reduction used every digit");
      P.resize(std::max<size_t>(P.size(), k + 1));
    }
    // 2 d(x^j y) = (2j x^{j-1} Q + x^j Q_x) dx / y
    XGPoly D(j + Q.size());
    for (size_t i = 0; i < Q.size(); ++i) {
      if (j > 0) D[i + j - 1] = zqpoly::scale_int(ctx, Q[i], mpz_class(2 * j));
    }
    for (size_t i = 0; i < Qx.size(); ++i) D[i + j] = zqpoly::add(ctx, D[i + j], Qx[i]);
    const ZqPoly t = zqpoly::scale_int(ctx, c, unit_inverse(ctx, u));
    const XGPoly sub = xg_scale(ctx, D, t);
    for (size_t i = 0; i < sub.size() && static_cast<int>(i) < k; ++i)
      P[i] = zqpoly::sub(ctx, P[i], sub[i]);
    P[k].clear();
    P.resize(k);
    for (auto& x : P) zqpoly::trim(ctx, x);
  }
  ReducedRow row;
  row.scale = scale;
  row.c.assign(2 * g, ZqPoly{});
  for (int i = 0; i < 2 * g && i < static_cast<int>(P.size()); ++i) row.c[i] = P[i];
  return row;
}

ReducedRow reduce_differential(const Family& fam, const XGPoly& P0, int twice_s) {
  if (twice_s < 1 || twice_s % 2 == 0) throw Error(Errc::InvalidInput, "pole order must be a positive half-integer");
  const PadicContext& ctx = fam.ctx;
  XGPoly P = P0;
  xg_trim(ctx, P);
  int scale = 0, rp = 0;
  for (int s2 = twice_s; s2 >= 3; s2 -= 2) {
    // P / Q^s = [(2s-2) P a + 2 (P b)'] / ((2s-2) r) / Q^{s-1}
    const long k = s2 - 2;
    long u = 0;
    const int v = vp(ctx.p(), k, &u);
    XGPoly t = xg_add(ctx, xg_scale_int(ctx, xg_mul(ctx, P, fam.bezout_a), mpz_class(k)),
                      xg_scale_int(ctx, xg_dx(ctx, xg_mul(ctx, P, fam.bezout_b)), mpz_class(2)));
    P = xg_scale_int(ctx, t, unit_inverse(ctx, u));
    scale += v;
    ++rp;
  }
  ReducedRow row = reduce_degree(ctx, fam.Q, fam.g, P, scale);
  row.r_power = rp;
  return row;
}

MatPoly connection_matrix(const Family& fam) {
  const PadicContext& ctx = fam.ctx;
  const int g = fam.g, d = 2 * g;
  // Q_Gamma = sum (a_i - b_i) x^i
  XGPoly QG;
  for (int i = 0; i <= 2 * g; ++i) QG.push_back({ctx.sub(fam.a[i], ctx.from_int(fam.b[i]))});
  xg_trim(ctx, QG);
  const ZqPoly minus_half = {ctx.neg(ctx.invert(ctx.from_int(2)))};
  std::vector<ReducedRow> rows;
  int scale = 0;
  for (int i = 0; i < d; ++i) {
    XGPoly P(i);
    for (const auto& c : QG) P.push_back(c);
    P = xg_scale(ctx, P, minus_half);
    rows.push_back(reduce_differential(fam, P, 3));
    if (rows.back().r_power != 1) throw Error(Errc::DomainError, "unexpected denominator in the connection");
    scale = std::max(scale, rows.back().scale);
  }
  int deg = -1;
  for (const auto& r : rows)
    for (const auto& c : r.c) deg = std::max(deg, zqpoly::degree(ctx, c));
  MatPoly H;
  H.d = d;
  H.scale = scale;
  H.c.assign(std::max(deg, 0) + 1, std::vector<ZqElement>(static_cast<size_t>(d) * d, ctx.zero()));
  for (int i = 0; i < d; ++i) {
    const mpz_class up = ctx.pow_p(scale - rows[i].scale);
    for (int j = 0; j < d; ++j)
      for (size_t k = 0; k < rows[i].c[j].size(); ++k)
        H.c[k][static_cast<size_t>(i) * d + j] = ctx.mul_int(rows[i].c[j][k], up);
  }
  // lower the scale while every mantissa allows it
  while (H.scale > 0) {
    bool ok = true;
    for (const auto& c : H.c)
      for (const auto& x : c)
        if (!ctx.is_zero(x) && ctx.valuation(x) < 1) ok = false;
    if (!ok) break;
    const mpz_class p(ctx.p());
    for (auto& c : H.c)
      for (auto& x : c)
        for (auto& y : x.c) mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
    --H.scale;
  }
  if (H.degree(ctx) > 8 * g) throw Error(Errc::DegreeOverflow, "deg H exceeds 8g");
  const auto v = matpoly_valuation(ctx, H);
  if (v && static_cast<long>(*v) * static_cast<long>(fam.p - 1) < -10L * g)
    throw Error(Errc::ValuationViolation, "ord(H) below -10g/(p-1)");
  return H;
}

ZqPoly specialize_curve(const Family& fam, const ZqElement& gamma) {
  ZqPoly out;
  for (const auto& c : fam.Q) out.push_back(zqpoly::eval(fam.ctx, c, gamma));
  return out;
}

Family build_family(const PadicContext& base, const std::vector<Residue>& curve, int extra) {
  const unsigned long p = base.p();
  const int n = base.n();
  if (curve.size() < 3 || curve.size() % 2 == 0)
    throw Error(Errc::InvalidInput, "curve needs 2g+1 coefficients with g >= 1");
  const int g = static_cast<int>(curve.size() - 1) / 2;
  if (g > 3) throw Error(Errc::InvalidInput, "genus above 3 is not supported");
  for (const auto& c : curve) {
    if (c.size() > static_cast<size_t>(n)) throw Error(Errc::InvalidInput, "coefficient has too many digits");
    for (auto d : c)
      if (d >= p) throw Error(Errc::InvalidInput, "coefficient digit out of range");
  }

  Family fam;
  fam.p = p;
  fam.n = n;
  fam.g = g;
  fam.curve = curve;

  // epsilon does not depend on rho; cover truncations up to 4 ell
  const DeformationConstants k0 = deformation_constants(p, n, g, 0);
  const long L4 = ceil_log(p, mpz_class(4 * k0.ell));
  fam.target = static_cast<int>(
                   (k0.gamma * mpq_class(5 * L4) + mpq_class(k0.m + L4) + k0.psi).ceil().get_si()) +
               extra;
  int hguard = 0;
  for (int j = 0; j <= 4 * g; ++j) hguard += vp(p, 2L * j + 2 * g + 1);
  fam.ctx = base.with_precision(fam.target + 2 * hguard + 4);
  const PadicContext& ctx = fam.ctx;

  for (const auto& c : curve) {
    Residue r = c;
    r.resize(n, 0);
    fam.a.push_back(ctx.lift(r));
  }
  fam.b.assign(2 * g + 1, 0);
  fam.b[0] = 1;
  if ((2 * g + 1) % static_cast<long>(p) == 0) {
    fam.b[0] = 0;
    fam.b[1] = 1;
  }
  for (int i = 0; i <= 2 * g; ++i) {
    const ZqElement bi = ctx.from_int(fam.b[i]);
    fam.Q.push_back({bi, ctx.sub(fam.a[i], bi)});
  }
  fam.Q.push_back({ctx.one()});
  xg_trim(ctx, fam.Q);
  fam.Q.resize(2 * g + 2);

  bezout_cofactors(ctx, fam.Q, g, fam.bezout_a, fam.bezout_b, &fam.r);
  const ZqElement r1 = zqpoly::eval(ctx, fam.r, ctx.one());
  const ZqElement r0 = fam.r.empty() ? ctx.zero() : fam.r[0];
  if (!ctx.is_unit(r1)) throw Error(Errc::SingularCurve, "curve is not squarefree");
  if (!ctx.is_unit(r0)) throw Error(Errc::BadBaseCurve, "base curve is singular");
  fam.rho = zqpoly::degree(ctx, fam.r);
  if (fam.rho > 4 * g) throw Error(Errc::DegreeOverflow, "deg r exceeds 4g");
  int rt = -1;
  for (int i = 0; i <= fam.rho; ++i)
    if (ctx.is_unit(fam.r[i])) rt = i;
  fam.rtilde.assign(fam.r.begin(), fam.r.begin() + rt + 1);

  fam.constants = deformation_constants(p, n, g, fam.rho);
  fam.M = fam.constants.M;
  fam.H = connection_matrix(fam);
  return fam;
}

DiffEqSystem to_diffeq_system(const Family& fam, const Matrix& F0, int f0_precision, long ell) {
  const PadicContext& ctx = fam.ctx;
  const int d = 2 * fam.g;
  const size_t dd = static_cast<size_t>(d) * d;
  const int p = static_cast<int>(fam.p);
  auto diag = [&](const ZqPoly& s, int scale) {
    MatPoly P;
    P.d = d;
    P.scale = scale;
    for (const auto& x : s) {
      std::vector<ZqElement> m(dd, ctx.zero());
      for (int i = 0; i < d; ++i) m[static_cast<size_t>(i) * d + i] = x;
      P.c.push_back(std::move(m));
    }
    return P;
  };
  const MatPoly A = diag(zqpoly::compose_power(ctx, zqpoly::frobenius(ctx, fam.r), p), 0);
  const MatPoly B = diag(fam.r, 0);

  const int sH = fam.H.scale;
  const mpz_class up = ctx.pow_p(sH);
  MatPoly X = fam.H;
  const ZqPoly dr = zqpoly::derivative(ctx, fam.r);
  if (X.c.size() < dr.size()) X.c.resize(dr.size(), std::vector<ZqElement>(dd, ctx.zero()));
  for (size_t k = 0; k < dr.size(); ++k) {
    const ZqElement t = ctx.mul_int(dr[k], up * fam.M);
    for (int i = 0; i < d; ++i) {
      auto& e = X.c[k][static_cast<size_t>(i) * d + i];
      e = ctx.sub(e, t);
    }
  }
  MatPoly Y;
  Y.d = d;
  Y.scale = sH;
  if (!fam.H.c.empty()) {
    Y.c.assign((p - 1) + p * (fam.H.c.size() - 1) + 1, std::vector<ZqElement>(dd, ctx.zero()));
    for (size_t k = 0; k < fam.H.c.size(); ++k)
      for (size_t e = 0; e < dd; ++e)
        Y.c[(p - 1) + p * k][e] = ctx.mul_int(ctx.frobenius(fam.H.c[k][e]), mpz_class(-p));
  }

  Matrix K0 = mat_reduce(ctx, F0);
  const ZqElement r0M = ctx.pow(fam.r[0], mpz_class(fam.M));
  K0 = mat_scale_by(ctx, K0, r0M);

  SystemConstants k;
  k.alpha = fam.constants.alpha;
  k.gamma = fam.constants.gamma;
  k.delta = fam.constants.delta;
  k.psi = fam.constants.psi;
  k.m = static_cast<int>(fam.constants.m);
  k.ell = ell > 0 ? ell : fam.constants.ell;
  k.zeta = fam.constants.zeta;
  int prec = ctx.precision() - std::max({sH, K0.scale, 0});
  if (f0_precision >= 0) prec = std::min(prec, f0_precision);
  return assemble_system(ctx, A, B, X, Y, K0, k, prec);
}

}  // namespace hzeta
