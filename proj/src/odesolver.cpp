#include "hzeta/odesolver.hpp"

#include <algorithm>
#include <memory>

#include "hzeta/error.hpp"
#include "hzeta/zqpoly.hpp"

namespace hzeta {

namespace {

bool is_scalar_poly(const PadicContext& ctx, const MatPoly& P) {
  for (const auto& c : P.c)
    for (int i = 0; i < P.d; ++i)
      for (int j = 0; j < P.d; ++j) {
        const ZqElement& x = c[static_cast<size_t>(i) * P.d + j];
        if (i != j && !ctx.is_zero(x)) return false;
        if (i == j && !(ctx.sub(x, c[0]) == ctx.zero())) return false;
      }
  return true;
}

int maxdeg(const PadicContext& ctx, const MatPoly& P) {
  return P.c.empty() ? -1 : P.degree(ctx);
}

bool all_zero(const PadicContext& ctx, const std::vector<ZqElement>& m) {
  for (const auto& x : m)
    if (!ctx.is_zero(x)) return false;
  return true;
}

// Coefficients of P as matrices in ctx at scale s (multiplying up).
std::vector<std::vector<ZqElement>> at_scale(const PadicContext& ctx, const std::vector<Matrix>& P,
                                             int s) {
  std::vector<std::vector<ZqElement>> out;
  for (const auto& m : P) out.push_back(mat_rescale(ctx, mat_reduce(ctx, m), s).e);
  return out;
}

std::vector<Matrix> left_mul(const PadicContext& ctx, const Matrix& L, const MatPoly& P) {
  std::vector<Matrix> out;
  for (size_t i = 0; i < P.c.size(); ++i) out.push_back(mat_mul(ctx, L, mat_reduce(ctx, P.coeff(int(i)))));
  return out;
}

std::vector<Matrix> right_mul(const PadicContext& ctx, const MatPoly& P, const Matrix& R) {
  std::vector<Matrix> out;
  for (size_t i = 0; i < P.c.size(); ++i) out.push_back(mat_mul(ctx, mat_reduce(ctx, P.coeff(int(i))), R));
  return out;
}

}  // namespace

ZqElement mat_det(const PadicContext& ctx, const std::vector<ZqElement>& entries, int d) {
  std::vector<std::vector<ZqElement>> M(d);
  for (int i = 0; i < d; ++i) M[i].assign(entries.begin() + i * d, entries.begin() + (i + 1) * d);
  return determinant(M, ZqRing{ctx});
}

Matrix mat_inverse(const PadicContext& ctx, const Matrix& a) {
  const int d = a.d;
  const ZqElement det = mat_det(ctx, a.e, d);
  if (ctx.is_zero(det)) throw Error(Errc::SingularLeadingCoefficient, "matrix is not invertible");
  const int v = ctx.valuation(det);
  ZqElement u = det;
  const mpz_class pv = ctx.pow_p(v);
  for (auto& c : u.c) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pv.get_mpz_t());
  const ZqElement uinv = ctx.invert(u);
  Matrix r = mat_zero(ctx, d, v - a.scale);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // adj(j, i) = (-1)^{i+j} minor(i, j)
      std::vector<ZqElement> sub;
      for (int r2 = 0; r2 < d; ++r2)
        for (int c2 = 0; c2 < d; ++c2)
          if (r2 != i && c2 != j) sub.push_back(a(r2, c2));
      ZqElement minor = d == 1 ? ctx.one() : mat_det(ctx, sub, d - 1);
      if ((i + j) % 2) minor = ctx.neg(minor);
      r(j, i) = ctx.mul(minor, uinv);
    }
  if (r.scale < 0) r = mat_rescale(ctx, r, 0);
  return r;
}

DiffEqSystem assemble_system(const PadicContext& ctx, MatPoly A, MatPoly B, MatPoly X, MatPoly Y,
                             Matrix K0, const SystemConstants& k, int input_precision) {
  const int d = K0.d;
  if (d < 1) throw Error(Errc::InvalidInput, "empty system");
  for (MatPoly* P : {&A, &B, &X, &Y}) {
    if (P->c.empty()) P->d = d;
    if (P->d != d) throw Error(Errc::InvalidInput, "dimension mismatch in system");
    for (const auto& c : P->c)
      if (c.size() != static_cast<size_t>(d) * d) throw Error(Errc::InvalidInput, "bad coefficient size");
  }
  if (k.ell < 1 || k.m < 1) throw Error(Errc::InvalidInput, "ell and m must be positive");
  if (A.c.empty() || B.c.empty()) throw Error(Errc::SingularLeadingCoefficient, "A or B is zero");

  DiffEqSystem s;
  s.ctx = ctx;
  s.alpha = k.alpha;
  s.gamma = k.gamma;
  s.delta = k.delta;
  s.psi = k.psi ? *k.psi : (k.alpha + k.delta) * mpq_class(5);
  s.m = k.m;
  s.ell = k.ell;
  const long Lp = ceil_log(ctx.p(), mpz_class(k.ell));
  s.epsilon = s.psi + mpq_class(k.m) + (k.gamma * mpq_class(5 * Lp)) + mpq_class(Lp);
  s.epsilon_ceil = static_cast<int>(s.epsilon.ceil().get_si());

  try {
    s.A0inv = mat_inverse(ctx, A.coeff(0));
    s.B0inv = mat_inverse(ctx, B.coeff(0));
  } catch (const Error& e) {
    if (e.code() == Errc::SingularLeadingCoefficient || e.code() == Errc::NonUnit)
      throw Error(Errc::SingularLeadingCoefficient, "A_0 or B_0 is not invertible");
    throw;
  }
  if (ctx.is_zero(mat_det(ctx, K0.e, d))) throw Error(Errc::InvalidInput, "K0 is not invertible");

  const int dA = maxdeg(ctx, A), dB = maxdeg(ctx, B), dX = maxdeg(ctx, X), dY = maxdeg(ctx, Y);
  long bound = std::max(1, dA + dB);
  if (dX >= 0) bound = std::max<long>(bound, dA + dX + 1);
  if (dY >= 0) bound = std::max<long>(bound, dY + dB + 1);
  s.zeta = std::max(bound, k.zeta.value_or(0));

  for (const MatPoly* P : {&X, &Y}) {
    const auto v = matpoly_valuation(ctx, *P);
    if (v && (LogReal(ctx.p(), *v) + s.psi).sign() < 0)
      throw Error(Errc::ValuationViolation, "ord(X) or ord(Y) below -psi");
  }

  if (input_precision < 0) {
    int sc = K0.scale;
    for (const MatPoly* P : {&A, &B, &X, &Y}) sc = std::max(sc, P->scale);
    input_precision = ctx.precision() - sc;
  }
  if (input_precision < s.epsilon_ceil)
    throw Error(Errc::InsufficientPrecision, "inputs are known to fewer than epsilon digits");
  s.input_precision = input_precision;

  s.A = std::move(A);
  s.B = std::move(B);
  s.X = std::move(X);
  s.Y = std::move(Y);
  s.K0 = std::move(K0);
  return s;
}

Recursion::Recursion(const DiffEqSystem& sys, const SolveOptions& opts) {
  ctx_ = sys.ctx;
  d_ = sys.d();
  n_ = sys.ctx.n();
  zeta_ = sys.zeta;
  ell_ = sys.ell;
  m_ = sys.m;
  alpha_ = sys.alpha;
  epsw_ = sys.epsilon_ceil + opts.extra_precision;
  SK_ = epsw_;
  G_ = static_cast<int>(ceil_log(ctx_.p(), mpz_class(ell_))) + 1;

  // Scales are fixed by the leading-coefficient determinants, which do not
  // depend on the working width, so compute them first.
  const Matrix Ai0 = mat_inverse(ctx_, sys.A.coeff(0));
  const Matrix Bi0 = mat_inverse(ctx_, sys.B.coeff(0));
  const int sAh = Ai0.scale + sys.A.scale;
  const int sBh = sys.B.scale + Bi0.scale;
  const int sXh = sys.X.scale + Bi0.scale;
  const int sYh = Ai0.scale + sys.Y.scale;
  s_ = std::max({sAh, sBh, sXh, sYh, 0});

  const int Wprod = epsw_ + G_ + SK_ + 2 * s_;
  const PadicContext ctxP = ctx_.with_precision(Wprod);
  ctxK_ = ctx_.with_precision(epsw_ + SK_);
  modK_ = ctxK_.modulus();
  modP_ = ctxP.modulus();

  const Matrix Ainv = mat_inverse(ctxP, mat_reduce(ctxP, sys.A.coeff(0)));
  const Matrix Binv = mat_inverse(ctxP, mat_reduce(ctxP, sys.B.coeff(0)));
  Ah_ = at_scale(ctxP, left_mul(ctxP, Ainv, sys.A), s_);
  Bh_ = at_scale(ctxP, right_mul(ctxP, sys.B, Binv), s_);
  Xh_ = at_scale(ctxP, right_mul(ctxP, sys.X, Binv), s_);
  Yh_ = at_scale(ctxP, left_mul(ctxP, Ainv, sys.Y), s_);
  const Matrix I = mat_rescale(ctxP, mat_identity(ctxP, d_), s_);
  Ah_[0] = I.e;
  Bh_[0] = I.e;
  auto trim = [&](std::vector<std::vector<ZqElement>>& v) {
    while (!v.empty() && all_zero(ctxP, v.back())) v.pop_back();
  };
  trim(Ah_);
  trim(Bh_);
  trim(Xh_);
  trim(Yh_);

  fast_ = !opts.force_general && is_scalar_poly(ctx_, sys.A) && is_scalar_poly(ctx_, sys.B);
  if (fast_) {
    ZqPoly a, b;
    for (const auto& m : Ah_) a.push_back(m[0]);
    for (const auto& m : Bh_) b.push_back(m[0]);
    P1_ = zqpoly::mul(ctxP, a, b);
    const size_t dd = static_cast<size_t>(d_) * d_;
    auto conv = [&](const ZqPoly& sc, const std::vector<std::vector<ZqElement>>& M) {
      std::vector<std::vector<ZqElement>> out;
      if (M.empty()) return out;
      out.assign(sc.size() + M.size() - 1, std::vector<ZqElement>(dd, ctxP.zero()));
      for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < M.size(); ++j)
          for (size_t e = 0; e < dd; ++e)
            out[i + j][e] = ctxP.add(out[i + j][e], ctxP.mul(sc[i], M[j][e]));
      return out;
    };
    P2_ = conv(a, Xh_);
    P3_ = conv(b, Yh_);
  }

  Matrix K0 = mat_normalize(ctx_, sys.K0);
  if (K0.scale > SK_) throw Error(Errc::PrecisionExhausted, "K0 valuation below -epsilon");
  K0_ = mat_rescale(ctxK_, mat_reduce(ctxK_, K0), SK_);
}

void Recursion::finish_division(std::vector<ZqAccumulator>& acc, long k, Matrix& out,
                                int* loss) const {
  const unsigned long p = ctx_.p();
  mpz_class u(static_cast<unsigned long>(k + 1));
  int v = 0;
  while (mpz_divisible_ui_p(u.get_mpz_t(), p)) {
    mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), p);
    ++v;
  }
  if (v > G_) throw Error(Errc::GuardExhausted, "division by k+1 exceeds the guard digits");
  if (loss) *loss = v;
  mpz_class uinv;
  mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), modK_.get_mpz_t());
  mpz_class shift;
  mpz_ui_pow_ui(shift.get_mpz_t(), p, static_cast<unsigned long>(2 * s_ + v));

  out.d = d_;
  out.scale = SK_;
  out.e.resize(static_cast<size_t>(d_) * d_);
  for (size_t e = 0; e < acc.size(); ++e) {
    acc[e].reduce_into(ctx_, out.e[e], modP_);
    for (auto& c : out.e[e].c) {
      if (!mpz_divisible_p(c.get_mpz_t(), shift.get_mpz_t()))
        throw Error(Errc::PrecisionExhausted, "coefficient valuation below the working scale");
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), shift.get_mpz_t());
      c *= uinv;
      c = -c;
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modK_.get_mpz_t());
    }
  }
}

void Recursion::step_into(long k, const std::function<const Matrix&(long)>& window, Matrix& out,
                          int* loss) const {
  const int d = d_;
  const size_t dd = static_cast<size_t>(d) * d;
  std::vector<ZqAccumulator> acc(dd, ZqAccumulator(n_));
  auto idx = [d](int i, int j) { return static_cast<size_t>(i) * d + j; };

  if (fast_) {
    ZqElement t;
    t.c.resize(n_);
    for (size_t j = 1; j < P1_.size(); ++j) {
      const long i = k + 1 - static_cast<long>(j);
      if (i < 0) break;
      if (i == 0) continue;
      for (int c = 0; c < n_; ++c) t.c[c] = P1_[j].c[c] * i;
      const Matrix& K = window(i);
      for (size_t e = 0; e < dd; ++e) acc[e].addmul(t, K.e[e]);
    }
    for (size_t j = 0; j < P2_.size(); ++j) {
      const long i = k - static_cast<long>(j);
      if (i < 0) break;
      const Matrix& K = window(i);
      const auto& P = P2_[j];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          for (int l = 0; l < d; ++l) acc[idx(r, c)].addmul(K(r, l), P[idx(l, c)]);
    }
    for (size_t j = 0; j < P3_.size(); ++j) {
      const long i = k - static_cast<long>(j);
      if (i < 0) break;
      const Matrix& K = window(i);
      const auto& P = P3_[j];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          for (int l = 0; l < d; ++l) acc[idx(r, c)].addmul(P[idx(r, l)], K(l, c));
    }
  } else {
    // left * K * right accumulated with an integer weight
    std::vector<ZqElement> tmp(dd);
    ZqAccumulator a1(n_);
    auto triple = [&](const std::vector<ZqElement>& L, const Matrix& K,
                      const std::vector<ZqElement>& R, long weight) {
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          a1.clear();
          for (int l = 0; l < d; ++l) a1.addmul(L[idx(r, l)], K(l, c));
          a1.reduce_into(ctx_, tmp[idx(r, c)], modP_);
          if (weight != 1)
            for (auto& x : tmp[idx(r, c)].c) x *= weight;
        }
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          for (int l = 0; l < d; ++l) acc[idx(r, c)].addmul(tmp[idx(r, l)], R[idx(l, c)]);
    };
    for (size_t a = 0; a < Ah_.size(); ++a)
      for (size_t c = 0; c < Bh_.size(); ++c) {
        if (a == 0 && c == 0) continue;
        const long i = k + 1 - static_cast<long>(a + c);
        if (i <= 0) continue;
        triple(Ah_[a], window(i), Bh_[c], i);
      }
    for (size_t a = 0; a < Ah_.size(); ++a)
      for (size_t c = 0; c < Xh_.size(); ++c) {
        const long i = k - static_cast<long>(a + c);
        if (i < 0) continue;
        triple(Ah_[a], window(i), Xh_[c], 1);
      }
    for (size_t a = 0; a < Yh_.size(); ++a)
      for (size_t c = 0; c < Bh_.size(); ++c) {
        const long i = k - static_cast<long>(a + c);
        if (i < 0) continue;
        triple(Yh_[a], window(i), Bh_[c], 1);
      }
  }
  finish_division(acc, k, out, loss);
}

Matrix Recursion::step(long k, const std::function<const Matrix&(long)>& window, int* loss) const {
  Matrix out;
  step_into(k, window, out, loss);
  return out;
}

Matrix step_recursion(const Recursion& rec, long k, const std::vector<Matrix>& window) {
  const Matrix zero = mat_zero(rec.context(), rec.initial().d, rec.scale());
  return rec.step(k, [&](long i) -> const Matrix& {
    const long off = k - i;
    if (i < 0 || off < 0 || off >= static_cast<long>(window.size())) return zero;
    return window[off];
  });
}

namespace {

void fill_stats(SolveStats* stats, const Recursion& rec, long steps, long peak, int loss) {
  if (!stats) return;
  stats->steps = steps;
  stats->peak_retained = peak;
  stats->max_precision_loss = loss;
  stats->working_precision = rec.working_precision();
  stats->mantissa_width = rec.mantissa_width();
  stats->zeta = rec.window();
  stats->ell = rec.ell();
  stats->scalar_path = rec.scalar_path();
}

std::vector<Matrix> run_full(const Recursion& rec, SolveStats* stats) {
  std::vector<Matrix> Ks;
  Ks.reserve(rec.ell());
  Ks.push_back(rec.initial());
  int maxloss = 0;
  auto win = [&](long i) -> const Matrix& { return Ks[i]; };
  for (long k = 0; k + 1 < rec.ell(); ++k) {
    Ks.emplace_back();
    int loss = 0;
    rec.step_into(k, win, Ks.back(), &loss);
    maxloss = std::max(maxloss, loss);
  }
  fill_stats(stats, rec, rec.ell() - 1, static_cast<long>(Ks.size()), maxloss);
  return Ks;
}

Matrix narrow(const PadicContext& ctxO, const Matrix& m) {
  return mat_reduce(ctxO, m);
}

}  // namespace

Solution solve_full(const DiffEqSystem& sys, SolveStats* stats, const SolveOptions& opts) {
  const Recursion rec(sys, opts);
  const std::vector<Matrix> Ks = run_full(rec, stats);
  Solution sol;
  sol.ctx = sys.ctx.with_precision(sys.m + rec.scale());
  sol.precision = sys.m;
  sol.K.d = sys.d();
  sol.K.scale = rec.scale();
  for (const auto& K : Ks) sol.K.c.push_back(narrow(sol.ctx, K).e);
  return sol;
}

PointValue solve_streaming(const DiffEqSystem& sys, const ScaledElement& gamma, SolveStats* stats,
                           const SolveOptions& opts) {
  const auto v = valuation(sys.ctx, gamma);
  if (v && *v < 0) throw Error(Errc::DomainError, "evaluation point is not integral");
  ZqElement g = gamma.mantissa;
  if (gamma.scale > 0) {
    if (!v) {
      g = sys.ctx.zero();
    } else {
      const mpz_class f = sys.ctx.pow_p(gamma.scale);
      for (auto& c : g.c) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), f.get_mpz_t());
    }
  } else if (gamma.scale < 0) {
    g = sys.ctx.mul_int(g, sys.ctx.pow_p(-gamma.scale));
  }
  return solve_streaming(sys, g, stats, opts);
}

PointValue solve_streaming(const DiffEqSystem& sys, const ZqElement& gamma, SolveStats* stats,
                           const SolveOptions& opts) {
  const Recursion rec(sys, opts);
  const PadicContext& ctxK = rec.context();
  const int d = sys.d();
  const size_t dd = static_cast<size_t>(d) * d;
  const long zeta = rec.window();
  const ZqElement g = ctxK.reduce(gamma);
  const bool unit_point = g == ctxK.one();
  const bool zero_point = ctxK.is_zero(g);

  std::vector<Matrix> ring;
  ring.reserve(zeta);
  ring.push_back(rec.initial());
  Matrix scratch;
  std::vector<ZqAccumulator> L(dd, ZqAccumulator(ctxK.n()));
  for (size_t e = 0; e < dd; ++e) L[e].add(ring[0].e[e]);

  ZqElement gpow = ctxK.one();
  long peak = static_cast<long>(ring.size()) + 1;
  int maxloss = 0;
  auto win = [&](long i) -> const Matrix& { return ring[i % zeta]; };
  for (long k = 0; k + 1 < rec.ell(); ++k) {
    int loss = 0;
    rec.step_into(k, win, scratch, &loss);
    maxloss = std::max(maxloss, loss);
    // ring (<= zeta) + scratch + accumulator
    peak = std::max(peak, static_cast<long>(ring.size()) + 2);
    if (!zero_point) {
      if (unit_point) {
        for (size_t e = 0; e < dd; ++e) L[e].add(scratch.e[e]);
      } else {
        gpow = ctxK.mul(gpow, g);
        for (size_t e = 0; e < dd; ++e) L[e].addmul(scratch.e[e], gpow);
      }
    }
    if (static_cast<long>(ring.size()) < zeta)
      ring.push_back(std::move(scratch));
    else
      std::swap(ring[(k + 1) % zeta], scratch);
  }
  fill_stats(stats, rec, rec.ell() - 1, peak, maxloss);

  PointValue out;
  out.ctx = sys.ctx.with_precision(sys.m + rec.scale());
  out.precision = sys.m;
  out.K = mat_zero(out.ctx, d, rec.scale());
  for (size_t e = 0; e < dd; ++e) L[e].reduce_into(out.ctx, out.K.e[e], out.ctx.modulus());
  return out;
}

namespace {

struct TreeNode {
  ZqPoly poly;
  std::unique_ptr<TreeNode> left, right;
  size_t lo = 0, hi = 0;
};

std::unique_ptr<TreeNode> build_tree(const PadicContext& ctx, const std::vector<ZqElement>& pts,
                                     size_t lo, size_t hi) {
  auto node = std::make_unique<TreeNode>();
  node->lo = lo;
  node->hi = hi;
  if (hi - lo == 1) {
    node->poly = {ctx.neg(pts[lo]), ctx.one()};
    return node;
  }
  const size_t mid = (lo + hi) / 2;
  node->left = build_tree(ctx, pts, lo, mid);
  node->right = build_tree(ctx, pts, mid, hi);
  node->poly = zqpoly::mul(ctx, node->left->poly, node->right->poly);
  if (node->poly.size() < hi - lo + 1) node->poly.resize(hi - lo + 1, ctx.zero());
  node->poly.back() = ctx.one();
  return node;
}

void descend(const PadicContext& ctx, const TreeNode& node, const std::vector<ZqPoly>& polys,
             std::vector<std::vector<ZqElement>>& values) {
  std::vector<ZqPoly> rem;
  rem.reserve(polys.size());
  for (const auto& P : polys) rem.push_back(zqpoly::rem_monic(ctx, P, node.poly));
  if (!node.left) {
    for (size_t e = 0; e < rem.size(); ++e)
      values[node.lo][e] = rem[e].empty() ? ctx.zero() : rem[e][0];
    return;
  }
  descend(ctx, *node.left, rem, values);
  descend(ctx, *node.right, rem, values);
}

}  // namespace

std::vector<PointValue> solve_multipoint(const DiffEqSystem& sys,
                                         const std::vector<ZqElement>& points, SolveStats* stats,
                                         const SolveOptions& opts) {
  if (points.empty()) return {};
  const Recursion rec(sys, opts);
  const std::vector<Matrix> Ks = run_full(rec, stats);
  const PadicContext& ctxK = rec.context();
  const int SK = rec.scale();
  const size_t dd = static_cast<size_t>(sys.d()) * sys.d();

  std::optional<int> vmin;
  for (const auto& K : Ks) {
    auto v = mat_valuation(ctxK, K);
    if (v && (!vmin || *v < *vmin)) vmin = v;
  }
  int shift = static_cast<int>(sys.alpha.ceil().get_si());
  if (vmin) shift = std::max(shift, -*vmin);
  shift = std::max(shift, 0);
  if (shift > SK) throw Error(Errc::PrecisionExhausted, "solution valuation below the working scale");
  const int Wm = sys.m + shift;
  if (sys.ctx.precision() < Wm)
    throw Error(Errc::InsufficientPrecision, "points are not known to accuracy m + alpha");
  const PadicContext ctxM = sys.ctx.with_precision(Wm);

  // p^shift K(Gamma), integral, one polynomial per entry
  const mpz_class down = ctxK.pow_p(SK - shift);
  std::vector<ZqPoly> polys(dd, ZqPoly(Ks.size()));
  for (size_t i = 0; i < Ks.size(); ++i)
    for (size_t e = 0; e < dd; ++e) {
      ZqElement x = Ks[i].e[e];
      for (auto& c : x.c) {
        if (!mpz_divisible_p(c.get_mpz_t(), down.get_mpz_t()))
          throw Error(Errc::PrecisionExhausted, "shifted solution is not integral");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), down.get_mpz_t());
      }
      polys[e][i] = ctxM.reduce(x);
    }

  std::vector<ZqElement> pts;
  for (const auto& x : points) pts.push_back(ctxM.reduce(x));
  const auto root = build_tree(ctxM, pts, 0, pts.size());
  std::vector<std::vector<ZqElement>> values(pts.size(), std::vector<ZqElement>(dd));
  descend(ctxM, *root, polys, values);

  const PadicContext ctxO = sys.ctx.with_precision(sys.m + SK);
  const mpz_class up = ctxO.pow_p(SK - shift);
  std::vector<PointValue> out;
  for (auto& v : values) {
    PointValue pv;
    pv.ctx = ctxO;
    pv.precision = sys.m;
    pv.K = mat_zero(ctxO, sys.d(), SK);
    for (size_t e = 0; e < dd; ++e) pv.K.e[e] = ctxO.mul_int(v[e], up);
    out.push_back(std::move(pv));
  }
  return out;
}

PointValue evaluate(const Solution& sol, const ZqElement& gamma) {
  PointValue pv;
  pv.ctx = sol.ctx;
  pv.precision = sol.precision;
  pv.K = matpoly_eval(sol.ctx, sol.K, sol.ctx.reduce(gamma));
  return pv;
}

}  // namespace hzeta
