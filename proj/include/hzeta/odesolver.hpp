#pragma once

// Power-series solutions of A K' B + A K X + Y K B = 0, K(0) = K0, over Q_q at
// fixed absolute precision: full expansion mod Gamma^ell, streaming evaluation
// at one point with a window of zeta coefficients, and multipoint evaluation.

#include <functional>
#include <optional>
#include <vector>

#include "hzeta/logreal.hpp"
#include "hzeta/matrix.hpp"
#include "hzeta/padic.hpp"

namespace hzeta {

struct SystemConstants {
  LogReal alpha, gamma, delta;
  /// Defaults to 5 (alpha + delta).
  std::optional<LogReal> psi;
  int m = 1;
  long ell = 1;
  /// Window length; raised to the degree bound if smaller.
  std::optional<long> zeta;
};

struct DiffEqSystem {
  PadicContext ctx;
  MatPoly A, B, X, Y;
  Matrix K0, A0inv, B0inv;
  long zeta = 1;
  long ell = 1;
  int m = 1;
  LogReal alpha, gamma, delta, psi, epsilon;
  /// ceil(epsilon)
  int epsilon_ceil = 1;
  int input_precision = 0;

  int d() const { return K0.d; }
};

/// Validates and seals a system. `input_precision` is the absolute precision
/// of the inputs; by default the context width minus the largest scale.
DiffEqSystem assemble_system(const PadicContext& ctx, MatPoly A, MatPoly B, MatPoly X, MatPoly Y,
                             Matrix K0, const SystemConstants& k, int input_precision = -1);

struct SolveOptions {
  /// Digits added to ceil(epsilon) for the working precision.
  int extra_precision = 0;
  /// Use the matrix-coefficient recursion even when A and B are scalar.
  bool force_general = false;
};

struct SolveStats {
  long steps = 0;
  long peak_retained = 0;
  int max_precision_loss = 0;
  int working_precision = 0;
  int mantissa_width = 0;
  long zeta = 0;
  long ell = 0;
  bool scalar_path = false;
};

/// Coefficients are mantissas at scale `scale()` in `context()`; values are
/// known modulo p^{working_precision()}.
class Recursion {
 public:
  explicit Recursion(const DiffEqSystem& sys, const SolveOptions& opts = {});

  const PadicContext& context() const { return ctxK_; }
  int scale() const { return SK_; }
  int working_precision() const { return epsw_; }
  int mantissa_width() const { return epsw_ + SK_; }
  long window() const { return zeta_; }
  long ell() const { return ell_; }
  int m() const { return m_; }
  int guard() const { return G_; }
  bool scalar_path() const { return fast_; }
  const LogReal& alpha() const { return alpha_; }

  Matrix initial() const { return K0_; }
  /// K_{k+1} from window(i) = K_i for max(0, k-zeta+1) <= i <= k.
  Matrix step(long k, const std::function<const Matrix&(long)>& window, int* loss = nullptr) const;
  /// Same, writing into `out` so a caller can reuse one buffer.
  void step_into(long k, const std::function<const Matrix&(long)>& window, Matrix& out,
                 int* loss = nullptr) const;

 private:
  void finish_division(std::vector<ZqAccumulator>& acc, long k, Matrix& out, int* loss) const;

  PadicContext ctx_;
  PadicContext ctxK_;
  int d_ = 0, n_ = 1;
  int SK_ = 0, epsw_ = 0, G_ = 0, s_ = 0, m_ = 0;
  long zeta_ = 1, ell_ = 1;
  LogReal alpha_;
  mpz_class modK_, modP_;
  bool fast_ = false;
  Matrix K0_;
  // scalar path: P1 = Ahat Bhat, P2 = Ahat Xhat, P3 = Yhat Bhat, scale 2s
  std::vector<ZqElement> P1_;
  std::vector<std::vector<ZqElement>> P2_, P3_;
  // general path: normalized coefficients, scale s
  std::vector<std::vector<ZqElement>> Ah_, Bh_, Xh_, Yh_;
};

/// window[0] = K_k, window[1] = K_{k-1}, ...; missing entries are zero.
Matrix step_recursion(const Recursion& rec, long k, const std::vector<Matrix>& window);

/// K(Gamma) mod (p^m, Gamma^ell). Coefficients at scale `scale` in a context
/// of width m + scale.
struct Solution {
  PadicContext ctx;
  MatPoly K;
  int precision = 0;
};

struct PointValue {
  PadicContext ctx;
  Matrix K;
  int precision = 0;
};

Solution solve_full(const DiffEqSystem& sys, SolveStats* stats = nullptr,
                    const SolveOptions& opts = {});
/// K(gamma) mod p^m using a running accumulator; gamma is read in sys.ctx.
PointValue solve_streaming(const DiffEqSystem& sys, const ZqElement& gamma,
                           SolveStats* stats = nullptr, const SolveOptions& opts = {});
/// Throws Errc::DomainError when ord(gamma) < 0.
PointValue solve_streaming(const DiffEqSystem& sys, const ScaledElement& gamma,
                           SolveStats* stats = nullptr, const SolveOptions& opts = {});
/// K at every point via p^shift K(Gamma) and a subproduct tree.
std::vector<PointValue> solve_multipoint(const DiffEqSystem& sys,
                                         const std::vector<ZqElement>& points,
                                         SolveStats* stats = nullptr,
                                         const SolveOptions& opts = {});
/// Horner evaluation of a full solution.
PointValue evaluate(const Solution& sol, const ZqElement& gamma);

/// Inverse of a matrix with nonzero determinant, as a scaled matrix.
Matrix mat_inverse(const PadicContext& ctx, const Matrix& a);
ZqElement mat_det(const PadicContext& ctx, const std::vector<ZqElement>& entries, int d);

}  // namespace hzeta
