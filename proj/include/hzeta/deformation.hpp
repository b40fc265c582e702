#pragma once

// The family y^2 = Q(x, Gamma) joining a prime-field curve at Gamma = 0 to the
// input curve at Gamma = 1, its discriminant r(Gamma), the Gauss-Manin
// connection H = r G on {x^i dx / y}, and the differential system for the
// Frobenius matrix.

#include <vector>

#include "hzeta/logreal.hpp"
#include "hzeta/matrix.hpp"
#include "hzeta/odesolver.hpp"
#include "hzeta/padic.hpp"
#include "hzeta/zqpoly.hpp"

namespace hzeta {

/// Polynomial in x whose coefficients are polynomials in Gamma; index = x-degree.
using XGPoly = std::vector<ZqPoly>;

struct DeformationConstants {
  LogReal alpha, gamma, delta, psi, epsilon;
  long zeta = 0, m = 0, M = 0, ell = 0, m_prime = 0;
  int epsilon_ceil = 0;
};

/// Every displayed constant for genus g over F_{p^n}; rho = deg r.
DeformationConstants deformation_constants(unsigned long p, int n, int g, int rho);

struct Family {
  unsigned long p = 0;
  int n = 0, g = 0;
  /// Z_q at the family working precision.
  PadicContext ctx;
  /// Input curve over F_q: coefficients of x^0 .. x^{2g}.
  std::vector<Residue> curve;
  /// Lifted coefficients of Q_1 and integer coefficients of Q_0.
  std::vector<ZqElement> a;
  std::vector<long> b;
  XGPoly Q;
  ZqPoly r, rtilde;
  int rho = 0;
  /// a Q + b Q_x = r with deg_x a <= 2g-1, deg_x b <= 2g.
  XGPoly bezout_a, bezout_b;
  MatPoly H;
  long M = 0;
  DeformationConstants constants;
  /// Absolute precision carried by H and F0 (covers epsilon up to 4 ell).
  int target = 0;
};

/// `base` fixes p, n and the modulus; its precision is ignored. `extra`
/// digits are added to the working precision of every later stage.
Family build_family(const PadicContext& base, const std::vector<Residue>& curve, int extra = 0);

/// Res_x(Q, Q_x) from the Sylvester matrix; sign fixed by the column order
/// x^j Q (j < 2g), x^j Q_x (j <= 2g).
ZqPoly resultant(const PadicContext& ctx, const XGPoly& Q, int g);
void bezout_cofactors(const PadicContext& ctx, const XGPoly& Q, int g, XGPoly& a, XGPoly& b,
                      ZqPoly* r = nullptr);

/// Coordinates of (value / r^r_power) in the basis x^i dx / y, i < 2g; the
/// Gamma-polynomial coefficients are mantissas at `scale`.
struct ReducedRow {
  std::vector<ZqPoly> c;
  int scale = 0;
  int r_power = 0;
};

/// P dx / Q^{twice_s / 2} for odd twice_s >= 1.
ReducedRow reduce_differential(const Family& fam, const XGPoly& P, int twice_s);
/// Only the degree rule: P dx / y with any deg P, coefficients at `scale`.
ReducedRow reduce_degree(const PadicContext& ctx, const XGPoly& Q, int g, XGPoly P, int scale);

/// H row i is r times the reduction of nabla(x^i dx / y).
MatPoly connection_matrix(const Family& fam);

/// A = r^sigma(Gamma^p), B = r, X = H - M r' I, Y = -p Gamma^{p-1} H^sigma(Gamma^p)
/// with K0 = r(0)^M F0. `f0_precision` is the absolute precision of F0.
/// `ell` > 0 replaces the formula truncation.
DiffEqSystem to_diffeq_system(const Family& fam, const Matrix& F0, int f0_precision = -1,
                              long ell = 0);

/// Q(x, gamma) as a polynomial over Z_q.
ZqPoly specialize_curve(const Family& fam, const ZqElement& gamma);

}  // namespace hzeta
