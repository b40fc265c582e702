#pragma once

// End-to-end computation: family, fiber Frobenius at Gamma = 0, the solver, and
// the zeta numerator at Gamma = 1 or at a batch of fibers.

#include <optional>
#include <string>
#include <vector>

#include "hzeta/deformation.hpp"
#include "hzeta/error.hpp"
#include "hzeta/kedlaya.hpp"
#include "hzeta/odesolver.hpp"
#include "hzeta/zeta.hpp"

namespace hzeta {

struct CurveInput {
  unsigned long p = 0;
  int n = 1;
  /// Low coefficients of the field modulus; canonical when absent.
  std::optional<std::vector<unsigned long>> modulus;
  /// a_0 .. a_{2g}; x^{2g+1} is implicit.
  std::vector<Residue> curve;
  std::vector<Residue> batch;
};

enum class SolveMode { Stream, Full };

struct PipelineOptions {
  SolveMode mode = SolveMode::Stream;
  /// Digits added to every working precision.
  int extra_precision = 0;
  /// Replaces the formula truncation when > 0.
  long ell = 0;
  /// Also run the other mode and compare K(1) mod p^m.
  bool cross_check = false;
};

struct PipelineReport {
  DeformationConstants constants;
  int rho = 0;
  SolveStats stats;
  int fiber_precision = 0;
  long series_terms = 0;
  /// Set when cross_check ran.
  std::optional<bool> modes_agree;
  FrobeniusMatrix F1;
  double seconds = 0;
};

/// Throws InvalidInput for p = 2, non-primes, bad moduli or malformed curves.
PadicContext base_context(const CurveInput& in);
void validate_input(const CurveInput& in);

/// Boundary condition and the differential system of the input curve.
struct PreparedSystem {
  Family fam;
  FiberFrobenius fiber;
  DiffEqSystem sys;
};
PreparedSystem prepare_system(const CurveInput& in, const PipelineOptions& opts);

ZetaResult compute_zeta(const CurveInput& in, const PipelineOptions& opts = {},
                        PipelineReport* report = nullptr);

/// Zeta of y^2 = Q(x, gamma) from K(gamma) of the family's solution.
ZetaResult fiber_zeta(const Family& fam, const PadicContext& ctx, const Matrix& K, int precision,
                      const ZqElement& gamma);

struct BatchEntry {
  Residue gamma;
  std::optional<ZetaResult> zeta;
  /// Curve coefficients of the fiber over F_q.
  std::vector<Residue> curve;
  std::optional<Errc> error;
  std::string message;
  bool skipped = false;
};

/// One entry per requested fiber, in input order.
std::vector<BatchEntry> compute_batch(const CurveInput& in, const PipelineOptions& opts = {},
                                      SolveStats* stats = nullptr);

/// Q(x, gamma) over F_q for a residue gamma: coefficients a_0 .. a_{2g}.
std::vector<Residue> fiber_curve(const Family& fam, const Residue& gamma);

struct BenchRun {
  long ell = 0;
  long stream_peak = 0, full_peak = 0;
  double stream_seconds = 0, full_seconds = 0;
  long steps = 0;
  long zeta = 0;
  int working_precision = 0;
  bool agree = false;
};

/// Streaming and full solves at ell and at ell_scale * ell.
std::vector<BenchRun> benchmark(const CurveInput& in, double ell_scale, int extra_precision = 0);

}  // namespace hzeta
