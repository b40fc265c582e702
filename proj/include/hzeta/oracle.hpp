#pragma once

// Independent ground truth: exhaustive point counts over small finite fields
// and an exact rational replay of the power-series recursion.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "hzeta/padic.hpp"

namespace hzeta::oracle {

/// F_{p^k} with elements indexed by their base-p digit vectors (index < 2^32).
class SmallField {
 public:
  SmallField(unsigned long p, int k);

  unsigned long p() const { return p_; }
  int degree() const { return k_; }
  std::uint64_t size() const { return q_; }
  const std::vector<unsigned long>& modulus() const { return f_; }

  using Elt = std::vector<unsigned>;
  Elt from_index(std::uint64_t i) const;
  std::uint64_t index(const Elt& a) const;
  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt pow(Elt a, mpz_class e) const;
  Elt inv(const Elt& a) const;
  Elt zero() const { return Elt(k_, 0); }
  Elt one() const;
  bool is_zero(const Elt& a) const;

  /// In-place multiply used by the enumeration loop (no allocation).
  void mul_into(const unsigned* a, const unsigned* b, unsigned* out) const;

 private:
  unsigned long p_;
  int k_;
  std::uint64_t q_;
  std::vector<unsigned long> f_;  // low coefficients of the monic modulus
};

/// Default enumeration budget (2^24 elements); the HZETA_ENUM_BUDGET
/// environment variable overrides it.
std::uint64_t default_budget();

/// #C(F_{p^{nk}}) for y^2 = x^{2g+1} + sum a_i x^i with a_i in F_{p^n} given in
/// the power basis of the monic modulus t^n + sum phi_low[i] t^i; one point
/// at infinity.
mpz_class count_points(unsigned long p, const std::vector<unsigned long>& phi_low,
                       const std::vector<Residue>& curve, int k, std::uint64_t budget = 0);

/// Counts of affine x with chi(Q(x)) = 0, 1 and -1 over F_{p^{nk}}.
struct CharacterCensus {
  std::uint64_t zero = 0, residue = 0, nonresidue = 0;
};
CharacterCensus character_census(unsigned long p, const std::vector<unsigned long>& phi_low,
                                 const std::vector<Residue>& curve, int k,
                                 std::uint64_t budget = 0);

/// Exact system over Q[Gamma]: matrices are row-major d*d.
using QMatrix = std::vector<mpq_class>;
struct RationalSystem {
  int d = 1;
  std::vector<QMatrix> A, B, X, Y;
  QMatrix K0;
};

/// K_0 .. K_{ell-1} from (k+1) A_0 K_{k+1} B_0 = -(all other Gamma^k terms).
std::vector<QMatrix> rational_recursion_replay(const RationalSystem& sys, long ell);

}  // namespace hzeta::oracle
