#pragma once

// Fixed absolute-precision arithmetic in the unramified extension Z_q / p^W,
// q = p^n, in the power basis of a monic lift phi of an irreducible polynomial
// over F_p.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

namespace hzeta {

/// Element of F_{p^n}: n digits in [0, p), coefficient of t^i at index i.
using Residue = std::vector<unsigned long>;

/// Element of Z_q mod p^W as n integer coefficients in [0, p^W).
struct ZqElement {
  std::vector<mpz_class> c;

  bool operator==(const ZqElement&) const = default;
};

/// mantissa * p^{-scale}; absolute precision is (context width - scale).
struct ScaledElement {
  ZqElement mantissa;
  int scale = 0;
};

class PadicContext {
 public:
  /// Empty handle; only assignment is valid on it.
  PadicContext() = default;
  /// Canonical modulus: the lexicographically least monic irreducible of degree n.
  static PadicContext make(unsigned long p, int n, int precision);
  /// `phi_low` holds the n low coefficients of the monic modulus.
  static PadicContext make_with_modulus(unsigned long p, const std::vector<unsigned long>& phi_low,
                                        int precision);

  /// Same field and modulus at another absolute precision.
  PadicContext with_precision(int precision) const;

  unsigned long p() const { return d_->p; }
  int n() const { return d_->n; }
  int precision() const { return d_->W; }
  const mpz_class& modulus() const { return d_->pW; }
  const std::vector<unsigned long>& phi() const { return d_->phi; }
  /// p^e for any e >= 0 (cached up to the working precision).
  mpz_class pow_p(int e) const;
  /// Size of the residue field.
  const mpz_class& q() const { return d_->q; }

  ZqElement zero() const;
  ZqElement one() const;
  ZqElement from_int(long v) const;
  ZqElement from_mpz(const mpz_class& v) const;
  ZqElement from_coeffs(const std::vector<mpz_class>& coeffs) const;
  /// Canonical digit lift of a residue (digits in [0,p)).
  ZqElement lift(const Residue& r) const;
  Residue residue(const ZqElement& x) const;
  /// Re-reduce an element from a context of another width.
  ZqElement reduce(const ZqElement& x) const;

  ZqElement add(const ZqElement& a, const ZqElement& b) const;
  ZqElement sub(const ZqElement& a, const ZqElement& b) const;
  ZqElement neg(const ZqElement& a) const;
  ZqElement mul(const ZqElement& a, const ZqElement& b) const;
  ZqElement mul_int(const ZqElement& a, const mpz_class& k) const;
  ZqElement pow(const ZqElement& a, const mpz_class& e) const;
  /// Unit inverse; throws Errc::NonUnit when the reduction mod p vanishes.
  ZqElement invert(const ZqElement& a) const;

  /// sigma^k(x), sigma the lift of the p-power Frobenius.
  ZqElement frobenius(const ZqElement& x, int k = 1) const;
  /// Unique (q-1)-th root of unity reducing to r; teichmuller(0) = 0.
  ZqElement teichmuller(const Residue& r) const;

  bool is_zero(const ZqElement& x) const;
  bool is_unit(const ZqElement& x) const;
  /// min_i v_p(c_i); the precision W when x is zero.
  int valuation(const ZqElement& x) const;

  /// Reduce a coefficient vector of any length modulo phi and p^W, in place.
  void fold(std::vector<mpz_class>& coeffs, const mpz_class& mod) const;

 private:
  struct Data {
    unsigned long p = 0;
    int n = 0;
    int W = 0;
    mpz_class pW;
    mpz_class q;
    std::vector<unsigned long> phi;
    std::vector<mpz_class> pows;
    // sigma_pow[k][i] = sigma^k(t)^i
    std::vector<std::vector<ZqElement>> sigma_pow;
  };

  explicit PadicContext(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<Data> build(unsigned long p, const std::vector<unsigned long>& phi,
                                     int precision);

  std::shared_ptr<const Data> d_;
};

/// Valuation of a scaled element; nullopt when the mantissa is zero at full
/// width (the valuation is then only known to be >= W - scale).
std::optional<int> valuation(const PadicContext& ctx, const ScaledElement& x);

/// Multiply-accumulate buffer for Z_q products without intermediate reduction.
class ZqAccumulator {
 public:
  explicit ZqAccumulator(int n = 1) : acc_(n > 0 ? 2 * n - 1 : 1) {}

  void clear() {
    for (auto& a : acc_) a = 0;
  }
  void addmul(const ZqElement& a, const ZqElement& b) {
    const size_t n = a.c.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        mpz_addmul(acc_[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
  }
  void submul(const ZqElement& a, const ZqElement& b) {
    const size_t n = a.c.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        mpz_submul(acc_[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
  }
  void add(const ZqElement& a) {
    for (size_t i = 0; i < a.c.size(); ++i) acc_[i] += a.c[i];
  }
  /// Fold modulo phi and `mod` into `out`.
  void reduce_into(const PadicContext& ctx, ZqElement& out, const mpz_class& mod) {
    ctx.fold(acc_, mod);
    out.c.resize(ctx.n());
    for (int i = 0; i < ctx.n(); ++i) out.c[i] = acc_[i];
  }
  std::vector<mpz_class>& raw() { return acc_; }

 private:
  std::vector<mpz_class> acc_;
};

/// Helpers on the residue field F_p[t]/(phi mod p), used by the context and tests.
namespace fp {

/// Irreducibility over F_p of the monic polynomial t^n + sum phi_low[i] t^i.
bool is_irreducible(unsigned long p, const std::vector<unsigned long>& phi_low);
/// Lexicographically least monic irreducible of degree n (base-p scan, c_0 least significant).
std::vector<unsigned long> canonical_modulus(unsigned long p, int n);

}  // namespace fp

}  // namespace hzeta
