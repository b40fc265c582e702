#pragma once

// Exact reals of the form r_0 + sum_i r_i * log_p(b_i) with rational r_i and
// positive integer b_i. Floors, ceilings and comparisons are decided by
// comparing integer powers, never by floating point.

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace hzeta {

class LogReal {
 public:
  LogReal() = default;
  LogReal(unsigned long p, const mpq_class& r) : p_(p), rat_(r) {}

  /// log_p(b) for an integer b >= 1.
  static LogReal log(unsigned long p, unsigned long b);

  unsigned long base() const { return p_; }

  LogReal operator+(const LogReal& o) const;
  LogReal operator-(const LogReal& o) const;
  LogReal operator*(const mpq_class& k) const;
  LogReal operator+(const mpq_class& k) const;

  /// -1, 0 or +1.
  int sign() const;
  mpz_class floor() const;
  mpz_class ceil() const;
  double approx() const;
  /// True when no logarithmic part survives.
  bool is_rational() const;
  const mpq_class& rational_part() const { return rat_; }
  std::string str() const;

  bool operator<(const LogReal& o) const { return (*this - o).sign() < 0; }
  bool operator==(const LogReal& o) const { return (*this - o).sign() == 0; }

 private:
  void normalize();

  unsigned long p_ = 0;
  mpq_class rat_ = 0;
  // (coefficient, argument) with argument >= 2
  std::vector<std::pair<mpq_class, unsigned long>> logs_;
};

/// Smallest integer k >= 0 with p^k >= x (x >= 1).
long ceil_log(unsigned long p, const mpz_class& x);
/// Largest integer k >= 0 with p^k <= x (x >= 1).
long floor_log(unsigned long p, const mpz_class& x);

}  // namespace hzeta
