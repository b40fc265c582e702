#include "hzeta/logreal.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "hzeta/error.hpp"

namespace hzeta {

namespace {

mpz_class lcm_den(const mpq_class& a, const mpz_class& acc) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), acc.get_mpz_t(), a.get_den_mpz_t());
  return r;
}

mpz_class pow_ui(unsigned long b, const mpz_class& e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e.get_ui());
  return r;
}

}  // namespace

LogReal LogReal::log(unsigned long p, unsigned long b) {
  if (b == 0) throw Error(Errc::InvalidInput, "log of zero");
  LogReal r(p, 0);
  // peel exact powers of p into the rational part
  while (b % p == 0) {
    b /= p;
    r.rat_ += 1;
  }
  if (b > 1) r.logs_.push_back({mpq_class(1), b});
  return r;
}

void LogReal::normalize() {
  std::map<unsigned long, mpq_class> m;
  for (auto& [c, b] : logs_) m[b] += c;
  logs_.clear();
  for (auto& [b, c] : m)
    if (sgn(c) != 0) logs_.push_back({c, b});
}

LogReal LogReal::operator+(const LogReal& o) const {
  LogReal r = *this;
  if (r.p_ == 0) r.p_ = o.p_;
  r.rat_ += o.rat_;
  r.logs_.insert(r.logs_.end(), o.logs_.begin(), o.logs_.end());
  r.normalize();
  return r;
}

LogReal LogReal::operator-(const LogReal& o) const {
  return *this + o * mpq_class(-1);
}

LogReal LogReal::operator*(const mpq_class& k) const {
  LogReal r = *this;
  r.rat_ *= k;
  for (auto& t : r.logs_) t.first *= k;
  r.normalize();
  return r;
}

LogReal LogReal::operator+(const mpq_class& k) const {
  LogReal r = *this;
  r.rat_ += k;
  return r;
}

bool LogReal::is_rational() const {
  return logs_.empty();
}

int LogReal::sign() const {
  if (logs_.empty()) return sgn(rat_);
  mpz_class d = rat_.get_den();
  for (const auto& t : logs_) d = lcm_den(t.first, d);
  // compare p^R * prod b^C against 1 with integer exponents
  mpz_class num = 1, den = 1;
  const mpq_class R = rat_ * d;
  const mpz_class Ri = R.get_num();
  if (sgn(Ri) > 0) num *= pow_ui(p_, Ri);
  if (sgn(Ri) < 0) den *= pow_ui(p_, -Ri);
  for (const auto& [c, b] : logs_) {
    const mpq_class C = c * d;
    const mpz_class Ci = C.get_num();
    if (sgn(Ci) > 0) num *= pow_ui(b, Ci);
    if (sgn(Ci) < 0) den *= pow_ui(b, -Ci);
  }
  return cmp(num, den) > 0 ? 1 : (cmp(num, den) < 0 ? -1 : 0);
}

double LogReal::approx() const {
  double v = rat_.get_d();
  for (const auto& [c, b] : logs_) v += c.get_d() * std::log(double(b)) / std::log(double(p_));
  return v;
}

mpz_class LogReal::floor() const {
  if (logs_.empty()) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), rat_.get_num_mpz_t(), rat_.get_den_mpz_t());
    return r;
  }
  mpz_class k(std::floor(approx()));
  // adjust k until k <= v < k+1
  while ((*this + mpq_class(-k)).sign() < 0) k -= 1;
  while ((*this + mpq_class(-(k + 1))).sign() >= 0) k += 1;
  return k;
}

mpz_class LogReal::ceil() const {
  return -((*this * mpq_class(-1)).floor());
}

std::string LogReal::str() const {
  std::ostringstream os;
  os << rat_.get_str();
  for (const auto& [c, b] : logs_) os << " + " << c.get_str() << "*log_" << p_ << "(" << b << ")";
  return os.str();
}

long ceil_log(unsigned long p, const mpz_class& x) {
  if (sgn(x) <= 0) throw Error(Errc::InvalidInput, "ceil_log of non-positive value");
  long k = 0;
  mpz_class pk = 1;
  while (pk < x) {
    pk *= p;
    ++k;
  }
  return k;
}

long floor_log(unsigned long p, const mpz_class& x) {
  if (sgn(x) <= 0) throw Error(Errc::InvalidInput, "floor_log of non-positive value");
  long k = 0;
  mpz_class pk = p;
  while (pk <= x) {
    pk *= p;
    ++k;
  }
  return k;
}

}  // namespace hzeta
