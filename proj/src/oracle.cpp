#include "hzeta/oracle.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

#include "hzeta/error.hpp"

namespace hzeta::oracle {

SmallField::SmallField(unsigned long p, int k) : p_(p), k_(k) {
  if (k < 1) throw Error(Errc::InvalidInput, "field degree must be >= 1");
  long double q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  if (q > 4294967295.0L) throw Error(Errc::BudgetExceeded, "field too large for enumeration");
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
  f_ = fp::canonical_modulus(p, k);
}

SmallField::Elt SmallField::from_index(std::uint64_t i) const {
  Elt a(k_);
  for (int j = 0; j < k_; ++j) {
    a[j] = static_cast<unsigned>(i % p_);
    i /= p_;
  }
  return a;
}

std::uint64_t SmallField::index(const Elt& a) const {
  std::uint64_t r = 0;
  for (int j = k_ - 1; j >= 0; --j) r = r * p_ + a[j];
  return r;
}

SmallField::Elt SmallField::one() const {
  Elt a(k_, 0);
  a[0] = 1;
  return a;
}

bool SmallField::is_zero(const Elt& a) const {
  for (unsigned x : a)
    if (x) return false;
  return true;
}

SmallField::Elt SmallField::add(const Elt& a, const Elt& b) const {
  Elt r(k_);
  for (int j = 0; j < k_; ++j) r[j] = static_cast<unsigned>((a[j] + b[j]) % p_);
  return r;
}

SmallField::Elt SmallField::sub(const Elt& a, const Elt& b) const {
  Elt r(k_);
  for (int j = 0; j < k_; ++j) r[j] = static_cast<unsigned>((a[j] + p_ - b[j]) % p_);
  return r;
}

void SmallField::mul_into(const unsigned* a, const unsigned* b, unsigned* out) const {
  std::uint64_t t[64] = {0};
  for (int i = 0; i < k_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < k_; ++j) t[i + j] += std::uint64_t(a[i]) * b[j];
  }
  for (int i = 0; i < 2 * k_ - 1; ++i) t[i] %= p_;
  for (int i = 2 * k_ - 2; i >= k_; --i) {
    const std::uint64_t c = t[i] % p_;
    if (!c) continue;
    for (int j = 0; j < k_; ++j) t[i - k_ + j] = (t[i - k_ + j] + c * (p_ - f_[j])) % p_;
  }
  for (int j = 0; j < k_; ++j) out[j] = static_cast<unsigned>(t[j] % p_);
}

SmallField::Elt SmallField::mul(const Elt& a, const Elt& b) const {
  Elt r(k_);
  mul_into(a.data(), b.data(), r.data());
  return r;
}

SmallField::Elt SmallField::pow(Elt a, mpz_class e) const {
  Elt r = one();
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

SmallField::Elt SmallField::inv(const Elt& a) const {
  if (is_zero(a)) throw Error(Errc::NonUnit, "inverse of zero");
  return pow(a, mpz_class(static_cast<unsigned long>(q_)) - 2);
}

std::uint64_t default_budget() {
  if (const char* s = std::getenv("HZETA_ENUM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return std::uint64_t(1) << 24;
}

namespace {

constexpr std::uint32_t kZero = 0xffffffffu;

// Discrete log tables for a generator: log[index], antilog[exponent].
struct LogTables {
  SmallField field;
  std::vector<std::uint32_t> log, antilog;

  explicit LogTables(const SmallField& f) : field(f) {
    const std::uint64_t q = f.size();
    std::vector<std::uint64_t> primes;
    std::uint64_t m = q - 1;
    for (std::uint64_t r = 2; r * r <= m; ++r)
      if (m % r == 0) {
        primes.push_back(r);
        while (m % r == 0) m /= r;
      }
    if (m > 1) primes.push_back(m);
    SmallField::Elt g;
    for (std::uint64_t i = 1; i < q; ++i) {
      g = f.from_index(i);
      bool ok = true;
      for (auto r : primes)
        if (f.pow(g, mpz_class(static_cast<unsigned long>((q - 1) / r))) == f.one()) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    log.assign(q, kZero);
    antilog.assign(q - 1, 0);
    SmallField::Elt cur = f.one(), next(f.degree());
    for (std::uint64_t e = 0; e + 1 < q; ++e) {
      const std::uint64_t idx = f.index(cur);
      antilog[e] = static_cast<std::uint32_t>(idx);
      log[idx] = static_cast<std::uint32_t>(e);
      f.mul_into(cur.data(), g.data(), next.data());
      std::swap(cur, next);
    }
  }

  // index of 1 + element
  std::uint64_t inc(std::uint64_t idx) const {
    const unsigned long p = field.p();
    return (idx % p == p - 1) ? idx - (p - 1) : idx + 1;
  }
};

std::shared_ptr<const LogTables> tables_for(unsigned long p, int k) {
  static std::mutex mu;
  static std::map<std::pair<unsigned long, int>, std::shared_ptr<const LogTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::uint64_t total = 0;
  for (auto& [kk, v] : cache) total += v->field.size();
  if (total > (std::uint64_t(1) << 25)) cache.clear();
  auto t = std::make_shared<const LogTables>(SmallField(p, k));
  cache[key] = t;
  return t;
}

// Root of the degree-n modulus phi inside F.
SmallField::Elt embed_generator(const SmallField& F, const std::vector<unsigned long>& phi) {
  const int n = static_cast<int>(phi.size());
  auto eval_phi = [&](const SmallField::Elt& z) {
    SmallField::Elt acc = F.one();
    for (int i = n - 1; i >= 0; --i) {
      acc = F.mul(acc, z);
      SmallField::Elt c = F.zero();
      c[0] = static_cast<unsigned>(phi[i] % F.p());
      acc = F.add(acc, c);
    }
    return acc;
  };
  if (F.degree() % n != 0) throw Error(Errc::InvalidInput, "subfield degree does not divide");
  if (F.is_zero(eval_phi(F.zero()))) return F.zero();
  mpz_class qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), F.p(), n);
  const mpz_class e = (mpz_class(static_cast<unsigned long>(F.size())) - 1) / (qn - 1);
  // norms land in the subfield F_{p^n}; walk their powers
  for (std::uint64_t i = 1; i < F.size(); ++i) {
    const SmallField::Elt h = F.pow(F.from_index(i), e);
    SmallField::Elt z = h;
    for (mpz_class j = 1; j < qn; ++j) {
      if (F.is_zero(eval_phi(z))) return z;
      z = F.mul(z, h);
      if (z == h) break;
    }
  }
  throw Error(Errc::InvalidInput, "modulus has no root in the extension");
}

std::vector<std::uint32_t> curve_logs(const LogTables& T, const std::vector<unsigned long>& phi_low,
                                      const std::vector<Residue>& curve) {
  const SmallField& F = T.field;
  const SmallField::Elt theta = embed_generator(F, phi_low);
  std::vector<std::uint32_t> out;
  for (const auto& r : curve) {
    if (r.size() > phi_low.size()) throw Error(Errc::InvalidInput, "coefficient has too many digits");
    SmallField::Elt acc = F.zero(), pw = F.one();
    for (size_t i = 0; i < r.size(); ++i) {
      SmallField::Elt c = F.zero();
      c[0] = static_cast<unsigned>(r[i] % F.p());
      acc = F.add(acc, F.mul(c, pw));
      pw = F.mul(pw, theta);
    }
    out.push_back(T.log[F.index(acc)]);
  }
  return out;
}

}  // namespace

CharacterCensus character_census(unsigned long p, const std::vector<unsigned long>& phi_low,
                                 const std::vector<Residue>& curve, int k, std::uint64_t budget) {
  if (budget == 0) budget = default_budget();
  const int n = static_cast<int>(phi_low.size());
  if (n < 1 || k < 1) throw Error(Errc::InvalidInput, "bad field degrees");
  long double q = 1;
  for (int i = 0; i < n * k; ++i) q *= p;
  if (q > static_cast<long double>(budget))
    throw Error(Errc::BudgetExceeded, "field exceeds the enumeration budget");
  const auto T = tables_for(p, n * k);
  const std::uint64_t Q = T->field.size();
  const std::uint32_t ord = static_cast<std::uint32_t>(Q - 1);
  const std::vector<std::uint32_t> a = curve_logs(*T, phi_low, curve);

  // Horner in log form; addition through 1 + g^t.
  auto add_logs = [&](std::uint32_t la, std::uint32_t lb) -> std::uint32_t {
    if (la == kZero) return lb;
    if (lb == kZero) return la;
    const std::uint32_t t = lb >= la ? lb - la : lb + ord - la;
    const std::uint32_t z = T->log[T->inc(T->antilog[t])];
    if (z == kZero) return kZero;
    const std::uint64_t s = std::uint64_t(la) + z;
    return static_cast<std::uint32_t>(s >= ord ? s - ord : s);
  };

  CharacterCensus c;
  for (std::uint64_t x = 0; x < Q; ++x) {
    const std::uint32_t lx = T->log[x];
    std::uint32_t acc = 0;  // leading coefficient 1
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
      if (acc != kZero) {
        if (lx == kZero) {
          acc = kZero;
        } else {
          const std::uint64_t s = std::uint64_t(acc) + lx;
          acc = static_cast<std::uint32_t>(s >= ord ? s - ord : s);
        }
      }
      acc = add_logs(acc, a[i]);
    }
    if (acc == kZero)
      ++c.zero;
    else if (acc % 2 == 0)
      ++c.residue;
    else
      ++c.nonresidue;
  }
  return c;
}

mpz_class count_points(unsigned long p, const std::vector<unsigned long>& phi_low,
                       const std::vector<Residue>& curve, int k, std::uint64_t budget) {
  const CharacterCensus c = character_census(p, phi_low, curve, k, budget);
  mpz_class r = 1;
  r += static_cast<unsigned long>(c.zero);
  r += 2 * mpz_class(static_cast<unsigned long>(c.residue));
  return r;
}

namespace {

QMatrix qmul(const QMatrix& a, const QMatrix& b, int d) {
  QMatrix r(static_cast<size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l) {
      if (sgn(a[i * d + l]) == 0) continue;
      for (int j = 0; j < d; ++j) r[i * d + j] += a[i * d + l] * b[l * d + j];
    }
  return r;
}

QMatrix qinv(QMatrix a, int d) {
  QMatrix r(static_cast<size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) r[i * d + i] = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int i = c; i < d; ++i)
      if (sgn(a[i * d + c]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw Error(Errc::SingularLeadingCoefficient, "singular rational matrix");
    for (int j = 0; j < d; ++j) {
      std::swap(a[c * d + j], a[piv * d + j]);
      std::swap(r[c * d + j], r[piv * d + j]);
    }
    const mpq_class iv = 1 / a[c * d + c];
    for (int j = 0; j < d; ++j) {
      a[c * d + j] *= iv;
      r[c * d + j] *= iv;
    }
    for (int i = 0; i < d; ++i) {
      if (i == c || sgn(a[i * d + c]) == 0) continue;
      const mpq_class f = a[i * d + c];
      for (int j = 0; j < d; ++j) {
        a[i * d + j] -= f * a[c * d + j];
        r[i * d + j] -= f * r[c * d + j];
      }
    }
  }
  return r;
}

void qaddto(QMatrix& acc, const QMatrix& x, const mpq_class& w) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += w * x[i];
}

}  // namespace

std::vector<QMatrix> rational_recursion_replay(const RationalSystem& sys, long ell) {
  const int d = sys.d;
  const size_t dd = static_cast<size_t>(d) * d;
  if (sys.A.empty() || sys.B.empty()) throw Error(Errc::SingularLeadingCoefficient, "A or B is zero");
  const QMatrix A0inv = qinv(sys.A[0], d), B0inv = qinv(sys.B[0], d);
  std::vector<QMatrix> K;
  K.push_back(sys.K0);
  const long nA = static_cast<long>(sys.A.size()), nB = static_cast<long>(sys.B.size());
  const long nX = static_cast<long>(sys.X.size()), nY = static_cast<long>(sys.Y.size());
  for (long k = 0; k + 1 < ell; ++k) {
    QMatrix rest(dd, 0);
    for (long a = 0; a < nA; ++a)
      for (long c = 0; c < nB; ++c) {
        if (a == 0 && c == 0) continue;
        const long i = k + 1 - a - c;
        if (i <= 0) continue;
        qaddto(rest, qmul(qmul(sys.A[a], K[i], d), sys.B[c], d), mpq_class(i));
      }
    for (long a = 0; a < nA; ++a)
      for (long c = 0; c < nX; ++c) {
        const long i = k - a - c;
        if (i < 0) continue;
        qaddto(rest, qmul(qmul(sys.A[a], K[i], d), sys.X[c], d), 1);
      }
    for (long a = 0; a < nY; ++a)
      for (long c = 0; c < nB; ++c) {
        const long i = k - a - c;
        if (i < 0) continue;
        qaddto(rest, qmul(qmul(sys.Y[a], K[i], d), sys.B[c], d), 1);
      }
    QMatrix next = qmul(qmul(A0inv, rest, d), B0inv, d);
    mpq_class w(mpz_class(-1), mpz_class(k + 1));
    w.canonicalize();
    for (auto& x : next) {
      x *= w;
      x.canonicalize();
    }
    K.push_back(std::move(next));
  }
  return K;
}

}  // namespace hzeta::oracle
