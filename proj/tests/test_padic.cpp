#include <random>

#include "doctest.h"
#include "hzeta/error.hpp"
#include "hzeta/padic.hpp"

using namespace hzeta;

namespace {

ZqElement random_element(const PadicContext& ctx, std::mt19937_64& rng) {
  ZqElement z = ctx.zero();
  gmp_randclass r(gmp_randinit_default);
  r.seed(rng());
  for (auto& c : z.c) c = r.get_z_range(ctx.modulus());
  return z;
}

ZqElement random_unit(const PadicContext& ctx, std::mt19937_64& rng) {
  for (;;) {
    ZqElement z = random_element(ctx, rng);
    if (ctx.is_unit(z)) return z;
  }
}

// exhaustive root search for a monic quadratic mod p
bool has_root(unsigned long p, unsigned long c0, unsigned long c1) {
  for (unsigned long x = 0; x < p; ++x)
    if ((x * x + c1 * x + c0) % p == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("context modulus choice") {
  auto c1 = PadicContext::make(7, 1, 10);
  CHECK(c1.phi() == std::vector<unsigned long>{0});
  CHECK(c1.modulus() == mpz_class(282475249));

  // least irreducible quadratic mod 7 in base-7 scan order
  unsigned long want0 = 0, want1 = 0;
  bool found = false;
  for (unsigned long idx = 0; idx < 49 && !found; ++idx) {
    const unsigned long c0 = idx % 7, c1v = idx / 7;
    if (!has_root(7, c0, c1v)) {
      want0 = c0;
      want1 = c1v;
      found = true;
    }
  }
  auto c2 = PadicContext::make(7, 2, 10);
  CHECK(c2.phi() == std::vector<unsigned long>{want0, want1});
  // 5 is not a cube mod 7, -1 is
  CHECK(fp::is_irreducible(7, {2, 0, 0}));
  CHECK_FALSE(fp::is_irreducible(7, {1, 0, 0}));
  // t^4 + 1 = (t^2 + 3t + 1)(t^2 + 4t + 1) mod 7
  CHECK_FALSE(fp::is_irreducible(7, {1, 0, 0, 0}));
}

TEST_CASE("context guards") {
  CHECK_THROWS_AS(PadicContext::make(2, 3, 5), Error);
  CHECK_THROWS_AS(PadicContext::make(9, 1, 5), Error);
  CHECK_THROWS_AS(PadicContext::make(7, 1, 0), Error);
  CHECK_THROWS_AS(PadicContext::make_with_modulus(7, {0, 0}, 5), Error);
}

TEST_CASE("inversion") {
  auto ctx = PadicContext::make(7, 2, 6);
  CHECK(ctx.invert(ctx.one()) == ctx.one());
  try {
    ctx.invert(ctx.from_int(7));
    FAIL("expected NonUnit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonUnit);
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    ZqElement x = random_unit(ctx, rng);
    CHECK(ctx.mul(x, ctx.invert(x)) == ctx.one());
    CHECK(ctx.invert(ctx.invert(x)) == x);
  }
}

TEST_CASE("frobenius") {
  std::mt19937_64 rng(2);
  auto c1 = PadicContext::make(7, 1, 8);
  ZqElement x = random_element(c1, rng);
  CHECK(c1.frobenius(x, 1) == x);

  for (int n : {2, 3, 4}) {
    auto ctx = PadicContext::make(5, n, 7);
    for (int i = 0; i < 5; ++i) {
      ZqElement a = random_element(ctx, rng), b = random_element(ctx, rng);
      CHECK(ctx.frobenius(ctx.frobenius(a, 1), n - 1) == a);
      CHECK(ctx.frobenius(ctx.mul(a, b), 1) == ctx.mul(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
      CHECK(ctx.frobenius(ctx.add(a, b), 1) == ctx.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
      // sigma(a) = a^p mod p
      CHECK(ctx.residue(ctx.frobenius(a, 1)) == ctx.residue(ctx.pow(a, mpz_class(5))));
    }
  }
}

TEST_CASE("frobenius on teichmuller points") {
  auto ctx = PadicContext::make(7, 2, 9);
  // find a generator of F_49^*
  auto p1 = PadicContext::make(7, 2, 1);
  Residue gen;
  for (unsigned long a = 0; a < 7 && gen.empty(); ++a)
    for (unsigned long b = 1; b < 7 && gen.empty(); ++b) {
      ZqElement z = p1.lift({a, b});
      bool ok = true;
      for (int d : {2, 3, 4, 6, 8, 12, 16, 24})
        if (p1.pow(z, mpz_class(d)) == p1.one()) ok = false;
      if (ok) gen = {a, b};
    }
  REQUIRE(!gen.empty());
  const Residue g7 = p1.residue(p1.pow(p1.lift(gen), mpz_class(7)));
  CHECK(ctx.frobenius(ctx.teichmuller(gen), 1) == ctx.teichmuller(g7));
}

TEST_CASE("teichmuller") {
  auto ctx = PadicContext::make(7, 1, 3);
  CHECK(ctx.teichmuller({1}) == ctx.one());
  CHECK(ctx.teichmuller({6}) == ctx.from_int(-1));
  CHECK(ctx.teichmuller({0}) == ctx.zero());
  ZqElement z = ctx.teichmuller({3});
  CHECK(ctx.pow(z, mpz_class(6)) == ctx.one());
  CHECK(ctx.residue(z) == Residue{3});

  auto c3 = PadicContext::make(3, 3, 12);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    Residue a{rng() % 3, rng() % 3, rng() % 3}, b{rng() % 3, rng() % 3, rng() % 3};
    const Residue ab = c3.residue(c3.mul(c3.lift(a), c3.lift(b)));
    CHECK(c3.mul(c3.teichmuller(a), c3.teichmuller(b)) == c3.teichmuller(ab));
    ZqElement t = c3.teichmuller(a);
    CHECK(c3.pow(t, c3.q()) == t);
  }
}

TEST_CASE("valuation") {
  auto ctx = PadicContext::make(7, 2, 10);
  CHECK(valuation(ctx, {ctx.from_int(49), 0}) == 2);
  CHECK(valuation(ctx, {ctx.one(), 3}) == -3);
  CHECK(!valuation(ctx, {ctx.zero(), 0}).has_value());
  ZqElement x = ctx.zero();
  x.c[1] = 7 * 7 * 7;
  x.c[0] = 7 * 7 * 7 * 7;
  CHECK(ctx.valuation(x) == 3);
}
