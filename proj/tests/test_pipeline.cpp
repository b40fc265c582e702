#include <random>

#include "doctest.h"
#include "hzeta/error.hpp"
#include "hzeta/oracle.hpp"
#include "hzeta/pipeline.hpp"

using namespace hzeta;

namespace {

CurveInput prime_input(unsigned long p, std::initializer_list<unsigned long> cs) {
  CurveInput in;
  in.p = p;
  in.n = 1;
  for (auto c : cs) in.curve.push_back({c});
  return in;
}

mpz_class oracle_count(const CurveInput& in, int k) {
  const auto phi = in.modulus ? *in.modulus : fp::canonical_modulus(in.p, in.n);
  return oracle::count_points(in.p, phi, in.curve, k);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::InvalidInput;
}

}  // namespace

TEST_CASE("y^2 = x^3 + 2x + 1 over F_7") {
  const CurveInput in = prime_input(7, {1, 2, 0});
  PipelineReport rep;
  PipelineOptions opts;
  opts.cross_check = true;
  const auto z = compute_zeta(in, opts, &rep);
  const mpz_class a7 = 8 - oracle_count(in, 1);
  CHECK(z.P == std::vector<mpz_class>{1, -a7, 7});
  CHECK(z.counts[1] == oracle_count(in, 2));
  CHECK(z.checks.all());
  REQUIRE(rep.modes_agree);
  CHECK(*rep.modes_agree);
  CHECK(rep.stats.peak_retained <= rep.constants.zeta + 2);
  const auto v = mat_valuation(rep.F1.ctx, rep.F1.F);
  REQUIRE(v);
  CHECK(*v >= -rep.constants.alpha.ceil().get_si());
}

TEST_CASE("input guards") {
  CHECK(code_of([] { compute_zeta(prime_input(2, {1, 1, 0})); }) == Errc::InvalidInput);
  CHECK(code_of([] { compute_zeta(prime_input(9, {1, 1, 0})); }) == Errc::InvalidInput);
  CHECK(code_of([] { compute_zeta(prime_input(7, {1, 1})); }) == Errc::InvalidInput);
  CHECK(code_of([] { compute_zeta(prime_input(7, {0, 0, 0})); }) == Errc::SingularCurve);
  CurveInput bad = prime_input(7, {1, 1, 0});
  bad.n = 2;
  bad.modulus = std::vector<unsigned long>{0, 0};
  CHECK(code_of([&] { compute_zeta(bad); }) == Errc::InvalidInput);
}

TEST_CASE("constant family keeps the fiber Frobenius") {
  const CurveInput in = prime_input(7, {1, 0, 0});
  PipelineReport rep;
  const auto z = compute_zeta(in, {}, &rep);
  const PreparedSystem ps = prepare_system(in, {});
  CHECK(mat_equal_mod(rep.F1.F, ps.fiber.F0, 7, static_cast<int>(rep.constants.m)));
  CHECK(z.counts[0] == oracle_count(in, 1));
}

TEST_CASE("extra precision and a longer truncation change nothing") {
  const CurveInput in = prime_input(5, {1, 1, 0});
  const auto base = compute_zeta(in);
  PipelineOptions more;
  more.extra_precision = 10;
  CHECK(compute_zeta(in, more).P == base.P);
  PipelineOptions longer;
  longer.ell = 2 * deformation_constants(5, 1, 1, 3).ell;
  longer.mode = SolveMode::Full;
  CHECK(compute_zeta(in, longer).P == base.P);
}

TEST_CASE("rotated norm has the same characteristic polynomial") {
  CurveInput in;
  in.p = 5;
  in.n = 2;
  in.curve = {{2, 1}, {0, 3}, {0}};
  PipelineReport rep;
  const auto z = compute_zeta(in, {}, &rep);
  const auto a = charpoly_lift(norm_frobenius(rep.F1, 2, 0), 25, 1);
  const auto b = charpoly_lift(norm_frobenius(rep.F1, 2, 1), 25, 1);
  CHECK(a == b);
  CHECK(a == z.P);
  CHECK(z.counts[0] == oracle_count(in, 1));
  CHECK(z.counts[1] == oracle_count(in, 2));
}

TEST_CASE("batch endpoints, duplicates and singular fibers") {
  // Q = x^3 + gamma x + 1 over F_5 is singular at gamma = 3
  CurveInput in = prime_input(5, {1, 1, 0});
  in.batch = {{0}, {1}, {3}, {2}, {1}};
  const auto out = compute_batch(in);
  REQUIRE(out.size() == 5);
  CHECK(out[2].skipped);
  CHECK_FALSE(out[2].zeta);
  for (int i : {0, 1, 3, 4}) REQUIRE(out[i].zeta);
  CHECK(out[0].zeta->P == compute_zeta(prime_input(5, {1, 0, 0})).P);
  CHECK(out[1].zeta->P == compute_zeta(in).P);
  CHECK(out[4].zeta->P == out[1].zeta->P);
  CHECK(out[3].curve == std::vector<Residue>{{1}, {2}, {0}});
  CHECK(out[3].zeta->P == compute_zeta(prime_input(5, {1, 2, 0})).P);
}

TEST_CASE("batch over F_49 matches per-curve runs") {
  CurveInput in;
  in.p = 7;
  in.n = 2;
  in.curve = {{3, 1}, {5, 2}, {0, 0}};
  std::mt19937 rng(49);
  std::uniform_int_distribution<unsigned long> dig(0, 6);
  for (int i = 0; i < 8; ++i) in.batch.push_back({dig(rng), dig(rng)});
  const auto out = compute_batch(in);
  REQUIRE(out.size() == 8);
  for (const auto& e : out) {
    if (e.skipped) continue;
    REQUIRE(e.zeta);
    CurveInput one = in;
    one.batch.clear();
    one.curve = e.curve;
    CHECK(e.zeta->P == compute_zeta(one).P);
    CHECK(e.zeta->counts[0] == oracle_count(one, 1));
  }
}

TEST_CASE("benchmark windows") {
  const auto runs = benchmark(prime_input(7, {1, 2, 0}), 2.0);
  REQUIRE(runs.size() == 2);
  CHECK(runs[1].ell == 2 * runs[0].ell);
  CHECK(runs[0].stream_peak == runs[1].stream_peak);
  CHECK(runs[0].full_peak == runs[0].ell);
  CHECK(runs[0].agree);
  CHECK(runs[1].agree);
}
