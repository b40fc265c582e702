#include "hzeta/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <map>


namespace hzeta {

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_residue(const CurveInput& in, const Residue& r, const char* what) {
  if (r.size() > static_cast<size_t>(in.n))
    throw Error(Errc::InvalidInput, std::string(what) + " has more than n digits");
  for (auto d : r)
    if (d >= in.p) throw Error(Errc::InvalidInput, std::string(what) + " digit out of range");
}

ZqElement eval_r(const PadicContext& ctx, const ZqPoly& r, const ZqElement& x) {
  ZqElement v = ctx.zero();
  for (size_t i = r.size(); i-- > 0;) v = ctx.add(ctx.mul(v, x), ctx.reduce(r[i]));
  return v;
}

PointValue solve_at_one(const DiffEqSystem& sys, SolveMode mode, SolveStats* stats, int extra) {
  SolveOptions so;
  so.extra_precision = extra;
  if (mode == SolveMode::Stream) return solve_streaming(sys, sys.ctx.one(), stats, so);
  return evaluate(solve_full(sys, stats, so), sys.ctx.one());
}

}  // namespace

void validate_input(const CurveInput& in) {
  if (in.p == 2) throw Error(Errc::InvalidInput, "p must be odd");
  if (!is_prime(in.p)) throw Error(Errc::InvalidInput, "p must be prime");
  if (in.n < 1) throw Error(Errc::InvalidInput, "n must be positive");
  if (in.modulus) {
    if (in.modulus->size() != static_cast<size_t>(in.n))
      throw Error(Errc::InvalidInput, "modulus must have n low coefficients");
    for (auto d : *in.modulus)
      if (d >= in.p) throw Error(Errc::InvalidInput, "modulus digit out of range");
    if (!fp::is_irreducible(in.p, *in.modulus)) throw Error(Errc::InvalidInput, "modulus is reducible");
  }
  if (in.curve.size() < 3 || in.curve.size() % 2 == 0)
    throw Error(Errc::InvalidInput, "curve needs 2g+1 coefficients with g >= 1");
  for (const auto& c : in.curve) check_residue(in, c, "curve coefficient");
}

PadicContext base_context(const CurveInput& in) {
  validate_input(in);
  if (in.modulus) return PadicContext::make_with_modulus(in.p, *in.modulus, 1);
  return PadicContext::make(in.p, in.n, 1);
}

PreparedSystem prepare_system(const CurveInput& in, const PipelineOptions& opts) {
  const PadicContext base = base_context(in);
  Family fam = build_family(base, in.curve, opts.extra_precision);
  std::vector<long> Q0 = fam.b;
  Q0.push_back(1);
  FiberFrobenius fib = fiber_frobenius_matrix(in.p, Q0, fam.target);
  DiffEqSystem sys = to_diffeq_system(fam, fib.embed(fam.ctx), fib.precision, opts.ell);
  return {std::move(fam), std::move(fib), std::move(sys)};
}

ZetaResult fiber_zeta(const Family& fam, const PadicContext& ctx, const Matrix& K, int precision,
                      const ZqElement& gamma) {
  const ZqElement rg = eval_r(ctx, fam.r, ctx.reduce(gamma));
  if (!ctx.is_unit(rg)) throw Error(Errc::SingularCurve, "fiber is singular");
  const FrobeniusMatrix F = specialize_frobenius(ctx, K, precision, rg, fam.M);
  const FrobeniusMatrix Fq = norm_frobenius(F, fam.n);
  return assemble_zeta(charpoly_lift(Fq, ctx.q(), fam.g), fam.p, fam.n);
}

ZetaResult compute_zeta(const CurveInput& in, const PipelineOptions& opts, PipelineReport* report) {
  const auto t0 = std::chrono::steady_clock::now();
  const PreparedSystem ps = prepare_system(in, opts);
  const Family& fam = ps.fam;
  SolveStats stats;
  const PointValue pv = solve_at_one(ps.sys, opts.mode, &stats, opts.extra_precision);
  std::optional<bool> agree;
  if (opts.cross_check) {
    const SolveMode other = opts.mode == SolveMode::Stream ? SolveMode::Full : SolveMode::Stream;
    const PointValue pw = solve_at_one(ps.sys, other, nullptr, opts.extra_precision);
    agree = mat_equal_mod(pv.K, pw.K, in.p, ps.sys.m);
  }
  const FrobeniusMatrix F1 = specialize_frobenius(fam, pv.ctx, pv.K, pv.precision);
  if (auto v = mat_valuation(F1.ctx, F1.F); v && *v < -fam.constants.alpha.ceil().get_si())
    throw Error(Errc::ValuationViolation, "ord F(1) below -alpha");
  const FrobeniusMatrix Fq = norm_frobenius(F1, fam.n);
  ZetaResult z = assemble_zeta(charpoly_lift(Fq, pv.ctx.q(), fam.g), in.p, in.n);
  if (report) {
    report->constants = fam.constants;
    report->rho = fam.rho;
    report->stats = stats;
    report->fiber_precision = ps.fiber.precision;
    report->series_terms = ps.fiber.series_terms;
    report->modes_agree = agree;
    report->F1 = F1;
    report->seconds = since(t0);
  }
  return z;
}

std::vector<Residue> fiber_curve(const Family& fam, const Residue& gamma) {
  Residue gm = gamma;
  gm.resize(fam.n, 0);
  const PadicContext ctx = fam.ctx.with_precision(1);
  const ZqPoly Q = specialize_curve(fam, ctx.lift(gm));
  std::vector<Residue> out;
  for (int i = 0; i <= 2 * fam.g; ++i) {
    Residue r = i < static_cast<int>(Q.size()) ? ctx.residue(ctx.reduce(Q[i])) : Residue(fam.n, 0);
    out.push_back(r);
  }
  return out;
}

std::vector<BatchEntry> compute_batch(const CurveInput& in, const PipelineOptions& opts,
                                      SolveStats* stats) {
  const PreparedSystem ps = prepare_system(in, opts);
  const Family& fam = ps.fam;
  const PadicContext& ctx = fam.ctx;

  std::vector<BatchEntry> out(in.batch.size());
  std::map<Residue, size_t> slot;
  std::vector<Residue> uniq;
  std::vector<ZqElement> points;
  std::vector<long> where(in.batch.size(), -1);
  for (size_t i = 0; i < in.batch.size(); ++i) {
    BatchEntry& e = out[i];
    e.gamma = in.batch[i];
    e.gamma.resize(in.n, 0);
    try {
      check_residue(in, in.batch[i], "fiber parameter");
      e.curve = fiber_curve(fam, e.gamma);
      auto it = slot.find(e.gamma);
      if (it == slot.end()) {
        const ZqElement t = ctx.teichmuller(e.gamma);
        if (!ctx.is_unit(eval_r(ctx, fam.r, t))) {
          e.skipped = true;
          e.message = "r vanishes at this fiber; skipped";
          continue;
        }
        it = slot.emplace(e.gamma, points.size()).first;
        uniq.push_back(e.gamma);
        points.push_back(t);
      }
      where[i] = static_cast<long>(it->second);
    } catch (const Error& err) {
      e.error = err.code();
      e.message = err.what();
    }
  }

  SolveOptions so;
  so.extra_precision = opts.extra_precision;
  const std::vector<PointValue> vals = solve_multipoint(ps.sys, points, stats, so);
  std::vector<std::optional<ZetaResult>> zs(points.size());
  std::vector<std::optional<Error>> errs(points.size());
  for (size_t j = 0; j < points.size(); ++j) {
    try {
      zs[j] = fiber_zeta(fam, vals[j].ctx, vals[j].K, vals[j].precision, vals[j].ctx.reduce(points[j]));
    } catch (const Error& err) {
      errs[j] = err;
    }
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (where[i] < 0) continue;
    const size_t j = static_cast<size_t>(where[i]);
    if (zs[j]) {
      out[i].zeta = zs[j];
    } else {
      out[i].error = errs[j]->code();
      out[i].message = errs[j]->what();
    }
  }
  return out;
}

std::vector<BenchRun> benchmark(const CurveInput& in, double ell_scale, int extra_precision) {
  PipelineOptions po;
  po.extra_precision = extra_precision;
  const PreparedSystem ps = prepare_system(in, po);
  const long ell0 = ps.fam.constants.ell;
  std::vector<long> ells = {ell0};
  const long scaled = std::lround(ell_scale * static_cast<double>(ell0));
  if (scaled != ell0 && scaled > 1) ells.push_back(scaled);

  std::vector<BenchRun> out;
  for (long ell : ells) {
    const DiffEqSystem sys =
        ell == ell0 ? ps.sys : to_diffeq_system(ps.fam, ps.fiber.embed(ps.fam.ctx), ps.fiber.precision, ell);
    BenchRun b;
    b.ell = ell;
    SolveStats ss, sf;
    SolveOptions so;
    so.extra_precision = extra_precision;
    auto t0 = std::chrono::steady_clock::now();
    const PointValue a = solve_streaming(sys, sys.ctx.one(), &ss, so);
    b.stream_seconds = since(t0);
    t0 = std::chrono::steady_clock::now();
    const PointValue f = evaluate(solve_full(sys, &sf, so), sys.ctx.one());
    b.full_seconds = since(t0);
    b.stream_peak = ss.peak_retained;
    b.full_peak = sf.peak_retained;
    b.steps = ss.steps;
    b.zeta = ss.zeta;
    b.working_precision = ss.working_precision;
    b.agree = mat_equal_mod(a.K, f.K, in.p, sys.m);
    out.push_back(b);
  }
  return out;
}

}  // namespace hzeta
