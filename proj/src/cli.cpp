#include "hzeta/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hzeta/oracle.hpp"

namespace hzeta::cli {

namespace {

Residue residue_from_json(const json& j, unsigned long p, int n, const char* what) {
  Residue r;
  if (j.is_array()) {
    for (const auto& d : j) {
      if (!d.is_number_integer() || d.get<long long>() < 0)
        throw Error(Errc::InvalidInput, std::string(what) + " digits must be non-negative integers");
      r.push_back(d.get<unsigned long>());
    }
  } else if (j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v < 0) throw Error(Errc::InvalidInput, std::string(what) + " must be non-negative");
    while (v > 0) {
      r.push_back(static_cast<unsigned long>(v % static_cast<long long>(p)));
      v /= static_cast<long long>(p);
    }
  } else {
    throw Error(Errc::InvalidInput, std::string(what) + " must be an integer or a digit list");
  }
  if (r.size() > static_cast<size_t>(n)) throw Error(Errc::InvalidInput, std::string(what) + " has more than n digits");
  r.resize(n, 0);
  return r;
}

json read_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return json::parse(in);
    std::ifstream f(path);
    if (!f) throw Error(Errc::InvalidInput, "cannot open " + path);
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

json error_json(const Error& e) {
  return json{{"error", errc_name(e.code())}, {"message", e.what()}};
}

json stats_json(const PipelineReport& r, SolveMode mode) {
  json j;
  j["mode"] = mode == SolveMode::Stream ? "stream" : "full";
  j["peak_retained"] = r.stats.peak_retained;
  j["steps"] = r.stats.steps;
  j["working_precision"] = r.stats.working_precision;
  j["mantissa_width"] = r.stats.mantissa_width;
  j["max_precision_loss"] = r.stats.max_precision_loss;
  j["zeta"] = r.stats.zeta;
  j["ell"] = r.stats.ell;
  j["m"] = r.constants.m;
  j["M"] = r.constants.M;
  j["rho"] = r.rho;
  j["fiber_precision"] = r.fiber_precision;
  j["series_terms"] = r.series_terms;
  j["scalar_path"] = r.stats.scalar_path;
  j["seconds"] = r.seconds;
  return j;
}

struct Flags {
  std::string file = "-";
  std::string mode = "stream";
  std::uint64_t verify_budget = 0;
  bool stats = false;
  bool batch = false;
  double ell_scale = 2.0;
  int extra = 0;
};

PipelineOptions options_of(const Flags& f) {
  PipelineOptions o;
  o.mode = f.mode == "full" ? SolveMode::Full : SolveMode::Stream;
  o.extra_precision = f.extra;
  return o;
}

int cmd_zeta(const Flags& f, const CurveInput& in, std::ostream& out) {
  PipelineReport rep;
  const PipelineOptions o = options_of(f);
  const ZetaResult z = compute_zeta(in, o, &rep);
  json j = zeta_to_json(z);
  bool pass = z.checks.all();
  if (f.verify_budget > 0) {
    bool ok = false;
    j["verify"] = verify_counts(in, z, f.verify_budget, &ok);
    pass = pass && ok;
  }
  if (f.stats) j["stats"] = stats_json(rep, o.mode);
  out << j.dump() << "\n";
  return pass ? 0 : 3;
}

int cmd_batch(const Flags& f, const CurveInput& in, std::ostream& out, std::ostream& err) {
  SolveStats stats;
  const auto entries = compute_batch(in, options_of(f), &stats);
  json list = json::array();
  bool pass = true;
  for (const auto& e : entries) {
    json j;
    j["gamma"] = residue_to_json(e.gamma);
    if (!e.curve.empty()) {
      json c = json::array();
      for (const auto& r : e.curve) c.push_back(residue_to_json(r));
      j["curve"] = c;
    }
    if (e.skipped) {
      j["skipped"] = true;
      j["warning"] = e.message;
      err << "warning: fiber " << residue_to_json(e.gamma).dump() << ": " << e.message << "\n";
    } else if (e.error) {
      j["error"] = errc_name(*e.error);
      j["message"] = e.message;
      pass = false;
    } else {
      json z = zeta_to_json(*e.zeta);
      pass = pass && e.zeta->checks.all();
      if (f.verify_budget > 0) {
        CurveInput one = in;
        one.batch.clear();
        one.curve = e.curve;
        bool ok = false;
        z["verify"] = verify_counts(one, *e.zeta, f.verify_budget, &ok);
        pass = pass && ok;
      }
      j["zeta"] = z;
    }
    list.push_back(j);
  }
  json j;
  j["fibers"] = list;
  if (f.stats) {
    j["stats"] = {{"peak_retained", stats.peak_retained}, {"steps", stats.steps},
                  {"working_precision", stats.working_precision}, {"ell", stats.ell}, {"zeta", stats.zeta}};
  }
  out << j.dump() << "\n";
  return pass ? 0 : 3;
}

int cmd_bench(const Flags& f, const CurveInput& in, std::ostream& out) {
  const auto runs = benchmark(in, f.ell_scale, f.extra);
  json list = json::array();
  bool agree = true, same_peak = true;
  for (const auto& r : runs) {
    list.push_back({{"ell", r.ell},
                    {"stream_peak", r.stream_peak},
                    {"full_peak", r.full_peak},
                    {"stream_seconds", r.stream_seconds},
                    {"full_seconds", r.full_seconds},
                    {"steps", r.steps},
                    {"zeta", r.zeta},
                    {"working_precision", r.working_precision},
                    {"agree", r.agree}});
    agree = agree && r.agree;
    same_peak = same_peak && r.stream_peak == runs.front().stream_peak;
  }
  json j = {{"runs", list}, {"modes_agree", agree}, {"stream_peak_invariant", same_peak}};
  out << j.dump() << "\n";
  return agree && same_peak ? 0 : 3;
}

}  // namespace

CurveInput curve_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "curve file must be a JSON object");
  CurveInput in;
  try {
    if (!j.contains("p") || !j["p"].is_number_integer() || j["p"].get<long long>() < 2)
      throw Error(Errc::InvalidInput, "p must be an integer >= 2");
    in.p = j["p"].get<unsigned long>();
    in.n = j.value("n", 1);
    if (in.n < 1) throw Error(Errc::InvalidInput, "n must be positive");
    if (j.contains("modulus") && !j["modulus"].is_null()) {
      std::vector<unsigned long> m;
      for (const auto& d : j["modulus"]) {
        if (!d.is_number_integer() || d.get<long long>() < 0)
          throw Error(Errc::InvalidInput, "modulus digits must be non-negative integers");
        m.push_back(d.get<unsigned long>());
      }
      in.modulus = m;
    }
    if (!j.contains("curve") || !j["curve"].is_array()) throw Error(Errc::InvalidInput, "curve list missing");
    for (const auto& c : j["curve"]) in.curve.push_back(residue_from_json(c, in.p, in.n, "curve coefficient"));
    if (j.contains("batch")) {
      if (!j["batch"].is_array()) throw Error(Errc::InvalidInput, "batch must be a list");
      for (const auto& c : j["batch"]) in.batch.push_back(residue_from_json(c, in.p, in.n, "fiber parameter"));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("bad curve file: ") + e.what());
  }
  return in;
}

json residue_to_json(const Residue& r) {
  json a = json::array();
  for (auto d : r) a.push_back(d);
  return a;
}

json curve_to_json(const CurveInput& in) {
  json j;
  j["p"] = in.p;
  j["n"] = in.n;
  if (in.modulus) j["modulus"] = *in.modulus;
  json c = json::array();
  for (const auto& r : in.curve) c.push_back(residue_to_json(r));
  j["curve"] = c;
  if (!in.batch.empty()) {
    json b = json::array();
    for (const auto& r : in.batch) b.push_back(residue_to_json(r));
    j["batch"] = b;
  }
  return j;
}

json integer_to_json(const mpz_class& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) < 63) return json(static_cast<long long>(v.get_si()));
  return json(v.get_str());
}

json zeta_to_json(const ZetaResult& z) {
  json j;
  j["p"] = z.p;
  j["n"] = z.n;
  j["g"] = z.g;
  j["q"] = integer_to_json(z.q);
  json P = json::array(), C = json::array();
  for (const auto& c : z.P) P.push_back(integer_to_json(c));
  for (const auto& c : z.counts) C.push_back(integer_to_json(c));
  j["numerator"] = P;
  j["counts"] = C;
  j["checks"] = {{"constant_term", z.checks.constant_term},
                 {"functional_equation", z.checks.functional_equation},
                 {"weil_windows", z.checks.weil_windows},
                 {"hasse", z.checks.hasse},
                 {"counts_positive", z.checks.counts_positive}};
  return j;
}

json verify_counts(const CurveInput& in, const ZetaResult& z, std::uint64_t budget, bool* pass) {
  const auto phi = in.modulus ? *in.modulus : fp::canonical_modulus(in.p, in.n);
  int kmax = 0;
  mpz_class qk = 1;
  while (true) {
    qk *= z.q;
    if (qk > budget) break;
    ++kmax;
  }
  const auto s = inverse_root_power_sums(z.P, kmax);
  json rows = json::array();
  bool ok = true;
  mpz_class qp = 1;
  for (int k = 1; k <= kmax; ++k) {
    qp *= z.q;
    const mpz_class derived = qp + 1 - s[k];
    const mpz_class truth = oracle::count_points(in.p, phi, in.curve, k, budget);
    rows.push_back({{"k", k},
                    {"derived", integer_to_json(derived)},
                    {"oracle", integer_to_json(truth)},
                    {"match", derived == truth}});
    ok = ok && derived == truth;
  }
  if (pass) *pass = ok;
  return json{{"budget", budget}, {"checked", rows}, {"pass", ok}};
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta functions of hyperelliptic curves over finite fields by deformation"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* sub) {
    sub->add_option("file", f.file, "curve file (JSON), - for stdin")->required();
    sub->add_option("--mode", f.mode, "stream or full")->check(CLI::IsMember({"stream", "full"}));
    sub->add_option("--extra-precision", f.extra, "digits added to every working precision")
        ->check(CLI::NonNegativeNumber);
  };
  auto* zeta = app.add_subcommand("zeta", "zeta function of one curve");
  common(zeta);
  zeta->add_option("--verify-budget", f.verify_budget, "cross-check counts with q^k <= budget");
  zeta->add_flag("--stats", f.stats, "attach solver statistics");
  zeta->add_flag("--batch", f.batch, "evaluate the fibers listed in the file");
  auto* batch = app.add_subcommand("batch", "zeta functions of the listed fibers of the family");
  common(batch);
  batch->add_option("--verify-budget", f.verify_budget, "cross-check counts with q^k <= budget");
  batch->add_flag("--stats", f.stats, "attach solver statistics");
  auto* bench = app.add_subcommand("bench", "streaming vs full memory and time");
  common(bench);
  bench->add_option("--ell-scale", f.ell_scale, "second truncation as a multiple of ell")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }

  try {
    const CurveInput input = curve_from_json(read_json(f.file, in));
    if (*bench) return cmd_bench(f, input, out);
    if (*batch || f.batch) return cmd_batch(f, input, out, err);
    return cmd_zeta(f, input, out);
  } catch (const Error& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
}

}  // namespace hzeta::cli
