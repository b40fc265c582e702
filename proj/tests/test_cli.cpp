#include <sstream>

#include "doctest.h"
#include "hzeta/cli.hpp"

using namespace hzeta;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli zeta output and mode agreement") {
  const std::string file = R"({"p": 7, "n": 1, "curve": [1, 2, 0]})";
  const Run a = run({"zeta", "-"}, file);
  const Run b = run({"zeta", "-", "--mode", "full"}, file);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == run({"zeta", "-"}, file).out);
  const auto j = cli::json::parse(a.out);
  CHECK(j["numerator"] == cli::json::parse("[1, -3, 7]"));
  CHECK(j["q"] == 7);
  // keys are emitted sorted
  CHECK(a.out.find("\"checks\"") < a.out.find("\"counts\""));
  CHECK(a.out.find("\"numerator\"") < a.out.find("\"p\""));
}

TEST_CASE("cli verification and stats") {
  const Run r = run({"zeta", "-", "--verify-budget", "3000", "--stats"}, R"({"p": 7, "curve": [1, 2, 0]})");
  REQUIRE(r.code == 0);
  const auto j = cli::json::parse(r.out);
  CHECK(j["verify"]["pass"] == true);
  CHECK(j["verify"]["checked"].size() == 4);
  CHECK(j["stats"]["peak_retained"].get<long>() <= j["stats"]["zeta"].get<long>() + 2);
}

TEST_CASE("cli coefficient encodings") {
  // 22 = 1 + 3 * 7 is the digit list [1, 3]
  const Run a = run({"zeta", "-"}, R"({"p": 7, "n": 2, "curve": [22, [2, 1], 0]})");
  const Run b = run({"zeta", "-"}, R"({"p": 7, "n": 2, "modulus": [3, 6], "curve": [[1, 3], [2, 1], [0, 0]]})");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const auto ja = cli::json::parse(a.out);
  CHECK(ja["q"] == 49);
  CHECK(ja["counts"][0].get<long>() > 0);
  // a different modulus changes which curve the digits denote, not the validity
  CHECK(cli::json::parse(b.out)["checks"]["functional_equation"] == true);
}

TEST_CASE("cli exit codes") {
  CHECK(run({"zeta", "-"}, R"({"p": 2, "curve": [1, 1, 0]})").code == 1);
  CHECK(run({"zeta", "-"}, R"({"p": 7, "curve": [1, 9, 0]})").code == 1);
  CHECK(run({"zeta", "-"}, R"({"p": 7, "curve": [1, 2]})").code == 1);
  CHECK(run({"zeta", "-"}, "not json").code == 1);
  CHECK(run({"zeta", "-", "--mode", "fast"}, "{}").code == 1);
  CHECK(run({"frobnicate"}, "{}").code == 1);
  const Run s = run({"zeta", "-"}, R"({"p": 7, "curve": [0, 0, 0]})");
  CHECK(s.code == 2);
  CHECK(cli::json::parse(s.err)["error"] == "SingularCurve");
  CHECK(run({"zeta", "-"}, R"({"p": 7, "n": 2, "modulus": [0, 0], "curve": [1, 1, 0]})").code == 1);
}

TEST_CASE("cli batch") {
  const std::string file = R"({"p": 5, "curve": [1, 1, 0], "batch": [0, 1, 3, 1]})";
  const Run r = run({"batch", "-"}, file);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto j = cli::json::parse(r.out)["fibers"];
  REQUIRE(j.size() == 4);
  CHECK(j[2]["skipped"] == true);
  CHECK(j[1]["zeta"] == j[3]["zeta"]);
  CHECK(j[1]["zeta"] == cli::json::parse(run({"zeta", "-"}, R"({"p": 5, "curve": [1, 1, 0]})").out));
  CHECK(run({"zeta", "-", "--batch"}, file).out == r.out);
}

TEST_CASE("cli bench") {
  const Run r = run({"bench", "-", "--ell-scale", "2"}, R"({"p": 7, "curve": [1, 2, 0]})");
  REQUIRE(r.code == 0);
  const auto j = cli::json::parse(r.out);
  CHECK(j["stream_peak_invariant"] == true);
  CHECK(j["runs"].size() == 2);
  CHECK(j["runs"][0]["full_peak"] == j["runs"][0]["ell"]);
}
