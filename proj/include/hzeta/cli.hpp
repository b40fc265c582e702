#pragma once

// JSON curve files and the hzeta command line (zeta, batch, bench).

#include <iosfwd>
#include <string>
#include <vector>

#include "hzeta/pipeline.hpp"
#include "json.hpp"

namespace hzeta::cli {

using nlohmann::json;

/// Coefficients are digit lists (power basis, low degree first) or
/// non-negative integers read in base p, low digit first.
CurveInput curve_from_json(const json& j);
json curve_to_json(const CurveInput& in);

/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
json integer_to_json(const mpz_class& v);
json zeta_to_json(const ZetaResult& z);
json residue_to_json(const Residue& r);

/// Oracle comparison for every k with q^k <= budget.
json verify_counts(const CurveInput& in, const ZetaResult& z, std::uint64_t budget, bool* pass);

/// argv without the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hzeta::cli
