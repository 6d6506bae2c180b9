#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "univrank/number_field.hpp"
#include "univrank/poly.hpp"

namespace univrank {

struct PipelineOptions {
  unsigned long d = 0;
  unsigned long m = 0;
  /// "quadratic:D", "cubic:a" or empty for a scan.
  std::string L_choice;
  std::optional<ZPoly> K_poly;
  Rational precision = Rational(1, 1000000);
  std::int64_t prime_budget = 1000;
  std::int64_t squarefree_limit = 100000;
  Integer search_trace_bound = 200;
  Integer D_max = 200;
  Integer cubic_a_max = 60;
  Integer delta_bound = 10;
  unsigned K_scan_tries = 60;
};

enum class Branch { quadratic, cubic };

/// Picks (branch, k, l) for d, or throws HypothesisError: d in {2,3,4,8} is
/// covered by prior work, d divisible by neither 2 nor 3 is unsupported, and
/// k = 4 is excluded.
struct BranchChoice {
  Branch branch;
  unsigned long k;
  unsigned long l;
};
BranchChoice choose_branch(unsigned long d, const std::string& L_choice = "");

/// Polynomials scanned for K when none is supplied: x^3 - t x - 1 for k = 3,
/// prod_{i=1}^{k} (x - t i) - 1 otherwise.
ZPoly K_family(unsigned long k, const Integer& t);

/// The certificate is a JSON object with sorted keys; "valid" is true only
/// when every hypothesis was met.
nlohmann::json run_pipeline(const PipelineOptions& options);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> problems;
  std::vector<std::string> checked;
  nlohmann::json to_json() const;
};

/// Re-derives every numeric claim of a certificate from scratch.
VerifyReport verify_certificate(const nlohmann::json& cert);

}  // namespace univrank
