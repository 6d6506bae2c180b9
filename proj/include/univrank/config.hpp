#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "univrank/arith.hpp"

namespace univrank {

struct RunConfig {
  Rational precision = Rational(1, 1000000);
  std::int64_t prime_budget = 1000;
  std::uint64_t enumeration_budget = 50'000'000;
  unsigned thread_count = 1;
  std::string output_path;

  /// Throws UsageError unless every budget is positive and precision > 0.
  void validate() const;
  /// Applies the enumeration budget and thread count to the kernels.
  void apply() const;
  nlohmann::json to_json() const;
  /// Keys absent from `j` keep their current values.
  void merge_json(const nlohmann::json& j);
};

inline constexpr const char* kConfigEnv = "UNIVRANK_CONFIG";

/// Defaults, then the file named by UNIVRANK_CONFIG (if set), then
/// `path` (if non-empty).
RunConfig load_config(const std::string& path = "");

}  // namespace univrank
