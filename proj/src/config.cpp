#include "univrank/config.hpp"

#include <cstdlib>
#include <fstream>

#include "univrank/enumerate.hpp"
#include "univrank/errors.hpp"

namespace univrank {

void RunConfig::validate() const {
  if (precision <= 0) throw UsageError("precision must be positive");
  if (prime_budget < 2) throw UsageError("prime_budget must be at least 2");
  if (enumeration_budget == 0) throw UsageError("enumeration_budget must be positive");
  if (thread_count == 0) throw UsageError("thread_count must be positive");
}

void RunConfig::apply() const {
  EnumerationLimits limits;
  limits.max_points = enumeration_budget;
  limits.threads = thread_count;
  set_enumeration_limits(limits);
}

nlohmann::json RunConfig::to_json() const {
  return {{"precision", to_string(precision)},
          {"prime_budget", prime_budget},
          {"enumeration_budget", enumeration_budget},
          {"thread_count", thread_count},
          {"output_path", output_path}};
}

void RunConfig::merge_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    if (j.contains("precision")) {
      const auto& p = j.at("precision");
      precision = p.is_string() ? parse_rational(p.get<std::string>()) : parse_rational(p.dump());
    }
    if (j.contains("prime_budget")) prime_budget = j.at("prime_budget").get<std::int64_t>();
    if (j.contains("enumeration_budget")) enumeration_budget = j.at("enumeration_budget").get<std::uint64_t>();
    if (j.contains("thread_count")) thread_count = j.at("thread_count").get<unsigned>();
    if (j.contains("output_path")) output_path = j.at("output_path").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

namespace {

void merge_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + " is not valid JSON");
  }
  cfg.merge_json(j);
}

}  // namespace

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (const char* env = std::getenv(kConfigEnv); env && *env) merge_file(cfg, env);
  if (!path.empty()) merge_file(cfg, path);
  cfg.validate();
  return cfg;
}

}  // namespace univrank
