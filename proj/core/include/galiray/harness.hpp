#pragma once

// Configuration, the full verification suite and its JSON report.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "galiray/representations.hpp"

namespace galiray {

enum class Sampler { random, identity };

struct SuiteConfig {
  std::uint64_t seed = 20240611;
  double scale = 1.0;
  std::size_t n_triples = 1000;
  std::size_t n_pairs = 500;
  std::size_t n_time_cases = 200;
  std::size_t n_cases = 100;
  std::size_t n_converted = 60;
  std::vector<double> tau_sequence;
  std::map<std::string, double> tolerances;
  std::vector<RepDescriptor> reps;
  std::vector<double> t_samples;
  std::vector<std::string> expected_divergences;
  Sampler sampler = Sampler::random;

  static SuiteConfig defaults();
  static std::vector<std::string> tolerance_names();

  double tolerance(const std::string& name) const;
  /// Throws ConfigError.
  void validate() const;
};

/// Line-oriented `key = value` text, `#` comments, lists as `[a, b, c]`.
/// Text whose first non-blank character is `{` is read as JSON instead.
/// Keys absent from the text keep their defaults.
SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);
SuiteConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SuiteConfig& c);

/// Applies GALIRAY_SEED when set.
void apply_environment(SuiteConfig& c);

enum class CheckStatus { pass, fail, expected_divergence, info };
std::string status_name(CheckStatus s);

struct CheckResult {
  std::string check;
  std::string rep = "-";
  std::uint64_t seed = 0;
  std::size_t n_cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool informational = false;
  CheckStatus status = CheckStatus::fail;
  nlohmann::json details = nlohmann::json::array();
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::string timestamp;
  std::vector<CheckResult> checks;
  bool pass = false;

  const CheckResult* find(const std::string& check) const;
  /// Schema 1 document; the timestamp is omitted when `with_timestamp` is false.
  nlohmann::json to_json(bool with_timestamp = true) const;
};

/// Seed of a named check, derived from the suite seed.
std::uint64_t check_seed(std::uint64_t seed, const std::string& check);

/// Runs every check in order; never throws for check failures, which are
/// recorded in the report.
SuiteReport run_suite(const SuiteConfig& config);

/// Status from pass/informational flags and the expected-divergence list.
void finalize(CheckResult& r, const std::vector<std::string>& expected_divergences);

int exit_status(const SuiteReport& report);

// Individual checks, also used by the CLI.
CheckResult cocycle_check(const std::string& name, int dim, std::size_t n_triples, std::uint64_t seed,
                          double scale, double tolerance, double t = 0.0);
CheckResult infexp_check(const std::string& name, int dim, const std::vector<double>& taus, double tolerance,
                         double gamma = 1.0);
CheckResult multiplier_check(const RepDescriptor& rep, std::size_t n_pairs, std::uint64_t seed, double scale,
                             double spread_tol, double modulus_tol, Sampler sampler = Sampler::random);
CheckResult heisenberg_check(const RepDescriptor& rep, const std::vector<double>& t_samples, std::uint64_t seed,
                             double tolerance);

}  // namespace galiray
