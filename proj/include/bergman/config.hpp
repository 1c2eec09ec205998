#pragma once

// Run configuration for the command line driver. JSON, schema
// "bergman-toeplitz/1"; unknown keys are rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/quad.hpp"
#include "bergman/symbol.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

inline constexpr const char* kSchema = "bergman-toeplitz/1";

struct SymbolSpec {
  std::string name;
  std::string family;
  /// Build path for `build`; empty means automatic dispatch.
  std::optional<Provenance> path;
  nlohmann::json raw;
};

struct CheckSpec {
  std::string type;
  std::string symbol;
  std::string other;  // commutator partner
  int block = 0;      // tensor-constancy
  std::vector<KappaIndex> kappas;
  int unitaries = 1;  // equivariance
  bool expect_fail = false;
  nlohmann::json raw;
};

struct RunConfig {
  Partition partition{1};
  std::vector<double> lambdas{0.0};
  int degree = 0;
  std::vector<SymbolSpec> symbols;
  QuadratureSpec quadrature;
  std::vector<CheckSpec> checks;
  /// Pairs searched by `witness`.
  std::vector<std::pair<std::string, std::string>> witness_pairs;
  double witness_threshold = 1e-2;
  std::vector<double> deltas{0.5, 0.25, 0.1};
  std::string output = "out";
  std::uint64_t seed = 0;
  int jobs = 1;

  const SymbolSpec& symbol(const std::string& name) const;
  /// Fully resolved config, parseable again.
  nlohmann::json to_json() const;
};

/// Throws ConfigError with the offending key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Instantiate a symbol spec on the configured partition.
Symbol make_symbol(const SymbolSpec& s, const RunConfig& cfg);

/// The checks run by `verify` when the config lists none.
std::vector<CheckSpec> default_checks(const RunConfig& cfg);

}  // namespace bergman
