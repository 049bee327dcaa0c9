#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahmass/ah_metric.hpp"
#include "ahmass/harmonics.hpp"
#include "ahmass/mass_pipeline.hpp"

namespace ahmass {

inline constexpr int kConfigSchemaVersion = 1;

/// How a tensor (h or E) is specified: exactly one of a preset name, an
/// explicit table, or a random table.
struct TensorSpec {
  std::string preset;
  CoeffTable terms;
  std::optional<int> random_lmax;
  std::optional<std::uint64_t> random_seed;
  /// Rescale so that the pointwise sup norm equals this value.
  std::optional<double> sup_norm;
  /// Multiplies the tensor after any sup-norm rescaling.
  double scale = 1.0;

  bool empty() const { return preset.empty() && terms.empty() && !random_lmax; }
};

struct RunConfig {
  int version = kConfigSchemaVersion;
  std::string description;
  TensorSpec h;
  EModel e_model = EModel::Zero;
  TensorSpec e;
  int n_theta = 48;
  int n_phi = 96;
  PipelineOptions pipeline;
  std::optional<double> r;
  std::vector<double> r_list;
  /// Seed used for random tables without their own seed and for randomized checks.
  std::uint64_t seed = 1;

  /// Throws ConfigError on any inconsistent or out-of-range setting.
  void validate() const;
};

/// Parses a TOML document. Unknown sections or keys, wrong types and
/// schema-version mismatches throw ConfigError naming the key.
RunConfig parse_config(std::string_view text, std::string_view source = "<string>");
RunConfig load_config(const std::filesystem::path& path);

/// Parses "48x96".
std::pair<int, int> parse_grid_spec(const std::string& s);
/// Parses "0.4,0.3,0.2".
std::vector<double> parse_r_list(const std::string& s);

Sym2Field build_tensor(const GridPtr& grid, const TensorSpec& spec, std::uint64_t default_seed);
AHFamily build_family(const RunConfig& cfg);

/// Resolved configuration as JSON; the key order is fixed.
nlohmann::json to_json(const RunConfig& cfg);
/// FNV-1a 64 of the compact JSON form, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace ahmass
