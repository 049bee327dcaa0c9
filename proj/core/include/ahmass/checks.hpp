#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahmass/mass_pipeline.hpp"

namespace ahmass {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;  ///< pass when value <= limit
  bool passed = false;
  std::string note;
};

struct CheckRun {
  double r = 0.0;
  std::vector<CheckResult> checks;
  std::string error;  ///< set when the pipeline itself failed at this radius
};

struct CheckSuite {
  std::string family;
  std::uint64_t seed = 0;
  std::vector<CheckRun> runs;
  bool passed() const;
};

/// Gauss-Bonnet, Gauss equation, Li-Weinstein bound, ball sandwich, gauge
/// invariants, the applied isometry, normalization idempotence and the
/// distortion of seeded random node pairs, on each radius.
CheckSuite run_invariant_suite(const AHFamily& family, const std::vector<double>& radii,
                               const PipelineOptions& opts, std::uint64_t seed,
                               std::size_t n_pairs = 200);

nlohmann::json to_json(const CheckSuite& suite);

}  // namespace ahmass
