#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ahmass/mass_pipeline.hpp"

namespace ahmass {

inline constexpr int kReportSchemaVersion = 1;

/// Library version string, e.g. "0.3.0".
std::string library_version();

/// Common header of every JSON report: schema version, tool version,
/// command name, config hash and the resolved config itself.
nlohmann::json report_header(std::string_view command, const nlohmann::json& config,
                             std::string_view config_hash);

nlohmann::json to_json(const Vec4& v);
nlohmann::json to_json(const LorentzMap& m);
/// Nodes, Minkowski points, sigma and directions.
nlohmann::json to_json(const EmbeddingH3& emb);
nlohmann::json to_json(const NormalizedEmbedding& norm);
/// The nodal H0 - H snapshot is included only when with_field is set.
nlohmann::json to_json(const MassSample& s, bool with_field = false);
nlohmann::json to_json(const MassReport& r, bool with_fields = false);

/// One row per sample; Vec4 values are flattened into t,x1,x2,x3 columns.
std::string to_csv(const MassReport& r);
std::string to_csv(const MassSample& s);

/// Writes to a temporary file next to path, then renames it over path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ahmass
