#include "ahmass/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ahmass/error.hpp"

namespace ahmass {

std::string library_version() { return AHMASS_VERSION_STRING; }

nlohmann::json report_header(std::string_view command, const nlohmann::json& config,
                             std::string_view config_hash) {
  return {{"schema_version", kReportSchemaVersion},
          {"tool", "ahmass"},
          {"tool_version", library_version()},
          {"command", command},
          {"config_hash", config_hash},
          {"config", config}};
}

nlohmann::json to_json(const Vec4& v) { return {v.t, v.x[0], v.x[1], v.x[2]}; }

nlohmann::json to_json(const LorentzMap& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    rows.push_back({m.matrix()(i, 0), m.matrix()(i, 1), m.matrix()(i, 2), m.matrix()(i, 3)});
  }
  return rows;
}

nlohmann::json to_json(const EmbeddingH3& emb) {
  const SphereGrid& grid = *emb.grid();
  nlohmann::json nodes = nlohmann::json::array(), points = nlohmann::json::array();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& x = grid.node(k);
    nodes.push_back({x[0], x[1], x[2]});
    points.push_back(to_json(emb.point(k)));
  }
  return {{"grid", {{"n_theta", grid.n_theta()}, {"n_phi", grid.n_phi()}}},
          {"method", emb.info().method},
          {"iterations", emb.info().iterations},
          {"krylov_iterations", emb.info().krylov_iterations},
          {"residual", emb.residual()},
          {"nodes", std::move(nodes)},
          {"points", std::move(points)}};
}

nlohmann::json to_json(const NormalizedEmbedding& norm) {
  nlohmann::json j = to_json(norm.emb);
  j["applied"] = to_json(norm.applied);
  j["sandwich"] = {{"rho_in", norm.sandwich.rho_in},
                   {"rho_out", norm.sandwich.rho_out},
                   {"min_distance", norm.sandwich.min_distance},
                   {"max_distance", norm.sandwich.max_distance}};
  return j;
}

nlohmann::json to_json(const MassSample& s, bool with_field) {
  nlohmann::json j{{"r", s.r},
                   {"ql_mass", to_json(s.ql_mass)},
                   {"verdict", to_string(s.verdict)},
                   {"embedding_residual", s.embedding_residual},
                   {"embed_method", s.embed_method},
                   {"solver_iterations", s.solver_iterations},
                   {"rho_in", s.rho_in},
                   {"rho_out", s.rho_out}};
  if (s.verification_displacement) j["verification_displacement"] = *s.verification_displacement;
  if (s.centering_delta) j["centering_delta"] = to_json(*s.centering_delta);
  if (with_field) j["h0_minus_h"] = s.h0_minus_h.values();
  return j;
}

nlohmann::json to_json(const MassReport& r, bool with_fields) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples) samples.push_back(to_json(s, with_fields));
  nlohmann::json fit{{"status", to_string(r.fit.status)},
                     {"limit", r.fit.limit ? to_json(*r.fit.limit) : nlohmann::json()},
                     {"exponent", r.fit.exponent ? nlohmann::json(*r.fit.exponent) : nlohmann::json()},
                     {"component", r.fit.component}};
  return {{"family", r.family},
          {"samples", std::move(samples)},
          {"fit", std::move(fit)},
          {"wang_half", to_json(r.wang_half)},
          {"limit_verdict", r.limit_verdict ? nlohmann::json(to_string(*r.limit_verdict))
                                            : nlohmann::json()}};
}

namespace {

const char* kCsvHeader = "r,t,x1,x2,x3,verdict,embedding_residual,rho_in,rho_out\n";

void csv_row(std::ostream& os, const MassSample& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s,%.6g,%.17g,%.17g\n", s.r,
                s.ql_mass.t, s.ql_mass.x[0], s.ql_mass.x[1], s.ql_mass.x[2],
                to_string(s.verdict).c_str(), s.embedding_residual, s.rho_in, s.rho_out);
  os << buf;
}

}  // namespace

std::string to_csv(const MassReport& r) {
  std::ostringstream os;
  os << kCsvHeader;
  for (const auto& s : r.samples) csv_row(os, s);
  return os.str();
}

std::string to_csv(const MassSample& s) {
  std::ostringstream os;
  os << kCsvHeader;
  csv_row(os, s);
  return os.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace ahmass
