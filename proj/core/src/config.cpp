#include "ahmass/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <toml++/toml.hpp>

#include "ahmass/error.hpp"

namespace ahmass {

namespace {

// Every key read through a Section is recorded; finish() rejects the rest.
class Section {
 public:
  Section(const toml::table& t, std::string path) : table_(t), path_(std::move(path)) {}

  std::string key_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const toml::node* get(std::string_view key) {
    seen_.insert(std::string(key));
    return table_.get(key);
  }

  template <class T>
  std::optional<T> value(std::string_view key) {
    const toml::node* n = get(key);
    if (!n) return std::nullopt;
    if constexpr (std::is_same_v<T, double>) {
      if (auto v = n->value_exact<double>()) return *v;
      if (auto v = n->value_exact<std::int64_t>()) return static_cast<double>(*v);
      throw ConfigError(key_path(key) + ": expected a number");
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
      if (auto v = n->value_exact<std::int64_t>()) return *v;
      throw ConfigError(key_path(key) + ": expected an integer");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (auto v = n->value_exact<bool>()) return *v;
      throw ConfigError(key_path(key) + ": expected true or false");
    } else {
      if (auto v = n->value_exact<std::string>()) return *v;
      throw ConfigError(key_path(key) + ": expected a string");
    }
  }

  std::optional<int> int_value(std::string_view key) {
    const auto v = value<std::int64_t>(key);
    if (!v) return std::nullopt;
    if (*v < -1000000000 || *v > 1000000000) throw ConfigError(key_path(key) + ": out of range");
    return static_cast<int>(*v);
  }

  std::optional<Section> sub(std::string_view key) {
    const toml::node* n = get(key);
    if (!n) return std::nullopt;
    if (!n->is_table()) throw ConfigError(key_path(key) + ": expected a table");
    return Section(*n->as_table(), key_path(key));
  }

  void finish() const {
    for (const auto& [k, v] : table_) {
      if (!seen_.count(std::string(k.str()))) {
        throw ConfigError("unknown config key '" + key_path(k.str()) + "'");
      }
    }
  }

 private:
  const toml::table& table_;
  std::string path_;
  std::set<std::string> seen_;
};

std::uint64_t to_seed(std::int64_t v, const std::string& key) {
  if (v < 0) throw ConfigError(key + ": seed must be non-negative");
  return static_cast<std::uint64_t>(v);
}

TensorSpec parse_tensor(Section s) {
  TensorSpec spec;
  if (auto v = s.value<std::string>("preset")) spec.preset = *v;
  if (const toml::node* n = s.get("terms")) {
    const toml::array* arr = n->as_array();
    if (!arr) throw ConfigError(s.key_path("terms") + ": expected an array of tables");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const toml::table* t = arr->get(i)->as_table();
      const std::string where = s.key_path("terms") + "[" + std::to_string(i) + "]";
      if (!t) throw ConfigError(where + ": expected a table");
      Section ts(*t, where);
      HarmonicTerm term;
      term.part = tensor_part_from_string(ts.value<std::string>("part").value_or("conformal"));
      const auto l = ts.int_value("l");
      const auto m = ts.int_value("m");
      const auto value = ts.value<double>("value");
      if (!l || !m || !value) throw ConfigError(where + ": needs l, m and value");
      term.l = *l;
      term.m = *m;
      term.value = *value;
      ts.finish();
      spec.terms.push_back(term);
    }
  }
  spec.random_lmax = s.int_value("random_lmax");
  if (auto v = s.value<std::int64_t>("random_seed")) {
    spec.random_seed = to_seed(*v, s.key_path("random_seed"));
  }
  spec.sup_norm = s.value<double>("sup_norm");
  spec.scale = s.value<double>("scale").value_or(1.0);
  s.finish();
  return spec;
}

void validate_tensor(const TensorSpec& spec, const std::string& name) {
  const int sources = (spec.preset.empty() ? 0 : 1) + (spec.terms.empty() ? 0 : 1) +
                      (spec.random_lmax ? 1 : 0);
  if (sources > 1) {
    throw ConfigError(name + ": give only one of preset, terms or random_lmax");
  }
  if (spec.random_lmax && *spec.random_lmax < 0) {
    throw ConfigError(name + ".random_lmax must be non-negative");
  }
  if (spec.sup_norm && !(*spec.sup_norm >= 0.0)) {
    throw ConfigError(name + ".sup_norm must be non-negative");
  }
  if (!std::isfinite(spec.scale)) throw ConfigError(name + ".scale must be finite");
}

nlohmann::json tensor_json(const TensorSpec& spec) {
  nlohmann::json j;
  j["preset"] = spec.preset;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : spec.terms) {
    j["terms"].push_back({{"part", to_string(t.part)}, {"l", t.l}, {"m", t.m}, {"value", t.value}});
  }
  j["random_lmax"] = spec.random_lmax ? nlohmann::json(*spec.random_lmax) : nlohmann::json();
  j["random_seed"] = spec.random_seed ? nlohmann::json(*spec.random_seed) : nlohmann::json();
  j["sup_norm"] = spec.sup_norm ? nlohmann::json(*spec.sup_norm) : nlohmann::json();
  j["scale"] = spec.scale;
  return j;
}

}  // namespace

void RunConfig::validate() const {
  if (version != kConfigSchemaVersion) {
    throw ConfigError("unsupported config version " + std::to_string(version) + " (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
  }
  validate_tensor(h, "family.h");
  validate_tensor(e, "family.e");
  if (e_model == EModel::Zero && !e.empty()) {
    throw ConfigError("family.e is given but e_model is \"zero\"");
  }
  if (e_model == EModel::Quartic && e.empty()) {
    throw ConfigError("e_model \"quartic\" needs a [family.e] tensor");
  }
  if (n_theta < 8 || n_phi < 8 || n_phi % 2 != 0) {
    throw ConfigError("grid must have n_theta >= 8 and an even n_phi >= 8");
  }
  pipeline.validate();
  auto check_r = [](double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("radii must be positive and finite");
  };
  if (r) check_r(*r);
  for (double x : r_list) check_r(x);
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "cannot parse " << source << ": " << e.description() << " at line "
       << e.source().begin.line;
    throw ConfigError(os.str());
  }
  RunConfig cfg;
  Section top(root, "");
  if (auto v = top.int_value("version")) cfg.version = *v;
  if (auto v = top.value<std::string>("description")) cfg.description = *v;
  if (auto fam = top.sub("family")) {
    if (auto v = fam->value<std::string>("e_model")) cfg.e_model = e_model_from_string(*v);
    if (auto h = fam->sub("h")) cfg.h = parse_tensor(*h);
    if (auto e = fam->sub("e")) cfg.e = parse_tensor(*e);
    fam->finish();
  }
  if (auto grid = top.sub("grid")) {
    if (auto v = grid->int_value("n_theta")) cfg.n_theta = *v;
    if (auto v = grid->int_value("n_phi")) cfg.n_phi = *v;
    grid->finish();
  }
  if (auto sol = top.sub("solver")) {
    SolverOptions& so = cfg.pipeline.solver;
    if (auto v = sol->int_value("max_iterations")) so.max_iterations = *v;
    if (auto v = sol->value<double>("tolerance")) so.tolerance = *v;
    if (auto v = sol->value<double>("damping")) so.damping = *v;
    if (auto v = sol->value<std::string>("gauge")) so.gauge = gauge_from_string(*v);
    if (auto v = sol->int_value("krylov_restart")) so.krylov_restart = *v;
    if (auto v = sol->int_value("krylov_max_iterations")) so.krylov_max_iterations = *v;
    if (auto v = sol->value<double>("embed_tolerance")) cfg.pipeline.embed_tolerance = *v;
    if (auto v = sol->value<std::string>("centering")) {
      cfg.pipeline.centering = centering_from_string(*v);
    }
    if (auto v = sol->value<bool>("verify_general")) cfg.pipeline.verify_general = *v;
    if (auto v = sol->value<bool>("compare_centerings")) cfg.pipeline.compare_centerings = *v;
    sol->finish();
  }
  if (auto sweep = top.sub("sweep")) {
    cfg.r = sweep->value<double>("r");
    if (const toml::node* n = sweep->get("r_list")) {
      const toml::array* arr = n->as_array();
      if (!arr) throw ConfigError("sweep.r_list: expected an array of numbers");
      for (const auto& x : *arr) {
        if (auto d = x.value<double>()) {
          cfg.r_list.push_back(*d);
        } else {
          throw ConfigError("sweep.r_list: expected an array of numbers");
        }
      }
    }
    if (auto v = sweep->value<std::int64_t>("seed")) cfg.seed = to_seed(*v, "sweep.seed");
    sweep->finish();
  }
  top.finish();
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::pair<int, int> parse_grid_spec(const std::string& s) {
  int a = 0, b = 0;
  char x = 0, extra = 0;
  if (std::sscanf(s.c_str(), "%d%c%d%c", &a, &x, &b, &extra) != 3 || (x != 'x' && x != 'X')) {
    throw ConfigError("grid must look like NTHETAxNPHI, got '" + s + "'");
  }
  return {a, b};
}

std::vector<double> parse_r_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError("bad radius '" + item + "' in r list");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty r list");
  return out;
}

Sym2Field build_tensor(const GridPtr& grid, const TensorSpec& spec, std::uint64_t default_seed) {
  CoeffTable table;
  if (!spec.preset.empty()) {
    table = preset_table(spec.preset);
  } else if (spec.random_lmax) {
    table = random_table(*spec.random_lmax, spec.random_seed.value_or(default_seed));
  } else {
    table = spec.terms;
  }
  Sym2Field t = sph_harm_tensor(grid, table);
  if (spec.sup_norm) {
    const double n = sup_norm(t);
    if (n == 0.0 && *spec.sup_norm != 0.0) throw ConfigError("cannot rescale a zero tensor");
    if (n > 0.0) t *= *spec.sup_norm / n;
  }
  t *= spec.scale;
  return t;
}

AHFamily build_family(const RunConfig& cfg) {
  cfg.validate();
  const GridPtr grid = make_grid(cfg.n_theta, cfg.n_phi);
  Sym2Field h = build_tensor(grid, cfg.h, cfg.seed);
  std::string desc = cfg.description;
  if (desc.empty()) {
    desc = !cfg.h.preset.empty() ? cfg.h.preset
           : cfg.h.random_lmax   ? "random l<=" + std::to_string(*cfg.h.random_lmax)
                                 : "table";
  }
  if (cfg.e_model == EModel::Zero) return AHFamily(std::move(h), std::move(desc));
  Sym2Field e = build_tensor(grid, cfg.e, cfg.seed + 1);
  return AHFamily(std::move(h), cfg.e_model, std::move(e), std::move(desc));
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["version"] = cfg.version;
  j["description"] = cfg.description;
  j["family"] = {{"h", tensor_json(cfg.h)},
                 {"e_model", to_string(cfg.e_model)},
                 {"e", tensor_json(cfg.e)}};
  j["grid"] = {{"n_theta", cfg.n_theta}, {"n_phi", cfg.n_phi}};
  const SolverOptions& so = cfg.pipeline.solver;
  j["solver"] = {{"max_iterations", so.max_iterations},
                 {"tolerance", so.tolerance},
                 {"damping", so.damping},
                 {"gauge", to_string(so.gauge)},
                 {"krylov_restart", so.krylov_restart},
                 {"krylov_max_iterations", so.krylov_max_iterations},
                 {"embed_tolerance", cfg.pipeline.embed_tolerance},
                 {"centering", to_string(cfg.pipeline.centering)},
                 {"verify_general", cfg.pipeline.verify_general},
                 {"compare_centerings", cfg.pipeline.compare_centerings}};
  j["sweep"] = {{"r", cfg.r ? nlohmann::json(*cfg.r) : nlohmann::json()},
                {"r_list", cfg.r_list},
                {"seed", cfg.seed}};
  return j;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = to_json(cfg).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ahmass
