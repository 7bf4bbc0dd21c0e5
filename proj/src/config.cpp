#include "rwrers/config.hpp"

#include <random>
#include <set>

#include "rwrers/errors.hpp"

namespace rwrers {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {"space", "kernel", "p", "a", "b", "palette", "percolation", "site_params",
                                     "scenery", "observables", "N", "M", "seed", "R", "R_alt", "r", "k", "tol",
                                     "mode", "representatives", "workers", "window", "f"};

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
  return v.get<int>();
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t read_seed(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      std::size_t used = 0;
      const unsigned long long x = std::stoull(s, &used, 0);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("config key 'seed' must be a non-negative integer");
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.kernel == KernelFamily::Alili && cfg.space.kind() != SpaceKind::Line)
    throw ConfigError("kernel 'alili' requires space 'line' (kernel = alili, space = " + cfg.space.name() + ")");
  if (needs_percolation(cfg.kernel) && !cfg.env.percolation)
    throw ConfigError("kernel '" + to_string(cfg.kernel) + "' needs percolation (percolation = false)");
  if (cfg.kernel == KernelFamily::Alili && !cfg.env.site_params)
    throw ConfigError("kernel 'alili' needs site parameters (site_params = false)");
  if (cfg.space.kind() == SpaceKind::TreeWithEnd && cfg.mode == WeightingMode::Unimodular)
    throw ConfigError("mode 'unimodular' is not valid on space '" + cfg.space.name() + "' (use mode = general)");
  try {
    cfg.env.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (cfg.N < 1) throw ConfigError("N must be >= 1");
  if (cfg.M < 1) throw ConfigError("M must be >= 1");
  if (cfg.R < 0 || cfg.R_alt < 0) throw ConfigError("R and R_alt must be >= 0");
  if (cfg.r < 1) throw ConfigError("r must be >= 1");
  if (cfg.k < 1) throw ConfigError("k must be >= 1");
  if (cfg.N + cfg.k > 255) throw ConfigError("N + k must be at most 255");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (cfg.window < 1) throw ConfigError("window must be >= 1");
  if (cfg.observables.empty()) throw ConfigError("observables must not be empty");
  const int orbits = cfg.space.orbit_count();
  for (int i : cfg.representatives)
    if (i < 1 || i > orbits)
      throw ConfigError("representatives entry " + std::to_string(i) + " out of range 1.." + std::to_string(orbits) +
                        " for space " + cfg.space.name());
}

ExperimentConfig load_config(const json& input, bool* seed_generated) {
  if (!input.is_object()) throw ConfigError("configuration must be a JSON object");
  const json& j = input.contains("config") && input.at("config").is_object() ? input.at("config") : input;
  for (const auto& [key, value] : j.items())
    if (!kKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig cfg;
  cfg.space = Space::parse(get<std::string>(j, "space", "tree3"));
  const bool end_tree = cfg.space.kind() == SpaceKind::TreeWithEnd;
  cfg.kernel = parse_kernel_family(get<std::string>(j, "kernel", end_tree ? "m-weighted" : "delayed-srw"));

  cfg.env.p = get<double>(j, "p", 2.0 / 3.0);
  cfg.env.a = get<double>(j, "a", 0.6);
  cfg.env.b = get<double>(j, "b", 0.9);
  const int palette = get_int(j, "palette", 4);
  if (palette < 1) throw ConfigError("palette must be >= 1");
  cfg.env.palette = static_cast<std::uint32_t>(palette);
  cfg.env.percolation = get<bool>(j, "percolation", needs_percolation(cfg.kernel));
  cfg.env.site_params = get<bool>(j, "site_params", cfg.kernel == KernelFamily::Alili);
  cfg.env.scenery = get<bool>(j, "scenery", true);

  if (j.contains("observables")) {
    const json& o = j.at("observables");
    if (o.is_string()) {
      cfg.observables = {o.get<std::string>()};
    } else {
      cfg.observables = get<std::vector<std::string>>(j, "observables", {});
    }
  }
  cfg.N = get_int(j, "N", 20);
  if (j.contains("M")) {
    if (!j.at("M").is_number_integer()) throw ConfigError("config key 'M' must be an integer");
    cfg.M = j.at("M").get<std::int64_t>();
  }
  if (j.contains("seed") && !j.at("seed").is_null()) {
    cfg.seed = read_seed(j.at("seed"));
    if (seed_generated) *seed_generated = false;
  } else {
    cfg.seed = fresh_seed();
    if (seed_generated) *seed_generated = true;
  }
  cfg.R = get_int(j, "R", 12);
  cfg.R_alt = get_int(j, "R_alt", 8);
  cfg.r = get_int(j, "r", 1);
  cfg.k = get_int(j, "k", 1);
  cfg.tol = get<double>(j, "tol", 1e-12);
  cfg.mode = parse_weighting_mode(get<std::string>(j, "mode", end_tree ? "general" : "unimodular"));
  if (j.contains("representatives")) {
    const json& reps = j.at("representatives");
    if (reps.is_string()) {
      if (reps.get<std::string>() != "all") throw ConfigError("representatives must be \"all\" or a list of orbit indices");
    } else {
      cfg.representatives = get<std::vector<int>>(j, "representatives", {});
    }
  }
  cfg.workers = get_int(j, "workers", 1);
  cfg.window = get_int(j, "window", cfg.space.is_tree() ? 5 : 25);
  cfg.transport = get<std::string>(j, "f", "parent-indicator");
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config_text(std::string_view text, bool* seed_generated) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  return load_config(j, seed_generated);
}

json serialize_config(const ExperimentConfig& cfg) {
  json j;
  j["space"] = cfg.space.name();
  j["kernel"] = to_string(cfg.kernel);
  j["p"] = cfg.env.p;
  j["a"] = cfg.env.a;
  j["b"] = cfg.env.b;
  j["palette"] = cfg.env.palette;
  j["percolation"] = cfg.env.percolation;
  j["site_params"] = cfg.env.site_params;
  j["scenery"] = cfg.env.scenery;
  j["observables"] = cfg.observables;
  j["N"] = cfg.N;
  j["M"] = cfg.M;
  j["seed"] = cfg.seed;
  j["R"] = cfg.R;
  j["R_alt"] = cfg.R_alt;
  j["r"] = cfg.r;
  j["k"] = cfg.k;
  j["tol"] = cfg.tol;
  j["mode"] = to_string(cfg.mode);
  if (cfg.representatives.empty()) {
    j["representatives"] = "all";
  } else {
    j["representatives"] = cfg.representatives;
  }
  j["workers"] = cfg.workers;
  j["window"] = cfg.window;
  j["f"] = cfg.transport;
  return j;
}

}  // namespace rwrers
