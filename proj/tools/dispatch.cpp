#include "dispatch.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwrers/rwrers.h"

namespace rwrers::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Flags {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> name;
  bool csv = false;

  std::optional<std::string> space, kernel, mode, reps, f;
  std::optional<double> p, a, b, tol;
  std::optional<int> palette, N, R, R_alt, r, k, workers, window;
  std::optional<long long> M;
  std::optional<std::string> seed;
  std::optional<bool> percolation, site_params, scenery;
  std::vector<std::string> observables;
};

void add_options(CLI::App& cmd, Flags& fl) {
  cmd.add_option("--config", fl.config_path, "JSON config file or run manifest; flags override it");
  cmd.add_option("--out", fl.out_dir, "Output directory (default $RWRERS_OUTPUT_DIR or .)");
  cmd.add_option("--name", fl.name, "Base name of the output files (default: the subcommand)");
  cmd.add_flag("--csv", fl.csv, "Also write a CSV mirror of the records");
  cmd.add_option("--space", fl.space, "line, subdivided-line, treeD or tree-endD");
  cmd.add_option("--kernel", fl.kernel, "delayed-srw, srw-clusters, alili or m-weighted");
  cmd.add_option("--p", fl.p, "Edge-open probability");
  cmd.add_option("--a", fl.a, "Lower end of the site-parameter range");
  cmd.add_option("--b", fl.b, "Upper end of the site-parameter range");
  cmd.add_option("--palette", fl.palette, "Number of scenery colours");
  cmd.add_option("--percolation", fl.percolation, "Enable percolation marks (true/false)");
  cmd.add_option("--site-params", fl.site_params, "Enable site parameters (true/false)");
  cmd.add_option("--scenery", fl.scenery, "Enable scenery (true/false)");
  cmd.add_option("--observables", fl.observables, "Observable names or families (default all)")->delimiter(',');
  cmd.add_option("--N", fl.N, "Largest shift time");
  cmd.add_option("--M", fl.M, "Number of replicas");
  cmd.add_option("--seed", fl.seed, "Master seed (drawn at random when omitted)");
  cmd.add_option("--R", fl.R, "Cluster truncation radius");
  cmd.add_option("--R-alt", fl.R_alt, "Second truncation radius for event_An (0 disables)");
  cmd.add_option("--r", fl.r, "View radius");
  cmd.add_option("--k", fl.k, "Trajectory segment length");
  cmd.add_option("--tol", fl.tol, "Numerical tolerance");
  cmd.add_option("--mode", fl.mode, "unimodular or general");
  cmd.add_option("--reps", fl.reps, "Orbit representatives: all, or comma-separated indices");
  cmd.add_option("--workers", fl.workers, "Worker threads");
  cmd.add_option("--window", fl.window, "Radius of the kernel-check window");
  cmd.add_option("--f", fl.f, "Transport function for mtp-check");
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

json overrides(const Flags& fl) {
  json j = json::object();
  put(j, "space", fl.space);
  put(j, "kernel", fl.kernel);
  put(j, "mode", fl.mode);
  put(j, "f", fl.f);
  put(j, "p", fl.p);
  put(j, "a", fl.a);
  put(j, "b", fl.b);
  put(j, "tol", fl.tol);
  put(j, "palette", fl.palette);
  put(j, "N", fl.N);
  put(j, "R", fl.R);
  put(j, "R_alt", fl.R_alt);
  put(j, "r", fl.r);
  put(j, "k", fl.k);
  put(j, "workers", fl.workers);
  put(j, "window", fl.window);
  put(j, "M", fl.M);
  put(j, "seed", fl.seed);
  put(j, "percolation", fl.percolation);
  put(j, "site_params", fl.site_params);
  put(j, "scenery", fl.scenery);
  if (!fl.observables.empty()) j["observables"] = fl.observables;
  if (fl.reps) {
    if (*fl.reps == "all") {
      j["representatives"] = "all";
    } else {
      json list = json::array();
      std::stringstream ss(*fl.reps);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          list.push_back(std::stoi(item));
        } catch (const std::exception&) {
          list.push_back(item);  // rejected by load_config with a message
        }
      }
      j["representatives"] = list;
    }
  }
  return j;
}

int exit_for(rwrers_status status) {
  switch (status) {
    case RWRERS_OK: return kSuccess;
    case RWRERS_ERR_CONFIG:
    case RWRERS_ERR_INVALID_ARGUMENT: return kUsageError;
    default: return kNumericalError;
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  rwrers_string_free(s);
  return out;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

struct ConfigDeleter {
  void operator()(rwrers_config* c) const { rwrers_config_free(c); }
};
struct ReportDeleter {
  void operator()(rwrers_report* r) const { rwrers_report_free(r); }
};

int run(const std::string& subcommand, const Flags& fl, std::ostream& out, std::ostream& err) {
  json cfg = json::object();
  if (fl.config_path) {
    std::ifstream f(*fl.config_path);
    if (!f) {
      err << "error: cannot read config file '" << *fl.config_path << "'\n";
      return kUsageError;
    }
    try {
      cfg = json::parse(f);
    } catch (const json::parse_error& e) {
      err << "error: config file is not valid JSON: " << e.what() << "\n";
      return kUsageError;
    }
    if (cfg.is_object() && cfg.contains("config") && cfg["config"].is_object()) cfg = cfg["config"];
    if (!cfg.is_object()) {
      err << "error: config file must hold a JSON object\n";
      return kUsageError;
    }
  }
  const json flag_values = overrides(fl);
  for (const auto& [key, value] : flag_values.items()) cfg[key] = value;

  rwrers_config* raw_cfg = nullptr;
  if (rwrers_status s = rwrers_config_load(cfg.dump().c_str(), &raw_cfg); s != RWRERS_OK) {
    err << "error: " << rwrers_last_error() << "\n";
    return exit_for(s);
  }
  std::unique_ptr<rwrers_config, ConfigDeleter> config(raw_cfg);
  int generated = 0;
  unsigned long long seed = 0;
  rwrers_config_seed_generated(config.get(), &generated);
  rwrers_config_seed(config.get(), &seed);
  out << "seed: " << seed << (generated ? " (generated)" : "") << "\n";

  char* resolved_text = nullptr;
  if (rwrers_status s = rwrers_config_to_json(config.get(), &resolved_text); s != RWRERS_OK) {
    err << "error: " << rwrers_last_error() << "\n";
    return exit_for(s);
  }
  const json resolved = json::parse(take(resolved_text));

  rwrers_report* raw_report = nullptr;
  if (rwrers_status s = rwrers_run(config.get(), subcommand.c_str(), &raw_report); s != RWRERS_OK) {
    err << "error: " << rwrers_last_error() << "\n";
    return exit_for(s);
  }
  std::unique_ptr<rwrers_report, ReportDeleter> report(raw_report);

  char* jsonl = nullptr;
  char* summary = nullptr;
  char* csv = nullptr;
  int passed = 0;
  size_t records = 0;
  rwrers_report_passed(report.get(), &passed);
  rwrers_report_record_count(report.get(), &records);
  if (rwrers_report_jsonl(report.get(), &jsonl) != RWRERS_OK ||
      rwrers_report_summary(report.get(), &summary) != RWRERS_OK ||
      (fl.csv && rwrers_report_csv(report.get(), &csv) != RWRERS_OK)) {
    err << "error: " << rwrers_last_error() << "\n";
    return kNumericalError;
  }
  const std::string jsonl_text = take(jsonl);
  const std::string summary_text = take(summary);
  const std::string csv_text = take(csv);

  fs::path dir = ".";
  if (fl.out_dir) {
    dir = *fl.out_dir;
  } else if (const char* env = std::getenv("RWRERS_OUTPUT_DIR"); env && *env) {
    dir = env;
  }
  const std::string name = fl.name.value_or(subcommand);
  try {
    fs::create_directories(dir);
    json outputs;
    outputs["jsonl"] = name + ".jsonl";
    outputs["summary"] = name + ".summary.json";
    write_file(dir / (name + ".jsonl"), jsonl_text);
    write_file(dir / (name + ".summary.json"), summary_text + "\n");
    if (fl.csv) {
      outputs["csv"] = name + ".csv";
      write_file(dir / (name + ".csv"), csv_text);
    }
    json manifest;
    manifest["tool"] = "rwrers";
    manifest["version"] = rwrers_version();
    manifest["timestamp"] = timestamp();
    manifest["subcommand"] = subcommand;
    manifest["config"] = resolved;
    manifest["outputs"] = outputs;
    write_file(dir / (name + ".manifest.json"), manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  }

  out << subcommand << ": " << records << " records, " << (passed ? "passed" : "FAILED") << "\n";
  out << "wrote " << (dir / (name + ".jsonl")).string() << "\n";
  return passed ? kSuccess : kPropertyFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random walks in random environments: stationarity experiments and exact checks", "rwrers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rwrers_version()));

  Flags flags;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"stationarity", "Estimate shift series of invariant observables and test them for constancy"},
      {"counterexample", "Compare the degree-weighted and the m-weighted walk on a tree with an end"},
      {"kernel-check", "Check global and detailed balance of a kernel on a finite window"},
      {"mtp-check", "Evaluate both sides of the mass-transport identity exactly"},
      {"alili-demo", "Closed-form and recursion checks for the Alili walk, plus a stationarity run"},
  };
  for (const auto& [name, help] : commands) add_options(*app.add_subcommand(name, help), flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << rwrers_version() << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageError;
  }
  for (const auto* sub : app.get_subcommands()) return run(sub->get_name(), flags, out, err);
  err << app.help();
  return kUsageError;
}

}  // namespace rwrers::cli
