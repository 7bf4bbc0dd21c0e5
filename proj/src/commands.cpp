#include "rwrers/commands.hpp"

#include <cmath>

#include "rwrers/config.hpp"
#include "rwrers/errors.hpp"
#include "rwrers/mtp.hpp"
#include "rwrers/prf.hpp"

namespace rwrers {

namespace {

using nlohmann::ordered_json;

// Alili weights are truncated series; the other kernels are exact up to rounding.
double balance_tolerance(const ExperimentConfig& cfg) {
  return cfg.kernel == KernelFamily::Alili ? 1000.0 * cfg.tol : cfg.tol;
}

Environment environment_for(const ExperimentConfig& cfg) {
  EnvConfig ec = cfg.env;
  ec.seed = cfg.seed;
  return Environment(ec);
}

std::vector<VertexId> check_window(const ExperimentConfig& cfg) { return cfg.space.ball(cfg.space.origin(), cfg.window); }

ordered_json series_records(const ShiftSeries& s, std::vector<ordered_json>& out) {
  ordered_json constancy = ordered_json::array();
  for (const ObservableSeries& os : s.series) {
    for (std::size_t n = 0; n < os.by_shift.size(); ++n) {
      const WeightedEstimate& e = os.by_shift[n];
      ordered_json r;
      r["observable"] = os.name;
      r["n"] = n;
      r["estimate"] = e.estimate;
      r["stderr"] = e.std_error;
      r["ess"] = e.ess;
      r["M"] = s.M;
      r["N"] = s.N;
      r["R"] = os.R;
      r["seed"] = s.seed;
      r["space"] = s.space;
      r["kernel"] = s.kernel;
      r["mode"] = s.mode;
      out.push_back(std::move(r));
    }
    const ConstancyResult c = constancy_test(os.by_shift);
    constancy.push_back({{"observable", os.name},
                         {"constant", c.pass},
                         {"worst_shift", c.worst_shift},
                         {"worst_ratio", std::isfinite(c.worst_ratio) ? ordered_json(c.worst_ratio) : ordered_json()}});
  }
  return constancy;
}

bool all_constant(const ordered_json& constancy) {
  for (const auto& c : constancy)
    if (!c.at("constant").get<bool>()) return false;
  return true;
}

ordered_json header(const ExperimentConfig& cfg, std::string_view subcommand) {
  ordered_json h;
  h["subcommand"] = subcommand;
  h["space"] = cfg.space.name();
  h["kernel"] = to_string(cfg.kernel);
  h["seed"] = cfg.seed;
  return h;
}

ordered_json balance_json(const BalanceReport& b) {
  return {{"sites", b.residuals.size()}, {"max_residual", b.max_residual}, {"pass", b.pass}};
}

}  // namespace

std::vector<std::string> subcommand_names() {
  return {"stationarity", "counterexample", "kernel-check", "mtp-check", "alili-demo"};
}

RunReport run_command(std::string_view subcommand, const ExperimentConfig& cfg) {
  if (subcommand == "stationarity") return stationarity_report(cfg);
  if (subcommand == "counterexample") return counterexample_report(cfg);
  if (subcommand == "kernel-check") return kernel_check_report(cfg);
  if (subcommand == "mtp-check") return mtp_check_report(cfg);
  if (subcommand == "alili-demo") return alili_demo_report(cfg);
  throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
}

RunReport stationarity_report(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const KernelSpec ks = cfg.kernel_spec();
  const Environment env = environment_for(cfg);
  const std::vector<VertexId> window = check_window(cfg);
  const BalanceReport balance = global_balance_check(ks, env, window, balance_tolerance(cfg));
  if (!balance.pass)
    throw ConfigError("kernel '" + to_string(cfg.kernel) + "' with its weight nu is not stationary for m on space '" +
                      cfg.space.name() + "' (global balance residual " + std::to_string(balance.max_residual) +
                      "); the stationarity hypotheses do not hold");

  const ShiftSeries s = run_stationarity(cfg);
  RunReport report;
  report.subcommand = "stationarity";
  const ordered_json constancy = series_records(s, report.records);
  report.passed = all_constant(constancy);
  report.summary = header(cfg, report.subcommand);
  report.summary["mode"] = s.mode;
  report.summary["M"] = s.M;
  report.summary["N"] = s.N;
  report.summary["trajectories_sampled"] = s.trajectories_sampled;
  report.summary["balance"] = balance_json(balance);
  report.summary["constancy"] = constancy;
  report.summary["passed"] = report.passed;
  return report;
}

RunReport counterexample_report(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const CounterexampleResult result = run_counterexample(cfg);
  RunReport report;
  report.subcommand = "counterexample";
  series_records(result.srw, report.records);
  const ordered_json weighted = series_records(result.weighted, report.records);

  ordered_json trend = ordered_json::array();
  bool passed = all_constant(weighted);
  for (int R : result.radii) {
    const ObservableSeries& a = result.srw.find("event_An[R=" + std::to_string(R) + "]");
    std::vector<double> est;
    for (const auto& e : a.by_shift) est.push_back(e.estimate);
    const MannKendall mk = mann_kendall(est);
    const WeightedEstimate& a0 = a.by_shift.front();
    const double z0 = a0.std_error > 0.0 ? a0.estimate / a0.std_error : (a0.estimate > 0.0 ? INFINITY : 0.0);
    const bool positive = z0 >= 5.0;
    const bool decreasing = mk.z <= -3.0;
    passed = passed && positive && decreasing;
    trend.push_back({{"R", R},
                     {"A0_estimate", a0.estimate},
                     {"A0_stderr", a0.std_error},
                     {"A0_z", std::isfinite(z0) ? ordered_json(z0) : ordered_json()},
                     {"A0_positive", positive},
                     {"AN_estimate", a.by_shift.back().estimate},
                     {"mann_kendall_s", mk.s},
                     {"mann_kendall_z", mk.z},
                     {"trend_rejects_constancy", decreasing}});
  }
  report.passed = passed;
  report.summary = header(cfg, report.subcommand);
  report.summary.erase("kernel");
  report.summary["M"] = cfg.M;
  report.summary["N"] = cfg.N;
  report.summary["srw_event_An"] = trend;
  report.summary["weighted_constancy"] = weighted;
  report.summary["passed"] = report.passed;
  return report;
}

RunReport kernel_check_report(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const KernelSpec ks = cfg.kernel_spec();
  const Environment env = environment_for(cfg);
  const std::vector<VertexId> window = check_window(cfg);
  const double tol = balance_tolerance(cfg);
  const BalanceReport global = global_balance_check(ks, env, window, tol);
  const BalanceReport detailed = detailed_balance_check(ks, env, window, tol);

  RunReport report;
  report.subcommand = "kernel-check";
  for (const auto& [name, b] : {std::pair{"global", &global}, std::pair{"detailed", &detailed}}) {
    for (const BalanceResidual& r : b->residuals) {
      ordered_json rec;
      rec["check"] = name;
      rec["site"] = cfg.space.format(r.site);
      if (r.other) rec["other"] = cfg.space.format(*r.other);
      rec["residual"] = r.residual;
      rec["pass"] = r.pass;
      report.records.push_back(std::move(rec));
    }
  }
  const bool reversible = is_reversible(cfg.kernel);
  report.passed = global.pass && detailed.pass == reversible;
  report.summary = header(cfg, report.subcommand);
  report.summary["window"] = cfg.window;
  report.summary["tolerance"] = tol;
  report.summary["global"] = balance_json(global);
  report.summary["detailed"] = balance_json(detailed);
  report.summary["detailed_expected"] = reversible;
  report.summary["passed"] = report.passed;
  return report;
}

RunReport mtp_check_report(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const TransportFn f = transport_by_name(cfg.transport);
  const MtpReport m = mtp_check(cfg.space, f, cfg.env.p, cfg.tol, cfg.seed);
  if (!m.invariance.invariant)
    throw ConfigError("transport function '" + f.name + "' is not invariant on space '" + cfg.space.name() +
                      "': " + m.invariance.detail);
  RunReport report;
  report.subcommand = "mtp-check";
  ordered_json rec;
  rec["check"] = "mtp";
  rec["space"] = cfg.space.name();
  rec["f"] = f.name;
  rec["p"] = cfg.env.p;
  rec["lhs"] = m.sides.lhs;
  rec["rhs"] = m.sides.rhs;
  rec["difference"] = m.difference;
  rec["tol"] = cfg.tol;
  rec["pass"] = m.pass;
  rec["patterns"] = m.sides.patterns;
  rec["invariance_trials"] = m.invariance.trials;
  report.records.push_back(rec);
  report.passed = m.pass;
  report.summary = rec;
  report.summary["subcommand"] = report.subcommand;
  report.summary["seed"] = cfg.seed;
  report.summary["passed"] = report.passed;
  return report;
}

RunReport alili_demo_report(const ExperimentConfig& input) {
  ExperimentConfig cfg = input;
  if (cfg.space.kind() != SpaceKind::Line)
    throw ConfigError("alili-demo runs on space 'line' (space = " + cfg.space.name() + ")");
  cfg.kernel = KernelFamily::Alili;
  cfg.env.site_params = true;
  validate_config(cfg);
  const KernelSpec ks = cfg.kernel_spec();
  const double tol = balance_tolerance(cfg);
  RunReport report;
  report.subcommand = "alili-demo";
  bool passed = true;

  // Constant xi = c > 1/2 gives rho = (1 - c)/c and nu = 1/(2c - 1).
  const double c = 0.75;
  const ConstantSiteParams constant(c);
  const double nu0 = nu(ks, constant, line_site(0));
  const double expected = 1.0 / (2.0 * c - 1.0);
  {
    ordered_json rec;
    rec["check"] = "constant_xi";
    rec["xi"] = c;
    rec["nu"] = nu0;
    rec["expected"] = expected;
    rec["residual"] = std::abs(nu0 - expected);
    rec["pass"] = std::abs(nu0 - expected) < tol;
    passed = passed && rec["pass"].get<bool>();
    report.records.push_back(std::move(rec));
  }

  const Environment env = environment_for(cfg);
  const CounterPrf sites(cfg.seed, stream::kSeedGen);
  const double recursion_tol = 10.0 * cfg.tol;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::int64_t x = static_cast<std::int64_t>(to_range(sites.bits(i), 2'000'001)) - 1'000'000;
    const double lhs = alili_A(env, x, cfg.tol);
    const double rhs = 1.0 + alili_rho(env, x + 1) * alili_A(env, x + 1, cfg.tol);
    const double residual = std::abs(lhs - rhs);
    worst = std::max(worst, residual);
    ordered_json rec;
    rec["check"] = "recursion";
    rec["site"] = x;
    rec["A"] = lhs;
    rec["residual"] = residual;
    rec["pass"] = residual < recursion_tol;
    passed = passed && residual < recursion_tol;
    report.records.push_back(std::move(rec));
  }

  const std::vector<VertexId> window = check_window(cfg);
  const BalanceReport global = global_balance_check(ks, env, window, tol);
  const BalanceReport detailed = detailed_balance_check(ks, env, window, tol);
  passed = passed && global.pass && !detailed.pass;

  const ShiftSeries s = run_stationarity(cfg);
  const ordered_json constancy = series_records(s, report.records);
  passed = passed && all_constant(constancy);

  report.passed = passed;
  report.summary = header(cfg, report.subcommand);
  report.summary["constant_xi"] = {{"xi", c}, {"nu", nu0}, {"expected", expected}};
  report.summary["recursion"] = {{"sites", 100}, {"max_residual", worst}};
  report.summary["global"] = balance_json(global);
  report.summary["detailed"] = balance_json(detailed);
  report.summary["detailed_expected"] = false;
  report.summary["M"] = s.M;
  report.summary["N"] = s.N;
  report.summary["constancy"] = constancy;
  report.summary["passed"] = report.passed;
  return report;
}

std::string to_jsonl(const RunReport& report) {
  std::string out;
  for (const auto& r : report.records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::string to_csv(const RunReport& report) {
  std::vector<std::string> columns;
  for (const auto& r : report.records)
    for (const auto& [key, value] : r.items())
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
  auto cell = [](const ordered_json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return quoted + "\"";
    }
    return v.dump();
  };
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& r : report.records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      if (r.contains(columns[i])) out += cell(r.at(columns[i]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace rwrers
