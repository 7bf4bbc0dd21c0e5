#include "rwrers/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "rwrers/errors.hpp"
#include "rwrers/prf.hpp"

namespace rwrers {

std::string to_string(WeightingMode mode) { return mode == WeightingMode::Unimodular ? "unimodular" : "general"; }

WeightingMode parse_weighting_mode(std::string_view name) {
  if (name == "unimodular") return WeightingMode::Unimodular;
  if (name == "general") return WeightingMode::General;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected unimodular or general)");
}

KernelSpec ExperimentConfig::kernel_spec() const {
  KernelSpec ks;
  ks.family = kernel;
  ks.space = space;
  ks.tol = tol;
  return ks;
}

CatalogContext ExperimentConfig::catalog_context() const {
  CatalogContext ctx;
  ctx.space = space;
  ctx.family = kernel;
  ctx.percolation = env.percolation;
  ctx.site_params = env.site_params;
  ctx.scenery = env.scenery;
  ctx.palette = env.palette;
  ctx.a = env.a;
  ctx.b = env.b;
  ctx.r = r;
  ctx.k = k;
  ctx.R = R;
  ctx.R_alt = R_alt;
  return ctx;
}

std::vector<VertexId> ExperimentConfig::start_set() const {
  const std::vector<VertexId> all = space.representatives();
  if (representatives.empty()) return all;
  std::vector<VertexId> out;
  for (int i : representatives) {
    if (i < 1 || i > static_cast<int>(all.size()))
      throw ConfigError("representative index " + std::to_string(i) + " out of range for space " + space.name());
    out.push_back(all[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

const ObservableSeries& ShiftSeries::find(std::string_view name) const {
  for (const auto& s : series)
    if (s.name == name) return s;
  throw InputError("no series for observable '" + std::string(name) + "'");
}

std::vector<VertexId> sample_trajectory(const KernelSpec& ks, const MarkSource& marks, const VertexId& start,
                                        int steps, std::uint64_t walk_seed) {
  const CounterPrf walk(walk_seed, stream::kWalk);
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(start);
  for (int t = 0; t < steps; ++t)
    out.push_back(sample_step(ks, marks, out.back(), to_unit_closed_open(walk.bits(static_cast<std::uint64_t>(t)))));
  return out;
}

namespace {

constexpr std::int64_t kBlock = 256;

struct BlockSums {
  std::vector<WeightedAccumulator> cells;  // observable-major, N + 1 per observable
};

struct Plan {
  Space space;
  std::vector<VertexId> starts;
  std::vector<double> start_factor;  // m(o_1)/m(o_i) in unimodular mode, else 1
  int N = 0;
  int steps = 0;
};

Plan make_plan(const ExperimentConfig& cfg, const ObservablePanel& panel) {
  Plan plan{cfg.space, cfg.start_set(), {}, cfg.N, cfg.N + panel.max_horizon()};
  const VertexId& first = cfg.space.representatives().front();
  for (const VertexId& o : plan.starts)
    plan.start_factor.push_back(cfg.mode == WeightingMode::Unimodular
                                    ? 1.0 / cfg.space.m_ratio_between(first, o).value()
                                    : 1.0);
  return plan;
}

// Runs replicas [begin, end) for each kernel; sums[q] collects kernel q.
void run_block(const ExperimentConfig& cfg, const Plan& plan, std::span<const KernelSpec> kernels,
               std::span<const ObservablePanel> panels, std::int64_t begin, std::int64_t end,
               std::span<BlockSums> sums) {
  const auto width = static_cast<std::size_t>(plan.N) + 1;
  std::vector<double> values;
  for (std::int64_t j = begin; j < end; ++j) {
    const std::uint64_t replica = CounterPrf(cfg.seed, stream::kReplica).bits(static_cast<std::uint64_t>(j));
    EnvConfig ec = cfg.env;
    ec.seed = replica;
    const Environment env(ec);
    const std::size_t pick = static_cast<std::size_t>(
        to_range(CounterPrf(replica, stream::kStart).bits(std::uint64_t{0}), plan.starts.size()));
    const VertexId& start = plan.starts[pick];
    for (std::size_t q = 0; q < kernels.size(); ++q) {
      const ObservablePanel& panel = panels[q];
      const double weight = nu(kernels[q], env, start) * plan.start_factor[pick];
      const std::vector<VertexId> path = sample_trajectory(kernels[q], env, start, plan.steps, replica);
      values.assign(panel.observables().size() * width, 0.0);
      panel.evaluate_all(env, path, plan.N, values);
      auto& cells = sums[q].cells;
      for (std::size_t c = 0; c < values.size(); ++c) cells[c].add(weight, values[c]);
    }
  }
}

std::vector<ShiftSeries> run_kernels(const ExperimentConfig& cfg, std::span<const KernelSpec> kernels,
                                     const std::vector<std::vector<Observable>>& observables) {
  if (cfg.M < 1) throw ConfigError("M must be >= 1");
  if (cfg.N < 0) throw ConfigError("N must be >= 0");
  std::vector<ObservablePanel> panels;
  for (std::size_t q = 0; q < kernels.size(); ++q) panels.emplace_back(cfg.space, observables[q]);
  const Plan plan = make_plan(cfg, panels.front());
  const auto width = static_cast<std::size_t>(cfg.N) + 1;

  const std::int64_t blocks = (cfg.M + kBlock - 1) / kBlock;
  std::vector<std::vector<BlockSums>> results(static_cast<std::size_t>(blocks));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      std::vector<BlockSums> sums(kernels.size());
      for (std::size_t q = 0; q < kernels.size(); ++q) sums[q].cells.resize(panels[q].observables().size() * width);
      try {
        run_block(cfg, plan, kernels, panels, b * kBlock, std::min(cfg.M, (b + 1) * kBlock), sums);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
      results[static_cast<std::size_t>(b)] = std::move(sums);
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ShiftSeries> out;
  for (std::size_t q = 0; q < kernels.size(); ++q) {
    std::vector<WeightedAccumulator> total(panels[q].observables().size() * width);
    for (const auto& block : results)
      for (std::size_t c = 0; c < total.size(); ++c) total[c].merge(block[q].cells[c]);
    ShiftSeries s;
    s.space = cfg.space.name();
    s.kernel = to_string(kernels[q].family);
    s.mode = to_string(cfg.mode);
    s.seed = cfg.seed;
    s.M = cfg.M;
    s.N = cfg.N;
    s.trajectories_sampled = total.empty() ? 0 : total.front().count;
    const auto& obs = panels[q].observables();
    for (std::size_t i = 0; i < obs.size(); ++i) {
      ObservableSeries os;
      os.name = obs[i].name;
      os.R = obs[i].cluster_radius > 0 ? obs[i].cluster_radius : cfg.R;
      for (std::size_t n = 0; n < width; ++n) os.by_shift.push_back(total[i * width + n].finish());
      s.series.push_back(std::move(os));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

ShiftSeries run_stationarity(const ExperimentConfig& cfg) {
  const KernelSpec ks = cfg.kernel_spec();
  ks.validate_space();
  if (cfg.space.kind() == SpaceKind::TreeWithEnd && cfg.mode == WeightingMode::Unimodular)
    throw ConfigError("mode 'unimodular' does not apply to space '" + cfg.space.name() + "'; use mode 'general'");
  const std::vector<KernelSpec> kernels{ks};
  const std::vector<std::vector<Observable>> obs{select_observables(cfg.catalog_context(), cfg.observables)};
  return std::move(run_kernels(cfg, kernels, obs).front());
}

CounterexampleResult run_counterexample(const ExperimentConfig& cfg) {
  if (cfg.space.kind() != SpaceKind::TreeWithEnd)
    throw ConfigError("counterexample needs a tree-with-end space, got space '" + cfg.space.name() + "'");
  ExperimentConfig base = cfg;
  base.mode = WeightingMode::General;
  base.env.percolation = true;
  std::vector<KernelSpec> kernels;
  std::vector<std::vector<Observable>> obs;
  for (KernelFamily family : {KernelFamily::SrwClusters, KernelFamily::MWeighted}) {
    base.kernel = family;
    kernels.push_back(base.kernel_spec());
    obs.push_back(select_observables(base.catalog_context(), cfg.observables));
  }
  auto runs = run_kernels(base, kernels, obs);
  CounterexampleResult result;
  result.srw = std::move(runs[0]);
  result.weighted = std::move(runs[1]);
  result.radii.push_back(cfg.R);
  if (cfg.R_alt > 0 && cfg.R_alt != cfg.R) result.radii.push_back(cfg.R_alt);
  return result;
}

}  // namespace rwrers
