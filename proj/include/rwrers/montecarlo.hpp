#pragma once

// Monte Carlo estimation of the shift series n -> E_P[F(S^n)] under the
// weighted root measure, for one configured experiment.
//
// Replica j draws its environment from seed PRF(seed, replica, j), picks a
// starting representative o_i uniformly from the configured set, weights it
// by nu(o_i) (times m(o_i)^-1 in unimodular mode), samples one trajectory of
// N + k steps and evaluates every observable at every shift. Replicas are
// grouped in fixed blocks that workers take in any order; block sums are
// reduced in block order, so results do not depend on the worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "rwrers/environment.hpp"
#include "rwrers/estimators.hpp"
#include "rwrers/observables.hpp"
#include "rwrers/space.hpp"
#include "rwrers/walks.hpp"

namespace rwrers {

enum class WeightingMode : std::uint8_t { Unimodular, General };

std::string to_string(WeightingMode mode);
WeightingMode parse_weighting_mode(std::string_view name);

struct ExperimentConfig {
  Space space = Space::regular_tree(3);
  KernelFamily kernel = KernelFamily::DelayedSrw;
  EnvConfig env;  // env.seed is ignored; environments derive from `seed`
  std::vector<std::string> observables{"all"};
  int N = 20;
  std::int64_t M = 100'000;
  std::uint64_t seed = 0;
  int R = 12;
  int R_alt = 8;
  int r = 1;
  int k = 1;
  double tol = 1e-12;
  WeightingMode mode = WeightingMode::Unimodular;
  std::vector<int> representatives;  // 1-based orbit indices; empty means all
  int workers = 1;
  int window = 5;  // kernel-check window radius
  std::string transport = "parent-indicator";

  KernelSpec kernel_spec() const;
  CatalogContext catalog_context() const;
  // Orbit representatives the replicas start from.
  std::vector<VertexId> start_set() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ObservableSeries {
  std::string name;
  int R = 0;
  std::vector<WeightedEstimate> by_shift;  // n = 0..N
};

struct ShiftSeries {
  std::string space;
  std::string kernel;
  std::string mode;
  std::uint64_t seed = 0;
  std::int64_t M = 0;
  int N = 0;
  std::vector<ObservableSeries> series;
  std::uint64_t trajectories_sampled = 0;

  const ObservableSeries& find(std::string_view name) const;  // throws InputError
};

// One trajectory w(0..steps) from `start`, using the walk stream of `walk_seed`.
std::vector<VertexId> sample_trajectory(const KernelSpec& ks, const MarkSource& marks, const VertexId& start,
                                        int steps, std::uint64_t walk_seed);

ShiftSeries run_stationarity(const ExperimentConfig& cfg);

struct CounterexampleResult {
  ShiftSeries srw;        // simple random walk on clusters, weight d(x)
  ShiftSeries weighted;   // m-weighted walk, weight alpha(x)
  std::vector<int> radii; // truncation radii for event_An
};

// Tree with end only. Runs both walks on the same environments.
CounterexampleResult run_counterexample(const ExperimentConfig& cfg);

}  // namespace rwrers
