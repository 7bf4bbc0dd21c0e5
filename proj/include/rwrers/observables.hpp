#pragma once

// Invariant observables F(environment, trajectory) evaluated at the walker.
//
// Most observables are functions of the canonical rooted view at w(n) with
// the segment w(n..n+k), which makes them invariant by construction. The
// cluster observables need a window of radius R (12 by default), too large
// to canonicalise at every step, so they read the environment through
// cluster_probe from the walker's position. They only use quantities the
// acting group preserves (cluster sizes, and on TreeWithEnd the parent
// edge); the invariance property tests cover them like the others.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rwrers/environment.hpp"
#include "rwrers/rooted_view.hpp"
#include "rwrers/space.hpp"
#include "rwrers/walks.hpp"

namespace rwrers {

struct Observable {
  std::string name;
  int radius = 1;          // view radius r
  int horizon = 0;         // trajectory steps k past w(n)
  int cluster_radius = 0;  // truncation radius R, cluster observables only
  double lower = 0.0;      // declared range
  double upper = 1.0;

  std::function<double(const RootedView&)> on_view;
  std::function<double(const Space&, const MarkSource&, const VertexId&)> on_cluster;
};

// F evaluated on the walker's view at time n. Needs trajectory positions
// n..n+horizon; throws InputError otherwise.
double evaluate(const Observable& obs, const Space& space, const MarkSource& marks,
                std::span<const VertexId> trajectory, std::size_t n);

// Indicator that w(n) is the top of its cluster (parent edge closed) and the
// cluster below reaches distance R: the radius-R proxy for "C(w(n)) is
// infinite and w(n) is its vertex closest to the end". TreeWithEnd only.
Observable event_An(int R);
Observable truncated_cluster_size(const Space& space, int R);

struct CatalogContext {
  Space space = Space::tree_with_end(3);
  KernelFamily family = KernelFamily::MWeighted;
  bool percolation = true;
  bool site_params = false;
  bool scenery = true;
  std::uint32_t palette = 4;
  double a = 0.6;
  double b = 0.9;
  int r = 1;
  int k = 1;
  int R = 12;
  int R_alt = 8;  // second truncation radius for event_An; 0 disables
};

// Every built-in observable applicable to the context: walker_degree and
// its level indicators, scenery_at_walker, site_param_at_walker,
// walker_orbit, kernel_fingerprint components, truncated_cluster_size,
// event_An at each radius, first_step direction indicators.
std::vector<Observable> builtin_catalog(const CatalogContext& ctx = {});

// Resolves names against the catalog. "all" selects everything; a family
// name such as "kernel_fingerprint" or "event_An" selects all its members.
// Throws ConfigError for names that match nothing.
std::vector<Observable> select_observables(const CatalogContext& ctx, std::span<const std::string> names);

// Evaluates a fixed list of observables along one trajectory, building each
// distinct (radius, horizon) view once per shift.
class ObservablePanel {
 public:
  ObservablePanel(const Space& space, std::vector<Observable> observables);

  const std::vector<Observable>& observables() const { return observables_; }
  int max_horizon() const { return max_horizon_; }

  // values[i * (N + 1) + n] = F_i at shift n, for n = 0..N.
  void evaluate_all(const MarkSource& marks, std::span<const VertexId> trajectory, int N,
                    std::span<double> values) const;

 private:
  Space space_;
  std::vector<Observable> observables_;
  std::vector<std::pair<int, int>> view_shapes_;  // distinct (radius, horizon)
  std::vector<int> shape_of_;                     // per observable, -1 for cluster observables
  int max_horizon_ = 0;
};

}  // namespace rwrers
