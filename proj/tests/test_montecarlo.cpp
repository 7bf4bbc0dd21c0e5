#include <gtest/gtest.h>

#include <cmath>

#include "rwrers/errors.hpp"
#include "rwrers/montecarlo.hpp"

using namespace rwrers;

namespace {

ExperimentConfig tree3(KernelFamily family, std::int64_t M, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.space = Space::regular_tree(3);
  cfg.kernel = family;
  cfg.M = M;
  cfg.N = 4;
  cfg.seed = seed;
  cfg.R = 4;
  cfg.observables = {"walker_degree"};
  return cfg;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

TEST(Trajectory, ReproducibleAndNearestNeighbour) {
  const Space t = Space::tree_with_end(3);
  KernelSpec ks;
  ks.family = KernelFamily::MWeighted;
  ks.space = t;
  EnvConfig ec;
  ec.seed = 5;
  const Environment env(ec);
  const auto a = sample_trajectory(ks, env, t.origin(), 40, 77);
  const auto b = sample_trajectory(ks, env, t.origin(), 40, 77);
  ASSERT_EQ(a.size(), 41u);
  EXPECT_EQ(a, b);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_TRUE(a[i] == a[i - 1] || t.adjacent(a[i], a[i - 1]));
}

TEST(Stationarity, FullPercolationIsExactlyConstant) {
  ExperimentConfig cfg = tree3(KernelFamily::DelayedSrw, 300, 1);
  cfg.env.p = 1.0;
  const ShiftSeries s = run_stationarity(cfg);
  EXPECT_EQ(s.trajectories_sampled, 300u);
  for (const auto& e : s.find("walker_degree").by_shift) {
    EXPECT_EQ(e.estimate, 3.0);
    EXPECT_EQ(e.std_error, 0.0);
  }
}

TEST(Stationarity, WorkerCountDoesNotChangeResults) {
  ExperimentConfig cfg = tree3(KernelFamily::SrwClusters, 1000, 9);
  cfg.observables = {"all"};
  const ShiftSeries one = run_stationarity(cfg);
  cfg.workers = 3;
  const ShiftSeries three = run_stationarity(cfg);
  ASSERT_EQ(one.series.size(), three.series.size());
  for (std::size_t i = 0; i < one.series.size(); ++i)
    for (std::size_t n = 0; n < one.series[i].by_shift.size(); ++n) {
      EXPECT_EQ(one.series[i].by_shift[n].estimate, three.series[i].by_shift[n].estimate);
      EXPECT_EQ(one.series[i].by_shift[n].std_error, three.series[i].by_shift[n].std_error);
    }
}

TEST(Stationarity, DelayedSrwMeanDegree) {
  const ShiftSeries s = run_stationarity(tree3(KernelFamily::DelayedSrw, 4000, 3));
  const auto& series = s.find("walker_degree").by_shift;
  // nu is constant, so every shift has the percolation mean 3p.
  for (const auto& e : series) EXPECT_NEAR(e.estimate, 2.0, 4.0 * e.std_error);
  EXPECT_TRUE(constancy_test(series).pass);
}

TEST(Stationarity, SrwClustersDegreeLawAtTheRoot) {
  ExperimentConfig cfg = tree3(KernelFamily::SrwClusters, 6000, 11);
  cfg.observables = {"walker_degree_is_0", "walker_degree_is_1", "walker_degree_is_2", "walker_degree_is_3"};
  const ShiftSeries s = run_stationarity(cfg);
  const double p = 2.0 / 3.0;
  for (int k = 0; k <= 3; ++k) {
    const double law = binomial(3, k) * std::pow(p, k) * std::pow(1 - p, 3 - k);
    const double expected = (k == 0 ? 1.0 : k) * law / (55.0 / 27.0);
    const auto& e = s.find("walker_degree_is_" + std::to_string(k)).by_shift.front();
    EXPECT_NEAR(e.estimate, expected, 4.0 * e.std_error + 1e-12) << "k=" << k;
  }
}

TEST(Stationarity, SingleRepresentativeStartsInItsOrbit) {
  ExperimentConfig cfg;
  cfg.space = Space::subdivided_line();
  cfg.M = 200;
  cfg.N = 3;
  cfg.observables = {"walker_orbit"};
  cfg.representatives = {2};
  const ShiftSeries s = run_stationarity(cfg);
  EXPECT_EQ(s.series.front().by_shift.front().estimate, 2.0);
  EXPECT_EQ(s.series.front().by_shift.front().std_error, 0.0);
}

TEST(Stationarity, ConfigErrors) {
  ExperimentConfig cfg;
  cfg.space = Space::tree_with_end(3);
  cfg.kernel = KernelFamily::MWeighted;
  cfg.M = 10;
  cfg.mode = WeightingMode::Unimodular;
  EXPECT_THROW(run_stationarity(cfg), ConfigError);
  ExperimentConfig alili = tree3(KernelFamily::Alili, 10, 1);
  EXPECT_THROW(run_stationarity(alili), ConfigError);
  ExperimentConfig reps = tree3(KernelFamily::DelayedSrw, 10, 1);
  reps.representatives = {2};
  EXPECT_THROW(run_stationarity(reps), ConfigError);
  EXPECT_THROW(run_counterexample(tree3(KernelFamily::DelayedSrw, 10, 1)), ConfigError);
  EXPECT_THROW(parse_weighting_mode("weighted"), ConfigError);
}

TEST(Counterexample, BothWalksShareEnvironments) {
  ExperimentConfig cfg;
  cfg.space = Space::tree_with_end(3);
  cfg.kernel = KernelFamily::MWeighted;
  cfg.mode = WeightingMode::General;
  cfg.M = 500;
  cfg.N = 3;
  cfg.R = 5;
  cfg.R_alt = 3;
  cfg.observables = {"event_An", "truncated_cluster_size"};
  const CounterexampleResult r = run_counterexample(cfg);
  EXPECT_EQ(r.radii, (std::vector<int>{5, 3}));
  EXPECT_EQ(r.srw.kernel, "srw-clusters");
  EXPECT_EQ(r.weighted.kernel, "m-weighted");
  // At n = 0 both walks sit at the same root of the same environments;
  // only the weights differ, so a weight-free event agrees on support.
  const auto& a = r.srw.find("event_An[R=5]").by_shift.front();
  const auto& b = r.weighted.find("event_An[R=5]").by_shift.front();
  EXPECT_EQ(a.estimate > 0, b.estimate > 0);
  EXPECT_EQ(r.srw.trajectories_sampled, 500u);
}
