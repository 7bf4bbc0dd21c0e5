#pragma once

// Self-normalised weighted means with standard errors, and the two tests
// run on the resulting shift series.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rwrers {

struct WeightedEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double ess = 0.0;  // (sum w)^2 / sum w^2
  double weight_sum = 0.0;
};

// Running sums for one (observable, shift) cell. Merging two accumulators
// adds their sums, so block results can be reduced in a fixed order.
struct WeightedAccumulator {
  double sw = 0.0;
  double sw2 = 0.0;
  double swf = 0.0;
  double sw2f = 0.0;
  double sw2f2 = 0.0;
  std::uint64_t count = 0;

  void add(double weight, double value);
  void merge(const WeightedAccumulator& other);
  // Throws DegenerateWeightsError when the weights sum to zero.
  WeightedEstimate finish() const;
};

// mu = sum w F / sum w. SE^2 = sum w^2 (F - mu)^2 / (sum w)^2 * ESS / (ESS - 1),
// which reduces to s^2 / M for unit weights; zero when ESS <= 1.
WeightedEstimate weighted_mean(std::span<const double> values, std::span<const double> weights);

struct ConstancyResult {
  bool pass = true;
  std::size_t worst_shift = 0;
  double worst_ratio = 0.0;  // |est(n) - est(0)| / (sigmas * (SE(n) + SE(0)))
};

// Passes when every |est(n) - est(0)| <= sigmas * (SE(n) + SE(0)).
ConstancyResult constancy_test(std::span<const WeightedEstimate> series, double sigmas = 3.0);

struct MannKendall {
  double s = 0.0;
  double variance = 0.0;  // tie-corrected
  double z = 0.0;         // continuity-corrected
};

MannKendall mann_kendall(std::span<const double> series);

}  // namespace rwrers
