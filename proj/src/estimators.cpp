#include "rwrers/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rwrers/errors.hpp"

namespace rwrers {

void WeightedAccumulator::add(double weight, double value) {
  const double w2 = weight * weight;
  sw += weight;
  sw2 += w2;
  swf += weight * value;
  sw2f += w2 * value;
  sw2f2 += w2 * value * value;
  ++count;
}

void WeightedAccumulator::merge(const WeightedAccumulator& other) {
  sw += other.sw;
  sw2 += other.sw2;
  swf += other.swf;
  sw2f += other.sw2f;
  sw2f2 += other.sw2f2;
  count += other.count;
}

WeightedEstimate WeightedAccumulator::finish() const {
  if (!(sw > 0.0)) throw DegenerateWeightsError("importance weights sum to zero");
  WeightedEstimate e;
  e.estimate = swf / sw;
  e.ess = sw * sw / sw2;
  e.weight_sum = sw;
  if (e.ess > 1.0 + 1e-12) {
    const double mu = e.estimate;
    const double spread = std::max(0.0, sw2f2 - 2.0 * mu * sw2f + mu * mu * sw2);
    e.std_error = std::sqrt(spread / (sw * sw) * e.ess / (e.ess - 1.0));
  }
  return e;
}

WeightedEstimate weighted_mean(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) throw InputError("values and weights differ in length");
  double sw = 0.0;
  double sw2 = 0.0;
  double swf = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] < 0.0 || !std::isfinite(weights[i])) throw InputError("weights must be finite and non-negative");
    sw += weights[i];
    sw2 += weights[i] * weights[i];
    swf += weights[i] * values[i];
  }
  if (!(sw > 0.0)) throw DegenerateWeightsError("importance weights sum to zero");
  WeightedEstimate e;
  e.estimate = swf / sw;
  e.ess = sw * sw / sw2;
  e.weight_sum = sw;
  if (e.ess > 1.0 + 1e-12) {
    double spread = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - e.estimate;
      spread += weights[i] * weights[i] * d * d;
    }
    e.std_error = std::sqrt(spread / (sw * sw) * e.ess / (e.ess - 1.0));
  }
  return e;
}

ConstancyResult constancy_test(std::span<const WeightedEstimate> series, double sigmas) {
  ConstancyResult r;
  if (series.empty()) return r;
  const WeightedEstimate& base = series.front();
  for (std::size_t n = 1; n < series.size(); ++n) {
    const double diff = std::abs(series[n].estimate - base.estimate);
    const double band = sigmas * (series[n].std_error + base.std_error);
    const double ratio = band > 0.0 ? diff / band : (diff > 1e-12 ? INFINITY : 0.0);
    if (ratio > r.worst_ratio) {
      r.worst_ratio = ratio;
      r.worst_shift = n;
    }
    if (diff > band + 1e-12) r.pass = false;
  }
  return r;
}

MannKendall mann_kendall(std::span<const double> series) {
  MannKendall mk;
  const std::size_t n = series.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (series[j] > series[i]) mk.s += 1.0;
      if (series[j] < series[i]) mk.s -= 1.0;
    }
  std::map<double, std::size_t> ties;
  for (double v : series) ++ties[v];
  const double nn = static_cast<double>(n);
  double var = nn * (nn - 1.0) * (2.0 * nn + 5.0);
  for (const auto& [value, t] : ties) {
    const double tt = static_cast<double>(t);
    var -= tt * (tt - 1.0) * (2.0 * tt + 5.0);
  }
  mk.variance = var / 18.0;
  if (mk.variance > 0.0) {
    if (mk.s > 0.0) mk.z = (mk.s - 1.0) / std::sqrt(mk.variance);
    if (mk.s < 0.0) mk.z = (mk.s + 1.0) / std::sqrt(mk.variance);
  }
  return mk;
}

}  // namespace rwrers
