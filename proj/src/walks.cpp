#include "rwrers/walks.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "rwrers/errors.hpp"

namespace rwrers {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::DelayedSrw: return "delayed-srw";
    case KernelFamily::SrwClusters: return "srw-clusters";
    case KernelFamily::Alili: return "alili";
    case KernelFamily::MWeighted: return "m-weighted";
  }
  return "?";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "delayed-srw") return KernelFamily::DelayedSrw;
  if (name == "srw-clusters") return KernelFamily::SrwClusters;
  if (name == "alili") return KernelFamily::Alili;
  if (name == "m-weighted") return KernelFamily::MWeighted;
  throw ConfigError("unknown kernel '" + std::string(name) +
                    "' (expected delayed-srw, srw-clusters, alili or m-weighted)");
}

bool needs_percolation(KernelFamily family) { return family != KernelFamily::Alili; }

bool is_reversible(KernelFamily family) { return family != KernelFamily::Alili; }

void KernelSpec::validate_space() const {
  if (family == KernelFamily::Alili && space.kind() != SpaceKind::Line)
    throw ConfigError("kernel 'alili' is defined on space 'line' only, got space '" + space.name() + "'");
}

void KernelSpec::validate(const MarkSource& marks) const {
  validate_space();
  if (needs_percolation(family) && !marks.has_percolation())
    throw ConfigError("kernel '" + to_string(family) + "' needs percolation marks");
  if (family == KernelFamily::Alili && !marks.has_site_params())
    throw ConfigError("kernel 'alili' needs site parameters");
}

boost::container::small_vector<double, 5> local_transition(KernelFamily family, int space_degree,
                                                            const LocalStar& star) {
  boost::container::small_vector<double, 5> out(star.arms.size() + 1, 0.0);
  switch (family) {
    case KernelFamily::DelayedSrw: {
      int closed = 0;
      for (std::size_t i = 0; i < star.arms.size(); ++i) {
        if (star.arms[i].open) {
          out[i + 1] = 1.0 / space_degree;
        } else {
          ++closed;
        }
      }
      out[0] = static_cast<double>(closed) / space_degree;
      break;
    }
    case KernelFamily::SrwClusters: {
      int d = 0;
      for (const auto& arm : star.arms) d += arm.open ? 1 : 0;
      if (d == 0) {
        out[0] = 1.0;
        break;
      }
      for (std::size_t i = 0; i < star.arms.size(); ++i)
        if (star.arms[i].open) out[i + 1] = 1.0 / d;
      out[0] = 0.0;
      break;
    }
    case KernelFamily::MWeighted: {
      // Closed edges send their share to the stay term; alpha runs over all edges.
      double a = 0.0;
      double closed = 0.0;
      for (const auto& arm : star.arms) {
        a += std::sqrt(arm.m_ratio);
        if (!arm.open) closed += std::sqrt(arm.m_ratio);
      }
      for (std::size_t i = 0; i < star.arms.size(); ++i)
        if (star.arms[i].open) out[i + 1] = std::sqrt(star.arms[i].m_ratio) / a;
      out[0] = closed / a;
      break;
    }
    case KernelFamily::Alili: {
      for (std::size_t i = 0; i < star.arms.size(); ++i) {
        if (star.arms[i].role == ArmRole::Right) out[i + 1] = star.param;
        if (star.arms[i].role == ArmRole::Left) out[i + 1] = 1.0 - star.param;
      }
      out[0] = 0.0;
      break;
    }
  }
  return out;
}

double TransitionDist::probability(const VertexId& y) const {
  double p = 0.0;
  for (const auto& [v, q] : entries)
    if (v == y) p += q;
  return p;
}

double TransitionDist::total() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.second;
  return s;
}

namespace {

LocalStar absolute_star(const KernelSpec& ks, const MarkSource& marks, const VertexId& x, const Neighbors& nbs) {
  const Space& space = ks.space;
  LocalStar star;
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    LocalArm arm;
    if (space.is_tree()) {
      arm.role = i == 0 ? ArmRole::Parent : ArmRole::Child;
    } else {
      arm.role = i == 0 ? ArmRole::Left : ArmRole::Right;
    }
    if (needs_percolation(ks.family)) arm.open = neighbor_edge_open(space, marks, x, i, nbs[i]);
    if (ks.family == KernelFamily::MWeighted) arm.m_ratio = space.m_ratio(x, nbs[i]).value();
    star.arms.push_back(arm);
  }
  if (ks.family == KernelFamily::Alili) star.param = marks.site_param(x);
  return star;
}

}  // namespace

TransitionDist kernel(const KernelSpec& ks, const MarkSource& marks, const VertexId& x) {
  ks.validate(marks);
  const Neighbors nbs = ks.space.neighbors(x);
  const auto probs = local_transition(ks.family, ks.space.degree(), absolute_star(ks, marks, x, nbs));
  TransitionDist dist;
  dist.entries.reserve(nbs.size() + 1);
  dist.entries.emplace_back(x, probs[0]);
  for (std::size_t i = 0; i < nbs.size(); ++i) dist.entries.emplace_back(nbs[i], probs[i + 1]);
  return dist;
}

double alpha(const Space& space, const VertexId& x) {
  double a = 0.0;
  for (const auto& y : space.neighbors(x)) a += std::sqrt(space.m_ratio(x, y).value());
  return a;
}

double alili_rho(const MarkSource& marks, std::int64_t k) {
  const double xi = marks.site_param(line_site(k));
  return (1.0 - xi) / xi;
}

double alili_A(const MarkSource& marks, std::int64_t x, double tol, int max_terms) {
  if (!(tol > 0.0)) throw InputError("Alili truncation tolerance must be positive");
  double sum = 1.0;  // n = x: empty product
  double product = 1.0;
  std::vector<double> partial;
  for (int n = 1; n <= max_terms; ++n) {
    product *= alili_rho(marks, x + n);
    sum += product;
    if (product < tol) return sum;
    if (n % 1000 == 0) partial.push_back(sum);
  }
  partial.push_back(sum);
  throw ConvergenceError("Alili series A(" + std::to_string(x) + ") did not converge within " +
                             std::to_string(max_terms) + " terms",
                         std::move(partial));
}

double nu(const KernelSpec& ks, const MarkSource& marks, const VertexId& x) {
  ks.validate(marks);
  switch (ks.family) {
    case KernelFamily::DelayedSrw: return 1.0;
    case KernelFamily::SrwClusters: {
      const int d = open_degree(ks.space, marks, x);
      return d > 0 ? static_cast<double>(d) : 1.0;
    }
    case KernelFamily::MWeighted: return alpha(ks.space, x);
    case KernelFamily::Alili: {
      // (1 + rho(x)) = 1 / xi(x).
      const double xi = marks.site_param(x);
      return alili_A(marks, x.head, ks.tol, ks.max_terms) / xi;
    }
  }
  return 0.0;
}

VertexId sample_step(const KernelSpec& ks, const MarkSource& marks, const VertexId& x, double u) {
  const TransitionDist dist = kernel(ks, marks, x);
  double cumulative = 0.0;
  const VertexId* last_positive = &dist.entries.front().first;
  for (const auto& [y, q] : dist.entries) {
    if (q <= 0.0) continue;
    cumulative += q;
    last_positive = &y;
    if (u < cumulative) return y;
  }
  return *last_positive;
}

namespace {

class KernelCache {
 public:
  KernelCache(const KernelSpec& ks, const MarkSource& marks) : ks_(ks), marks_(marks) {}

  const TransitionDist& dist(const VertexId& x) {
    auto it = dists_.find(x);
    if (it == dists_.end()) it = dists_.emplace(x, kernel(ks_, marks_, x)).first;
    return it->second;
  }

  double weight(const VertexId& x) {
    auto it = nus_.find(x);
    if (it == nus_.end()) it = nus_.emplace(x, nu(ks_, marks_, x)).first;
    return it->second;
  }

 private:
  const KernelSpec& ks_;
  const MarkSource& marks_;
  std::unordered_map<VertexId, TransitionDist> dists_;
  std::unordered_map<VertexId, double> nus_;
};

}  // namespace

BalanceReport global_balance_check(const KernelSpec& ks, const MarkSource& marks, std::span<const VertexId> window,
                                   double tol) {
  ks.validate(marks);
  const Space& space = ks.space;
  const std::unordered_map<VertexId, bool> members = [&] {
    std::unordered_map<VertexId, bool> m;
    for (const auto& v : window) m.emplace(v, true);
    return m;
  }();
  KernelCache cache(ks, marks);
  BalanceReport report;
  for (const VertexId& x : window) {
    const Neighbors nbs = space.neighbors(x);
    const bool interior =
        std::all_of(nbs.begin(), nbs.end(), [&](const VertexId& y) { return members.contains(y); });
    if (!interior) continue;
    double inflow = cache.weight(x) * cache.dist(x).probability(x);
    for (const VertexId& y : nbs)
      inflow += space.m_ratio(x, y).value() * cache.weight(y) * cache.dist(y).probability(x);
    const double residual = std::abs(inflow - cache.weight(x));
    report.residuals.push_back({x, std::nullopt, residual, residual < tol});
    report.max_residual = std::max(report.max_residual, residual);
  }
  report.pass = !report.residuals.empty() && report.max_residual < tol;
  return report;
}

BalanceReport detailed_balance_check(const KernelSpec& ks, const MarkSource& marks,
                                     std::span<const VertexId> window, double tol) {
  ks.validate(marks);
  const Space& space = ks.space;
  std::unordered_map<VertexId, bool> members;
  for (const auto& v : window) members.emplace(v, true);
  KernelCache cache(ks, marks);
  BalanceReport report;
  for (const VertexId& x : window) {
    for (const VertexId& y : space.neighbors(x)) {
      if (!members.contains(y)) continue;
      if (!(space.edge(x, y).low == x)) continue;  // each edge once
      const double forward = cache.weight(x) * cache.dist(x).probability(y);
      const double backward = space.m_ratio(x, y).value() * cache.weight(y) * cache.dist(y).probability(x);
      const double residual = std::abs(forward - backward);
      report.residuals.push_back({x, y, residual, residual < tol});
      report.max_residual = std::max(report.max_residual, residual);
    }
  }
  report.pass = !report.residuals.empty() && report.max_residual < tol;
  return report;
}

}  // namespace rwrers
