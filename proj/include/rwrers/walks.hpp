#pragma once

// Transition kernels p(x, .), stationary weights nu(x) and balance checks
// for the four walk families.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwrers/environment.hpp"
#include "rwrers/space.hpp"

namespace rwrers {

enum class KernelFamily : std::uint8_t {
  DelayedSrw,   // 1/D per open edge, rest stays
  SrwClusters,  // 1/d(x) per open edge, stays only when isolated
  Alili,        // nearest-neighbour walk on Z with right-probability xi(x)
  MWeighted,    // alpha(x)^-1 sqrt(m(y)/m(x)) per open edge, rest stays
};

std::string to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);
bool needs_percolation(KernelFamily family);
// DelayedSrw, SrwClusters and MWeighted are reversible; Alili is not.
bool is_reversible(KernelFamily family);

struct KernelSpec {
  KernelFamily family = KernelFamily::DelayedSrw;
  Space space = Space::regular_tree(3);
  double tol = 1e-12;      // Alili series truncation
  int max_terms = 10'000;  // Alili iteration cap

  // Throws ConfigError when the family does not fit the space or marks.
  void validate(const MarkSource& marks) const;
  void validate_space() const;
};

// One edge around a vertex as the kernel formulas see it.
enum class ArmRole : std::uint8_t { Left, Right, Parent, Child, Neighbor };

struct LocalArm {
  ArmRole role = ArmRole::Neighbor;
  bool open = true;
  double m_ratio = 1.0;  // m(y)/m(x)
};

struct LocalStar {
  boost::container::small_vector<LocalArm, 4> arms;
  double param = 0.5;  // xi(x), Alili only
};

// [stay, p(arm 0), p(arm 1), ...]. Shared by the absolute kernel below and
// by observables that read the kernel off a canonical rooted view.
boost::container::small_vector<double, 5> local_transition(KernelFamily family, int space_degree,
                                                            const LocalStar& star);

struct TransitionDist {
  // Entry 0 is x itself, then x's neighbours in canonical order.
  std::vector<std::pair<VertexId, double>> entries;

  double probability(const VertexId& y) const;
  double total() const;
};

TransitionDist kernel(const KernelSpec& ks, const MarkSource& marks, const VertexId& x);

// alpha(x) = sum over all edges [x, y] of sqrt(m(y)/m(x)).
double alpha(const Space& space, const VertexId& x);

double nu(const KernelSpec& ks, const MarkSource& marks, const VertexId& x);

// rho(k) = (1 - xi(k)) / xi(k).
double alili_rho(const MarkSource& marks, std::int64_t k);

// A(x) = sum_{n >= x} prod_{k = x+1}^{n} rho(k), stopped once the running
// product drops below tol. Throws ConvergenceError after max_terms terms.
double alili_A(const MarkSource& marks, std::int64_t x, double tol, int max_terms = 10'000);

// Draws the next state by inverting the CDF of kernel(x) at u in [0, 1).
VertexId sample_step(const KernelSpec& ks, const MarkSource& marks, const VertexId& x, double u);

struct BalanceResidual {
  VertexId site;
  std::optional<VertexId> other;  // set for edge (detailed) checks
  double residual = 0.0;
  bool pass = true;
};

struct BalanceReport {
  std::vector<BalanceResidual> residuals;
  double max_residual = 0.0;
  bool pass = false;
};

// Checks sum_y m(y) nu(y) p(y, x) = m(x) nu(x) at every window site whose
// neighbours all lie in the window (residuals are divided by m(x)).
BalanceReport global_balance_check(const KernelSpec& ks, const MarkSource& marks, std::span<const VertexId> window,
                                   double tol);

// Checks m(x) nu(x) p(x, y) = m(y) nu(y) p(y, x) on every window edge.
BalanceReport detailed_balance_check(const KernelSpec& ks, const MarkSource& marks,
                                     std::span<const VertexId> window, double tol);

}  // namespace rwrers
