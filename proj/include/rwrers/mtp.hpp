#pragma once

// Exact evaluation of both sides of the mass-transport identity
//   sum_i sum_z E f(o_i, z) = sum_j sum_y m(y)/m(o_j) E f(y, o_j)
// for transport functions of finite support that read finitely many edges.
// The expectation is a finite sum over every open/closed pattern of those
// edges.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rwrers/environment.hpp"
#include "rwrers/space.hpp"

namespace rwrers {

struct TransportFn {
  std::string name;
  int support = 0;  // f(x, y) = 0 whenever d(x, y) > support
  // Edges f(x, y) may read.
  std::function<std::vector<EdgeId>(const Space&, const VertexId&, const VertexId&)> dependencies;
  std::function<double(const Space&, const VertexId&, const VertexId&, const MarkSource&)> value;
  bool needs_tree = false;
};

TransportFn transport_zero();
// 1{y is the parent of x}.
TransportFn transport_parent_indicator();
// 1{x ~ y and [x, y] open}.
TransportFn transport_one_edge();
// 1{d(x, y) <= s and x, y connected along the path}; includes y = x.
TransportFn transport_cluster_within(int s);
// Depends on absolute coordinates, hence not invariant.
TransportFn transport_absolute_coordinate();

std::vector<std::string> transport_names();
TransportFn transport_by_name(std::string_view name);  // throws ConfigError

struct MtpSides {
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t patterns = 0;  // mark patterns enumerated over both sides
};

// Throws ResourceError when one side depends on more than max_edges edges.
MtpSides mtp_sides(const Space& space, const TransportFn& f, double p, int max_edges = 20);

struct InvarianceCheck {
  bool invariant = true;
  int trials = 0;
  std::string detail;  // first counterexample, if any
};

// Compares f(x, y, env) with f(gx, gy, g env) for random automorphisms g,
// environments and pairs within the support.
InvarianceCheck invariance_pretest(const Space& space, const TransportFn& f, double p, std::uint64_t seed,
                                   int trials = 64);

struct MtpReport {
  InvarianceCheck invariance;
  bool evaluated = false;
  MtpSides sides;
  double difference = 0.0;
  bool pass = false;
};

// Runs the invariance pretest and, only if it passes, both sides.
MtpReport mtp_check(const Space& space, const TransportFn& f, double p, double tol, std::uint64_t seed);

}  // namespace rwrers
