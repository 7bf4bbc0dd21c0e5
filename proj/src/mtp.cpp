#include "rwrers/mtp.hpp"

#include <algorithm>
#include <cmath>

#include "rwrers/automorphism.hpp"
#include "rwrers/errors.hpp"
#include "rwrers/prf.hpp"

namespace rwrers {

namespace {

std::vector<EdgeId> path_edges(const Space& space, const VertexId& x, const VertexId& y) {
  const std::vector<VertexId> path = space.path(x, y);
  std::vector<EdgeId> out;
  for (std::size_t i = 1; i < path.size(); ++i) out.push_back(space.edge(path[i - 1], path[i]));
  return out;
}

// Marks given by an explicit pattern over a fixed edge list.
class PatternMarks final : public MarkSource {
 public:
  PatternMarks(const std::vector<EdgeId>& edges, std::uint64_t pattern) : edges_(edges), pattern_(pattern) {}

  bool has_percolation() const override { return true; }
  bool has_site_params() const override { return false; }
  bool has_scenery() const override { return false; }
  std::uint32_t palette() const override { return 1; }

  using MarkSource::edge_open;
  bool edge_open(const VertexId& low, const VertexId& high) const override {
    const EdgeId e{low, high};
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i] == e) return (pattern_ >> i) & 1U;
    throw DomainError("transport function read an edge outside its declared dependencies");
  }
  double site_param(const VertexId&) const override { throw DomainError("no site parameters"); }
  std::uint32_t scenery_color(const VertexId&) const override { throw DomainError("no scenery"); }

 private:
  const std::vector<EdgeId>& edges_;
  std::uint64_t pattern_;
};

struct Term {
  VertexId x;
  VertexId y;
  long double factor;
};

// E sum_terms factor * f(x, y) by enumeration over the union of dependencies.
long double expectation(const Space& space, const TransportFn& f, double p, const std::vector<Term>& terms,
                        int max_edges, std::size_t& patterns) {
  std::vector<EdgeId> edges;
  for (const Term& t : terms)
    for (const EdgeId& e : f.dependencies(space, t.x, t.y))
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  if (static_cast<int>(edges.size()) > max_edges)
    throw ResourceError("transport function depends on " + std::to_string(edges.size()) +
                        " edges; at most " + std::to_string(max_edges) + " can be enumerated");
  const std::uint64_t count = std::uint64_t{1} << edges.size();
  long double total = 0.0L;
  for (std::uint64_t pattern = 0; pattern < count; ++pattern) {
    long double prob = 1.0L;
    for (std::size_t i = 0; i < edges.size(); ++i) prob *= ((pattern >> i) & 1U) ? p : 1.0L - p;
    if (prob == 0.0L) continue;
    const PatternMarks marks(edges, pattern);
    long double inner = 0.0L;
    for (const Term& t : terms) inner += t.factor * f.value(space, t.x, t.y, marks);
    total += prob * inner;
    ++patterns;
  }
  return total;
}

}  // namespace

TransportFn transport_zero() {
  TransportFn f;
  f.name = "zero";
  f.dependencies = [](const Space&, const VertexId&, const VertexId&) { return std::vector<EdgeId>{}; };
  f.value = [](const Space&, const VertexId&, const VertexId&, const MarkSource&) { return 0.0; };
  return f;
}

TransportFn transport_parent_indicator() {
  TransportFn f;
  f.name = "parent-indicator";
  f.support = 1;
  f.needs_tree = true;
  f.dependencies = [](const Space&, const VertexId&, const VertexId&) { return std::vector<EdgeId>{}; };
  f.value = [](const Space& space, const VertexId& x, const VertexId& y, const MarkSource&) {
    return space.parent(x) == y ? 1.0 : 0.0;
  };
  return f;
}

TransportFn transport_one_edge() {
  TransportFn f;
  f.name = "one-edge";
  f.support = 1;
  f.dependencies = [](const Space& space, const VertexId& x, const VertexId& y) {
    return space.adjacent(x, y) ? std::vector<EdgeId>{space.edge(x, y)} : std::vector<EdgeId>{};
  };
  f.value = [](const Space& space, const VertexId& x, const VertexId& y, const MarkSource& marks) {
    return space.adjacent(x, y) && marks.edge_open(space.edge(x, y)) ? 1.0 : 0.0;
  };
  return f;
}

TransportFn transport_cluster_within(int s) {
  TransportFn f;
  f.name = "cluster-within-" + std::to_string(s);
  f.support = s;
  f.dependencies = [s](const Space& space, const VertexId& x, const VertexId& y) {
    return space.distance(x, y) <= s ? path_edges(space, x, y) : std::vector<EdgeId>{};
  };
  f.value = [s](const Space& space, const VertexId& x, const VertexId& y, const MarkSource& marks) {
    if (space.distance(x, y) > s) return 0.0;
    for (const EdgeId& e : path_edges(space, x, y))
      if (!marks.edge_open(e)) return 0.0;
    return 1.0;
  };
  return f;
}

TransportFn transport_absolute_coordinate() {
  TransportFn f;
  f.name = "absolute-coordinate";
  f.dependencies = [](const Space&, const VertexId&, const VertexId&) { return std::vector<EdgeId>{}; };
  f.value = [](const Space&, const VertexId& x, const VertexId& y, const MarkSource&) {
    return x == y && ((x.head % 4) + 4) % 4 == 0 ? 1.0 : 0.0;
  };
  return f;
}

std::vector<std::string> transport_names() {
  return {"zero", "parent-indicator", "one-edge", "cluster-within-2", "absolute-coordinate"};
}

TransportFn transport_by_name(std::string_view name) {
  if (name == "zero") return transport_zero();
  if (name == "parent-indicator") return transport_parent_indicator();
  if (name == "one-edge") return transport_one_edge();
  if (name == "cluster-within-2") return transport_cluster_within(2);
  if (name == "absolute-coordinate") return transport_absolute_coordinate();
  throw ConfigError("unknown transport function '" + std::string(name) +
                    "' (expected zero, parent-indicator, one-edge, cluster-within-2 or absolute-coordinate)");
}

MtpSides mtp_sides(const Space& space, const TransportFn& f, double p, int max_edges) {
  if (f.needs_tree && !space.is_tree())
    throw ConfigError("transport function '" + f.name + "' needs a tree space, got space '" + space.name() + "'");
  MtpSides sides;
  long double lhs = 0.0L;
  long double rhs = 0.0L;
  for (const VertexId& o : space.representatives()) {
    std::vector<Term> out_terms;
    std::vector<Term> in_terms;
    for (const VertexId& z : space.ball(o, f.support)) {
      out_terms.push_back({o, z, 1.0L});
      in_terms.push_back({z, o, static_cast<long double>(space.m_ratio_between(o, z).value())});
    }
    lhs += expectation(space, f, p, out_terms, max_edges, sides.patterns);
    rhs += expectation(space, f, p, in_terms, max_edges, sides.patterns);
  }
  sides.lhs = static_cast<double>(lhs);
  sides.rhs = static_cast<double>(rhs);
  return sides;
}

InvarianceCheck invariance_pretest(const Space& space, const TransportFn& f, double p, std::uint64_t seed,
                                   int trials) {
  if (f.needs_tree && !space.is_tree())
    throw ConfigError("transport function '" + f.name + "' needs a tree space, got space '" + space.name() + "'");
  InvarianceCheck check;
  const std::vector<VertexId> near = space.ball(space.origin(), 3);
  const CounterPrf prf(seed, stream::kSeedGen);
  for (int t = 0; t < trials; ++t) {
    const auto ut = static_cast<std::uint64_t>(t);
    const Automorphism g = Automorphism::random(space, prf.bits(ut, 0));
    EnvConfig ec;
    ec.seed = prf.bits(ut, 1);
    ec.p = p;
    ec.scenery = false;
    const Environment env(ec);
    const TransformedMarks moved(env, g);
    const VertexId& x = near[to_range(prf.bits(ut, 2), near.size())];
    const std::vector<VertexId> around = space.ball(x, f.support);
    const VertexId& y = around[to_range(prf.bits(ut, 3), around.size())];
    const double before = f.value(space, x, y, env);
    const double after = f.value(space, g.apply(x), g.apply(y), moved);
    ++check.trials;
    if (std::abs(before - after) > 1e-12) {
      check.invariant = false;
      check.detail = "f(" + space.format(x) + ", " + space.format(y) + ") = " + std::to_string(before) +
                     " but f at the image pair (" + space.format(g.apply(x)) + ", " + space.format(g.apply(y)) +
                     ") = " + std::to_string(after);
      return check;
    }
  }
  return check;
}

MtpReport mtp_check(const Space& space, const TransportFn& f, double p, double tol, std::uint64_t seed) {
  MtpReport report;
  report.invariance = invariance_pretest(space, f, p, seed);
  if (!report.invariance.invariant) return report;
  report.sides = mtp_sides(space, f, p);
  report.evaluated = true;
  report.difference = std::abs(report.sides.lhs - report.sides.rhs);
  report.pass = report.difference <= tol;
  return report;
}

}  // namespace rwrers
