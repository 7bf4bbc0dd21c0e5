#pragma once

// Lazily evaluated random environments.
//
// Marks are pure functions of (seed, stream tag, canonical id), drawn from
// a counter-based PRF, so an infinite space never has to be sampled up
// front and replays are independent of query order.

#include <cstdint>
#include <vector>

#include "rwrers/automorphism.hpp"
#include "rwrers/prf.hpp"
#include "rwrers/space.hpp"

namespace rwrers {

struct EnvConfig {
  std::uint64_t seed = 0;
  double p = 2.0 / 3.0;  // edge-open probability
  double a = 0.6;        // site parameters are uniform on (a, b)
  double b = 0.9;
  std::uint32_t palette = 4;  // scenery colours 0..palette-1
  bool percolation = true;
  bool site_params = false;
  bool scenery = true;

  void validate() const;
  friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

// Read access to the marks of one environment sample.
class MarkSource {
 public:
  virtual ~MarkSource() = default;

  virtual bool has_percolation() const = 0;
  virtual bool has_site_params() const = 0;
  virtual bool has_scenery() const = 0;
  virtual std::uint32_t palette() const = 0;

  // `low` is the canonical key endpoint of the edge (see EdgeId).
  virtual bool edge_open(const VertexId& low, const VertexId& high) const = 0;
  virtual double site_param(const VertexId& v) const = 0;
  virtual std::uint32_t scenery_color(const VertexId& v) const = 0;

  bool edge_open(const EdgeId& e) const { return edge_open(e.low, e.high); }
};

class Environment final : public MarkSource {
 public:
  explicit Environment(const EnvConfig& config);

  const EnvConfig& config() const { return config_; }

  bool has_percolation() const override { return config_.percolation; }
  bool has_site_params() const override { return config_.site_params; }
  bool has_scenery() const override { return config_.scenery; }
  std::uint32_t palette() const override { return config_.palette; }

  using MarkSource::edge_open;
  bool edge_open(const VertexId& low, const VertexId& high) const override;
  double site_param(const VertexId& v) const override;
  std::uint32_t scenery_color(const VertexId& v) const override;

 private:
  EnvConfig config_;
  CounterPrf edges_;
  CounterPrf params_;
  CounterPrf colors_;
};

// The image g * env of an environment: marks at v are the base marks at g^-1 v.
class TransformedMarks final : public MarkSource {
 public:
  TransformedMarks(const MarkSource& base, const Automorphism& g) : base_(base), g_(g) {}

  bool has_percolation() const override { return base_.has_percolation(); }
  bool has_site_params() const override { return base_.has_site_params(); }
  bool has_scenery() const override { return base_.has_scenery(); }
  std::uint32_t palette() const override { return base_.palette(); }

  using MarkSource::edge_open;
  bool edge_open(const VertexId& low, const VertexId& high) const override;
  double site_param(const VertexId& v) const override { return base_.site_param(g_.apply_inverse(v)); }
  std::uint32_t scenery_color(const VertexId& v) const override {
    return base_.scenery_color(g_.apply_inverse(v));
  }

 private:
  const MarkSource& base_;
  const Automorphism& g_;
};

// Site parameters fixed to one value everywhere; no other marks. Used for
// closed-form checks of the Alili walk.
class ConstantSiteParams final : public MarkSource {
 public:
  explicit ConstantSiteParams(double value);

  bool has_percolation() const override { return false; }
  bool has_site_params() const override { return true; }
  bool has_scenery() const override { return false; }
  std::uint32_t palette() const override { return 1; }

  using MarkSource::edge_open;
  bool edge_open(const VertexId& low, const VertexId& high) const override;
  double site_param(const VertexId&) const override { return value_; }
  std::uint32_t scenery_color(const VertexId& v) const override;

 private:
  double value_;
};

// Whether the edge between v and its i-th canonical neighbour is open.
bool neighbor_edge_open(const Space& space, const MarkSource& marks, const VertexId& v, std::size_t index,
                        const VertexId& neighbor);

// Open degree d(v).
int open_degree(const Space& space, const MarkSource& marks, const VertexId& v);

struct ClusterResult {
  std::vector<VertexId> vertices;  // C(v) within distance R, breadth-first order
  bool boundary_hit = false;       // some cluster vertex at distance exactly R
};

ClusterResult cluster_explore(const MarkSource& marks, const Space& space, const VertexId& v, int max_radius);

struct ClusterProbe {
  std::size_t size = 0;
  bool boundary_hit = false;
};

// Same cluster statistics without materialising the vertex set. When
// `blocked` is given, exploration never crosses to that neighbour of v.
// With `stop_at_boundary` the search returns as soon as distance R is hit
// (size is then a lower bound).
ClusterProbe cluster_probe(const MarkSource& marks, const Space& space, const VertexId& v, int max_radius,
                           bool stop_at_boundary = false, const VertexId* blocked = nullptr);

}  // namespace rwrers
