#include "rwrers/environment.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "rwrers/errors.hpp"

namespace rwrers {

namespace {

using KeyBuffer = boost::container::small_vector<std::uint8_t, 64>;

void vertex_key(const VertexId& v, KeyBuffer& out) {
  const auto head = static_cast<std::uint64_t>(v.head);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(head >> (8 * i)));
  out.insert(out.end(), v.word.begin(), v.word.end());
}

std::uint64_t keyed_bits(const CounterPrf& prf, const VertexId& v) {
  std::uint8_t buf[8 + 56];
  if (v.word.size() <= 56) {
    const auto head = static_cast<std::uint64_t>(v.head);
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(head >> (8 * i));
    if (!v.word.empty()) std::memcpy(buf + 8, v.word.data(), v.word.size());
    return prf.bits(std::span<const std::uint8_t>(buf, 8 + v.word.size()));
  }
  KeyBuffer key;
  vertex_key(v, key);
  return prf.bits(std::span<const std::uint8_t>(key.data(), key.size()));
}

}  // namespace

void EnvConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1], got " + std::to_string(p));
  if (!(a > 0.0 && a < b && b < 1.0))
    throw ConfigError("site-parameter range needs 0 < a < b < 1, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b));
  if (palette < 1) throw ConfigError("scenery palette size must be >= 1");
}

Environment::Environment(const EnvConfig& config)
    : config_(config),
      edges_(config.seed, stream::kEdge),
      params_(config.seed, stream::kSiteParam),
      colors_(config.seed, stream::kScenery) {
  config_.validate();
}

bool Environment::edge_open(const VertexId& low, const VertexId&) const {
  if (!config_.percolation) throw ConfigError("edge marks queried with percolation mode off");
  return to_unit_closed_open(keyed_bits(edges_, low)) < config_.p;
}

double Environment::site_param(const VertexId& v) const {
  if (!config_.site_params) throw ConfigError("site parameters queried with site-params mode off");
  return config_.a + (config_.b - config_.a) * to_unit_open(keyed_bits(params_, v));
}

std::uint32_t Environment::scenery_color(const VertexId& v) const {
  if (!config_.scenery) throw ConfigError("scenery queried with scenery mode off");
  return static_cast<std::uint32_t>(to_range(keyed_bits(colors_, v), config_.palette));
}

bool TransformedMarks::edge_open(const VertexId& low, const VertexId& high) const {
  return base_.edge_open(g_.space().edge(g_.apply_inverse(low), g_.apply_inverse(high)));
}

ConstantSiteParams::ConstantSiteParams(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) throw ConfigError("constant site parameter must lie in (0, 1]");
}

bool ConstantSiteParams::edge_open(const VertexId&, const VertexId&) const {
  throw ConfigError("edge marks queried with percolation mode off");
}

std::uint32_t ConstantSiteParams::scenery_color(const VertexId&) const {
  throw ConfigError("scenery queried with scenery mode off");
}

bool neighbor_edge_open(const Space& space, const MarkSource& marks, const VertexId& v, std::size_t index,
                        const VertexId& neighbor) {
  // Trees list the parent first; lines list the left neighbour first.
  const bool v_is_low = space.is_tree() ? index == 0 : index == 1;
  return v_is_low ? marks.edge_open(v, neighbor) : marks.edge_open(neighbor, v);
}

int open_degree(const Space& space, const MarkSource& marks, const VertexId& v) {
  const Neighbors nbs = space.neighbors(v);
  int d = 0;
  for (std::size_t i = 0; i < nbs.size(); ++i) d += neighbor_edge_open(space, marks, v, i, nbs[i]) ? 1 : 0;
  return d;
}

ClusterResult cluster_explore(const MarkSource& marks, const Space& space, const VertexId& v, int max_radius) {
  if (max_radius < 0) throw InputError("cluster radius must be >= 0");
  ClusterResult out;
  out.vertices.push_back(v);
  std::vector<std::size_t> from{static_cast<std::size_t>(-1)};
  std::size_t begin = 0;
  for (int d = 0; d < max_radius && begin < out.vertices.size(); ++d) {
    const std::size_t end = out.vertices.size();
    for (std::size_t i = begin; i < end; ++i) {
      const VertexId cur = out.vertices[i];
      const Neighbors nbs = space.neighbors(cur);
      for (std::size_t k = 0; k < nbs.size(); ++k) {
        if (from[i] != static_cast<std::size_t>(-1) && nbs[k] == out.vertices[from[i]]) continue;
        if (!neighbor_edge_open(space, marks, cur, k, nbs[k])) continue;
        out.vertices.push_back(nbs[k]);
        from.push_back(i);
        if (d + 1 == max_radius) out.boundary_hit = true;
      }
    }
    begin = end;
  }
  if (max_radius == 0) out.boundary_hit = false;
  return out;
}

ClusterProbe cluster_probe(const MarkSource& marks, const Space& space, const VertexId& v, int max_radius,
                           bool stop_at_boundary, const VertexId* blocked) {
  if (max_radius < 0) throw InputError("cluster radius must be >= 0");
  struct Frame {
    VertexId at;
    VertexId from;
    bool has_from;
    int depth;
  };
  ClusterProbe out;
  std::vector<Frame> stack;
  stack.reserve(64);
  if (blocked) {
    stack.push_back({v, *blocked, true, 0});
  } else {
    stack.push_back({v, VertexId{}, false, 0});
  }
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    ++out.size;
    if (f.depth == max_radius) {
      if (max_radius > 0) {
        out.boundary_hit = true;
        if (stop_at_boundary) return out;
      }
      continue;
    }
    const Neighbors nbs = space.neighbors(f.at);
    for (std::size_t k = nbs.size(); k-- > 0;) {
      if (f.has_from && nbs[k] == f.from) continue;
      if (!neighbor_edge_open(space, marks, f.at, k, nbs[k])) continue;
      stack.push_back({nbs[k], f.at, true, f.depth + 1});
    }
  }
  return out;
}

}  // namespace rwrers
