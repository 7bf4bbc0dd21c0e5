#pragma once

#include <map>
#include <random>
#include <vector>

#include "rwrers/environment.hpp"
#include "rwrers/errors.hpp"
#include "rwrers/space.hpp"

namespace rwrers::test {

inline std::vector<Space> all_spaces() {
  return {Space::line(), Space::subdivided_line(), Space::regular_tree(3), Space::tree_with_end(3),
          Space::regular_tree(4), Space::tree_with_end(4)};
}

// Endpoint of a random non-lazy walk of `steps` steps from the origin.
inline VertexId random_vertex(const Space& space, std::mt19937_64& rng, int steps = 8) {
  VertexId v = space.origin();
  for (int i = 0; i < steps; ++i) {
    const Neighbors nbs = space.neighbors(v);
    v = nbs[std::uniform_int_distribution<std::size_t>(0, nbs.size() - 1)(rng)];
  }
  return v;
}

// Marks given by an explicit edge table; unlisted edges are `fallback`.
class TableMarks final : public MarkSource {
 public:
  explicit TableMarks(bool fallback = false) : fallback_(fallback) {}

  void set(const EdgeId& e, bool open) { edges_[e] = open; }

  bool has_percolation() const override { return true; }
  bool has_site_params() const override { return false; }
  bool has_scenery() const override { return false; }
  std::uint32_t palette() const override { return 1; }

  using MarkSource::edge_open;
  bool edge_open(const VertexId& low, const VertexId& high) const override {
    const auto it = edges_.find(EdgeId{low, high});
    return it == edges_.end() ? fallback_ : it->second;
  }
  double site_param(const VertexId&) const override { throw ConfigError("no site parameters"); }
  std::uint32_t scenery_color(const VertexId&) const override { throw ConfigError("no scenery"); }

 private:
  struct Less {
    bool operator()(const EdgeId& a, const EdgeId& b) const {
      if (!(a.low == b.low)) return a.low < b.low;
      return a.high < b.high;
    }
  };
  std::map<EdgeId, bool, Less> edges_;
  bool fallback_;
};

}  // namespace rwrers::test
