#pragma once

// Canonical rooted views: the window around a vertex (ball of radius r plus
// the trajectory segment that starts there), encoded so that two windows
// related by an element of the acting group produce identical encodings.
//
// The window is a finite subtree. It is rooted where the group leaves no
// choice: at the leftmost vertex on line kinds (translations only), at the
// vertex closest to the fixed end on TreeWithEnd, and at the centre on
// RegularTree. Child subtrees are sorted by their encodings on tree kinds,
// which quotients out exactly the child permutations the group allows.
// The byte format is documented in docs/rooted_view_format.md.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwrers/environment.hpp"
#include "rwrers/space.hpp"

namespace rwrers {

enum class EdgeMark : std::uint8_t { Closed = 0, Open = 1, Unmarked = 2 };

struct ViewNode {
  std::int32_t parent = -1;
  EdgeMark up_mark = EdgeMark::Unmarked;  // mark of the edge to `parent`
  std::vector<std::int32_t> children;     // canonical order
  std::uint8_t orbit = 1;
  bool center = false;
  std::optional<std::uint32_t> scenery;
  std::optional<double> param;
  std::vector<std::uint16_t> visits;  // segment times spent at this vertex
};

class RootedView {
 public:
  struct Arm {
    std::int32_t node;
    EdgeMark mark;
    bool toward_root;  // left on lines, parent on TreeWithEnd; never on RegularTree
  };

  const Space& space() const { return space_; }
  int radius() const { return radius_; }
  int horizon() const { return horizon_; }
  const std::vector<ViewNode>& nodes() const { return nodes_; }
  std::int32_t center() const { return center_; }
  const ViewNode& center_node() const { return nodes_[static_cast<std::size_t>(center_)]; }

  // Length-prefixed canonical encoding.
  const std::string& bytes() const { return bytes_; }

  // Edges at the centre: the one toward the root first (if any), then the
  // centre's children in canonical order.
  std::vector<Arm> center_arms() const;
  // Node visited at segment time t, or -1.
  std::int32_t visited_at(std::uint16_t t) const;

  friend bool operator==(const RootedView& a, const RootedView& b) { return a.bytes_ == b.bytes_; }

 private:
  friend RootedView canonical_rooted_view(const Space&, const VertexId&, int, const MarkSource&,
                                          std::span<const VertexId>);
  explicit RootedView(const Space& space) : space_(space) {}

  Space space_;
  int radius_ = 0;
  int horizon_ = 0;
  std::vector<ViewNode> nodes_;
  std::int32_t center_ = 0;
  std::string bytes_;
};

// `segment` may be empty; otherwise segment[0] must equal `center`.
RootedView canonical_rooted_view(const Space& space, const VertexId& center, int radius, const MarkSource& marks,
                                 std::span<const VertexId> segment);

}  // namespace rwrers
