#include "rwrers/rooted_view.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <unordered_map>
#include <unordered_set>

#include "rwrers/errors.hpp"

namespace rwrers {

namespace {

constexpr std::uint8_t kFormatVersion = 1;

struct Proto {
  ViewNode node;
  std::string encoding;  // node encoding including sorted children
  std::vector<Proto> kids;
};

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Builder {
 public:
  Builder(const Space& space, const MarkSource& marks, const std::unordered_set<VertexId>& window,
          const std::unordered_map<VertexId, std::vector<std::uint16_t>>& visits, const VertexId& center)
      : space_(space), marks_(marks), window_(window), visits_(visits), center_(center) {}

  Proto build(const VertexId& v, const VertexId* parent) const {
    Proto p;
    p.node.orbit = static_cast<std::uint8_t>(space_.orbit_of(v));
    p.node.center = (v == center_);
    if (marks_.has_scenery()) p.node.scenery = marks_.scenery_color(v);
    if (marks_.has_site_params()) p.node.param = marks_.site_param(v);
    if (auto it = visits_.find(v); it != visits_.end()) p.node.visits = it->second;

    const Neighbors nbs = space_.neighbors(v);
    for (std::size_t k = 0; k < nbs.size(); ++k) {
      if (parent && nbs[k] == *parent) continue;
      if (!window_.contains(nbs[k])) continue;
      Proto kid = build(nbs[k], &v);
      kid.node.up_mark = EdgeMark::Unmarked;
      if (marks_.has_percolation())
        kid.node.up_mark = neighbor_edge_open(space_, marks_, v, k, nbs[k]) ? EdgeMark::Open : EdgeMark::Closed;
      kid.encoding.insert(kid.encoding.begin(), static_cast<char>(kid.node.up_mark));
      p.kids.push_back(std::move(kid));
    }
    if (space_.is_tree()) {
      std::sort(p.kids.begin(), p.kids.end(),
                [](const Proto& a, const Proto& b) { return a.encoding < b.encoding; });
    }

    std::string& enc = p.encoding;
    std::uint8_t flags = 0;
    if (p.node.center) flags |= 1;
    if (p.node.scenery) flags |= 2;
    if (p.node.param) flags |= 4;
    enc.push_back(static_cast<char>(flags));
    enc.push_back(static_cast<char>(p.node.orbit));
    if (p.node.scenery) put_u32(enc, *p.node.scenery);
    if (p.node.param) put_u64(enc, std::bit_cast<std::uint64_t>(*p.node.param));
    enc.push_back(static_cast<char>(p.node.visits.size()));
    for (std::uint16_t t : p.node.visits) put_u16(enc, t);
    enc.push_back(static_cast<char>(p.kids.size()));
    for (const Proto& kid : p.kids) enc += kid.encoding;
    return p;
  }

 private:
  const Space& space_;
  const MarkSource& marks_;
  const std::unordered_set<VertexId>& window_;
  const std::unordered_map<VertexId, std::vector<std::uint16_t>>& visits_;
  const VertexId& center_;
};

void flatten(Proto& p, std::int32_t parent, std::vector<ViewNode>& out, std::int32_t& center) {
  const auto index = static_cast<std::int32_t>(out.size());
  p.node.parent = parent;
  if (p.node.center) center = index;
  out.push_back(std::move(p.node));
  for (Proto& kid : p.kids) {
    const auto child_index = static_cast<std::int32_t>(out.size());
    out[static_cast<std::size_t>(index)].children.push_back(child_index);
    flatten(kid, index, out, center);
  }
}

}  // namespace

std::vector<RootedView::Arm> RootedView::center_arms() const {
  std::vector<Arm> arms;
  const ViewNode& c = center_node();
  if (c.parent >= 0) arms.push_back({c.parent, c.up_mark, true});
  for (std::int32_t k : c.children) arms.push_back({k, nodes_[static_cast<std::size_t>(k)].up_mark, false});
  return arms;
}

std::int32_t RootedView::visited_at(std::uint16_t t) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& v = nodes_[i].visits;
    if (std::find(v.begin(), v.end(), t) != v.end()) return static_cast<std::int32_t>(i);
  }
  return -1;
}

RootedView canonical_rooted_view(const Space& space, const VertexId& center, int radius, const MarkSource& marks,
                                 std::span<const VertexId> segment) {
  if (radius < 0) throw InputError("view radius must be >= 0");
  if (radius > 0xffff || segment.size() > 255) throw InputError("view window or segment too large");
  if (!segment.empty() && !(segment.front() == center))
    throw InputError("trajectory segment must start at the view centre");

  std::vector<VertexId> members = space.ball(center, radius);
  std::unordered_set<VertexId> window(members.begin(), members.end());
  std::unordered_map<VertexId, std::vector<std::uint16_t>> visits;
  for (std::size_t t = 0; t < segment.size(); ++t) {
    if (t > 0 && !(segment[t] == segment[t - 1]) && !space.adjacent(segment[t], segment[t - 1]))
      throw InputError("trajectory segment is not a nearest-neighbour path");
    visits[segment[t]].push_back(static_cast<std::uint16_t>(t));
    if (window.insert(segment[t]).second) members.push_back(segment[t]);
  }

  VertexId root = center;
  switch (space.kind()) {
    case SpaceKind::RegularTree: break;
    case SpaceKind::TreeWithEnd:
      for (const VertexId& v : members)
        if (space.level(v) > space.level(root)) root = v;
      break;
    case SpaceKind::Line:
    case SpaceKind::SubdividedLine:
      for (const VertexId& v : members)
        if (v.head < root.head) root = v;
      break;
  }

  const Builder builder(space, marks, window, visits, center);
  Proto top = builder.build(root, nullptr);

  RootedView view(space);
  view.radius_ = radius;
  view.horizon_ = segment.empty() ? 0 : static_cast<int>(segment.size()) - 1;

  std::string payload;
  payload.push_back(static_cast<char>(kFormatVersion));
  payload.push_back(static_cast<char>(space.kind()));
  payload.push_back(static_cast<char>(space.degree()));
  put_u16(payload, static_cast<std::uint16_t>(radius));
  put_u16(payload, static_cast<std::uint16_t>(view.horizon_));
  std::uint8_t modes = 0;
  if (marks.has_percolation()) modes |= 1;
  if (marks.has_site_params()) modes |= 2;
  if (marks.has_scenery()) modes |= 4;
  payload.push_back(static_cast<char>(modes));
  payload += top.encoding;

  view.bytes_.reserve(payload.size() + 4);
  put_u32(view.bytes_, static_cast<std::uint32_t>(payload.size()));
  view.bytes_ += payload;

  flatten(top, -1, view.nodes_, view.center_);
  return view;
}

}  // namespace rwrers
