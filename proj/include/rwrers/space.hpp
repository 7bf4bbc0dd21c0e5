#pragma once

// Homogeneous state spaces and their symmetry data.
//
// All four space families are trees (the two line kinds are paths), which
// the rest of the library relies on: paths between vertices are unique and
// cluster exploration never needs a visited set.
//
// Tree vertices are labelled relative to a fixed end. Every vertex has one
// parent (one step toward the end) and D-1 children indexed 0..D-2. The
// origin's ancestors a_1, a_2, ... are each the child 0 of the next. A label
// (u, w) means "go up u steps from the origin, then descend along w"; it is
// canonical when u == 0 or w is empty or w[0] != 0. The Busemann level of
// (u, w) is u - |w|, increasing toward the end. RegularTree and TreeWithEnd
// share the labelling; only the acting group differs.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rwrers {

enum class SpaceKind : std::uint8_t {
  Line = 0,
  SubdividedLine = 1,
  RegularTree = 2,
  TreeWithEnd = 3,
};

using Word = boost::container::small_vector<std::uint8_t, 40>;

// Line: head is the integer position. SubdividedLine: head counts half
// units, so even heads are integer sites and odd heads are midpoints.
// Trees: head is the number of up-steps u and word the descent letters.
struct VertexId {
  std::int64_t head = 0;
  Word word;

  friend bool operator==(const VertexId& a, const VertexId& b) {
    return a.head == b.head && a.word == b.word;
  }
  friend bool operator<(const VertexId& a, const VertexId& b) {
    if (a.head != b.head) return a.head < b.head;
    return a.word < b.word;
  }
};

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept;
};

// Unordered edge in canonical order: `low` is the child endpoint on trees
// and the left endpoint on lines. Edge marks are keyed by `low`.
struct EdgeId {
  VertexId low;
  VertexId high;

  friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

// m(y)/m(x) stored exactly as base^exponent.
struct StabWeightRatio {
  std::int64_t base = 1;
  std::int64_t exponent = 0;

  static StabWeightRatio one() { return {}; }
  static StabWeightRatio power(std::int64_t base, std::int64_t exponent);

  double value() const;
  StabWeightRatio inverse() const { return power(base, -exponent); }

  friend StabWeightRatio operator*(const StabWeightRatio& a, const StabWeightRatio& b);
  friend bool operator==(const StabWeightRatio&, const StabWeightRatio&) = default;
};

using Neighbors = boost::container::small_vector<VertexId, 4>;

class Space {
 public:
  static Space line() { return Space(SpaceKind::Line, 2); }
  static Space subdivided_line() { return Space(SpaceKind::SubdividedLine, 2); }
  static Space regular_tree(int degree);
  static Space tree_with_end(int degree);

  // Accepts "line", "subdivided-line", "treeD", "tree-endD".
  static Space parse(std::string_view name);
  std::string name() const;

  SpaceKind kind() const noexcept { return kind_; }
  int degree() const noexcept { return degree_; }
  bool is_tree() const noexcept {
    return kind_ == SpaceKind::RegularTree || kind_ == SpaceKind::TreeWithEnd;
  }
  bool unimodular() const noexcept { return kind_ != SpaceKind::TreeWithEnd; }
  int orbit_count() const noexcept { return kind_ == SpaceKind::SubdividedLine ? 2 : 1; }

  VertexId origin() const { return {}; }
  // o_1..o_L, one per orbit, in orbit-index order.
  std::vector<VertexId> representatives() const;

  bool is_valid(const VertexId& v) const noexcept;
  void validate(const VertexId& v) const;

  // Canonical order: [left, right] on lines, [parent, child_0, ...] on trees.
  Neighbors neighbors(const VertexId& v) const;
  bool adjacent(const VertexId& x, const VertexId& y) const;

  // 1-based orbit index.
  int orbit_of(const VertexId& v) const;

  // m(y)/m(x) for adjacent or equal x, y.
  StabWeightRatio m_ratio(const VertexId& x, const VertexId& y) const;
  // m(y)/m(x) for arbitrary x, y (product of m_ratio along the path).
  StabWeightRatio m_ratio_between(const VertexId& x, const VertexId& y) const;

  // Trees only.
  std::int64_t level(const VertexId& v) const;
  VertexId parent(const VertexId& v) const;
  VertexId child(const VertexId& v, int letter) const;

  int distance(const VertexId& x, const VertexId& y) const;
  // Vertices along the unique path, endpoints included.
  std::vector<VertexId> path(const VertexId& x, const VertexId& y) const;
  // All vertices within distance r, in breadth-first canonical order.
  std::vector<VertexId> ball(const VertexId& center, int r) const;
  std::size_t ball_size(int r) const;

  EdgeId edge(const VertexId& x, const VertexId& y) const;

  // Human-readable canonical label and its inverse.
  std::string format(const VertexId& v) const;
  VertexId parse_vertex(std::string_view text) const;

  // Byte key used to address marks in the pseudorandom streams.
  void append_key(const VertexId& v, std::vector<std::uint8_t>& out) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space(SpaceKind kind, int degree) : kind_(kind), degree_(degree) {}

  Word full_word(const VertexId& v, std::int64_t up) const;

  SpaceKind kind_;
  int degree_;
};

// Line-kind convenience constructors.
inline VertexId line_site(std::int64_t x) { return VertexId{x, {}}; }
inline VertexId subdivided_site(std::int64_t i) { return VertexId{2 * i, {}}; }
inline VertexId subdivided_midpoint(std::int64_t i) { return VertexId{2 * i + 1, {}}; }

}  // namespace rwrers

template <>
struct std::hash<rwrers::VertexId> {
  std::size_t operator()(const rwrers::VertexId& v) const noexcept { return rwrers::VertexIdHash{}(v); }
};
