#pragma once

// Elements of the acting group of a space, represented implicitly.
//
// An automorphism is pinned by a directed anchor edge (b0 -> b1) and its
// image (b0' -> b1'). Any other vertex is reached from the anchor by a
// unique non-backtracking path; each step picks a "forward" neighbour
// (neighbours minus the one we came from) by index, and the image takes the
// same index, optionally permuted by a seeded per-vertex permutation.
//
// The group restrictions are enforced at construction:
//   Line, SubdividedLine  translations only (anchor keeps its direction and,
//                         on the subdivided line, its orbit);
//   RegularTree           every automorphism (anchor may flip, any permutation);
//   TreeWithEnd           the end-fixing group (anchor is a child->parent edge
//                         mapped to a child->parent edge; the parent slot is
//                         never permuted).

#include <cstdint>

#include "rwrers/space.hpp"

namespace rwrers {

class Automorphism {
 public:
  static Automorphism identity(const Space& space);
  // Line kinds: translation by `shift` in the space's own head units.
  static Automorphism translation(const Space& space, std::int64_t shift);
  // Maps the anchor edge (from -> to) onto (image_from -> image_to). Throws
  // DomainError when the group does not contain such an element.
  static Automorphism anchored(const Space& space, VertexId from, VertexId to, VertexId image_from,
                               VertexId image_to, std::uint64_t permutation_seed);
  // A pseudo-random element of the group, reproducible from `seed`.
  static Automorphism random(const Space& space, std::uint64_t seed, int spread = 6);

  VertexId apply(const VertexId& v) const;
  VertexId apply_inverse(const VertexId& v) const;
  EdgeId apply(const EdgeId& e) const;
  EdgeId apply_inverse(const EdgeId& e) const;

  const Space& space() const { return space_; }

 private:
  Automorphism(Space space, VertexId b0, VertexId b1, VertexId c0, VertexId c1, std::uint64_t seed)
      : space_(space), b0_(std::move(b0)), b1_(std::move(b1)), c0_(std::move(c0)), c1_(std::move(c1)),
        seed_(seed) {}

  VertexId walk(const VertexId& target, bool inverse) const;
  std::vector<int> permutation(const VertexId& at, const VertexId& from, int slots) const;

  Space space_;
  VertexId b0_, b1_;  // source anchor
  VertexId c0_, c1_;  // image anchor
  std::uint64_t seed_;
};

}  // namespace rwrers
