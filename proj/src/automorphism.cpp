#include "rwrers/automorphism.hpp"

#include <algorithm>
#include <numeric>

#include "rwrers/errors.hpp"
#include "rwrers/prf.hpp"

namespace rwrers {

namespace {

constexpr std::uint64_t kPermutationTag = 0x7065726d'75746521ULL;

Neighbors forward(const Space& space, const VertexId& from, const VertexId& at) {
  Neighbors out = space.neighbors(at);
  out.erase(std::find(out.begin(), out.end(), from));
  return out;
}

}  // namespace

Automorphism Automorphism::identity(const Space& space) {
  const VertexId o = space.origin();
  const VertexId next = space.neighbors(o).back();
  return Automorphism(space, o, next, o, next, 0);
}

Automorphism Automorphism::translation(const Space& space, std::int64_t shift) {
  if (space.is_tree()) throw DomainError("translation() applies to line spaces");
  return anchored(space, VertexId{0, {}}, VertexId{1, {}}, VertexId{shift, {}}, VertexId{shift + 1, {}}, 0);
}

Automorphism Automorphism::anchored(const Space& space, VertexId from, VertexId to, VertexId image_from,
                                    VertexId image_to, std::uint64_t permutation_seed) {
  if (!space.adjacent(from, to) || !space.adjacent(image_from, image_to))
    throw DomainError("automorphism anchors must be edges");
  switch (space.kind()) {
    case SpaceKind::Line:
    case SpaceKind::SubdividedLine: {
      if (to.head - from.head != image_to.head - image_from.head)
        throw DomainError("line groups contain translations only");
      const std::int64_t shift = image_from.head - from.head;
      if (space.kind() == SpaceKind::SubdividedLine && shift % 2 != 0)
        throw DomainError("subdivided-line translations must map sites to sites");
      break;
    }
    case SpaceKind::TreeWithEnd:
      if ((space.parent(from) == to) != (space.parent(image_from) == image_to))
        throw DomainError("end-fixing automorphisms map parent edges to parent edges");
      break;
    case SpaceKind::RegularTree: break;
  }
  return Automorphism(space, std::move(from), std::move(to), std::move(image_from), std::move(image_to),
                      permutation_seed);
}

Automorphism Automorphism::random(const Space& space, std::uint64_t seed, int spread) {
  const CounterPrf prf(seed, kPermutationTag);
  if (!space.is_tree()) {
    std::int64_t shift = static_cast<std::int64_t>(to_range(prf.bits(0), 2 * spread + 1)) - spread;
    if (space.kind() == SpaceKind::SubdividedLine) shift *= 2;
    return translation(space, shift);
  }
  VertexId target = space.origin();
  for (int i = 0; i < spread; ++i) {
    const auto nbs = space.neighbors(target);
    target = nbs[to_range(prf.bits(1, i), nbs.size())];
  }
  const VertexId o = space.origin();
  const VertexId up = space.parent(o);
  VertexId target_next = space.parent(target);
  if (space.kind() == SpaceKind::RegularTree) {
    const auto nbs = space.neighbors(target);
    target_next = nbs[to_range(prf.bits(2), nbs.size())];
  }
  return anchored(space, o, up, target, target_next, prf.bits(3) | 1);
}

std::vector<int> Automorphism::permutation(const VertexId& at, const VertexId& from, int slots) const {
  std::vector<int> perm(static_cast<std::size_t>(slots));
  std::iota(perm.begin(), perm.end(), 0);
  if (seed_ == 0 || slots < 2) return perm;
  int first = 0;
  // Entered from a child: slot 0 is the parent, which the end-fixing group keeps.
  if (space_.kind() == SpaceKind::TreeWithEnd && space_.parent(from) == at) first = 1;
  std::vector<std::uint8_t> key;
  space_.append_key(at, key);
  const std::uint64_t h = siphash24(seed_, kPermutationTag, key);
  const CounterPrf prf(h, kPermutationTag);
  for (int i = slots - 1; i > first; --i) {
    const int j = first + static_cast<int>(to_range(prf.bits(static_cast<std::uint64_t>(i)),
                                                    static_cast<std::uint64_t>(i - first + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

VertexId Automorphism::walk(const VertexId& target, bool inverse) const {
  const VertexId& a0 = inverse ? c0_ : b0_;
  const VertexId& a1 = inverse ? c1_ : b1_;
  const VertexId& d0 = inverse ? b0_ : c0_;
  const VertexId& d1 = inverse ? b1_ : c1_;
  if (target == a0) return d0;
  if (target == a1) return d1;

  std::vector<VertexId> route = space_.path(a1, target);
  VertexId pa = a0, ca = a1, pd = d0, cd = d1;
  if (route.size() > 1 && route[1] == a0) {
    route = space_.path(a0, target);
    std::swap(pa, ca);
    std::swap(pd, cd);
  }
  for (std::size_t i = 1; i < route.size(); ++i) {
    const Neighbors fa = forward(space_, pa, ca);
    const Neighbors fd = forward(space_, pd, cd);
    const auto idx = static_cast<int>(std::find(fa.begin(), fa.end(), route[i]) - fa.begin());
    const int slots = static_cast<int>(fa.size());
    int j = idx;
    if (!inverse) {
      j = permutation(ca, pa, slots)[static_cast<std::size_t>(idx)];
    } else {
      const auto perm = permutation(cd, pd, slots);
      j = static_cast<int>(std::find(perm.begin(), perm.end(), idx) - perm.begin());
    }
    VertexId next = fd[static_cast<std::size_t>(j)];
    pa = std::move(ca);
    ca = route[i];
    pd = std::move(cd);
    cd = std::move(next);
  }
  return cd;
}

VertexId Automorphism::apply(const VertexId& v) const {
  space_.validate(v);
  return walk(v, false);
}

VertexId Automorphism::apply_inverse(const VertexId& v) const {
  space_.validate(v);
  return walk(v, true);
}

EdgeId Automorphism::apply(const EdgeId& e) const { return space_.edge(apply(e.low), apply(e.high)); }

EdgeId Automorphism::apply_inverse(const EdgeId& e) const {
  return space_.edge(apply_inverse(e.low), apply_inverse(e.high));
}

}  // namespace rwrers
