#include <gtest/gtest.h>

#include "rwrers/automorphism.hpp"
#include "rwrers/errors.hpp"
#include "support.hpp"

using namespace rwrers;

TEST(Automorphism, PreservesAdjacencyAndInverts) {
  std::mt19937_64 rng(11);
  for (const Space& space : test::all_spaces()) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Automorphism g = Automorphism::random(space, seed);
      for (int t = 0; t < 30; ++t) {
        const VertexId v = test::random_vertex(space, rng);
        const VertexId gv = g.apply(v);
        EXPECT_TRUE(space.is_valid(gv));
        EXPECT_EQ(g.apply_inverse(gv), v);
        EXPECT_EQ(space.orbit_of(gv), space.orbit_of(v));
        for (const VertexId& y : space.neighbors(v)) {
          EXPECT_TRUE(space.adjacent(gv, g.apply(y)));
          const EdgeId e = space.edge(v, y);
          EXPECT_EQ(g.apply(e), space.edge(gv, g.apply(y)));
          EXPECT_EQ(g.apply_inverse(g.apply(e)), e);
        }
      }
    }
  }
}

TEST(Automorphism, EndFixingGroupPreservesLevelDifferences) {
  const Space t = Space::tree_with_end(3);
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Automorphism g = Automorphism::random(t, seed);
    const VertexId x = test::random_vertex(t, rng);
    const VertexId y = test::random_vertex(t, rng);
    EXPECT_EQ(t.level(g.apply(x)) - t.level(g.apply(y)), t.level(x) - t.level(y));
    EXPECT_EQ(g.apply(t.parent(x)), t.parent(g.apply(x)));
  }
}

TEST(Automorphism, GroupRestrictionsEnforced) {
  const Space line = Space::line();
  // Reflection x -> -x.
  EXPECT_THROW(Automorphism::anchored(line, line_site(0), line_site(1), line_site(0), line_site(-1), 0),
               DomainError);
  const Space sub = Space::subdivided_line();
  EXPECT_THROW(Automorphism::translation(sub, 1), DomainError);
  EXPECT_EQ(Automorphism::translation(sub, 2).apply(subdivided_site(0)), subdivided_site(1));
  const Space t = Space::tree_with_end(3);
  const VertexId o = t.origin();
  // A parent edge may not be sent to a child edge.
  EXPECT_THROW(Automorphism::anchored(t, o, t.parent(o), o, t.child(o, 1), 0), DomainError);
}

TEST(Automorphism, TranslationOnLine) {
  const Space line = Space::line();
  const Automorphism g = Automorphism::translation(line, 5);
  EXPECT_EQ(g.apply(line_site(-2)), line_site(3));
  EXPECT_EQ(g.apply_inverse(line_site(3)), line_site(-2));
}

TEST(Automorphism, RegularTreeCanFlipAnEdge) {
  const Space r = Space::regular_tree(3);
  const VertexId o = r.origin();
  const VertexId p = r.parent(o);
  const Automorphism g = Automorphism::anchored(r, o, p, p, o, 9);
  EXPECT_EQ(g.apply(o), p);
  EXPECT_EQ(g.apply(p), o);
}
