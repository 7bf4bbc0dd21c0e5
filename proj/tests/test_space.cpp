#include <gtest/gtest.h>

#include <set>

#include "rwrers/automorphism.hpp"
#include "rwrers/errors.hpp"
#include "rwrers/space.hpp"
#include "support.hpp"

using namespace rwrers;

TEST(Space, ParseAndName) {
  for (const std::string name : {"line", "subdivided-line", "tree3", "tree-end3", "tree5", "tree-end4"})
    EXPECT_EQ(Space::parse(name).name(), name);
  EXPECT_THROW(Space::parse("tree2"), ConfigError);
  EXPECT_THROW(Space::parse("tree-end"), ConfigError);
  EXPECT_THROW(Space::parse("grid"), ConfigError);
}

TEST(Space, DegreesAndOrbits) {
  EXPECT_EQ(Space::line().degree(), 2);
  EXPECT_EQ(Space::regular_tree(3).degree(), 3);
  EXPECT_EQ(Space::subdivided_line().orbit_count(), 2);
  EXPECT_EQ(Space::tree_with_end(3).orbit_count(), 1);
  EXPECT_FALSE(Space::tree_with_end(3).unimodular());
  EXPECT_TRUE(Space::regular_tree(3).unimodular());
  const Space s = Space::subdivided_line();
  const auto reps = s.representatives();
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_EQ(s.orbit_of(reps[0]), 1);
  EXPECT_EQ(s.orbit_of(reps[1]), 2);
  EXPECT_EQ(s.format(reps[1]), "0+1/2");
}

TEST(Space, NeighboursAreSymmetricAndDistinct) {
  std::mt19937_64 rng(1);
  for (const Space& space : test::all_spaces()) {
    for (int t = 0; t < 200; ++t) {
      const VertexId v = test::random_vertex(space, rng);
      const Neighbors nbs = space.neighbors(v);
      ASSERT_EQ(static_cast<int>(nbs.size()), space.degree());
      std::set<VertexId> distinct(nbs.begin(), nbs.end());
      EXPECT_EQ(distinct.size(), nbs.size());
      for (const VertexId& y : nbs) {
        EXPECT_TRUE(space.is_valid(y));
        EXPECT_TRUE(space.adjacent(v, y));
        const Neighbors back = space.neighbors(y);
        EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
        EXPECT_EQ(space.distance(v, y), 1);
      }
    }
  }
}

TEST(Space, InvalidLabelsRejected) {
  const Space t = Space::tree_with_end(3);
  EXPECT_THROW(t.neighbors(VertexId{2, {0}}), InvalidVertexError);  // non-canonical
  EXPECT_THROW(t.neighbors(VertexId{0, {2}}), InvalidVertexError);  // letter out of range
  EXPECT_THROW(t.neighbors(VertexId{-1, {}}), InvalidVertexError);
  EXPECT_THROW(Space::line().neighbors(VertexId{0, {1}}), InvalidVertexError);
  EXPECT_THROW(t.parse_vertex("x"), InvalidVertexError);
}

TEST(Space, FormatParseRoundTrip) {
  std::mt19937_64 rng(2);
  for (const Space& space : test::all_spaces())
    for (int t = 0; t < 100; ++t) {
      const VertexId v = test::random_vertex(space, rng);
      EXPECT_EQ(space.parse_vertex(space.format(v)), v);
    }
}

// Distance by breadth-first search, independent of the label arithmetic.
TEST(Space, DistanceAndPathAgreeWithBfs) {
  std::mt19937_64 rng(3);
  for (const Space& space : test::all_spaces()) {
    for (int t = 0; t < 40; ++t) {
      const VertexId x = test::random_vertex(space, rng, 4);
      const std::vector<VertexId> ball = space.ball(x, 5);
      std::map<VertexId, int> bfs{{x, 0}};
      std::vector<VertexId> frontier{x};
      for (int d = 1; d <= 5; ++d) {
        std::vector<VertexId> next;
        for (const VertexId& u : frontier)
          for (const VertexId& w : space.neighbors(u))
            if (bfs.emplace(w, d).second) next.push_back(w);
        frontier = std::move(next);
      }
      EXPECT_EQ(ball.size(), bfs.size());
      EXPECT_EQ(ball.size(), space.ball_size(5));
      for (const VertexId& y : ball) {
        EXPECT_EQ(space.distance(x, y), bfs.at(y));
        const auto path = space.path(x, y);
        ASSERT_EQ(static_cast<int>(path.size()), bfs.at(y) + 1);
        EXPECT_EQ(path.front(), x);
        EXPECT_EQ(path.back(), y);
        for (std::size_t i = 1; i < path.size(); ++i) EXPECT_TRUE(space.adjacent(path[i - 1], path[i]));
      }
    }
  }
}

TEST(Space, BallSizes) {
  EXPECT_EQ(Space::regular_tree(3).ball_size(2), 10u);
  EXPECT_EQ(Space::tree_with_end(3).ball_size(3), 22u);
  EXPECT_EQ(Space::line().ball_size(4), 9u);
}

TEST(Space, BusemannLevel) {
  const Space t = Space::tree_with_end(3);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const VertexId v = test::random_vertex(t, rng);
    EXPECT_EQ(t.level(t.parent(v)), t.level(v) + 1);
    for (int c = 0; c < 2; ++c) EXPECT_EQ(t.parent(t.child(v, c)), v);
  }
}

TEST(Space, EdgeKeyIsOrderIndependent) {
  const Space t = Space::regular_tree(3);
  const VertexId x = t.origin();
  for (const VertexId& y : t.neighbors(x)) EXPECT_EQ(t.edge(x, y), t.edge(y, x));
  EXPECT_THROW(t.edge(x, x), DomainError);
  EXPECT_EQ(Space::line().edge(line_site(3), line_site(2)).low, line_site(2));
}

TEST(Space, MRatioValues) {
  const Space t = Space::tree_with_end(3);
  const VertexId x = t.origin();
  EXPECT_EQ(t.m_ratio(x, t.parent(x)).value(), 2.0);
  EXPECT_EQ(t.m_ratio(x, t.child(x, 1)).value(), 0.5);
  EXPECT_EQ(t.m_ratio(x, x), StabWeightRatio::one());
  EXPECT_THROW(t.m_ratio(x, t.parent(t.parent(x))), DomainError);
  EXPECT_EQ(t.m_ratio_between(x, t.parent(t.parent(x))).value(), 4.0);
  const Space r = Space::regular_tree(3);
  for (const VertexId& y : r.neighbors(r.origin())) EXPECT_EQ(r.m_ratio(r.origin(), y).value(), 1.0);
}

// m(y)/m(x) = |Stab(y) x| / |Stab(x) y|. Orbit sizes are counted by drawing
// many group elements that fix the relevant vertex.
TEST(Space, MRatioMatchesStabilizerOrbitCounts) {
  for (const Space& space : {Space::tree_with_end(3), Space::tree_with_end(4), Space::regular_tree(3)}) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
      const VertexId x = test::random_vertex(space, rng, 5);
      for (const VertexId& y : space.neighbors(x)) {
        auto orbit_size = [&](const VertexId& fixed, const VertexId& moved) {
          std::set<VertexId> images;
          const VertexId anchor_to = space.parent(fixed);
          for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const Automorphism g = Automorphism::anchored(space, fixed, anchor_to, fixed, anchor_to, seed);
            images.insert(g.apply(moved));
          }
          // On the regular tree the anchor direction may also be moved.
          if (space.kind() == SpaceKind::RegularTree) {
            for (const VertexId& other : space.neighbors(fixed))
              for (std::uint64_t seed = 0; seed < 50; ++seed)
                images.insert(Automorphism::anchored(space, fixed, anchor_to, fixed, other, seed).apply(moved));
          }
          return static_cast<double>(images.size());
        };
        EXPECT_DOUBLE_EQ(space.m_ratio(x, y).value(), orbit_size(y, x) / orbit_size(x, y));
      }
    }
  }
}
