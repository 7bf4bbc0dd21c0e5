#include <gtest/gtest.h>

#include <set>

#include "rwrers/automorphism.hpp"
#include "rwrers/errors.hpp"
#include "rwrers/rooted_view.hpp"
#include "support.hpp"

using namespace rwrers;

namespace {

Environment make_env(std::uint64_t seed, bool params = true) {
  EnvConfig c;
  c.seed = seed;
  c.site_params = params;
  return Environment(c);
}

std::vector<VertexId> walk_from(const Space& space, VertexId v, int steps, std::mt19937_64& rng) {
  std::vector<VertexId> path{v};
  for (int i = 0; i < steps; ++i) {
    const Neighbors nbs = space.neighbors(path.back());
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, nbs.size())(rng);
    path.push_back(k == nbs.size() ? path.back() : nbs[k]);  // lazy steps allowed
  }
  return path;
}

// Number of distinct r = 1 views over every open/closed pattern of the
// edges at the origin.
std::size_t star_classes(const Space& space) {
  const VertexId o = space.origin();
  const Neighbors nbs = space.neighbors(o);
  std::set<std::string> classes;
  for (unsigned pattern = 0; pattern < (1u << nbs.size()); ++pattern) {
    test::TableMarks marks(false);
    for (std::size_t i = 0; i < nbs.size(); ++i) marks.set(space.edge(o, nbs[i]), (pattern >> i) & 1u);
    classes.insert(canonical_rooted_view(space, o, 1, marks, {}).bytes());
  }
  return classes.size();
}

}  // namespace

TEST(RootedView, InvariantUnderTheGroup) {
  std::mt19937_64 rng(31);
  for (const Space& space : test::all_spaces()) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Environment env = make_env(seed);
      const Automorphism g = Automorphism::random(space, seed * 13 + 1);
      const TransformedMarks moved(env, g);
      const std::vector<VertexId> path = walk_from(space, test::random_vertex(space, rng), 4, rng);
      std::vector<VertexId> image;
      for (const VertexId& v : path) image.push_back(g.apply(v));
      for (int r : {0, 1, 2}) {
        const RootedView a = canonical_rooted_view(space, path[0], r, env, path);
        const RootedView b = canonical_rooted_view(space, image[0], r, moved, image);
        EXPECT_EQ(a.bytes(), b.bytes()) << space.name() << " r=" << r;
      }
    }
  }
}

TEST(RootedView, StarClassCounts) {
  EXPECT_EQ(star_classes(Space::regular_tree(3)), 4u);  // number of open edges
  EXPECT_EQ(star_classes(Space::tree_with_end(3)), 6u);  // parent edge x open children
  EXPECT_EQ(star_classes(Space::line()), 4u);            // no reflections
}

TEST(RootedView, DistinguishesMarks) {
  const Space t = Space::regular_tree(3);
  test::TableMarks closed(false);
  test::TableMarks open(true);
  EXPECT_NE(canonical_rooted_view(t, t.origin(), 1, closed, {}).bytes(),
            canonical_rooted_view(t, t.origin(), 1, open, {}).bytes());
  // Orbits are part of the view.
  const Space sub = Space::subdivided_line();
  EXPECT_NE(canonical_rooted_view(sub, subdivided_site(0), 1, closed, {}).bytes(),
            canonical_rooted_view(sub, subdivided_midpoint(0), 1, closed, {}).bytes());
}

TEST(RootedView, StructureAndArms) {
  const Space t = Space::tree_with_end(3);
  test::TableMarks marks(true);
  const VertexId o = t.origin();
  marks.set(t.edge(o, t.parent(o)), false);
  const RootedView view = canonical_rooted_view(t, o, 1, marks, {});
  EXPECT_EQ(view.nodes().size(), 4u);
  const auto arms = view.center_arms();
  ASSERT_EQ(arms.size(), 3u);
  EXPECT_TRUE(arms[0].toward_root);
  EXPECT_EQ(arms[0].mark, EdgeMark::Closed);
  EXPECT_EQ(arms[1].mark, EdgeMark::Open);
  EXPECT_TRUE(view.center_node().center);

  // Length prefix equals the payload size.
  const std::string& b = view.bytes();
  const std::uint32_t len = static_cast<std::uint8_t>(b[0]) | static_cast<std::uint8_t>(b[1]) << 8 |
                            static_cast<std::uint8_t>(b[2]) << 16 | static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[3])) << 24;
  EXPECT_EQ(len + 4, b.size());
}

TEST(RootedView, SegmentVisits) {
  const Space line = Space::line();
  test::TableMarks marks(true);
  const std::vector<VertexId> seg{line_site(0), line_site(1), line_site(1), line_site(2)};
  const RootedView view = canonical_rooted_view(line, seg[0], 0, marks, seg);
  EXPECT_EQ(view.horizon(), 3);
  EXPECT_EQ(view.visited_at(0), view.center());
  EXPECT_EQ(view.visited_at(1), view.visited_at(2));
  EXPECT_EQ(view.nodes().size(), 3u);
}

TEST(RootedView, RejectsBadInput) {
  const Space line = Space::line();
  test::TableMarks marks(true);
  EXPECT_THROW(canonical_rooted_view(line, line_site(0), -1, marks, {}), InputError);
  const std::vector<VertexId> jump{line_site(0), line_site(2)};
  EXPECT_THROW(canonical_rooted_view(line, line_site(0), 1, marks, jump), InputError);
  const std::vector<VertexId> wrong_start{line_site(1)};
  EXPECT_THROW(canonical_rooted_view(line, line_site(0), 1, marks, wrong_start), InputError);
  const std::vector<VertexId> too_long(300, line_site(0));
  EXPECT_THROW(canonical_rooted_view(line, line_site(0), 1, marks, too_long), InputError);
}
