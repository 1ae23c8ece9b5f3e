#include <gtest/gtest.h>

#include <set>

#include "forge/lattice.hpp"
#include "forge/rng.hpp"
#include "support.hpp"

using namespace forge;
namespace ts = testing_support;

namespace {

BlockSet bar3() { return BlockSet({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}); }
BlockSet l_tromino() { return BlockSet({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}); }

// Edge along x, then y, then z: no improper symmetry.
BlockSet chiral() { return build_polyomino({{3, 3, 3}, {0, 2}}); }

BlockSet mirror_x(const BlockSet& b) {
  std::vector<Cell> out;
  for (auto c : b.cells()) out.push_back({-c[0], c[1], c[2]});
  return BlockSet(out);
}

EdgeSpec random_spec(Rng& rng) {
  for (;;) {
    EdgeSpec s;
    const int k = static_cast<int>(rng.uniform_int(3, 5));
    for (int i = 0; i < k; ++i) s.lengths.push_back(static_cast<int>(rng.uniform_int(3, 9)));
    for (int i = 0; i + 1 < k; ++i) s.directions.push_back(static_cast<int>(rng.uniform_int(0, 3)));
    if (!ts::walk(s.lengths, s.directions).empty()) return s;
  }
}

}  // namespace

TEST(EdgeSpec, RejectsOutOfRangeFields) {
  EXPECT_THROW((EdgeSpec{{3, 3}, {0}}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((EdgeSpec{{3, 3}, {0}}.validate(false)));
  EXPECT_THROW((EdgeSpec{{3, 3, 10}, {0, 0}}.validate()), std::invalid_argument);
  EXPECT_THROW((EdgeSpec{{3, 3, 2}, {0, 0}}.validate()), std::invalid_argument);
  EXPECT_THROW((EdgeSpec{{3, 3, 3}, {0, 4}}.validate()), std::invalid_argument);
  EXPECT_THROW((EdgeSpec{{3, 3, 3}, {0}}.validate()), std::invalid_argument);
  EXPECT_THROW((EdgeSpec{{3, 3, 3, 3, 3, 3}, {0, 0, 0, 0, 0}}.validate()), std::invalid_argument);
}

TEST(BlockSet, EnforcesInvariants) {
  EXPECT_THROW(BlockSet(std::vector<Cell>{}), std::invalid_argument);
  EXPECT_THROW(BlockSet({{0, 0, 0}, {0, 0, 0}}), std::invalid_argument);
  EXPECT_THROW(BlockSet({{0, 0, 0}, {1, 1, 0}}), std::invalid_argument);  // edge contact only
  EXPECT_NO_THROW(BlockSet({{0, 0, 0}}));
  EXPECT_TRUE(bar3().contains({1, 0, 0}));
  EXPECT_FALSE(bar3().contains({0, 1, 0}));
}

TEST(BuildPolyomino, ThreeEdgesOfThreeGiveSevenBlocks) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto cells = ts::walk({3, 3, 3}, {a, b});
      if (cells.empty()) continue;
      const BlockSet bs = build_polyomino({{3, 3, 3}, {a, b}});
      EXPECT_EQ(bs.size(), 7u);
      EXPECT_EQ(bs.size(), ts::shape_of(cells).size());
    }
}

TEST(BuildPolyomino, BlockCountIsSumOfLengthsMinusJoints) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const EdgeSpec s = random_spec(rng);
    int sum = 0;
    for (int l : s.lengths) sum += l;
    const BlockSet b = build_polyomino(s);
    EXPECT_EQ(static_cast<int>(b.size()), sum - (s.edge_count() - 1));
    EXPECT_TRUE(b.face_connected());
    auto expected = ts::walk(s.lengths, s.directions);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(b.cells(), expected);
  }
}

TEST(BuildPolyomino, TwoEdgesMakeAnL) {
  const BlockSet b = build_polyomino({{3, 3}, {0}}, false);
  EXPECT_EQ(b.size(), 5u);
  const std::vector<Cell> expect{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {2, 2, 0}};
  EXPECT_EQ(b.cells(), expect);
}

TEST(BuildPolyomino, ClosedLoopOverlaps) {
  // +x, +y, -x, -y returns to the start block.
  EXPECT_THROW(build_polyomino({{3, 3, 3, 3}, {0, 1, 1}}), OverlapError);
  EXPECT_TRUE(ts::walk({3, 3, 3, 3}, {0, 1, 1}).empty());
}

TEST(CubeRotations, MatchClosureGroupAndAreProper) {
  const auto ref = ts::closure_rotations();
  ASSERT_EQ(ref.size(), 24u);
  std::set<Matrix3> lib(kCubeRotations.begin(), kCubeRotations.end());
  EXPECT_EQ(lib.size(), 24u);
  EXPECT_EQ(lib, std::set<Matrix3>(ref.begin(), ref.end()));
  for (const auto& m : kCubeRotations) EXPECT_EQ(detail::determinant(m), 1);
}

TEST(RotateBlocks, IdentityAndAxisSwap) {
  const BlockSet b = chiral();
  EXPECT_EQ(rotate_blocks(b, 0), b);
  const Matrix3 rz{{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}};
  const auto it = std::find(kCubeRotations.begin(), kCubeRotations.end(), rz);
  ASSERT_NE(it, kCubeRotations.end());
  const BlockSet y_bar = normalized(rotate_blocks(bar3(), static_cast<int>(it - kCubeRotations.begin())));
  EXPECT_EQ(y_bar, BlockSet({{0, 0, 0}, {0, 1, 0}, {0, 2, 0}}));
  EXPECT_THROW(rotate_blocks(b, 24), std::out_of_range);
  EXPECT_THROW(rotate_blocks(b, -1), std::out_of_range);
}

TEST(RotateBlocks, LTrominoOrbitSize) {
  std::set<std::set<Cell>> ref;
  for (const auto& m : ts::closure_rotations()) ref.insert(ts::shape_of(ts::apply_all(m, l_tromino().cells())));
  std::set<std::vector<Cell>> lib;
  for (int r = 0; r < 24; ++r) lib.insert(normalized(rotate_blocks(l_tromino(), r)).cells());
  EXPECT_EQ(lib.size(), ref.size());
  // A half turn about the (1,1,0) diagonal fixes the L, so the orbit halves.
  EXPECT_EQ(lib.size(), 12u);
}

TEST(CanonicalForm, BarRotationsShareKeyAndNormalise) {
  const CanonicalKey k = canonical_form(bar3());
  for (int r = 0; r < 24; ++r) EXPECT_EQ(canonical_form(rotate_blocks(bar3(), r)), k);
  Cell lo{1, 1, 1};
  for (const auto& c : k.coords)
    for (int i = 0; i < 3; ++i) lo[i] = std::min(lo[i], c[i]);
  EXPECT_EQ(lo, (Cell{0, 0, 0}));
}

TEST(CanonicalForm, DistinguishesShapes) {
  EXPECT_NE(canonical_form(l_tromino()), canonical_form(bar3()));
  EXPECT_FALSE(equivalent(l_tromino(), bar3()));
}

TEST(CanonicalForm, ChiralMirrorDiffers) {
  const BlockSet b = chiral();
  const BlockSet m = mirror_x(b);
  ASSERT_FALSE(ts::brute_equivalent(b.cells(), m.cells()));
  EXPECT_NE(canonical_form(b), canonical_form(m));
  EXPECT_FALSE(equivalent(b, m));
  // Planar shapes are their own mirrors up to rotation.
  EXPECT_TRUE(equivalent(l_tromino(), mirror_x(l_tromino())));
}

TEST(CanonicalForm, OrbitInvarianceOnRandomShapes) {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const BlockSet b = build_polyomino(random_spec(rng));
    const CanonicalKey k = canonical_form(b);
    const int r = static_cast<int>(rng.uniform_int(0, 23));
    Cell shift{static_cast<int>(rng.uniform_int(-5, 5)), static_cast<int>(rng.uniform_int(-5, 5)),
               static_cast<int>(rng.uniform_int(-5, 5))};
    const BlockSet turned = rotate_blocks(b, r);
    std::vector<Cell> moved;
    for (auto c : turned.cells()) moved.push_back({c[0] + shift[0], c[1] + shift[1], c[2] + shift[2]});
    EXPECT_EQ(canonical_form(BlockSet(moved)), k);
  }
}

TEST(Equivalent, AgreesWithBruteForceAndIsAnEquivalence) {
  Rng rng(99);
  std::vector<BlockSet> shapes;
  for (int i = 0; i < 40; ++i) {
    EdgeSpec s = random_spec(rng);
    s.lengths.assign(s.lengths.size(), 3);  // same size classes so collisions happen
    if (ts::walk(s.lengths, s.directions).empty()) continue;
    shapes.push_back(build_polyomino(s));
  }
  for (const auto& a : shapes) {
    EXPECT_TRUE(equivalent(a, a));
    for (const auto& b : shapes) {
      const bool e = equivalent(a, b);
      EXPECT_EQ(e, ts::brute_equivalent(a.cells(), b.cells()));
      EXPECT_EQ(e, equivalent(b, a));
      if (!e) continue;
      for (const auto& c : shapes)
        if (equivalent(b, c)) EXPECT_TRUE(equivalent(a, c));
    }
  }
}
