#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psdcomp/moments.hpp"

namespace psdcomp {
namespace {

// Strict convex hull (collinear points dropped), counterclockwise.
std::vector<LatticePoint> hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

std::optional<LatticePolygon> random_polygon(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> coord(-6, 6);
  std::vector<LatticePoint> pts(8);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  auto h = hull(pts);
  if (h.size() < 3) return std::nullopt;
  return LatticePolygon(h);
}

// Boundary points counted one by one along each edge.
std::int64_t walk_boundary(const LatticePolygon& p) {
  std::int64_t count = 0;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [x0, y0] = v[i];
    const auto [x1, y1] = v[(i + 1) % v.size()];
    const std::int64_t steps = std::max(std::abs(x1 - x0), std::abs(y1 - y0));
    for (std::int64_t s = 0; s < steps; ++s) {
      // Point at parameter s/steps is integral iff both coordinates divide.
      if (((x1 - x0) * s) % steps == 0 && ((y1 - y0) * s) % steps == 0) ++count;
    }
  }
  return count;
}

TEST(PolygonTest, RejectsDegenerate) {
  EXPECT_THROW(LatticePolygon({{0, 0}, {1, 0}}), Error);
  EXPECT_THROW(LatticePolygon({{0, 0}, {1, 0}, {2, 0}}), Error);
  EXPECT_THROW(LatticePolygon({{0, 0}, {0, 1}, {1, 0}}), Error);  // clockwise
  EXPECT_THROW(LatticePolygon({{0, 0}, {1, 0}, {2, 0}, {0, 2}}), Error);
  try {
    LatticePolygon({{0, 0}, {0, 1}, {1, 0}});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePolygon);
  }
}

TEST(BoundaryTest, Examples) {
  EXPECT_EQ(boundary_lattice_points(LatticePolygon::scaled_simplex(2)), 6);
  EXPECT_EQ(boundary_lattice_points(LatticePolygon::scaled_simplex(1)), 3);
  EXPECT_EQ(boundary_lattice_points(LatticePolygon({{0, 0}, {3, 0}, {3, 2}, {0, 2}})), 10);
}

TEST(BoundaryTest, ScaledSimplexAndRectangles) {
  for (int d = 1; d <= 10; ++d) EXPECT_EQ(boundary_lattice_points(LatticePolygon::scaled_simplex(d)), 3 * d);
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b) EXPECT_EQ(boundary_lattice_points(LatticePolygon::rectangle(a, b)), 2 * a + 2 * b);
}

TEST(BoundaryTest, AgreesWithPointWalk) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_polygon(rng);
    if (!p) continue;
    EXPECT_EQ(boundary_lattice_points(*p), walk_boundary(*p));
  }
}

TEST(BoundaryTest, InvariantUnderLatticeSymmetries) {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<std::int64_t> shift(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_polygon(rng);
    if (!p) continue;
    const std::int64_t expected = boundary_lattice_points(*p);
    const std::int64_t dx = shift(rng), dy = shift(rng);
    for (int sym = 0; sym < 8; ++sym) {
      std::vector<LatticePoint> moved;
      for (auto [x, y] : p->vertices()) {
        if (sym & 4) std::swap(x, y);
        if (sym & 1) x = -x;
        if (sym & 2) y = -y;
        moved.emplace_back(x + dx, y + dy);
      }
      // Odd numbers of reflections flip orientation.
      const int flips = ((sym >> 2) & 1) + (sym & 1) + ((sym >> 1) & 1);
      if (flips % 2 == 1) std::reverse(moved.begin(), moved.end());
      EXPECT_EQ(boundary_lattice_points(LatticePolygon(moved)), expected);
    }
  }
}

TEST(ToricIndexTest, Examples) {
  EXPECT_EQ(toric_gl_index(LatticePolygon::scaled_simplex(2)), 3);
  EXPECT_EQ(toric_gl_index(LatticePolygon::rectangle(1, 1)), 1);
  EXPECT_EQ(toric_gl_index(LatticePolygon::scaled_simplex(3)), 6);
  EXPECT_EQ(toric_hankel_lower_bound(LatticePolygon::scaled_simplex(2)), 4);
  EXPECT_EQ(toric_hankel_lower_bound(LatticePolygon::rectangle(3, 2)), 8);
  try {
    toric_hankel_lower_bound(LatticePolygon::scaled_simplex(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexUndefined);
  }
}

TEST(ToricIndexTest, HankelBoundIsOneAboveIndex) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_polygon(rng);
    if (!p || boundary_lattice_points(*p) < 4) continue;
    EXPECT_EQ(toric_hankel_lower_bound(*p), toric_gl_index(*p) + 1);
  }
}

TEST(ToricIndexTest, SimplexMatchesVeronese) {
  for (int d = 2; d <= 10; ++d) {
    const VeroneseIndices v = veronese_p2_indices(d);
    EXPECT_EQ(toric_gl_index(LatticePolygon::scaled_simplex(d)), v.gl);
    EXPECT_EQ(toric_hankel_lower_bound(LatticePolygon::scaled_simplex(d)), v.hankel);
  }
}

TEST(VeroneseTest, Values) {
  for (int d = 2; d <= 5; ++d) {
    EXPECT_EQ(veronese_p2_indices(d).gl, 3 * d - 3);
    EXPECT_EQ(veronese_p2_indices(d).hankel, 3 * d - 2);
  }
  EXPECT_EQ(veronese_p2_indices(3).gl, 6);
  EXPECT_EQ(veronese_p2_indices(4).hankel, 10);
  try {
    veronese_p2_indices(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDegree);
  }
}

TEST(ParkTest, Examples) {
  EXPECT_EQ(park_n2p_bound(4, 2), 1);
  EXPECT_EQ(park_n2p_bound(4, 3), 3);
  EXPECT_FALSE(park_n2p_bound(6, 2));
  EXPECT_EQ(park_n2p_bound(6, 4), 3);
  EXPECT_EQ(park_n2p_bound(2, 1), 1);
  EXPECT_FALSE(park_n2p_bound(1, 3));
  EXPECT_FALSE(park_n2p_bound(4, 0));
}

TEST(MonomialTest, GrlexOrder) {
  EXPECT_EQ(grlex_basis(3, 1), (std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  const auto quad = grlex_basis(3, 2);
  ASSERT_EQ(quad.size(), 6u);
  EXPECT_EQ(quad.front(), (std::vector<int>{2, 0, 0}));
  EXPECT_EQ(quad[1], (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(quad.back(), (std::vector<int>{0, 0, 2}));
  EXPECT_EQ(grlex_basis(3, 3).size(), 10u);
  EXPECT_EQ(monomial_vector(Eigen::Vector3d(1, 2, 3), 2), (Eigen::VectorXd(6) << 1, 2, 3, 4, 6, 9).finished());
}

MomentOperator point_sum(int r, int degree, std::mt19937_64& rng) {
  const int size = static_cast<int>(grlex_basis(3, degree).size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  for (int t = 0; t < r; ++t) {
    const Eigen::VectorXd v = monomial_vector(oracle::random_matrix(3, 1, rng).col(0), degree);
    m += weight(rng) * v * v.transpose();
  }
  return MomentOperator(SymMatrix(m), degree, 3);
}

TEST(MomentTest, Examples) {
  std::mt19937_64 rng(54);
  EXPECT_EQ(moment_representable(point_sum(3, 2, rng), 4), Representability::Representable);
  EXPECT_EQ(moment_representable(point_sum(4, 2, rng), 4), Representability::Indeterminate);
  Eigen::MatrixXd neg = Eigen::MatrixXd::Identity(6, 6);
  neg(2, 2) = -1;
  for (int bound : {2, 4, 100}) {
    EXPECT_EQ(moment_representable(MomentOperator(SymMatrix(neg), 2, 3), bound), Representability::NotPSD);
  }
  EXPECT_THROW(MomentOperator(SymMatrix::identity(5), 2, 3), Error);
  EXPECT_THROW(moment_representable(point_sum(1, 2, rng), 1), Error);
}

TEST(MomentTest, FewPointEvaluationsAreRepresentable) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + trial % 3;
    EXPECT_EQ(moment_representable(point_sum(r, 2, rng), 4), Representability::Representable) << "r = " << r;
  }
  for (int d = 2; d <= 4; ++d) {
    const int bound = veronese_p2_indices(d).hankel;
    for (int r = 1; r < bound; ++r) {
      EXPECT_EQ(moment_representable(point_sum(r, d, rng), bound), Representability::Representable);
    }
  }
}

TEST(MomentTest, MonotoneInBound) {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 50; ++trial) {
    const MomentOperator op = point_sum(1 + trial % 7, 2, rng);
    bool seen = false;
    for (int bound = 2; bound <= 10; ++bound) {
      const bool rep = moment_representable(op, bound) == Representability::Representable;
      if (seen) EXPECT_TRUE(rep);
      seen = seen || rep;
    }
  }
}

}  // namespace
}  // namespace psdcomp
