#ifndef PSDCOMP_MOMENTS_HPP_
#define PSDCOMP_MOMENTS_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "psdcomp/error.hpp"
#include "psdcomp/linalg.hpp"

namespace psdcomp {

using LatticePoint = std::pair<std::int64_t, std::int64_t>;

// Convex lattice polygon, vertices counterclockwise with no three consecutive
// vertices collinear.
class LatticePolygon {
 public:
  explicit LatticePolygon(std::vector<LatticePoint> vertices) : vertices_(std::move(vertices)) {
    const std::size_t k = vertices_.size();
    if (k < 3) throw Error(ErrorCode::DegeneratePolygon, "polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < k; ++i) {
      const auto& a = vertices_[i];
      const auto& b = vertices_[(i + 1) % k];
      const auto& c = vertices_[(i + 2) % k];
      const std::int64_t turn = (b.first - a.first) * (c.second - b.second) - (b.second - a.second) * (c.first - b.first);
      if (turn <= 0) {
        throw Error(ErrorCode::DegeneratePolygon, "vertices are not strictly convex in counterclockwise order");
      }
    }
  }

  static LatticePolygon scaled_simplex(std::int64_t d) { return LatticePolygon({{0, 0}, {d, 0}, {0, d}}); }

  static LatticePolygon rectangle(std::int64_t a, std::int64_t b) {
    return LatticePolygon({{0, 0}, {a, 0}, {a, b}, {0, b}});
  }

  const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }

  LatticePolygon scaled(std::int64_t factor) const {
    std::vector<LatticePoint> out = vertices_;
    for (auto& [x, y] : out) {
      x *= factor;
      y *= factor;
    }
    return LatticePolygon(std::move(out));
  }

 private:
  std::vector<LatticePoint> vertices_;
};

// |boundary ∩ Z^2|, one gcd per edge.
inline std::int64_t boundary_lattice_points(const LatticePolygon& p) {
  const auto& v = p.vertices();
  std::int64_t count = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    count += std::gcd(b.first - a.first, b.second - a.second);
  }
  return count;
}

// The toric surface of P satisfies N_{2,p} iff the boundary carries at least
// p + 3 lattice points.
inline std::int64_t toric_gl_index(const LatticePolygon& p) {
  const std::int64_t boundary = boundary_lattice_points(p);
  if (boundary < 4) throw Error(ErrorCode::IndexUndefined, "fewer than 4 boundary lattice points");
  return boundary - 3;
}

inline std::int64_t toric_hankel_lower_bound(const LatticePolygon& p) { return toric_gl_index(p) + 1; }

struct VeroneseIndices {
  int gl = 0;
  int hankel = 0;
};

// Green-Lazarsfeld and Hankel index of the degree-d Veronese surface.
inline VeroneseIndices veronese_p2_indices(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "Veronese degree must be at least 2");
  return {3 * d - 3, 3 * d - 2};
}

// N_{2,p} guaranteed for the k-th Veronese re-embedding of an m-regular
// variety, when one of the two regimes applies.
inline std::optional<int> park_n2p_bound(int m, int k) {
  if (m < 2 || k < 1) return std::nullopt;
  if (k >= m - 1) return k;
  if (2 * k >= m && k <= m - 2) return 2 * k - m + 1;
  return std::nullopt;
}

// Exponent vectors of the degree-`degree` monomials in `num_vars` variables,
// graded lexicographic (x0^k first).
inline std::vector<std::vector<int>> grlex_basis(int num_vars, int degree) {
  if (num_vars < 1 || degree < 0) throw Error(ErrorCode::InvalidArgument, "bad monomial basis dimensions");
  std::vector<std::vector<int>> out;
  std::vector<int> exponent(num_vars, 0);
  auto fill = [&](auto&& self, int var, int remaining) -> void {
    if (var == num_vars - 1) {
      exponent[var] = remaining;
      out.push_back(exponent);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exponent[var] = e;
      self(self, var + 1, remaining - e);
    }
  };
  fill(fill, 0, degree);
  return out;
}

// Values of the grlex monomials at a point; v v^T is the moment matrix of the
// evaluation at that point.
inline Eigen::VectorXd monomial_vector(const Eigen::VectorXd& point, int degree) {
  const auto basis = grlex_basis(static_cast<int>(point.size()), degree);
  Eigen::VectorXd v(basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    double value = 1.0;
    for (Eigen::Index i = 0; i < point.size(); ++i) value *= std::pow(point(i), basis[b][i]);
    v(b) = value;
  }
  return v;
}

// Moment matrix of a functional on forms of degree 2k, rows and columns
// indexed by the grlex degree-k monomials.
struct MomentOperator {
  SymMatrix matrix;
  int degree = 0;
  int num_vars = 0;

  MomentOperator(SymMatrix m, int k, int vars) : matrix(std::move(m)), degree(k), num_vars(vars) {
    if (static_cast<std::size_t>(matrix.size()) != grlex_basis(num_vars, degree).size()) {
      throw Error(ErrorCode::InvalidArgument, "matrix size differs from the monomial basis size");
    }
  }
};

enum class Representability { Representable, Indeterminate, NotPSD };

constexpr std::string_view to_string(Representability r) noexcept {
  switch (r) {
    case Representability::Representable: return "Representable";
    case Representability::Indeterminate: return "Indeterminate";
    case Representability::NotPSD: return "NotPSD";
  }
  return "Unknown";
}

// A PSD moment operator whose rank is below the Hankel index of the
// re-embedded variety is a conic combination of point evaluations. Below
// that rank the test is sufficient only.
inline Representability moment_representable(const MomentOperator& op, std::int64_t hankel_lower_bound,
                                              double tol = kDefaultTolerance) {
  if (hankel_lower_bound < 2) throw Error(ErrorCode::InvalidArgument, "Hankel bound must be at least 2");
  if (!is_psd(op.matrix, tol)) return Representability::NotPSD;
  if (numeric_rank(op.matrix, tol) < hankel_lower_bound) return Representability::Representable;
  return Representability::Indeterminate;
}

}  // namespace psdcomp

#endif  // PSDCOMP_MOMENTS_HPP_
