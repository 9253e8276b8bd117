#ifndef PSDCOMP_FEASIBILITY_HPP_
#define PSDCOMP_FEASIBILITY_HPP_

#include <algorithm>
#include <optional>

#include <Eigen/Dense>

#include "psdcomp/graph.hpp"
#include "psdcomp/linalg.hpp"
#include "psdcomp/partial_matrix.hpp"

namespace psdcomp {

namespace detail {

// Nearest matrix (Frobenius) with every eigenvalue >= floor.
inline Eigen::MatrixXd project_eigen_floor(const Eigen::MatrixXd& x, double floor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (x + x.transpose()));
  const Eigen::VectorXd clamped = solver.eigenvalues().cwiseMax(floor);
  return solver.eigenvectors() * clamped.asDiagonal() * solver.eigenvectors().transpose();
}

inline void overwrite_specified(Eigen::MatrixXd& x, const PartialSymmetricMatrix& partial) {
  for (int i = 0; i < partial.size(); ++i) x(i, i) = partial.diag()[i];
  for (const auto& [edge, value] : partial.entries()) {
    x(edge.first, edge.second) = value;
    x(edge.second, edge.first) = value;
  }
}

inline bool exceeds_floor(const Eigen::MatrixXd& x, double floor) {
  const auto n = x.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(x - floor * Eigen::MatrixXd::Identity(n, n));
  return llt.info() == Eigen::Success;
}

// If w is a null vector of the clique block of A - shift*I and A >= shift*I,
// then (A - shift*I) w = 0 for the zero-padded w. The returned orthonormal
// basis spans the complement of all such vectors, so every completion has
// A - shift*I = U Z U^T. Empty optional: some block is below shift - tol.
inline std::optional<Eigen::MatrixXd> admissible_range(const Graph& pattern, const PartialSymmetricMatrix& partial,
                                                       double shift, double tol) {
  const int n = partial.size();
  const double null_tol = 0.5 * tol;
  std::vector<Eigen::VectorXd> nulls;
  for (const auto& clique : maximal_cliques(pattern)) {
    const SymEigen eig = sym_eigen(partial.block(clique));
    for (Eigen::Index a = 0; a < eig.values.size(); ++a) {
      const double lifted = eig.values(a) - shift;
      if (lifted < -tol) return std::nullopt;
      if (lifted > null_tol) continue;
      Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
      for (std::size_t c = 0; c < clique.size(); ++c) w(clique[c]) = eig.vectors(c, a);
      nulls.push_back(std::move(w));
    }
  }
  if (nulls.empty()) return Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd w(n, nulls.size());
  for (std::size_t k = 0; k < nulls.size(); ++k) w.col(k) = nulls[k];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-8) ++rank;
  return Eigen::MatrixXd(svd.matrixU().rightCols(n - rank));
}

}  // namespace detail

// Searches for a completion A >= shift * I of `partial` by Dykstra's
// alternating projections between the affine set of matrices agreeing with
// the specified entries and {shift*I + U Z U^T : Z >= -tol/2}, where U spans
// the directions left free by singular clique blocks. Restricting to that
// face and allowing the half-tolerance slack gives the second set an
// interior relative to the affine set, which keeps the iteration from
// crawling along a common boundary. Returned matrices agree exactly with the
// specified entries and have minimum eigenvalue >= shift - tol. A nullopt
// result only means the search gave up; it is not evidence of infeasibility.
inline std::optional<SymMatrix> affine_psd_feasibility(const Graph& pattern,
                                                       const PartialSymmetricMatrix& partial,
                                                       double shift, int max_iter, double tol) {
  partial.require_pattern(pattern);
  if (shift < 0) throw Error(ErrorCode::InvalidArgument, "shift must be nonnegative");
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const int n = partial.size();
  if (n == 0) return SymMatrix(0);

  const auto accept = [&](const Eigen::MatrixXd& x) -> std::optional<SymMatrix> {
    if (!detail::exceeds_floor(x, shift - tol)) return std::nullopt;
    SymMatrix candidate(x);
    if (psd_min_eig(candidate) < shift - tol) return std::nullopt;
    return candidate;
  };

  Eigen::MatrixXd x = partial.zero_filled().matrix();
  if (auto found = accept(x)) return found;

  const auto range = detail::admissible_range(pattern, partial, shift, tol);
  if (!range) return std::nullopt;
  const Eigen::MatrixXd& u = *range;
  const Eigen::MatrixXd shifted_identity = shift * Eigen::MatrixXd::Identity(n, n);
  const auto project_face = [&](const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
    if (u.cols() == 0) return shifted_identity;
    const Eigen::MatrixXd z = u.transpose() * (m - shifted_identity) * u;
    return shifted_identity + u * detail::project_eigen_floor(z, -0.5 * tol) * u.transpose();
  };

  const double scale = 1.0 + partial.max_abs();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::MatrixXd y = project_face(x + p);
    p = x + p - y;
    Eigen::MatrixXd next = y + q;
    detail::overwrite_specified(next, partial);
    q = y + q - next;
    const double step = (next - x).norm();
    x = std::move(next);
    if (auto found = accept(x)) return found;
    // Dykstra's iterates settle when the two sets do not meet.
    if (iter > 50 && step < 1e-13 * scale) break;
  }
  return std::nullopt;
}

}  // namespace psdcomp

#endif  // PSDCOMP_FEASIBILITY_HPP_
