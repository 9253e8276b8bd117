#ifndef PSDCOMP_HANKEL_RAYS_HPP_
#define PSDCOMP_HANKEL_RAYS_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "psdcomp/error.hpp"
#include "psdcomp/graph.hpp"
#include "psdcomp/linalg.hpp"
#include "psdcomp/partial_matrix.hpp"

namespace psdcomp {

// A functional tau = sum_i a_i ev_{q_i} on quadrics, stored through its
// moment matrix. For rank k >= 2 the k+2 points satisfy one linear relation
// sum_i u_i q_i = 0 with every u_i nonzero, tau is PSD of rank k, and
// kernel_form spans the kernel direction of tau inside the span of the points
// without vanishing at any q_i. Rank-1 certificates are plain point
// evaluations (one point, one positive weight, no relation or kernel form).
struct ExtremeRayCertificate {
  SymMatrix tau;
  Eigen::MatrixXd points;  // ambient dimension x (k + 2), one point per column
  Eigen::VectorXd relation;
  Eigen::VectorXd weights;
  Eigen::VectorXd kernel_form;
  int rank = 0;

  int size() const noexcept { return tau.size(); }
  int num_points() const noexcept { return static_cast<int>(points.cols()); }
};

// Points e_i - e_{i+1 mod m}: the arrangement of an m-cycle cut by the
// hyperplane where the coordinates sum to zero.
inline Eigen::MatrixXd cycle_points(int m) {
  if (m < 4) throw Error(ErrorCode::InvalidCycleLength, "cycle length must be at least 4");
  Eigen::MatrixXd points = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    points(i, i) = 1.0;
    points((i + 1) % m, i) = -1.0;
  }
  return points;
}

// Closed form of the rank m-2 functional on the m-cycle arrangement:
// tridiagonal (2 on the diagonal, -1 beside it) except the two corner
// diagonal entries (m-2)/(m-1) and the corner pair 1/(m-1).
inline ExtremeRayCertificate cycle_extreme_ray(int m) {
  if (m < 4) throw Error(ErrorCode::InvalidCycleLength, "cycle length must be at least 4");
  const double md = m;
  Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) tau(i, i) = 2.0;
  for (int i = 0; i + 1 < m; ++i) tau(i, i + 1) = tau(i + 1, i) = -1.0;
  tau(0, 0) = tau(m - 1, m - 1) = (md - 2.0) / (md - 1.0);
  tau(0, m - 1) = tau(m - 1, 0) = 1.0 / (md - 1.0);

  ExtremeRayCertificate cert;
  cert.tau = SymMatrix(std::move(tau));
  cert.points = cycle_points(m);
  // The points sum to zero; scaled so the last coefficient is -1.
  cert.relation = Eigen::VectorXd::Constant(m, -1.0);
  cert.weights = Eigen::VectorXd::Ones(m);
  cert.weights(m - 1) = -1.0 / (md - 1.0);
  cert.kernel_form.resize(m);
  const double root = std::sqrt(md - 1.0);
  for (int i = 0; i < m; ++i) cert.kernel_form(i) = (i + 1 - (md + 1.0) / 2.0) / root;
  cert.rank = m - 2;
  return cert;
}

namespace detail {

// Uniform draws in [0.5, 1.5) from the raw 64-bit stream, so the sequence
// depends only on the seed and not on the standard library's distributions.
class WeightStream {
 public:
  explicit WeightStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return 0.5 + static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

inline constexpr int kMaxWeightRedraws = 64;

// Builds tau = sum_i a_i q_i q_i^T from k+2 points with a single linear
// dependence. The head weights a_1..a_{k+1} are positive (all ones unless
// given); the last weight is the negative reciprocal of max (c^T y)^2 over
// the ellipsoid sum a_i y_i^2 = 1, which is c^T D^{-1} c in closed form.
inline ExtremeRayCertificate death_ray(const Eigen::MatrixXd& points,
                                       std::optional<Eigen::VectorXd> weights_head = std::nullopt,
                                       std::uint64_t seed = 0) {
  const auto count = points.cols();
  if (count < 4) throw Error(ErrorCode::NotEnoughPoints, "need k + 2 >= 4 points");
  const Eigen::Index k = count - 2;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(points, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double threshold = 1e-9 * (sigma.size() > 0 ? sigma(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) rank += sigma(i) > threshold ? 1 : 0;
  if (rank != count - 1) {
    throw Error(ErrorCode::DegenerateConfiguration, "points must satisfy exactly one linear relation");
  }
  Eigen::VectorXd relation = svd.matrixV().col(count - 1);
  const double largest = relation.cwiseAbs().maxCoeff();
  if (relation.cwiseAbs().minCoeff() <= 1e-9 * largest) {
    throw Error(ErrorCode::DegenerateConfiguration, "the linear relation has a zero coefficient");
  }
  relation /= -relation(count - 1);
  // With u_{k+2} = -1, c_i = -u_i / u_{k+2} = u_i.
  const Eigen::VectorXd c = relation.head(k + 1);

  Eigen::VectorXd head = weights_head.value_or(Eigen::VectorXd::Ones(k + 1));
  if (head.size() != k + 1) throw Error(ErrorCode::InvalidArgument, "need k + 1 head weights");
  if ((head.array() <= 0).any()) throw Error(ErrorCode::InvalidArgument, "head weights must be positive");

  const Eigen::MatrixXd basis = points.leftCols(k + 1);
  const Eigen::MatrixXd basis_gram = basis.transpose() * basis;
  const Eigen::LDLT<Eigen::MatrixXd> basis_solver(basis_gram);

  detail::WeightStream stream(seed);
  for (int attempt = 0; attempt <= kMaxWeightRedraws; ++attempt) {
    const double ellipsoid_max = (c.array().square() / head.array()).sum();
    const double root = std::sqrt(ellipsoid_max);
    // Maximizer of (c^T y)^2 on the ellipsoid, and the linear form in the
    // span of the points taking those values at q_1..q_{k+1}.
    const Eigen::VectorXd maximizer = (c.array() / head.array()).matrix() / root;
    const Eigen::VectorXd kernel = basis * basis_solver.solve(maximizer);

    bool vanishes = false;
    for (Eigen::Index i = 0; i < count && !vanishes; ++i) {
      const double value = kernel.dot(points.col(i));
      vanishes = std::abs(value) <= 1e-9 * kernel.norm() * points.col(i).norm();
    }
    if (!vanishes) {
      ExtremeRayCertificate cert;
      cert.weights.resize(count);
      cert.weights.head(k + 1) = head;
      cert.weights(count - 1) = -1.0 / ellipsoid_max;
      Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(points.rows(), points.rows());
      for (Eigen::Index i = 0; i < count; ++i)
        tau += cert.weights(i) * points.col(i) * points.col(i).transpose();
      cert.tau = SymMatrix(std::move(tau));
      cert.points = points;
      cert.relation = relation;
      cert.kernel_form = kernel;
      cert.rank = static_cast<int>(k);
      return cert;
    }
    for (Eigen::Index i = 0; i <= k; ++i) head(i) = stream.next();
  }
  throw Error(ErrorCode::DegenerateConfiguration, "kernel form vanishes at a point for every weight draw");
}

// Rank-1 functional: evaluation at `point`, i.e. tau = point point^T.
inline ExtremeRayCertificate point_evaluation(const Eigen::VectorXd& point) {
  ExtremeRayCertificate cert;
  cert.tau = SymMatrix(Eigen::MatrixXd(point * point.transpose()));
  cert.points = point;
  cert.relation.resize(0);
  cert.weights = Eigen::VectorXd::Ones(1);
  cert.kernel_form.resize(0);
  cert.rank = 1;
  return cert;
}

// Re-indexes a certificate on `coords.size()` coordinates into an ambient
// space of dimension n, local coordinate a landing on coords[a].
inline ExtremeRayCertificate embed(const ExtremeRayCertificate& cert, const std::vector<int>& coords,
                                   int n) {
  if (static_cast<int>(coords.size()) != cert.size()) {
    throw Error(ErrorCode::InvalidArgument, "coordinate map does not match the certificate size");
  }
  const int local = cert.size();
  Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < local; ++a)
    for (int b = 0; b < local; ++b) tau(coords[a], coords[b]) = cert.tau(a, b);
  ExtremeRayCertificate out = cert;
  out.tau = SymMatrix(std::move(tau));
  out.points = Eigen::MatrixXd::Zero(n, cert.num_points());
  for (int a = 0; a < local; ++a) out.points.row(coords[a]) = cert.points.row(a);
  if (cert.kernel_form.size() > 0) {
    out.kernel_form = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < local; ++a) out.kernel_form(coords[a]) = cert.kernel_form(a);
  }
  return out;
}

// Off-diagonal positions outside the pattern where tau is nonzero.
inline bool supported_on(const ExtremeRayCertificate& cert, const Graph& g, double zero = 1e-10) {
  if (cert.size() != g.size()) return false;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (!g.adjacent(i, j) && std::abs(cert.tau(i, j)) > zero) return false;
  return true;
}

// <tau, A> for any completion A of `partial`; well defined because tau
// vanishes on the unspecified positions.
inline double pair(const ExtremeRayCertificate& cert, const Graph& g, const PartialSymmetricMatrix& partial) {
  partial.require_pattern(g);
  if (cert.size() != partial.size()) throw Error(ErrorCode::PatternMismatch, "certificate and matrix sizes differ");
  if (!supported_on(cert, g)) {
    throw Error(ErrorCode::CertificateNotSupported, "certificate is nonzero on an unspecified position");
  }
  double value = 0.0;
  for (int i = 0; i < partial.size(); ++i) value += cert.tau(i, i) * partial.diag()[i];
  for (const auto& [edge, entry] : partial.entries()) value += 2.0 * cert.tau(edge.first, edge.second) * entry;
  return value;
}

// Checks every structural property of the certificate and that it lives on
// the pattern of g.
inline bool verify_certificate(const ExtremeRayCertificate& cert, const Graph& g,
                               double tol = kDefaultTolerance) {
  const int n = cert.size();
  if (n != g.size() || cert.points.rows() != n) return false;
  if (cert.weights.size() != cert.num_points()) return false;
  if (!supported_on(cert, g)) return false;

  Eigen::MatrixXd assembled = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < cert.num_points(); ++i)
    assembled += cert.weights(i) * cert.points.col(i) * cert.points.col(i).transpose();
  if ((assembled - cert.tau.matrix()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + cert.tau.max_abs())) return false;
  if (psd_min_eig(cert.tau) < -tol * (1.0 + cert.tau.norm())) return false;
  if (numeric_rank(cert.tau, tol) != cert.rank) return false;

  if (cert.rank == 1) return cert.num_points() == 1 && cert.weights(0) > 0;

  if (cert.rank < 2 || cert.num_points() != cert.rank + 2) return false;
  if (cert.relation.size() != cert.num_points() || cert.kernel_form.size() != n) return false;
  const double point_scale = 1.0 + cert.points.cwiseAbs().maxCoeff();
  if ((cert.points * cert.relation).cwiseAbs().maxCoeff() > 1e-9 * point_scale * (1.0 + cert.relation.norm())) {
    return false;
  }
  if (cert.relation.cwiseAbs().minCoeff() <= 1e-12 * cert.relation.cwiseAbs().maxCoeff()) return false;
  // Minimal dependence: the relation is the only one.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cert.points);
  const Eigen::VectorXd& sigma = svd.singularValues();
  int span = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) span += sigma(i) > 1e-9 * sigma(0) ? 1 : 0;
  if (span != cert.num_points() - 1) return false;

  const Eigen::VectorXd& ell = cert.kernel_form;
  if ((cert.tau.matrix() * ell).norm() > 1e-8 * (1.0 + cert.tau.norm()) * (1.0 + ell.norm())) return false;
  for (int i = 0; i < cert.num_points(); ++i) {
    if (std::abs(ell.dot(cert.points.col(i))) <= 1e-9 * ell.norm() * cert.points.col(i).norm()) return false;
  }
  return true;
}

}  // namespace psdcomp

#endif  // PSDCOMP_HANKEL_RAYS_HPP_
