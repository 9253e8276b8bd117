#ifndef PSDCOMP_LINALG_HPP_
#define PSDCOMP_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "psdcomp/error.hpp"

namespace psdcomp {

// Relative tolerance used for PSD decisions and numeric rank unless the
// caller overrides it.
inline constexpr double kDefaultTolerance = 1e-9;

// Dense real symmetric matrix. Construction rejects inputs whose asymmetry
// exceeds 1e-12 * (1 + max|A|) and stores the exact symmetric part.
class SymMatrix {
 public:
  SymMatrix() = default;

  explicit SymMatrix(int n) : a_(Eigen::MatrixXd::Zero(n, n)) {}

  explicit SymMatrix(Eigen::MatrixXd a) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
    if (!a.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    const double scale = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
    const double asym = a.size() == 0 ? 0.0 : (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * (1.0 + scale)) {
      throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym) + " exceeds tolerance");
    }
    a_ = 0.5 * (a + a.transpose());
  }

  static SymMatrix identity(int n) { return SymMatrix(Eigen::MatrixXd::Identity(n, n)); }

  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n) {
        throw Error(ErrorCode::NotSymmetric, "row length differs from row count");
      }
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[i][j];
    }
    return SymMatrix(std::move(a));
  }

  int size() const noexcept { return static_cast<int>(a_.rows()); }
  double operator()(int i, int j) const { return a_(i, j); }

  void set(int i, int j, double value) {
    a_(i, j) = value;
    a_(j, i) = value;
  }

  const Eigen::MatrixXd& matrix() const noexcept { return a_; }

  double max_abs() const { return a_.size() == 0 ? 0.0 : a_.cwiseAbs().maxCoeff(); }
  // Frobenius norm; an upper bound on the spectral norm.
  double norm() const { return a_.norm(); }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(size(), std::vector<double>(size()));
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) out[i][j] = a_(i, j);
    return out;
  }

  SymMatrix principal_block(const std::vector<int>& index) const {
    const auto k = static_cast<Eigen::Index>(index.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) block(a, b) = a_(index[a], index[b]);
    return SymMatrix(std::move(block));
  }

 private:
  Eigen::MatrixXd a_;
};

struct SymEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

inline SymEigen sym_eigen(const SymMatrix& a) {
  if (a.size() == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.matrix());
  const auto n = a.size();
  SymEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

inline double psd_min_eig(const SymMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

inline bool is_psd(const SymMatrix& a, double tol = kDefaultTolerance) {
  return psd_min_eig(a) >= -tol * (1.0 + a.norm());
}

// Eigenvalues with |lambda| > tol * max(1, |lambda_max|).
inline int numeric_rank(const SymMatrix& a, double tol = kDefaultTolerance) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "rank tolerance must be positive");
  if (a.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double top = values.cwiseAbs().maxCoeff();
  const double threshold = tol * std::max(1.0, top);
  int rank = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) rank += std::abs(values(i)) > threshold ? 1 : 0;
  return rank;
}

// Vectors whose pairwise inner products reproduce a PSD matrix. Column i of
// `vectors` (an r x n matrix) belongs to row/column i of the source.
struct GramFactor {
  int rank = 0;
  Eigen::MatrixXd vectors;

  int size() const noexcept { return static_cast<int>(vectors.cols()); }

  SymMatrix gram() const { return SymMatrix(vectors.transpose() * vectors); }
};

// Eigendecomposition-based factor; eigenvalues at or below the rank threshold
// are discarded, so rank-deficient inputs need no pivoting.
inline GramFactor gram_factor(const SymMatrix& a, double tol = kDefaultTolerance) {
  const SymEigen eig = sym_eigen(a);
  const int n = a.size();
  if (n > 0 && eig.values(n - 1) < -tol * (1.0 + a.norm())) {
    throw Error(ErrorCode::NotPSD, "minimum eigenvalue " + std::to_string(eig.values(n - 1)));
  }
  const double threshold = n == 0 ? 0.0 : tol * std::max(1.0, std::abs(eig.values(0)));
  int rank = 0;
  while (rank < n && eig.values(rank) > threshold) ++rank;
  GramFactor factor{rank, Eigen::MatrixXd(rank, n)};
  for (int k = 0; k < rank; ++k) {
    factor.vectors.row(k) = std::sqrt(eig.values(k)) * eig.vectors.col(k).transpose();
  }
  return factor;
}

// Orthogonal T with T * q.col(i) = p.col(i) for every i. Both inputs are
// r x s with matching Gram matrices; T is the orthogonal Procrustes solution
// U V^T from the full SVD of p q^T, which extends arbitrarily (O(r), either
// determinant sign) on the complement of the spanned subspace.
inline Eigen::MatrixXd align_gram(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw Error(ErrorCode::GramMismatch, "vector lists differ in shape");
  }
  const Eigen::Index r = p.rows();
  if (p.cols() == 0) return Eigen::MatrixXd::Identity(r, r);
  const Eigen::MatrixXd gp = p.transpose() * p;
  const Eigen::MatrixXd gq = q.transpose() * q;
  const double scale = std::max(gp.cwiseAbs().maxCoeff(), gq.cwiseAbs().maxCoeff());
  const double mismatch = (gp - gq).cwiseAbs().maxCoeff();
  if (mismatch > 1e-8 * (1.0 + scale)) {
    throw Error(ErrorCode::GramMismatch, "Gram matrices differ by " + std::to_string(mismatch));
  }
  const Eigen::MatrixXd cross = p * q.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace psdcomp

#endif  // PSDCOMP_LINALG_HPP_
