#ifndef PSDCOMP_COMPLETION_HPP_
#define PSDCOMP_COMPLETION_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psdcomp/error.hpp"
#include "psdcomp/feasibility.hpp"
#include "psdcomp/graph.hpp"
#include "psdcomp/hankel_rays.hpp"
#include "psdcomp/linalg.hpp"
#include "psdcomp/partial_matrix.hpp"

namespace psdcomp {

struct CompletionOptions {
  // Relative tolerance for PSD decisions and numeric rank.
  double tol = kDefaultTolerance;
  // Eigenvalue slack accepted from the alternating-projection search, scaled
  // by 1 + max|specified entry|.
  double feasibility_tol = 1e-8;
  int max_iter = 10000;
  int bisection_steps = 40;
};

enum class Verdict { Completed, Infeasible, Undetermined };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Completed: return "Completed";
    case Verdict::Infeasible: return "Infeasible";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

struct CompletionReport {
  Verdict verdict = Verdict::Undetermined;
  std::optional<SymMatrix> completion;
  std::optional<int> rank;
  std::optional<ExtremeRayCertificate> certificate;
  std::optional<double> separating_value;
  // Set when a fully specified block is itself not PSD.
  std::optional<VertexSet> violating_clique;
};

enum class PDAnswer { Yes, No, Undetermined };

constexpr std::string_view to_string(PDAnswer a) noexcept {
  switch (a) {
    case PDAnswer::Yes: return "Yes";
    case PDAnswer::No: return "No";
    case PDAnswer::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

struct PDExistenceVerdict {
  PDAnswer answer = PDAnswer::Undetermined;
  std::optional<SymMatrix> witness;
  // "clique_block" or "rank_bound" when the answer is No.
  std::optional<std::string> failed_condition;
};

struct ChordalCompletion {
  SymMatrix completion;
  int rank = 0;
};

namespace detail {

struct BlockViolation {
  VertexSet clique;
  double min_eigenvalue = 0.0;
  Eigen::VectorXd direction;  // unit eigenvector in clique coordinates
};

// First maximal clique whose block is not PSD (strict: not PD).
inline std::optional<BlockViolation> find_block_violation(const Graph& g, const PartialSymmetricMatrix& partial,
                                                          bool strict, double tol) {
  for (const auto& clique : maximal_cliques(g)) {
    const SymMatrix block = partial.block(clique);
    const SymEigen eig = sym_eigen(block);
    const int last = block.size() - 1;
    const double lowest = eig.values(last);
    const double margin = tol * (1.0 + block.norm());
    if (strict ? lowest <= margin : lowest < -margin) {
      return BlockViolation{clique, lowest, eig.vectors.col(last)};
    }
  }
  return std::nullopt;
}

inline double min_clique_eigenvalue(const Graph& g, const PartialSymmetricMatrix& partial) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& clique : maximal_cliques(g)) lowest = std::min(lowest, psd_min_eig(partial.block(clique)));
  return lowest;
}

struct CycleSeparation {
  ExtremeRayCertificate certificate;
  double value = 0.0;
};

// Most negative pairing of the rank m-2 cycle functional over every
// rotation and reflection of a shortest induced cycle.
inline std::optional<CycleSeparation> best_cycle_separation(const Graph& g, const PartialSymmetricMatrix& partial) {
  const auto cycle = shortest_induced_cycle(g);
  if (!cycle) return std::nullopt;
  const int m = cycle->length();
  const ExtremeRayCertificate base = cycle_extreme_ray(m);
  std::optional<CycleSeparation> best;
  std::vector<int> coords(m);
  for (int direction : {1, -1}) {
    for (int start = 0; start < m; ++start) {
      for (int a = 0; a < m; ++a) coords[a] = cycle->vertices[((start + direction * a) % m + m) % m];
      ExtremeRayCertificate embedded = embed(base, coords, g.size());
      const double value = pair(embedded, g, partial);
      if (!best || value < best->value) best = CycleSeparation{std::move(embedded), value};
    }
  }
  return best;
}

inline double certificate_margin(const PartialSymmetricMatrix& partial, const ExtremeRayCertificate& cert,
                                 double tol) {
  return tol * (1.0 + partial.max_abs()) * (1.0 + cert.tau.norm());
}

}  // namespace detail

// Every maximal-clique principal block is PSD (strict: PD) within tolerance.
inline bool partially_positive(const Graph& g, const PartialSymmetricMatrix& partial, bool strict,
                               double tol = kDefaultTolerance) {
  partial.require_pattern(g);
  return !detail::find_block_violation(g, partial, strict, tol).has_value();
}

// PSD completion of a partially positive matrix on a chordal pattern with
// rank at most the clique number. Cliques are visited root-first along the
// clique tree; each clique's block is factored, its factor is rotated onto
// the vectors already fixed on the separator, and the remaining vectors are
// carried along. Unspecified entries are the induced inner products.
inline ChordalCompletion chordal_complete(const Graph& g, const PartialSymmetricMatrix& partial,
                                          double tol = kDefaultTolerance) {
  partial.require_pattern(g);
  if (!is_chordal(g).chordal) throw Error(ErrorCode::NotChordal, "pattern graph is not chordal");
  if (auto bad = detail::find_block_violation(g, partial, false, tol)) {
    throw Error(ErrorCode::NotPartiallyPositive,
                "clique block has eigenvalue " + std::to_string(bad->min_eigenvalue));
  }
  const int n = g.size();
  const CliqueTree tree = clique_tree(g);
  Eigen::MatrixXd vectors(0, n);
  std::vector<char> placed(n, 0);

  for (int k : tree.traversal_order()) {
    const VertexSet& clique = tree.cliques[k];
    const GramFactor factor = gram_factor(partial.block(clique), tol);
    const Eigen::Index dim = std::max<Eigen::Index>(vectors.rows(), factor.rank);
    if (dim > vectors.rows()) {
      const Eigen::Index old = vectors.rows();
      vectors.conservativeResize(dim, Eigen::NoChange);
      vectors.bottomRows(dim - old).setZero();
    }
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(dim, factor.size());
    local.topRows(factor.rank) = factor.vectors;

    std::vector<int> shared_local, shared_global;
    for (int a = 0; a < static_cast<int>(clique.size()); ++a) {
      if (placed[clique[a]]) {
        shared_local.push_back(a);
        shared_global.push_back(clique[a]);
      }
    }
    Eigen::MatrixXd fixed(dim, shared_global.size()), moving(dim, shared_local.size());
    for (std::size_t s = 0; s < shared_local.size(); ++s) {
      fixed.col(s) = vectors.col(shared_global[s]);
      moving.col(s) = local.col(shared_local[s]);
    }
    const Eigen::MatrixXd rotation = align_gram(fixed, moving);
    for (int a = 0; a < static_cast<int>(clique.size()); ++a) {
      const Vertex v = clique[a];
      if (placed[v]) continue;
      vectors.col(v) = rotation * local.col(a);
      placed[v] = 1;
    }
  }

  SymMatrix completion(Eigen::MatrixXd(vectors.transpose() * vectors));
  const int rank = numeric_rank(completion, tol);
  return {std::move(completion), rank};
}

// Completes when possible, otherwise tries to certify that no PSD completion
// exists. Non-PSD clique blocks are certified by a point evaluation; on a
// non-chordal pattern the rank m-2 cycle functionals of a shortest induced
// cycle are tried before the alternating-projection search.
inline CompletionReport complete_or_certify(const Graph& g, const PartialSymmetricMatrix& partial,
                                            const CompletionOptions& options = {}) {
  partial.require_pattern(g);
  CompletionReport report;

  if (auto bad = detail::find_block_violation(g, partial, false, options.tol)) {
    Eigen::VectorXd point = Eigen::VectorXd::Zero(g.size());
    for (std::size_t a = 0; a < bad->clique.size(); ++a) point(bad->clique[a]) = bad->direction(a);
    report.verdict = Verdict::Infeasible;
    report.certificate = point_evaluation(point);
    report.separating_value = pair(*report.certificate, g, partial);
    report.violating_clique = bad->clique;
    return report;
  }

  if (is_chordal(g).chordal) {
    ChordalCompletion done = chordal_complete(g, partial, options.tol);
    report.verdict = Verdict::Completed;
    report.completion = std::move(done.completion);
    report.rank = done.rank;
    return report;
  }

  if (auto separation = detail::best_cycle_separation(g, partial)) {
    if (separation->value < -detail::certificate_margin(partial, separation->certificate, options.tol)) {
      report.verdict = Verdict::Infeasible;
      report.separating_value = separation->value;
      report.certificate = std::move(separation->certificate);
      return report;
    }
  }

  const double slack = options.feasibility_tol * (1.0 + partial.max_abs());
  if (auto witness = affine_psd_feasibility(g, partial, 0.0, options.max_iter, slack)) {
    report.verdict = Verdict::Completed;
    report.rank = numeric_rank(*witness, options.tol);
    report.completion = std::move(witness);
    return report;
  }
  report.verdict = Verdict::Undetermined;
  return report;
}

// Decides whether a positive definite completion exists: every clique block
// must be PD and, on a pattern whose shortest chordless cycle has length m,
// there must be a PSD completion of rank above n - m + 2. Undetermined when
// neither a witness nor a refutation is found.
inline PDExistenceVerdict pd_completion_exists(const Graph& g, const PartialSymmetricMatrix& partial,
                                               const CompletionOptions& options = {}) {
  partial.require_pattern(g);
  PDExistenceVerdict verdict;
  if (detail::find_block_violation(g, partial, true, options.tol)) {
    verdict.answer = PDAnswer::No;
    verdict.failed_condition = "clique_block";
    return verdict;
  }
  const int n = g.size();
  if (n == 0) {
    verdict.answer = PDAnswer::Yes;
    verdict.witness = SymMatrix(0);
    return verdict;
  }

  const auto cycle = shortest_induced_cycle(g);
  if (!cycle) {
    // Lower the diagonal by half the smallest block eigenvalue, complete,
    // and add the same multiple of the identity back.
    const double eps = 0.5 * detail::min_clique_eigenvalue(g, partial);
    const ChordalCompletion lowered = chordal_complete(g, partial.shifted_diagonal(-eps), options.tol);
    SymMatrix witness(Eigen::MatrixXd(lowered.completion.matrix() + eps * Eigen::MatrixXd::Identity(n, n)));
    if (psd_min_eig(witness) > 0) {
      verdict.answer = PDAnswer::Yes;
      verdict.witness = std::move(witness);
    }
    return verdict;
  }

  const int rank_floor = n - cycle->length() + 2;
  if (auto separation = detail::best_cycle_separation(g, partial)) {
    if (separation->value < -detail::certificate_margin(partial, separation->certificate, options.tol)) {
      verdict.answer = PDAnswer::No;
      verdict.failed_condition = "rank_bound";
      return verdict;
    }
  }

  double hi = *std::max_element(partial.diag().begin(), partial.diag().end());
  for (int step = 0; step < options.bisection_steps && hi > 0; ++step) {
    const double shift = 0.5 * hi;
    auto witness = affine_psd_feasibility(g, partial, shift, options.max_iter, 0.5 * shift);
    if (witness && psd_min_eig(*witness) > 0 && numeric_rank(*witness, options.tol) > rank_floor) {
      verdict.answer = PDAnswer::Yes;
      verdict.witness = std::move(witness);
      return verdict;
    }
    hi = shift;
  }
  return verdict;
}

// Re-checks a report against its stated guarantees; throws on violation.
inline void validate_report(const Graph& g, const PartialSymmetricMatrix& partial, const CompletionReport& report,
                            double tol = kDefaultTolerance) {
  switch (report.verdict) {
    case Verdict::Completed: {
      if (!report.completion) throw Error(ErrorCode::InvalidArgument, "completed report without a completion");
      if (partial.residual(*report.completion) > 1e-8 * (1.0 + partial.max_abs())) {
        throw Error(ErrorCode::InvalidArgument, "completion does not match the specified entries");
      }
      const double lowest = psd_min_eig(*report.completion);
      if (lowest < -std::max(1e-8, tol) * (1.0 + report.completion->norm())) {
        throw Error(ErrorCode::NotPSD, "completion has eigenvalue " + std::to_string(lowest));
      }
      break;
    }
    case Verdict::Infeasible: {
      if (!report.certificate || !report.separating_value || !(*report.separating_value < 0)) {
        throw Error(ErrorCode::InvalidArgument, "infeasible report without a separating certificate");
      }
      if (!verify_certificate(*report.certificate, g, tol)) {
        throw Error(ErrorCode::InvalidArgument, "certificate fails verification");
      }
      const double value = pair(*report.certificate, g, partial);
      if (std::abs(value - *report.separating_value) > 1e-9 * (1.0 + std::abs(value))) {
        throw Error(ErrorCode::InvalidArgument, "separating value does not match the pairing");
      }
      break;
    }
    case Verdict::Undetermined: break;
  }
}

}  // namespace psdcomp

#endif  // PSDCOMP_COMPLETION_HPP_
