#pragma once

#include <vector>

#include "specstream/linalg.hpp"
#include "specstream/row_stream.hpp"

namespace specstream {

enum class ScoreKind { Exact, Relative, Overestimate };

struct ScoreVector {
  std::vector<double> scores;
  ScoreKind kind = ScoreKind::Exact;
  Eigen::Index n = 0;
  int d = 0;

  double sum() const;
};

/// tau_i(A) = a_i^T (A^T A)^+ a_i for every row, clamped to [0, 1].
ScoreVector leverage_scores(const RowStream& stream, double rank_tol = 0.0);
ScoreVector leverage_scores(const RowMatrix& rows, double rank_tol = 0.0);

/// Leverage of a against B with a appended. Closed form q/(q+1) with
/// q = a^T (B^T B)^+ a when a is orthogonal to Ker(B), and exactly 1 otherwise.
double relative_leverage(const PInv& b_pinv, const VectorRef& a,
                         double ortho_tol = kDefaultOrthoTol);
double relative_leverage(const SymPsd& b_gram, const PInv& b_pinv, const VectorRef& a,
                         double ortho_tol = kDefaultOrthoTol);

/// min(a^T (S^T S)^+ a, 1) for a orthogonal to Ker(S), else 1.
double uniform_overestimate(const PInv& sample_pinv, const VectorRef& a,
                            double ortho_tol = kDefaultOrthoTol);
double uniform_overestimate(const SymPsd& sample_gram, const PInv& sample_pinv,
                            const VectorRef& a, double ortho_tol = kDefaultOrthoTol);

}  // namespace specstream
