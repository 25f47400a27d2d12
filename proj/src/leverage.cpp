#include "specstream/leverage.hpp"

#include <algorithm>
#include <numeric>

#include "specstream/error.hpp"
#include "specstream/kernels.hpp"

namespace specstream {

double ScoreVector::sum() const { return std::accumulate(scores.begin(), scores.end(), 0.0); }

ScoreVector leverage_scores(const RowMatrix& rows, double rank_tol) {
  if (rows.rows() == 0) throw Error(ErrorCode::EmptyStream, "leverage_scores of empty matrix");
  const SymPsd gram(kernels::gram(rows), rank_tol);
  const PInv p = pinv(gram);
  ScoreVector out;
  out.kind = ScoreKind::Exact;
  out.n = rows.rows();
  out.d = static_cast<int>(rows.cols());
  out.scores = kernels::quadratic_forms(rows, p.matrix);
  for (double& s : out.scores) s = std::clamp(s, 0.0, 1.0);
  return out;
}

ScoreVector leverage_scores(const RowStream& stream, double rank_tol) {
  return leverage_scores(stream.rows(), rank_tol);
}

double relative_leverage(const PInv& b_pinv, const VectorRef& a, double ortho_tol) {
  if (!kernel_orthogonal(b_pinv, a, ortho_tol)) return 1.0;
  const double q = std::max(0.0, a.dot(b_pinv.matrix * a));
  return std::clamp(q / (q + 1.0), 0.0, 1.0);
}

double relative_leverage(const SymPsd& b_gram, const PInv& b_pinv, const VectorRef& a,
                         double ortho_tol) {
  if (b_gram.dim() != b_pinv.dim()) throw Error(ErrorCode::DimensionMismatch, "relative_leverage");
  return relative_leverage(b_pinv, a, ortho_tol);
}

double uniform_overestimate(const PInv& sample_pinv, const VectorRef& a, double ortho_tol) {
  if (!kernel_orthogonal(sample_pinv, a, ortho_tol)) return 1.0;
  return std::clamp(a.dot(sample_pinv.matrix * a), 0.0, 1.0);
}

double uniform_overestimate(const SymPsd& sample_gram, const PInv& sample_pinv,
                            const VectorRef& a, double ortho_tol) {
  if (sample_gram.dim() != sample_pinv.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "uniform_overestimate");
  }
  return uniform_overestimate(sample_pinv, a, ortho_tol);
}

}  // namespace specstream
