#include "specstream/jl.hpp"

#include <algorithm>
#include <cmath>

#include "specstream/error.hpp"
#include "specstream/rng.hpp"

namespace specstream {

int jl_dimension(double c_jl, std::int64_t n_hint) {
  const double logn = std::log(static_cast<double>(std::max<std::int64_t>(n_hint, 2)));
  return std::max(4, static_cast<int>(std::ceil(c_jl * logn)));
}

JlScorer jl_build(const Sketch& sketch, std::int64_t n_hint, std::uint64_t seed,
                  std::uint64_t block_id, const JlParams& params) {
  if (sketch.empty()) throw Error(ErrorCode::EmptySketch, "jl_build on empty sketch");
  const RowMatrix rows = sketch.weighted_rows();
  const auto m = rows.rows();
  const int d = sketch.dim();

  const SymPsd gram(sketch.gram(), params.rank_tol);
  const int r = gram.rank();
  Matrix gram_pinv = Matrix::Zero(d, d);
  if (r > 0) {
    const auto basis = gram.eigenvectors().leftCols(r);
    gram_pinv = basis * gram.eigenvalues().head(r).cwiseInverse().asDiagonal() *
                basis.transpose();
  }

  JlScorer out;
  out.distortion = params.distortion;
  out.ortho_tol = params.ortho_tol;
  out.kernel_basis = gram.eigenvectors().rightCols(d - r);

  const Matrix projected_pinv = rows * gram_pinv;  // m x d
  if (params.identity_debug) {
    out.k = static_cast<int>(m);
    out.n_matrix = projected_pinv;
    return out;
  }

  out.k = jl_dimension(params.c_jl, n_hint);
  const std::uint64_t block_seed = derive_seed(seed, block_id);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.k));
  Matrix pi(out.k, m);
  for (int i = 0; i < out.k; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto counter = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(m) +
                           static_cast<std::uint64_t>(j);
      pi(i, j) = (hash_counter(block_seed, RngStream::JlSigns, counter) >> 63) ? scale : -scale;
    }
  }
  out.n_matrix = pi * projected_pinv;
  return out;
}

double jl_quadratic(const JlScorer& scorer, const VectorRef& a, std::int64_t* op_counter) {
  if (a.size() != scorer.dim()) throw Error(ErrorCode::DimensionMismatch, "jl_score");
  Vector acc = Vector::Zero(scorer.k);
  std::int64_t ops = 0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a(j) == 0.0) continue;
    acc.noalias() += a(j) * scorer.n_matrix.col(j);
    ops += scorer.k;
  }
  if (op_counter) *op_counter += ops + scorer.k;
  return acc.squaredNorm();
}

double jl_score(const JlScorer& scorer, const VectorRef& a, std::int64_t* op_counter) {
  if (a.size() != scorer.dim()) throw Error(ErrorCode::DimensionMismatch, "jl_score");
  const auto kernel_dim = scorer.kernel_basis.cols();
  if (kernel_dim > 0) {
    Vector resid = Vector::Zero(kernel_dim);
    double norm_sq = 0.0;
    std::int64_t ops = 0;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      if (a(j) == 0.0) continue;
      resid.noalias() += a(j) * scorer.kernel_basis.row(j).transpose();
      norm_sq += a(j) * a(j);
      ops += kernel_dim + 1;
    }
    if (op_counter) *op_counter += ops;
    if (resid.norm() > scorer.ortho_tol * std::sqrt(norm_sq)) return 1.0;
  }
  const double q = jl_quadratic(scorer, a, op_counter);
  return q / (q + 1.0);
}

}  // namespace specstream
