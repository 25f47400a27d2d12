#include "specstream/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "specstream/error.hpp"

namespace specstream::kernels {
namespace {

void check_weights(const RowMatrix& rows, std::span<const double> weights) {
  if (!weights.empty() && static_cast<Eigen::Index>(weights.size()) != rows.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "weights length differs from row count");
  }
}

double weight_sq(std::span<const double> weights, Eigen::Index i) {
  return weights.empty() ? 1.0 : weights[i] * weights[i];
}

Matrix chunk_gram(const RowMatrix& rows, std::span<const double> weights, Eigen::Index begin,
                  Eigen::Index end) {
  const Eigen::Index d = rows.cols();
  if (weights.empty()) {
    const auto block = rows.middleRows(begin, end - begin);
    return block.transpose() * block;
  }
  RowMatrix scaled(end - begin, d);
  for (Eigen::Index i = begin; i < end; ++i) scaled.row(i - begin) = weights[i] * rows.row(i);
  return scaled.transpose() * scaled;
}

double quad_form(const RowMatrix& rows, Eigen::Index i, const Matrix& m) {
  const auto r = rows.row(i);
  return r.dot(m * r.transpose());
}

double residual(const RowMatrix& rows, Eigen::Index i, const Matrix& projector) {
  const Vector r = rows.row(i).transpose();
  const double norm = r.norm();
  if (norm == 0.0) return 0.0;
  return (r - projector * r).norm() / norm;
}

}  // namespace

Matrix gram(const RowMatrix& rows, std::span<const double> weights) {
  check_weights(rows, weights);
  const Eigen::Index n = rows.rows();
  const Eigen::Index d = rows.cols();
  const Eigen::Index chunks = (n + kGramChunkRows - 1) / kGramChunkRows;
  std::vector<Matrix> partial(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < chunks; ++c) {
    const Eigen::Index begin = c * kGramChunkRows;
    const Eigen::Index end = std::min(n, begin + kGramChunkRows);
    partial[c] = chunk_gram(rows, weights, begin, end);
  }

  Matrix out = Matrix::Zero(d, d);
  for (const auto& p : partial) out += p;
  return 0.5 * (out + out.transpose());
}

Matrix gram_serial(const RowMatrix& rows, std::span<const double> weights) {
  check_weights(rows, weights);
  const Eigen::Index d = rows.cols();
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const Vector r = rows.row(i).transpose();
    out.noalias() += weight_sq(weights, i) * r * r.transpose();
  }
  return out;
}

std::vector<double> quadratic_forms(const RowMatrix& rows, const Matrix& m,
                                    std::span<const double> weights) {
  check_weights(rows, weights);
  const Eigen::Index n = rows.rows();
  std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) out[i] = weight_sq(weights, i) * quad_form(rows, i, m);
  return out;
}

std::vector<double> quadratic_forms_serial(const RowMatrix& rows, const Matrix& m,
                                           std::span<const double> weights) {
  check_weights(rows, weights);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out.push_back(weight_sq(weights, i) * quad_form(rows, i, m));
  }
  return out;
}

std::vector<double> kernel_residuals(const RowMatrix& rows, const Matrix& projector) {
  const Eigen::Index n = rows.rows();
  std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) out[i] = residual(rows, i, projector);
  return out;
}

std::vector<double> kernel_residuals_serial(const RowMatrix& rows, const Matrix& projector) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) out.push_back(residual(rows, i, projector));
  return out;
}

void set_thread_limit(int n) {
  if (n <= 0) {
    if (const char* env = std::getenv("SPECSTREAM_THREADS")) {
      try {
        n = std::stoi(env);
      } catch (const std::exception&) {
        n = 0;
      }
    }
  }
  if (n > 0) omp_set_num_threads(std::min(n, omp_get_num_procs()));
}

int thread_limit() { return omp_get_max_threads(); }

}  // namespace specstream::kernels
