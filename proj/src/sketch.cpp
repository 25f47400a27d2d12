#include "specstream/sketch.hpp"

#include <string>

#include "specstream/error.hpp"
#include "specstream/kernels.hpp"

namespace specstream {

Sketch::Sketch(int dim) : dim_(dim), gram_(Matrix::Zero(dim, dim)) {}

void Sketch::append(std::int64_t source, double weight, Vector row) {
  if (row.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "row of size " + std::to_string(row.size()) + " in sketch of dim " +
                    std::to_string(dim_));
  }
  if (!rows_.empty() && source <= rows_.back().source) {
    throw Error(ErrorCode::PreconditionViolation, "sketch sources must be strictly increasing");
  }
  if (!(weight > 0.0)) throw Error(ErrorCode::InvalidArgument, "sketch weight must be positive");
  gram_.noalias() += (weight * weight) * row * row.transpose();
  rows_.push_back({source, weight, std::move(row)});
}

RowMatrix Sketch::weighted_rows() const {
  RowMatrix out(static_cast<Eigen::Index>(rows_.size()), dim_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = rows_[i].weight * rows_[i].row.transpose();
  }
  return out;
}

Matrix Sketch::recompute_gram() const { return kernels::gram(weighted_rows()); }

}  // namespace specstream
