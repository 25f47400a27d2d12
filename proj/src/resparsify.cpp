#include <algorithm>
#include <cmath>
#include <string>

#include "specstream/error.hpp"
#include "specstream/kernels.hpp"
#include "specstream/online.hpp"
#include "specstream/random_order.hpp"
#include "specstream/rng.hpp"

namespace specstream {

ResparsifyApprox::ResparsifyApprox(int d, double capacity_mult, double beta, std::uint64_t seed)
    : d_(d), beta_(beta), seed_(seed) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(beta > 0.0 && beta < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "resparsify requires beta in (0, 1/2)");
  }
  if (!(capacity_mult >= 4.0)) {
    throw Error(ErrorCode::InvalidArgument, "resparsify requires capacity_mult >= 4");
  }
  c_beta_ = capacity_mult * log_dim(d) / (beta * beta);
  capacity_ = static_cast<std::size_t>(std::ceil(c_beta_ * d));
}

void ResparsifyApprox::add(const VectorRef& row) {
  if (row.size() != d_) throw Error(ErrorCode::DimensionMismatch, "resparsify add");
  buffer_.push_back({count_++, 1.0, row});
  if (buffer_.size() > 2 * capacity_) resparsify();
  max_rows_ = std::max(max_rows_, buffer_.size());
}

void ResparsifyApprox::resparsify() {
  const auto m = static_cast<Eigen::Index>(buffer_.size());
  RowMatrix rows(m, d_);
  for (Eigen::Index i = 0; i < m; ++i) {
    rows.row(i) = buffer_[static_cast<std::size_t>(i)].weight *
                  buffer_[static_cast<std::size_t>(i)].row.transpose();
  }
  const PInv p = pinv(SymPsd(kernels::gram(rows)));
  std::vector<double> tau = kernels::quadratic_forms(rows, p.matrix);

  // A pass whose survivors still exceed 2C is retried once with fresh draws.
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<SketchRow> kept;
    kept.reserve(capacity_);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double prob = std::min(c_beta_ * std::clamp(tau[i], 0.0, 1.0), 1.0);
      const double u = uniform01(seed_, RngStream::Resparsify, draws_++);
      if (prob > 0.0 && (prob >= 1.0 || u < prob)) {
        SketchRow r = buffer_[static_cast<std::size_t>(i)];
        r.weight /= std::sqrt(prob);
        kept.push_back(std::move(r));
      }
    }
    ++passes_;
    if (kept.size() < 2 * capacity_) {
      buffer_ = std::move(kept);
      return;
    }
  }
  throw Error(ErrorCode::CapacityCollapse,
              "resparsify pass kept " + std::to_string(buffer_.size()) + "+ rows, bound " +
                  std::to_string(2 * capacity_));
}

Sketch ResparsifyApprox::query() const {
  Sketch out(d_);
  for (const auto& r : buffer_) out.append(r.source, r.weight, r.row);
  return out;
}

std::unique_ptr<ConstApprox> resparsify_const_approx(int d, double capacity_mult, double beta,
                                                     std::uint64_t seed) {
  return std::make_unique<ResparsifyApprox>(d, capacity_mult, beta, seed);
}

}  // namespace specstream
