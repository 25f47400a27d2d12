#include "specstream/online.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specstream/error.hpp"
#include "specstream/leverage.hpp"
#include "specstream/rng.hpp"

namespace specstream {
namespace {

void check_row(const VectorRef& a, int d) {
  if (a.size() != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "row of size " + std::to_string(a.size()) + ", expected " + std::to_string(d));
  }
}

// a^T X^+ a through the eigendecomposition of X.
double pinv_quadratic_form(const Matrix& x, const VectorRef& a, double rank_tol) {
  const SymPsd s(x, rank_tol);
  const int r = s.rank();
  if (r == 0) return 0.0;
  const Vector proj = s.eigenvectors().leftCols(r).transpose() * a;
  return proj.cwiseAbs2().cwiseQuotient(s.eigenvalues().head(r)).sum();
}

}  // namespace

double log_dim(int d) { return std::max(std::log(static_cast<double>(d)), 1.0); }

OnlineSampler::OnlineSampler(int d, OnlineConfig config, std::uint64_t seed)
    : d_(d), config_(config), seed_(seed), sketch_(d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(config_.eps > 0.0 && config_.eps <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "online sampling requires eps in (0, 1/2]");
  }
  if (!(config_.c_mult > 0.0)) throw Error(ErrorCode::InvalidArgument, "c_mult must be positive");
  c_ = config_.c_mult * log_dim(d) / (config_.eps * config_.eps);
  pinv_ = pinv(SymPsd::zero(d, config_.rank_tol));
}

void OnlineSampler::recompute() {
  pinv_ = pinv(SymPsd(sketch_.gram(), config_.rank_tol));
  ++diag_.pinv_recomputes;
  updates_since_check_ = 0;
}

bool OnlineSampler::step(const VectorRef& a, std::int64_t index) {
  check_row(a, d_);
  if (index < next_index_) {
    throw Error(ErrorCode::PreconditionViolation, "row indices must increase");
  }
  next_index_ = index + 1;

  const bool in_image = kernel_orthogonal(pinv_, a, config_.ortho_tol);
  double tau = 1.0;
  if (in_image) {
    const double q = std::max(0.0, a.dot(pinv_.matrix * a));
    tau = q / (q + 1.0);
  }
  const double score = std::min((1.0 + config_.eps) * tau, 1.0);
  const double p = std::min(c_ * score, 1.0);
  diag_.scores.push_back(score);
  diag_.probabilities.push_back(p);
  diag_.score_total += score;

  if (!bernoulli(seed_, static_cast<std::uint64_t>(index), p)) return false;

  sketch_.append(index, 1.0 / std::sqrt(p), a);
  if (!in_image) {
    recompute();
    return true;
  }
  pinv_ = pinv_rank1_update(pinv_, a, 1.0 / p, config_.ortho_tol);
  ++diag_.rank1_updates;
  if (config_.verify_every > 0 && ++updates_since_check_ >= config_.verify_every) {
    updates_since_check_ = 0;
    const PInv fresh = pinv(SymPsd(sketch_.gram(), config_.rank_tol));
    const double scale = std::max(fresh.matrix.norm(), 1e-300);
    if ((fresh.matrix - pinv_.matrix).norm() > config_.drift_tol * scale ||
        fresh.source_rank != pinv_.source_rank) {
      pinv_ = fresh;
      ++diag_.pinv_recomputes;
      ++diag_.drift_events;
    }
  }
  return true;
}

OnlineResult OnlineSampler::finalize() && {
  return OnlineResult{std::move(sketch_), std::move(diag_)};
}

OnlineResult online_row_sampling(const RowStream& stream, const OnlineConfig& config,
                                 std::uint64_t seed) {
  OnlineSampler sampler(stream.d(), config, seed);
  for (Eigen::Index i = 0; i < stream.n(); ++i) sampler.step(stream.row(i), i);
  return std::move(sampler).finalize();
}

BarrierSampler::BarrierSampler(int d, BarrierConfig config, std::uint64_t seed)
    : d_(d),
      config_(config),
      seed_(seed),
      sketch_(d),
      upper_(Matrix::Zero(d, d)),
      lower_(Matrix::Zero(d, d)) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(config_.eps > 0.0 && config_.eps < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "barrier sampling requires eps in (0, 1)");
  }
  c_upper_ = 2.0 / config_.eps + 1.0;
  c_lower_ = 3.0 / config_.eps - 1.0;
}

bool BarrierSampler::step(const VectorRef& a, std::int64_t index) {
  check_row(a, d_);
  if (index < next_index_) {
    throw Error(ErrorCode::PreconditionViolation, "row indices must increase");
  }
  next_index_ = index + 1;

  const Matrix aat = a * a.transpose();
  const Matrix& gram = sketch_.gram();
  const Matrix x_upper = (upper_ - gram) + aat;
  const Matrix x_lower = (gram - lower_) + aat;
  const double q_upper = pinv_quadratic_form(x_upper, a, config_.rank_tol);
  const double q_lower = pinv_quadratic_form(x_lower, a, config_.rank_tol);
  const double p = std::min(c_upper_ * q_upper + c_lower_ * q_lower, 1.0);
  diag_.probabilities.push_back(p);
  diag_.probability_total += p;

  const bool sampled = bernoulli(seed_, static_cast<std::uint64_t>(index), p);
  if (sampled) sketch_.append(index, 1.0 / std::sqrt(p), a);
  upper_ += (1.0 + config_.eps) * aat;
  lower_ += (1.0 - config_.eps) * aat;

  if (config_.audit) {
    const double gap = std::min(loewner_gap(sketch_.gram(), upper_),
                                loewner_gap(lower_, sketch_.gram()));
    diag_.min_barrier_gap =
        diag_.audited_steps == 0 ? gap : std::min(diag_.min_barrier_gap, gap);
    ++diag_.audited_steps;
    if (gap < -config_.barrier_tol) {
      throw Error(ErrorCode::BarrierViolation,
                  "barrier sandwich violated at row " + std::to_string(index));
    }
  }
  return sampled;
}

BarrierResult BarrierSampler::finalize() && {
  return BarrierResult{std::move(sketch_), std::move(diag_), std::move(upper_),
                       std::move(lower_)};
}

BarrierResult optimal_online_row_sampling(const RowStream& stream, const BarrierConfig& config,
                                          std::uint64_t seed) {
  BarrierSampler sampler(stream.d(), config, seed);
  for (Eigen::Index i = 0; i < stream.n(); ++i) sampler.step(stream.row(i), i);
  return std::move(sampler).finalize();
}

}  // namespace specstream
