#include "specstream/random_order.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specstream/error.hpp"
#include "specstream/leverage.hpp"
#include "specstream/online.hpp"
#include "specstream/rng.hpp"

namespace specstream {
namespace {

void validate(int d, const ScaledConfig& config) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "random-order sampling requires d >= 2");
  if (!(config.eps > 0.0 && config.eps <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "random-order sampling requires eps in (0, 1/2]");
  }
  if (!(config.c_mult > 0.0)) throw Error(ErrorCode::InvalidArgument, "c_mult must be positive");
  if (config.jl.enabled && !(config.jl.params.distortion > 0.0 && config.jl.params.distortion < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "JL distortion must lie in (0, 1)");
  }
}

void check_row(const VectorRef& a, int d) {
  if (a.size() != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "row of size " + std::to_string(a.size()) + ", expected " + std::to_string(d));
  }
}

// Score of one row against a frozen Gram, exact or through JL.
double block_score(const VectorRef& a, const PInv& frozen, const std::optional<JlScorer>& scorer,
                   double multiplier, const ScaledConfig& config, RandomOrderDiagnostics& diag) {
  if (scorer) {
    const double estimate = jl_score(*scorer, a, &diag.jl_ops);
    if (config.jl.audit) {
      diag.jl_scores.push_back(estimate);
      diag.exact_scores.push_back(relative_leverage(frozen, a, config.ortho_tol));
    }
    const double inflated = estimate / (1.0 - config.jl.params.distortion);
    return std::min(multiplier * inflated, 1.0);
  }
  return std::min(multiplier * relative_leverage(frozen, a, config.ortho_tol), 1.0);
}

}  // namespace

std::int64_t BlockSchedule::seed_block_size(int d, std::int64_t k_override) {
  if (k_override > 0) return k_override;
  const auto dd = static_cast<double>(d);
  return std::max<std::int64_t>(d, static_cast<std::int64_t>(std::ceil(dd * std::log(dd))));
}

std::int64_t BlockSchedule::block_start(int i, std::int64_t k) {
  return ((std::int64_t{1} << i) - 1) * k;
}

int BlockSchedule::block_of(std::int64_t j, std::int64_t k) {
  int i = 0;
  while (j >= block_start(i + 1, k)) ++i;
  return i;
}

BlockSchedule BlockSchedule::make(std::int64_t n, int d, std::int64_t k_override) {
  BlockSchedule s;
  s.k = seed_block_size(d, k_override);
  for (int i = 0; block_start(i, s.k) < n; ++i) {
    s.boundaries.push_back(block_start(i, s.k));
    if (i >= 1) ++s.alpha;
  }
  return s;
}

ScaledSampler::ScaledSampler(int d, ScaledConfig config, std::uint64_t seed)
    : d_(d), config_(config), seed_(seed), sketch_(d) {
  validate(d, config_);
  c_ = config_.c_mult * log_dim(d) / (config_.eps * config_.eps);
  multiplier_ = config_.multiplier > 0.0 ? config_.multiplier : 1.0 + config_.eps;
  diag_.k = BlockSchedule::seed_block_size(d, config_.k_override);
  next_boundary_ = diag_.k;
}

void ScaledSampler::freeze() {
  ++current_block_;
  next_boundary_ = BlockSchedule::block_start(current_block_ + 1, diag_.k);
  const SymPsd gram(sketch_.gram(), config_.rank_tol);
  frozen_ = pinv(gram);
  ++diag_.blocks;
  ++diag_.pinv_recomputes;
  diag_.block_score_sums.push_back(0.0);
  if (config_.log_frozen) diag_.frozen_grams.push_back(sketch_.gram());
  if (config_.jl.enabled) {
    const std::int64_t hint = config_.n_hint > 0 ? config_.n_hint : next_boundary_;
    scorer_ = jl_build(sketch_, hint, seed_, static_cast<std::uint64_t>(current_block_),
                       config_.jl.params);
  }
}

bool ScaledSampler::push(const VectorRef& a) {
  check_row(a, d_);
  const std::int64_t index = position_++;
  if (index < diag_.k) {
    diag_.scores.push_back(1.0);
    diag_.probabilities.push_back(1.0);
    sketch_.append(index, 1.0, a);
    diag_.max_working_rows = std::max(diag_.max_working_rows, sketch_.size());
    return true;
  }
  if (index == next_boundary_) freeze();

  const double score = block_score(a, frozen_, scorer_, multiplier_, config_, diag_);
  const double p = std::min(c_ * score, 1.0);
  diag_.scores.push_back(score);
  diag_.probabilities.push_back(p);
  diag_.block_score_sums.back() += score;

  const bool sampled = bernoulli(seed_, static_cast<std::uint64_t>(index), p);
  if (sampled) sketch_.append(index, 1.0 / std::sqrt(p), a);
  diag_.max_working_rows = std::max(diag_.max_working_rows, sketch_.size());
  return sampled;
}

RandomOrderResult ScaledSampler::finalize() && {
  return RandomOrderResult{std::move(sketch_), std::move(diag_)};
}

RandomOrderResult scaled_sampling(const RowStream& stream, const ScaledConfig& config,
                                  std::uint64_t seed) {
  if (stream.empty()) throw Error(ErrorCode::EmptyStream, "scaled_sampling of empty stream");
  ScaledConfig cfg = config;
  if (cfg.n_hint <= 0) cfg.n_hint = stream.n();
  ScaledSampler sampler(stream.d(), cfg, seed);
  for (Eigen::Index i = 0; i < stream.n(); ++i) sampler.push(stream.row(i));
  return std::move(sampler).finalize();
}

ImprovedScaledSampler::ImprovedScaledSampler(int d, ScaledConfig config, std::uint64_t seed,
                                             ConstApprox& approx)
    : d_(d), config_(config), seed_(seed), approx_(approx), sketch_(d), span_(d, config.ortho_tol) {
  validate(d, config_);
  c_ = config_.c_mult * log_dim(d) / (config_.eps * config_.eps);
  multiplier_ = config_.multiplier > 0.0 ? config_.multiplier : 2.0;
  diag_.k = BlockSchedule::seed_block_size(d, config_.k_override);
  next_boundary_ = diag_.k;
}

void ImprovedScaledSampler::freeze() {
  ++current_block_;
  next_boundary_ = BlockSchedule::block_start(current_block_ + 1, diag_.k);
  const Sketch approx_sketch = approx_.query();
  if (approx_sketch.dim() != d_) {
    throw Error(ErrorCode::ConstApproxFailure, "ConstApprox returned a sketch of wrong dimension");
  }
  const SymPsd gram(approx_sketch.gram(), config_.rank_tol);
  if (gram.rank() < span_.rank()) {
    throw Error(ErrorCode::ConstApproxFailure,
                "ConstApprox sketch has rank " + std::to_string(gram.rank()) +
                    " below the rank " + std::to_string(span_.rank()) + " of rows fed so far");
  }
  frozen_ = pinv(gram);
  ++diag_.blocks;
  ++diag_.pinv_recomputes;
  diag_.block_score_sums.push_back(0.0);
  if (config_.log_frozen) diag_.frozen_grams.push_back(approx_sketch.gram());
  if (config_.jl.enabled) {
    const std::int64_t hint = config_.n_hint > 0 ? config_.n_hint : next_boundary_;
    scorer_ = approx_sketch.empty()
                  ? std::nullopt
                  : std::optional<JlScorer>(jl_build(approx_sketch, hint, seed_,
                                                     static_cast<std::uint64_t>(current_block_),
                                                     config_.jl.params));
  }
}

bool ImprovedScaledSampler::push(const VectorRef& a) {
  check_row(a, d_);
  const std::int64_t index = position_++;
  bool sampled = true;
  if (index < diag_.k) {
    diag_.scores.push_back(1.0);
    diag_.probabilities.push_back(1.0);
    sketch_.append(index, 1.0, a);
  } else {
    if (index == next_boundary_) freeze();
    const double score = block_score(a, frozen_, scorer_, multiplier_, config_, diag_);
    const double p = std::min(c_ * score, 1.0);
    diag_.scores.push_back(score);
    diag_.probabilities.push_back(p);
    diag_.block_score_sums.back() += score;
    sampled = bernoulli(seed_, static_cast<std::uint64_t>(index), p);
    if (sampled) sketch_.append(index, 1.0 / std::sqrt(p), a);
  }
  approx_.add(a);
  span_.add(a);
  diag_.max_working_rows = std::max(diag_.max_working_rows, approx_.working_rows());
  return sampled;
}

RandomOrderResult ImprovedScaledSampler::finalize() && {
  return RandomOrderResult{std::move(sketch_), std::move(diag_)};
}

RandomOrderResult improved_scaled_sampling(const RowStream& stream, const ScaledConfig& config,
                                           std::uint64_t seed, ConstApprox& approx) {
  if (stream.empty()) {
    throw Error(ErrorCode::EmptyStream, "improved_scaled_sampling of empty stream");
  }
  ScaledConfig cfg = config;
  if (cfg.n_hint <= 0) cfg.n_hint = stream.n();
  ImprovedScaledSampler sampler(stream.d(), cfg, seed, approx);
  for (Eigen::Index i = 0; i < stream.n(); ++i) sampler.push(stream.row(i));
  return std::move(sampler).finalize();
}

void PassThroughApprox::add(const VectorRef& row) { sketch_.append(count_++, 1.0, row); }

ScaledApprox::ScaledApprox(int d, double c_mult, std::uint64_t seed, std::int64_t k_override)
    : inner_(d,
             [&] {
               ScaledConfig cfg;
               cfg.eps = 0.5;
               cfg.c_mult = c_mult;
               cfg.k_override = k_override;
               return cfg;
             }(),
             derive_seed(seed, 0xC0A5)) {}

}  // namespace specstream
