#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "specstream/jl.hpp"
#include "specstream/linalg.hpp"
#include "specstream/row_stream.hpp"
#include "specstream/sketch.hpp"

namespace specstream {

/// Geometric blocks for the random-order samplers. Block 0 holds the first K
/// rows; block i >= 1 spans rows [(2^i - 1)K, (2^(i+1) - 1)K). The last
/// block is truncated at n.
struct BlockSchedule {
  std::int64_t k = 0;
  std::vector<std::int64_t> boundaries;  // start index of every realized block
  int alpha = 0;                          // realized blocks with i >= 1

  /// K = max(d, ceil(d ln d)) unless k_override > 0.
  static std::int64_t seed_block_size(int d, std::int64_t k_override = 0);
  static BlockSchedule make(std::int64_t n, int d, std::int64_t k_override = 0);

  /// Block containing stream position j (0-based).
  static int block_of(std::int64_t j, std::int64_t k);
  /// Start position of block i.
  static std::int64_t block_start(int i, std::int64_t k);
};

/// Anything that maintains a constant-factor spectral approximation of all
/// rows added so far. Implementations are single-owner.
class ConstApprox {
 public:
  virtual ~ConstApprox() = default;
  virtual void add(const VectorRef& row) = 0;
  virtual Sketch query() const = 0;
  /// Rows currently held.
  virtual std::size_t working_rows() const = 0;
  /// Declared working-set bound (0 when unbounded).
  virtual std::size_t capacity_rows() const = 0;
  /// Declared approximation quality.
  virtual double beta() const = 0;
};

struct JlOptions {
  bool enabled = false;
  JlParams params{};
  /// Record exact relative scores next to the JL estimates.
  bool audit = false;
};

struct ScaledConfig {
  double eps = 0.1;
  /// c = c_mult * eps^-2 * log_dim(d).
  double c_mult = 6.0;
  /// Score multiplier; 0 selects 1 + eps.
  double multiplier = 0.0;
  std::int64_t k_override = 0;
  double ortho_tol = kDefaultOrthoTol;
  double rank_tol = 0.0;
  /// Keep a copy of every frozen Gram for post-hoc audits.
  bool log_frozen = false;
  JlOptions jl{};
  /// Expected stream length, used to size the JL projection.
  std::int64_t n_hint = 0;
};

struct RandomOrderDiagnostics {
  std::int64_t k = 0;
  std::vector<double> scores;          // l~_j; 1 for seed-block rows (kept with p = 1)
  std::vector<double> probabilities;
  std::vector<double> block_score_sums;  // index i-1 holds the sum over block i >= 1
  std::int64_t blocks = 0;               // scoring blocks started (i >= 1)
  std::int64_t pinv_recomputes = 0;
  std::size_t max_working_rows = 0;
  std::vector<Matrix> frozen_grams;
  std::vector<double> jl_scores;
  std::vector<double> exact_scores;
  std::int64_t jl_ops = 0;
};

struct RandomOrderResult {
  Sketch sketch;
  RandomOrderDiagnostics diagnostics;
};

/// Scaled sampling over geometric blocks. The first K rows are kept
/// verbatim; at the start of block i the current sketch is frozen and its
/// pseudo-inverse computed once, then every row in the block is scored by
/// its relative leverage against the frozen Gram.
class ScaledSampler {
 public:
  ScaledSampler(int d, ScaledConfig config, std::uint64_t seed);

  bool push(const VectorRef& a);

  const Sketch& sketch() const { return sketch_; }
  const RandomOrderDiagnostics& diagnostics() const { return diag_; }
  std::int64_t rows_seen() const { return position_; }
  double c() const { return c_; }

  RandomOrderResult finalize() &&;

 private:
  void freeze();

  int d_;
  ScaledConfig config_;
  std::uint64_t seed_;
  double c_;
  double multiplier_;
  Sketch sketch_;
  RandomOrderDiagnostics diag_;
  std::int64_t position_ = 0;
  std::int64_t next_boundary_;
  int current_block_ = 0;
  PInv frozen_;
  std::optional<JlScorer> scorer_;
};

RandomOrderResult scaled_sampling(const RowStream& stream, const ScaledConfig& config,
                                  std::uint64_t seed);

/// Improved scaled sampling: scores come from the ConstApprox sketch queried
/// at each block boundary, with multiplier 2 by default; every arriving row is
/// fed to the ConstApprox after the sampling decision.
class ImprovedScaledSampler {
 public:
  ImprovedScaledSampler(int d, ScaledConfig config, std::uint64_t seed, ConstApprox& approx);

  bool push(const VectorRef& a);

  const Sketch& sketch() const { return sketch_; }
  const RandomOrderDiagnostics& diagnostics() const { return diag_; }

  RandomOrderResult finalize() &&;

 private:
  void freeze();

  int d_;
  ScaledConfig config_;
  std::uint64_t seed_;
  ConstApprox& approx_;
  double c_;
  double multiplier_;
  Sketch sketch_;
  RandomOrderDiagnostics diag_;
  SpanTracker span_;
  std::int64_t position_ = 0;
  std::int64_t next_boundary_;
  int current_block_ = 0;
  PInv frozen_;
  std::optional<JlScorer> scorer_;
};

/// config.multiplier = 0 selects 2 here.
RandomOrderResult improved_scaled_sampling(const RowStream& stream, const ScaledConfig& config,
                                           std::uint64_t seed, ConstApprox& approx);

/// Keeps every row (beta = 0).
class PassThroughApprox final : public ConstApprox {
 public:
  explicit PassThroughApprox(int d) : sketch_(d) {}
  void add(const VectorRef& row) override;
  Sketch query() const override { return sketch_; }
  std::size_t working_rows() const override { return sketch_.size(); }
  std::size_t capacity_rows() const override { return 0; }
  double beta() const override { return 0.0; }

 private:
  Sketch sketch_;
  std::int64_t count_ = 0;
};

/// A second scaled sampler run at eps = 1/2 on the same rows.
class ScaledApprox final : public ConstApprox {
 public:
  ScaledApprox(int d, double c_mult, std::uint64_t seed, std::int64_t k_override = 0);
  void add(const VectorRef& row) override { inner_.push(row); }
  Sketch query() const override { return inner_.sketch(); }
  std::size_t working_rows() const override { return inner_.sketch().size(); }
  std::size_t capacity_rows() const override { return 0; }
  double beta() const override { return 0.5; }

 private:
  ScaledSampler inner_;
};

/// Capacity-triggered resampler. Holds a weighted buffer; when it exceeds 2C
/// rows with C = ceil(capacity_mult * beta^-2 * d * log_dim(d)), every held
/// row is resampled with p = min(c_beta * tau, 1), c_beta = capacity_mult *
/// beta^-2 * log_dim(d), where tau is its leverage in the buffer Gram, and
/// survivors have their weight multiplied by 1/sqrt(p).
class ResparsifyApprox final : public ConstApprox {
 public:
  ResparsifyApprox(int d, double capacity_mult, double beta, std::uint64_t seed);

  void add(const VectorRef& row) override;
  Sketch query() const override;
  std::size_t working_rows() const override { return buffer_.size(); }
  std::size_t capacity_rows() const override { return capacity_; }
  double beta() const override { return beta_; }

  double c_beta() const { return c_beta_; }
  std::int64_t passes() const { return passes_; }
  std::size_t max_working_rows() const { return max_rows_; }

 private:
  void resparsify();

  int d_;
  double beta_;
  std::uint64_t seed_;
  std::size_t capacity_;
  double c_beta_;
  std::vector<SketchRow> buffer_;
  std::int64_t count_ = 0;
  std::int64_t passes_ = 0;
  std::uint64_t draws_ = 0;
  std::size_t max_rows_ = 0;
};

}  // namespace specstream

namespace specstream {

/// Validating factory: beta in (0, 1/2), capacity_mult >= 4.
std::unique_ptr<ConstApprox> resparsify_const_approx(int d, double capacity_mult, double beta,
                                                     std::uint64_t seed);

}  // namespace specstream
