#pragma once

#include <cstdint>
#include <vector>

#include "specstream/linalg.hpp"
#include "specstream/row_stream.hpp"
#include "specstream/sketch.hpp"

namespace specstream {

/// ln d floored at 1, so the sampling multiplier never vanishes for d <= 2.
double log_dim(int d);

struct OnlineConfig {
  double eps = 0.1;
  /// c = c_mult * eps^-2 * log_dim(d).
  double c_mult = 3.0;
  double ortho_tol = kDefaultOrthoTol;
  double rank_tol = 0.0;
  /// Compare the maintained pseudo-inverse to a fresh one every N
  /// Sherman-Morrison updates (0 disables).
  int verify_every = 64;
  double drift_tol = 1e-6;
};

struct OnlineDiagnostics {
  std::vector<double> scores;         // l~_i per arriving row
  std::vector<double> probabilities;  // p_i per arriving row
  double score_total = 0.0;
  std::int64_t pinv_recomputes = 0;  // rank-change and drift recomputes
  std::int64_t rank1_updates = 0;
  std::int64_t drift_events = 0;
};

struct OnlineResult {
  Sketch sketch;
  OnlineDiagnostics diagnostics;
  double score_total() const { return diagnostics.score_total; }
};

/// Online row sampling with relative leverage scores.
///
/// For each arriving row a: l = min((1+eps) * tau^{sketch}(a), 1),
/// p = min(c l, 1), and a is kept with weight 1/sqrt(p) with probability p.
/// The sketch pseudo-inverse is maintained by rank-1 updates while the row
/// lies in the current image and recomputed when the rank grows.
class OnlineSampler {
 public:
  OnlineSampler(int d, OnlineConfig config, std::uint64_t seed);

  /// Processes one row. Indices must increase strictly.
  bool step(const VectorRef& a, std::int64_t index);
  bool step(const VectorRef& a) { return step(a, next_index_); }

  const Sketch& sketch() const { return sketch_; }
  const PInv& gram_pinv() const { return pinv_; }
  const OnlineDiagnostics& diagnostics() const { return diag_; }
  double c() const { return c_; }

  OnlineResult finalize() &&;

 private:
  void recompute();

  int d_;
  OnlineConfig config_;
  std::uint64_t seed_;
  double c_;
  Sketch sketch_;
  PInv pinv_;
  OnlineDiagnostics diag_;
  std::int64_t next_index_ = 0;
  std::int64_t updates_since_check_ = 0;
};

OnlineResult online_row_sampling(const RowStream& stream, const OnlineConfig& config,
                                 std::uint64_t seed);

struct BarrierConfig {
  double eps = 0.5;
  double rank_tol = 0.0;
  /// Check lower <= gram <= upper after every step.
  bool audit = true;
  double barrier_tol = 1e-7;
};

struct BarrierDiagnostics {
  std::vector<double> probabilities;
  double probability_total = 0.0;
  /// Smallest relative Loewner gap seen across audited steps (min over
  /// upper - gram and gram - lower).
  double min_barrier_gap = 0.0;
  std::int64_t audited_steps = 0;
};

struct BarrierResult {
  Sketch sketch;
  BarrierDiagnostics diagnostics;
  Matrix upper;
  Matrix lower;
};

/// Optimal online sampling with upper and lower barrier matrices.
///
/// With X_U = (B_U - G) + a a^T and X_L = (G - B_L) + a a^T,
/// p = min(c_U a^T X_U^+ a + c_L a^T X_L^+ a, 1), c_U = 2/eps + 1,
/// c_L = 3/eps - 1. After the decision B_U += (1+eps) a a^T and
/// B_L += (1-eps) a a^T.
class BarrierSampler {
 public:
  BarrierSampler(int d, BarrierConfig config, std::uint64_t seed);

  bool step(const VectorRef& a, std::int64_t index);
  bool step(const VectorRef& a) { return step(a, next_index_); }

  const Sketch& sketch() const { return sketch_; }
  const Matrix& upper() const { return upper_; }
  const Matrix& lower() const { return lower_; }
  const BarrierDiagnostics& diagnostics() const { return diag_; }
  double c_upper() const { return c_upper_; }
  double c_lower() const { return c_lower_; }

  BarrierResult finalize() &&;

 private:
  int d_;
  BarrierConfig config_;
  std::uint64_t seed_;
  double c_upper_;
  double c_lower_;
  Sketch sketch_;
  Matrix upper_;
  Matrix lower_;
  BarrierDiagnostics diag_;
  std::int64_t next_index_ = 0;
};

BarrierResult optimal_online_row_sampling(const RowStream& stream, const BarrierConfig& config,
                                          std::uint64_t seed);

}  // namespace specstream
