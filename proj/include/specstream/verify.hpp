#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "specstream/row_stream.hpp"
#include "specstream/sketch.hpp"

namespace specstream {

struct VerifyReport {
  double eps_actual = 0.0;
  /// Empty when no score log was supplied (the audit was skipped).
  std::optional<bool> overestimate_ok;
  bool missing_score_log = true;
  /// Rows with logged score below the exact leverage score minus the slack.
  std::int64_t overestimate_violations = 0;

  bool passes(double eps) const { return eps_actual <= eps; }
};

/// eps_actual is the approximation factor of the sketch Gram (recomputed from
/// its rows) against A^T A. When score_log is nonempty it must hold one
/// logged score per stream row; each is compared with the exact tau_i(A).
VerifyReport verify(const RowStream& stream, const Sketch& sketch,
                    std::span<const double> score_log = {}, double slack = 1e-9);

/// Number of i with score_log[i] < tau_i(A) - slack.
std::int64_t overestimate_violations(const RowStream& stream, std::span<const double> score_log,
                                     double slack = 1e-9);

enum class MuMode { Auto, Exact, Checkpoint };

/// Rows above which Auto switches to checkpoint mode.
inline constexpr Eigen::Index kMuExactLimit = 5000;

/// lambda_max(A^T A) / min over prefixes of the smallest nonzero eigenvalue
/// of A_i^T A_i. Exact mode scans every prefix; checkpoint mode evaluates
/// only at rows that raise the rank and at block boundaries of the
/// random-order schedule.
double mu(const RowStream& stream, MuMode mode = MuMode::Auto);

}  // namespace specstream
