#include "specstream/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specstream/error.hpp"
#include "specstream/kernels.hpp"
#include "specstream/leverage.hpp"
#include "specstream/random_order.hpp"

namespace specstream {

namespace {

void check_sources(const RowStream& stream, const Sketch& sketch) {
  for (const SketchRow& r : sketch.rows()) {
    if (r.source < 0 || r.source >= stream.n()) {
      throw Error(ErrorCode::PreconditionViolation,
                  "sketch row source " + std::to_string(r.source) + " outside the stream");
    }
    if (r.row != stream.rows().row(r.source).transpose()) {
      throw Error(ErrorCode::PreconditionViolation,
                  "sketch row " + std::to_string(r.source) + " differs from the stream row");
    }
  }
}

}  // namespace

std::int64_t overestimate_violations(const RowStream& stream, std::span<const double> score_log,
                                     double slack) {
  if (static_cast<Eigen::Index>(score_log.size()) != stream.n()) {
    throw Error(ErrorCode::DimensionMismatch, "score log has " + std::to_string(score_log.size()) +
                                                  " entries for " + std::to_string(stream.n()) +
                                                  " rows");
  }
  const ScoreVector exact = leverage_scores(stream);
  std::int64_t bad = 0;
  for (std::size_t i = 0; i < score_log.size(); ++i) {
    if (score_log[i] < exact.scores[i] - slack) ++bad;
  }
  return bad;
}

VerifyReport verify(const RowStream& stream, const Sketch& sketch,
                    std::span<const double> score_log, double slack) {
  if (sketch.dim() != stream.d()) {
    throw Error(ErrorCode::DimensionMismatch, "sketch has d=" + std::to_string(sketch.dim()) +
                                                  ", stream has d=" + std::to_string(stream.d()));
  }
  check_sources(stream, sketch);

  VerifyReport report;
  const SymPsd ref(kernels::gram(stream.rows()));
  const SymPsd test(sketch.recompute_gram());
  report.eps_actual = approx_factor(ref, test);

  if (!score_log.empty()) {
    report.missing_score_log = false;
    report.overestimate_violations = overestimate_violations(stream, score_log, slack);
    report.overestimate_ok = report.overestimate_violations == 0;
  }
  return report;
}

double mu(const RowStream& stream, MuMode mode) {
  const int d = stream.d();
  if (stream.empty()) throw Error(ErrorCode::EmptyStream, "mu of an empty stream");
  if (mode == MuMode::Auto) {
    mode = stream.n() <= kMuExactLimit ? MuMode::Exact : MuMode::Checkpoint;
  }

  Matrix gram = Matrix::Zero(d, d);
  double prefix_min = std::numeric_limits<double>::infinity();
  const auto consider = [&] {
    const SymPsd s(gram);
    if (!s.is_zero()) prefix_min = std::min(prefix_min, min_nonzero_eig(s));
  };

  if (mode == MuMode::Exact) {
    for (Eigen::Index i = 0; i < stream.n(); ++i) {
      const auto r = stream.rows().row(i);
      gram.noalias() += r.transpose() * r;
      consider();
    }
  } else {
    // Within a run of constant rank the Gram only grows on a fixed image, so
    // the smallest nonzero eigenvalue is nondecreasing; its minimum sits at
    // the rows that raise the rank.
    const BlockSchedule schedule = BlockSchedule::make(stream.n(), d);
    std::size_t next_boundary = 1;
    SpanTracker span(d);
    for (Eigen::Index i = 0; i < stream.n(); ++i) {
      const auto r = stream.rows().row(i);
      gram.noalias() += r.transpose() * r;
      bool check = span.add(r.transpose());
      if (next_boundary < schedule.boundaries.size() &&
          i == schedule.boundaries[next_boundary]) {
        check = true;
        ++next_boundary;
      }
      if (check) consider();
    }
  }

  if (!std::isfinite(prefix_min)) throw Error(ErrorCode::AllZeroStream, "mu of an all-zero stream");
  return SymPsd(gram).lambda_max() / prefix_min;
}

}  // namespace specstream
