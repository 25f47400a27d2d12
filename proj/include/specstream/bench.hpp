#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specstream/random_order.hpp"
#include "specstream/row_stream.hpp"
#include "specstream/sketch.hpp"

namespace specstream {

enum class Algo { Online, Optimal, Scaled, ImprovedSelf, ImprovedResparsify };

std::string to_string(Algo algo);
Algo parse_algo(const std::string& text);

/// One row of a benchmark table. Optional fields serialize as empty cells.
struct TrialRecord {
  Algo algo = Algo::Online;
  std::int64_t n = 0;
  int d = 0;
  double eps = 0.0;
  std::uint64_t seed_stream = 0;
  std::optional<std::uint64_t> seed_perm;
  std::uint64_t seed_sample = 0;
  std::int64_t sketch_rows = 0;
  double eps_actual = 0.0;
  std::optional<double> score_total;
  std::optional<double> mu;
  std::int64_t max_working_rows = 0;
  std::int64_t pinv_recomputes = 0;
  std::int64_t drift_events = 0;
  std::optional<double> wall_ms;

  bool operator==(const TrialRecord&) const = default;
};

namespace csv {

inline constexpr const char* kHeader =
    "algo,n,d,eps,seed_stream,seed_perm,seed_sample,sketch_rows,eps_actual,score_total,mu,"
    "max_working_rows,pinv_recomputes,drift_events,wall_ms";

/// with_wall = false leaves wall_ms empty, for byte-comparable tables.
std::string format(const TrialRecord& rec, bool with_wall = true);
TrialRecord parse(const std::string& line);

void write(std::ostream& out, std::span<const TrialRecord> records, bool with_wall = true);
std::vector<TrialRecord> read(std::istream& in);

}  // namespace csv

/// Sampling constants used by the harness. The library defaults follow the
/// published constants (3 for online sampling, 6 for scaled sampling); the
/// harness defaults are the calibrated desk-scale values.
struct Calibration {
  double online_c_mult = 1.0;
  double scaled_c_mult = 1.0;
  /// c_mult of the inner eps = 1/2 scaled sampler behind the self plug.
  double self_plug_c_mult = 1.0;
  double resparsify_capacity_mult = 4.0;
  double resparsify_beta = 1.0 / 3.0;
  /// Seed block size for the random-order samplers (0 = max(d, ceil(d ln d))).
  std::int64_t k_override = 0;
  JlOptions jl{};
  bool barrier_audit = false;

  static Calibration published();
};

/// Everything a single sampler run produces, normalized across algorithms.
struct TrialOutput {
  Sketch sketch;
  /// Logged l~ per row; empty for the barrier sampler, which logs none.
  std::vector<double> scores;
  std::vector<double> probabilities;
  std::optional<double> score_total;
  std::int64_t max_working_rows = 0;
  std::int64_t pinv_recomputes = 0;
  std::int64_t drift_events = 0;
  std::int64_t blocks = 0;
  std::int64_t k = 0;
  std::vector<double> jl_scores;
  std::vector<double> exact_scores;
  double wall_ms = 0.0;
};

/// Runs one algorithm over the stream. The plug for the improved variants is
/// seeded from seed_sample.
TrialOutput run_algorithm(const RowStream& stream, Algo algo, double eps,
                          std::uint64_t seed_sample, const Calibration& cal = {});

/// Runs the algorithm, verifies the sketch and fills a record. The seeds and
/// mu are copied into the record as given.
struct TrialSpec {
  Algo algo = Algo::Online;
  double eps = 0.1;
  std::uint64_t seed_stream = 0;
  std::optional<std::uint64_t> seed_perm;
  std::uint64_t seed_sample = 0;
};
TrialRecord run_trial(const RowStream& stream, const TrialSpec& spec, const Calibration& cal = {},
                      std::optional<double> mu = std::nullopt);

/// Evaluates fn(i) for i in [0, count) on the worker pool. An exception
/// thrown by fn(i) is caught and its message stored in slot i of the result;
/// slots of successful calls stay empty.
std::vector<std::string> parallel_for(std::int64_t count,
                                      const std::function<void(std::int64_t)>& fn);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

struct SuiteCheck {
  std::string name;
  double value = 0.0;
  std::string threshold;
  bool pass = false;
};

struct SuiteConfig {
  std::string name;
  /// 0 selects the suite default.
  int seeds = 0;
  Calibration cal{};
};

struct SuiteResult {
  std::string name;
  std::vector<TrialRecord> records;
  std::vector<SuiteCheck> checks;
  std::vector<std::string> failures;  // per-trial errors

  bool pass() const;
};

/// Registered suites: eps-scaling, n-scaling, mu-scaling, algo-compare,
/// lower-bound-probe. Throws UnknownSuite.
SuiteResult bench_suite(const SuiteConfig& config);
const std::vector<std::string>& suite_names();

/// Per-edge count check for the lower-bound probe: every edge of K_d occurs
/// within (1 +- tol) of prefix / #edges times in each prefix length listed.
bool edge_counts_concentrated(const RowStream& stream, std::span<const std::int64_t> prefixes,
                              double tol);

/// Doubling prefixes n/8, n/4, n/2, n used by the lower-bound probe.
std::vector<std::int64_t> lower_bound_checkpoints(std::int64_t n);

/// Fewest sketch rows sourced from any interval [c_i, c_{i+1}).
std::int64_t new_rows_between(const Sketch& sketch, std::span<const std::int64_t> checkpoints);

}  // namespace specstream
