#include "specstream/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "specstream/error.hpp"
#include "specstream/instances.hpp"
#include "specstream/io.hpp"
#include "specstream/online.hpp"
#include "specstream/rng.hpp"
#include "specstream/verify.hpp"

namespace specstream {

namespace {

constexpr std::uint64_t kResparsifyTag = 0x5E5;

const std::map<Algo, std::string>& algo_names() {
  static const std::map<Algo, std::string> names{
      {Algo::Online, "online"},
      {Algo::Optimal, "optimal"},
      {Algo::Scaled, "scaled"},
      {Algo::ImprovedSelf, "improved-self"},
      {Algo::ImprovedResparsify, "improved-resparsify"},
  };
  return names;
}

template <typename T>
std::string optional_cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return io::format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& cell) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  // stod rejects "inf" on some libcs only through out_of_range; accept it.
  if (used != cell.size()) {
    if (cell == "inf") return std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::ParseError, "bad real '" + cell + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(const std::string& cell) {
  std::size_t used = 0;
  Int v{};
  try {
    if constexpr (std::is_unsigned_v<Int>) {
      v = static_cast<Int>(std::stoull(cell, &used));
    } else {
      v = static_cast<Int>(std::stoll(cell, &used));
    }
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + cell + "'");
  }
  return v;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::string to_string(Algo algo) { return algo_names().at(algo); }

Algo parse_algo(const std::string& text) {
  for (const auto& [algo, name] : algo_names()) {
    if (name == text) return algo;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + text + "'");
}

namespace csv {

std::string format(const TrialRecord& r, bool with_wall) {
  std::string out;
  out += to_string(r.algo) + ',';
  out += std::to_string(r.n) + ',';
  out += std::to_string(r.d) + ',';
  out += io::format_double(r.eps) + ',';
  out += std::to_string(r.seed_stream) + ',';
  out += optional_cell(r.seed_perm) + ',';
  out += std::to_string(r.seed_sample) + ',';
  out += std::to_string(r.sketch_rows) + ',';
  out += io::format_double(r.eps_actual) + ',';
  out += optional_cell(r.score_total) + ',';
  out += optional_cell(r.mu) + ',';
  out += std::to_string(r.max_working_rows) + ',';
  out += std::to_string(r.pinv_recomputes) + ',';
  out += std::to_string(r.drift_events) + ',';
  if (with_wall) out += optional_cell(r.wall_ms);
  return out;
}

TrialRecord parse(const std::string& line) {
  const std::vector<std::string> c = split_csv(line);
  if (c.size() != 15) {
    throw Error(ErrorCode::ParseError,
                "expected 15 CSV fields, found " + std::to_string(c.size()));
  }
  const auto opt_real = [](const std::string& s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    return parse_real(s);
  };
  TrialRecord r;
  r.algo = parse_algo(c[0]);
  r.n = parse_int<std::int64_t>(c[1]);
  r.d = parse_int<int>(c[2]);
  r.eps = parse_real(c[3]);
  r.seed_stream = parse_int<std::uint64_t>(c[4]);
  if (!c[5].empty()) r.seed_perm = parse_int<std::uint64_t>(c[5]);
  r.seed_sample = parse_int<std::uint64_t>(c[6]);
  r.sketch_rows = parse_int<std::int64_t>(c[7]);
  r.eps_actual = parse_real(c[8]);
  r.score_total = opt_real(c[9]);
  r.mu = opt_real(c[10]);
  r.max_working_rows = parse_int<std::int64_t>(c[11]);
  r.pinv_recomputes = parse_int<std::int64_t>(c[12]);
  r.drift_events = parse_int<std::int64_t>(c[13]);
  r.wall_ms = opt_real(c[14]);
  return r;
}

void write(std::ostream& out, std::span<const TrialRecord> records, bool with_wall) {
  out << kHeader << '\n';
  for (const TrialRecord& r : records) out << format(r, with_wall) << '\n';
}

std::vector<TrialRecord> read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw Error(ErrorCode::ParseError, "missing or unexpected CSV header");
  }
  std::vector<TrialRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse(line));
  }
  return out;
}

}  // namespace csv

Calibration Calibration::published() {
  Calibration cal;
  cal.online_c_mult = OnlineConfig{}.c_mult;
  cal.scaled_c_mult = ScaledConfig{}.c_mult;
  cal.self_plug_c_mult = ScaledConfig{}.c_mult;
  return cal;
}

TrialOutput run_algorithm(const RowStream& stream, Algo algo, double eps,
                          std::uint64_t seed_sample, const Calibration& cal) {
  const auto start = std::chrono::steady_clock::now();
  TrialOutput out;
  const int d = stream.d();

  const auto take_random_order = [&](RandomOrderResult&& res) {
    out.sketch = std::move(res.sketch);
    auto& diag = res.diagnostics;
    out.score_total = std::accumulate(diag.scores.begin(), diag.scores.end(), 0.0);
    out.scores = std::move(diag.scores);
    out.probabilities = std::move(diag.probabilities);
    out.pinv_recomputes = diag.pinv_recomputes;
    out.blocks = diag.blocks;
    out.k = diag.k;
    out.jl_scores = std::move(diag.jl_scores);
    out.exact_scores = std::move(diag.exact_scores);
    return static_cast<std::int64_t>(diag.max_working_rows);
  };

  ScaledConfig scfg;
  scfg.eps = eps;
  scfg.c_mult = cal.scaled_c_mult;
  scfg.jl = cal.jl;
  scfg.k_override = cal.k_override;

  switch (algo) {
    case Algo::Online: {
      OnlineConfig cfg;
      cfg.eps = eps;
      cfg.c_mult = cal.online_c_mult;
      OnlineResult res = online_row_sampling(stream, cfg, seed_sample);
      out.sketch = std::move(res.sketch);
      out.score_total = res.diagnostics.score_total;
      out.scores = std::move(res.diagnostics.scores);
      out.probabilities = std::move(res.diagnostics.probabilities);
      out.pinv_recomputes = res.diagnostics.pinv_recomputes;
      out.drift_events = res.diagnostics.drift_events;
      out.max_working_rows = static_cast<std::int64_t>(out.sketch.size());
      break;
    }
    case Algo::Optimal: {
      BarrierConfig cfg;
      cfg.eps = eps;
      cfg.audit = cal.barrier_audit;
      BarrierResult res = optimal_online_row_sampling(stream, cfg, seed_sample);
      out.sketch = std::move(res.sketch);
      out.probabilities = std::move(res.diagnostics.probabilities);
      // Two barrier pseudo-inverse forms are evaluated per row.
      out.pinv_recomputes = 2 * stream.n();
      out.max_working_rows = static_cast<std::int64_t>(out.sketch.size());
      break;
    }
    case Algo::Scaled: {
      take_random_order(scaled_sampling(stream, scfg, seed_sample));
      out.max_working_rows = static_cast<std::int64_t>(out.sketch.size());
      break;
    }
    case Algo::ImprovedSelf: {
      ScaledApprox plug(d, cal.self_plug_c_mult, seed_sample, cal.k_override);
      out.max_working_rows = take_random_order(improved_scaled_sampling(stream, scfg, seed_sample, plug));
      break;
    }
    case Algo::ImprovedResparsify: {
      ResparsifyApprox plug(d, cal.resparsify_capacity_mult, cal.resparsify_beta,
                            derive_seed(seed_sample, kResparsifyTag));
      out.max_working_rows = take_random_order(improved_scaled_sampling(stream, scfg, seed_sample, plug));
      break;
    }
  }
  out.wall_ms = elapsed_ms(start);
  return out;
}

TrialRecord run_trial(const RowStream& stream, const TrialSpec& spec, const Calibration& cal,
                      std::optional<double> mu_value) {
  const TrialOutput out = run_algorithm(stream, spec.algo, spec.eps, spec.seed_sample, cal);
  TrialRecord r;
  r.algo = spec.algo;
  r.n = stream.n();
  r.d = stream.d();
  r.eps = spec.eps;
  r.seed_stream = spec.seed_stream;
  r.seed_perm = spec.seed_perm;
  r.seed_sample = spec.seed_sample;
  r.sketch_rows = static_cast<std::int64_t>(out.sketch.size());
  r.eps_actual = verify(stream, out.sketch).eps_actual;
  r.score_total = out.score_total;
  r.mu = mu_value;
  r.max_working_rows = out.max_working_rows;
  r.pinv_recomputes = out.pinv_recomputes;
  r.drift_events = out.drift_events;
  r.wall_ms = out.wall_ms;
  return r;
}

std::vector<std::string> parallel_for(std::int64_t count,
                                      const std::function<void(std::int64_t)>& fn) {
  std::vector<std::string> errors(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
      if (errors[static_cast<std::size_t>(i)].empty()) errors[static_cast<std::size_t>(i)] = "error";
    }
  }
  return errors;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "fit_line needs two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "fit_line needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  // A constant response is fit exactly.
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

bool SuiteResult::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

bool edge_counts_concentrated(const RowStream& stream, std::span<const std::int64_t> prefixes,
                              double tol) {
  const int d = stream.d();
  const int edges = d * (d - 1) / 2;
  const auto edge_id = [d](int u, int v) { return u * d - u * (u + 1) / 2 + (v - u - 1); };
  std::vector<std::int64_t> counts(static_cast<std::size_t>(edges), 0);
  std::int64_t seen = 0;
  for (const std::int64_t prefix : prefixes) {
    if (prefix > stream.n()) throw Error(ErrorCode::InvalidArgument, "prefix beyond stream");
    for (; seen < prefix; ++seen) {
      int u = -1, v = -1;
      for (int j = 0; j < d; ++j) {
        if (stream.rows()(seen, j) != 0.0) (u < 0 ? u : v) = j;
      }
      if (u < 0 || v < 0) throw Error(ErrorCode::InvalidArgument, "not an incidence row");
      ++counts[static_cast<std::size_t>(edge_id(u, v))];
    }
    const double expected = static_cast<double>(prefix) / edges;
    for (const std::int64_t c : counts) {
      if (std::abs(static_cast<double>(c) - expected) > tol * expected) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

using Records = std::vector<TrialRecord>;

struct Job {
  std::function<RowStream()> stream;
  TrialSpec spec;
  Calibration cal;
  bool with_mu = false;
};

void run_jobs(const std::vector<Job>& jobs, SuiteResult& result) {
  std::vector<std::optional<TrialRecord>> slots(jobs.size());
  const auto errors = parallel_for(static_cast<std::int64_t>(jobs.size()), [&](std::int64_t i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    const RowStream stream = job.stream();
    std::optional<double> m;
    if (job.with_mu) m = mu(stream);
    slots[static_cast<std::size_t>(i)] = run_trial(stream, job.spec, job.cal, m);
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (slots[i]) {
      result.records.push_back(*slots[i]);
    } else {
      result.failures.push_back(to_string(jobs[i].spec.algo) + " seed " +
                                std::to_string(jobs[i].spec.seed_sample) + ": " + errors[i]);
    }
  }
}

std::vector<double> rows_of(const Records& recs, Algo algo, std::int64_t n, double eps) {
  std::vector<double> out;
  for (const auto& r : recs) {
    if (r.algo == algo && r.n == n && r.eps == eps) out.push_back(static_cast<double>(r.sketch_rows));
  }
  return out;
}

double pass_rate(const Records& recs, Algo algo) {
  double total = 0.0, ok = 0.0;
  for (const auto& r : recs) {
    if (r.algo != algo) continue;
    ++total;
    if (r.eps_actual <= r.eps) ++ok;
  }
  return total > 0 ? ok / total : 0.0;
}

SuiteCheck check_at_least(std::string name, double value, double bound) {
  return {std::move(name), value, ">= " + io::format_double(bound), value >= bound};
}
SuiteCheck check_at_most(std::string name, double value, double bound) {
  return {std::move(name), value, "<= " + io::format_double(bound), value <= bound};
}

SuiteResult eps_scaling(const SuiteConfig& cfg) {
  const int seeds = cfg.seeds > 0 ? cfg.seeds : 50;
  constexpr std::int64_t n = 4000;
  constexpr int d = 10;
  constexpr std::uint64_t seed_stream = 1;
  const RowStream stream = gen_gaussian(n, d, seed_stream);
  std::vector<Job> jobs;
  for (const double eps : {0.5, 0.25}) {
    for (int s = 1; s <= seeds; ++s) {
      jobs.push_back({[&stream] { return stream; },
                      {Algo::Online, eps, seed_stream, std::nullopt, static_cast<std::uint64_t>(s)},
                      cfg.cal});
    }
  }
  SuiteResult res;
  run_jobs(jobs, res);
  const double ratio = median(rows_of(res.records, Algo::Online, n, 0.25)) /
                       median(rows_of(res.records, Algo::Online, n, 0.5));
  res.checks.push_back({"median size ratio eps 0.25 / 0.5", ratio, "in [2.6, 5.4]",
                        ratio >= 2.6 && ratio <= 5.4});
  return res;
}

SuiteResult n_scaling(const SuiteConfig& cfg) {
  const int seeds = cfg.seeds > 0 ? cfg.seeds : 20;
  constexpr int d = 8;
  constexpr double eps = 0.4;
  std::vector<Job> jobs;
  std::vector<std::int64_t> sizes;
  for (int e = 10; e <= 15; ++e) sizes.push_back(std::int64_t{1} << e);
  for (const std::int64_t n : sizes) {
    for (int s = 1; s <= seeds; ++s) {
      const auto seed = static_cast<std::uint64_t>(s);
      const auto make = [n, seed] { return permute(gen_gaussian(n, d, seed), seed); };
      for (const Algo algo : {Algo::Scaled, Algo::ImprovedResparsify}) {
        jobs.push_back({make, {algo, eps, seed, seed, seed}, cfg.cal});
      }
    }
  }
  SuiteResult res;
  run_jobs(jobs, res);

  std::vector<double> log_n, med_rows, log2_n, med_working;
  double max_working = 0.0;
  for (const std::int64_t n : sizes) {
    log_n.push_back(std::log(static_cast<double>(n)));
    log2_n.push_back(std::log2(static_cast<double>(n)));
    med_rows.push_back(median(rows_of(res.records, Algo::Scaled, n, eps)));
    std::vector<double> w;
    for (const auto& r : res.records) {
      if (r.algo == Algo::ImprovedResparsify && r.n == n) {
        w.push_back(static_cast<double>(r.max_working_rows));
        max_working = std::max(max_working, w.back());
      }
    }
    med_working.push_back(median(w));
  }
  const ResparsifyApprox probe(d, cfg.cal.resparsify_capacity_mult, cfg.cal.resparsify_beta, 0);
  const double bound = 2.0 * static_cast<double>(probe.capacity_rows());
  res.checks.push_back(check_at_least("R^2 of median size vs log n", fit_line(log_n, med_rows).r2, 0.85));
  res.checks.push_back(check_at_most("max working rows (2C bound)", max_working, bound));
  res.checks.push_back(check_at_most("working-set growth per doubling",
                                     fit_line(log2_n, med_working).slope, 0.05 * bound));
  return res;
}

SuiteResult mu_scaling(const SuiteConfig& cfg) {
  const int seeds = cfg.seeds > 0 ? cfg.seeds : 20;
  constexpr int d = 4;
  constexpr double gamma = 10.0;
  constexpr double eps = 0.3;
  std::vector<Job> jobs;
  for (const int levels : {2, 3, 4}) {
    for (int s = 1; s <= seeds; ++s) {
      jobs.push_back({[levels] { return gen_mu_controlled(d, levels, gamma); },
                      {Algo::Online, eps, 0, std::nullopt, static_cast<std::uint64_t>(s)},
                      cfg.cal,
                      true});
    }
  }
  SuiteResult res;
  run_jobs(jobs, res);
  std::vector<double> x, y;
  for (const auto& r : res.records) {
    x.push_back(std::log(*r.mu));
    y.push_back(*r.score_total);
  }
  res.checks.push_back(check_at_least("R^2 of score_total vs log mu", fit_line(x, y).r2, 0.9));
  return res;
}

SuiteResult algo_compare(const SuiteConfig& cfg) {
  const int seeds = cfg.seeds > 0 ? cfg.seeds : 50;
  constexpr std::int64_t n = 2000;
  constexpr int d = 12;
  constexpr double eps = 0.5;
  constexpr std::uint64_t seed_stream = 1;
  // Both samplers run with their published constants: the barrier sampler
  // has no tunable multiplier, so the comparison is as published.
  Calibration cal = cfg.cal;
  cal.online_c_mult = Calibration::published().online_c_mult;
  const RowStream stream = gen_gaussian(n, d, seed_stream);
  std::vector<Job> jobs;
  for (int s = 1; s <= seeds; ++s) {
    for (const Algo algo : {Algo::Online, Algo::Optimal}) {
      jobs.push_back({[&stream] { return stream; },
                      {algo, eps, seed_stream, std::nullopt, static_cast<std::uint64_t>(s)},
                      cal});
    }
  }
  SuiteResult res;
  run_jobs(jobs, res);
  std::map<std::uint64_t, std::pair<double, double>> paired;
  for (const auto& r : res.records) {
    auto& p = paired[r.seed_sample];
    (r.algo == Algo::Online ? p.first : p.second) = static_cast<double>(r.sketch_rows);
  }
  double smaller = 0.0;
  for (const auto& [seed, p] : paired) smaller += p.second < p.first ? 1.0 : 0.0;
  res.checks.push_back(check_at_least("share of seeds with optimal < online",
                                      smaller / static_cast<double>(paired.size()), 0.8));
  res.checks.push_back(check_at_least("online pass rate", pass_rate(res.records, Algo::Online), 0.95));
  res.checks.push_back(check_at_least("optimal pass rate", pass_rate(res.records, Algo::Optimal), 0.95));
  return res;
}

SuiteResult lower_bound_probe(const SuiteConfig& cfg) {
  const int seeds = cfg.seeds > 0 ? cfg.seeds : 100;
  constexpr int d = 8;
  constexpr int copies = 512;
  constexpr double eps = 0.5;
  const RowStream base = gen_kd_multigraph(d, copies);
  const std::vector<std::int64_t> checkpoints = lower_bound_checkpoints(base.n());

  struct Probe {
    bool concentrated = false;
    bool increments = false;
  };
  std::vector<Probe> probes(static_cast<std::size_t>(seeds));
  std::vector<std::optional<TrialRecord>> slots(static_cast<std::size_t>(seeds));
  const auto errors = parallel_for(seeds, [&](std::int64_t i) {
    const auto seed = static_cast<std::uint64_t>(i + 1);
    const RowStream stream = permute(base, seed);
    Probe& p = probes[static_cast<std::size_t>(i)];
    p.concentrated = edge_counts_concentrated(stream, checkpoints, 0.5);
    const TrialOutput out = run_algorithm(stream, Algo::Scaled, eps, seed, cfg.cal);
    p.increments = new_rows_between(out.sketch, checkpoints) >= 1;
    TrialRecord r;
    r.algo = Algo::Scaled;
    r.n = stream.n();
    r.d = d;
    r.eps = eps;
    r.seed_perm = seed;
    r.seed_sample = seed;
    r.sketch_rows = static_cast<std::int64_t>(out.sketch.size());
    r.eps_actual = verify(stream, out.sketch).eps_actual;
    r.score_total = out.score_total;
    r.max_working_rows = out.max_working_rows;
    r.pinv_recomputes = out.pinv_recomputes;
    r.wall_ms = out.wall_ms;
    slots[static_cast<std::size_t>(i)] = r;
  });

  SuiteResult res;
  double concentrated = 0.0, passing = 0.0, incremented = 0.0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      res.failures.push_back("seed " + std::to_string(i + 1) + ": " + errors[i]);
      continue;
    }
    res.records.push_back(*slots[i]);
    concentrated += probes[i].concentrated ? 1.0 : 0.0;
    if (slots[i]->eps_actual <= eps) {
      ++passing;
      incremented += probes[i].increments ? 1.0 : 0.0;
    }
  }
  res.checks.push_back(check_at_least("share of seeds with concentrated edge counts",
                                      concentrated / seeds, 0.95));
  res.checks.push_back(check_at_least("share of passing runs adding rows per doubling",
                                      passing > 0 ? incremented / passing : 0.0, 0.9));
  return res;
}

}  // namespace

std::vector<std::int64_t> lower_bound_checkpoints(std::int64_t n) {
  // Doubling prefixes ending at n: n/8, n/4, n/2, n.
  std::vector<std::int64_t> out;
  for (std::int64_t c = n / 8; c <= n; c *= 2) out.push_back(c);
  return out;
}

std::int64_t new_rows_between(const Sketch& sketch, std::span<const std::int64_t> checkpoints) {
  std::int64_t least = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i) {
    const auto count = std::count_if(sketch.rows().begin(), sketch.rows().end(), [&](const SketchRow& r) {
      return r.source >= checkpoints[i] && r.source < checkpoints[i + 1];
    });
    least = std::min<std::int64_t>(least, count);
  }
  return checkpoints.size() < 2 ? 0 : least;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"eps-scaling", "n-scaling", "mu-scaling",
                                              "algo-compare", "lower-bound-probe"};
  return names;
}

SuiteResult bench_suite(const SuiteConfig& config) {
  SuiteResult res;
  if (config.name == "eps-scaling") {
    res = eps_scaling(config);
  } else if (config.name == "n-scaling") {
    res = n_scaling(config);
  } else if (config.name == "mu-scaling") {
    res = mu_scaling(config);
  } else if (config.name == "algo-compare") {
    res = algo_compare(config);
  } else if (config.name == "lower-bound-probe") {
    res = lower_bound_probe(config);
  } else {
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + config.name + "'");
  }
  res.name = config.name;
  return res;
}

}  // namespace specstream
