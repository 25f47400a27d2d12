// specstream command-line driver: gen | run | verify | bench.
//
// Exit codes: 0 pass, 1 failure (library error or failed check), 2 usage.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "specstream/bench.hpp"
#include "specstream/error.hpp"
#include "specstream/instances.hpp"
#include "specstream/io.hpp"
#include "specstream/kernels.hpp"
#include "specstream/random_order.hpp"
#include "specstream/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace specstream;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct GenArgs {
  std::string kind;
  int d = 0;
  int copies = 1;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  int levels = 0;
  double gamma = 10.0;
  std::optional<std::uint64_t> permute_seed;
  fs::path out;
};

struct RunArgs {
  std::string algo;
  std::string plug = "self";
  double eps = 0.0;
  std::uint64_t seed_sample = 0;
  std::optional<std::uint64_t> seed_perm;
  std::optional<double> c_mult;
  std::optional<double> plug_c_mult;
  std::int64_t k_floor = 0;
  double capacity_mult = 4.0;
  double beta = 1.0 / 3.0;
  bool jl = false;
  double c_jl = JlParams{}.c_jl;
  fs::path in;
  fs::path out;
  fs::path diag;
};

struct VerifyArgs {
  fs::path stream;
  fs::path sketch;
  std::optional<double> eps;
  fs::path diag;
  bool mu = false;
};

struct BenchArgs {
  std::string suite;
  fs::path out;
  int seeds = 0;
  bool no_wall = false;
};

std::string serialize_stream(const RowStream& s) {
  std::ostringstream out;
  io::write_stream(out, s);
  return out.str();
}

int cmd_gen(const GenArgs& a) {
  RowStream stream;
  if (a.kind == "kd") {
    stream = gen_kd_multigraph(a.d, a.copies);
  } else if (a.kind == "gaussian") {
    stream = gen_gaussian(a.n, a.d, a.seed);
  } else if (a.kind == "mu") {
    stream = gen_mu_controlled(a.d, a.levels, a.gamma);
  } else {
    throw CLI::ValidationError("--kind", "must be kd, gaussian or mu");
  }
  if (a.permute_seed) stream = permute(stream, *a.permute_seed);
  io::atomic_write(a.out, serialize_stream(stream));
  std::cout << "wrote " << a.out.string() << ": n=" << stream.n() << " d=" << stream.d()
            << " layout=" << to_string(stream.layout()) << " meta=" << stream.meta().dump() << '\n';
  return 0;
}

Algo run_algo(const RunArgs& a) {
  if (a.algo == "online") return Algo::Online;
  if (a.algo == "optimal") return Algo::Optimal;
  if (a.algo == "scaled") return Algo::Scaled;
  if (a.algo == "improved") {
    if (a.plug == "self") return Algo::ImprovedSelf;
    if (a.plug == "resparsify") return Algo::ImprovedResparsify;
  }
  throw CLI::ValidationError("--algo", "unsupported algorithm/plug combination");
}

int cmd_run(const RunArgs& a) {
  RowStream stream = io::load_stream(a.in);
  if (a.seed_perm) stream = permute(stream, *a.seed_perm);

  Calibration cal;
  if (a.c_mult) {
    cal.online_c_mult = *a.c_mult;
    cal.scaled_c_mult = *a.c_mult;
  }
  if (a.plug_c_mult) cal.self_plug_c_mult = *a.plug_c_mult;
  cal.k_override = a.k_floor;
  cal.resparsify_capacity_mult = a.capacity_mult;
  cal.resparsify_beta = a.beta;
  cal.jl.enabled = a.jl;
  cal.jl.params.c_jl = a.c_jl;

  TrialOutput out;
  std::string algo_name;
  if (a.algo == "improved" && a.plug == "passthrough") {
    ScaledConfig cfg;
    cfg.eps = a.eps;
    cfg.c_mult = cal.scaled_c_mult;
    cfg.k_override = cal.k_override;
    cfg.jl = cal.jl;
    PassThroughApprox plug(stream.d());
    RandomOrderResult res = improved_scaled_sampling(stream, cfg, a.seed_sample, plug);
    out.sketch = std::move(res.sketch);
    out.scores = std::move(res.diagnostics.scores);
    out.probabilities = std::move(res.diagnostics.probabilities);
    double total = 0.0;
    for (const double s : out.scores) total += s;
    out.score_total = total;
    out.max_working_rows = static_cast<std::int64_t>(res.diagnostics.max_working_rows);
    out.pinv_recomputes = res.diagnostics.pinv_recomputes;
    out.blocks = res.diagnostics.blocks;
    out.k = res.diagnostics.k;
    algo_name = "improved-passthrough";
  } else {
    const Algo algo = run_algo(a);
    out = run_algorithm(stream, algo, a.eps, a.seed_sample, cal);
    algo_name = to_string(algo);
  }

  // Report sources and the diagnostics log in input-file order.
  std::vector<std::int64_t> perm;
  if (a.seed_perm) {
    perm = permutation(stream.n(), *a.seed_perm);
    std::vector<SketchRow> rows = out.sketch.rows();
    for (SketchRow& r : rows) r.source = perm[static_cast<std::size_t>(r.source)];
    std::sort(rows.begin(), rows.end(),
              [](const SketchRow& x, const SketchRow& y) { return x.source < y.source; });
    Sketch remapped(out.sketch.dim());
    for (SketchRow& r : rows) remapped.append(r.source, r.weight, std::move(r.row));
    out.sketch = std::move(remapped);
  }

  json meta{{"algo", algo_name},      {"eps", a.eps},
            {"seed_sample", a.seed_sample}, {"input_meta", stream.meta()}};
  if (a.seed_perm) meta["seed_perm"] = *a.seed_perm;
  std::ostringstream sketch_text;
  io::write_sketch(sketch_text, out.sketch, stream.layout(), meta);

  std::ostringstream diag;
  json summary{{"algo", algo_name},
               {"n", stream.n()},
               {"d", stream.d()},
               {"eps", a.eps},
               {"sketch_rows", out.sketch.size()},
               {"max_working_rows", out.max_working_rows},
               {"pinv_recomputes", out.pinv_recomputes},
               {"drift_events", out.drift_events},
               {"blocks", out.blocks},
               {"k", out.k}};
  if (out.score_total) summary["score_total"] = *out.score_total;
  diag << summary.dump() << '\n';
  std::vector<std::size_t> at(out.probabilities.size());
  std::iota(at.begin(), at.end(), std::size_t{0});
  if (!perm.empty()) {
    for (std::size_t i = 0; i < at.size(); ++i) at[static_cast<std::size_t>(perm[i])] = i;
  }
  for (std::size_t j = 0; j < at.size(); ++j) {
    const std::size_t i = at[j];
    json line{{"i", j}, {"p", out.probabilities[i]}};
    if (i < out.scores.size()) line["score"] = out.scores[i];
    diag << line.dump() << '\n';
  }

  const fs::path diag_path = a.diag.empty() ? fs::path(a.out.string() + ".diag.jsonl") : a.diag;
  io::atomic_write(a.out, sketch_text.str());
  io::atomic_write(diag_path, diag.str());
  std::cout << algo_name << ": kept " << out.sketch.size() << " of " << stream.n()
            << " rows; max_working_rows " << out.max_working_rows << '\n';
  return 0;
}

std::vector<double> read_score_log(const fs::path& path, Eigen::Index n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::vector<double> scores;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (j.contains("i")) {
      if (!j.contains("score")) return {};
      scores.push_back(j.at("score").get<double>());
    }
  }
  if (static_cast<Eigen::Index>(scores.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "score log length does not match the stream");
  }
  return scores;
}

int cmd_verify(const VerifyArgs& a) {
  const RowStream stream = io::load_stream(a.stream);
  bool pass = true;
  if (a.mu) std::cout << "mu " << io::format_double(mu(stream)) << '\n';
  if (!a.sketch.empty()) {
    const io::SketchFile sk = io::load_sketch(a.sketch);
    std::vector<double> scores;
    if (!a.diag.empty()) scores = read_score_log(a.diag, stream.n());
    const VerifyReport rep = verify(stream, sk.sketch, scores);
    std::cout << "eps_actual " << io::format_double(rep.eps_actual) << '\n';
    if (rep.overestimate_ok) {
      std::cout << "overestimate " << (*rep.overestimate_ok ? "ok" : "violated") << " ("
                << rep.overestimate_violations << " rows below exact leverage)\n";
      pass = pass && *rep.overestimate_ok;
    } else {
      std::cout << "overestimate skipped (missing score log)\n";
    }
    if (a.eps) {
      const bool ok = rep.passes(*a.eps);
      std::cout << "bound " << *a.eps << (ok ? " pass" : " fail") << '\n';
      pass = pass && ok;
    }
  }
  std::cout << "result " << (pass ? "pass" : "fail") << '\n';
  return pass ? 0 : kExitFail;
}

int cmd_bench(const BenchArgs& a) {
  SuiteConfig cfg;
  cfg.name = a.suite;
  cfg.seeds = a.seeds;
  const SuiteResult res = bench_suite(cfg);
  std::ostringstream csv_text;
  csv::write(csv_text, res.records, !a.no_wall);
  io::atomic_write(a.out, csv_text.str());

  std::printf("suite %s: %zu trials, %zu failures\n", res.name.c_str(), res.records.size(),
              res.failures.size());
  for (const std::string& f : res.failures) std::printf("  failed trial: %s\n", f.c_str());
  for (const SuiteCheck& c : res.checks) {
    std::printf("  %-48s %12.6g  %-16s %s\n", c.name.c_str(), c.value, c.threshold.c_str(),
                c.pass ? "PASS" : "FAIL");
  }
  return res.pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral row sampling: generate, sample, verify, benchmark"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: SPECSTREAM_THREADS or all)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a row stream");
  g->add_option("--kind", gen.kind, "kd | gaussian | mu")->required()
      ->check(CLI::IsMember({"kd", "gaussian", "mu"}));
  g->add_option("--d", gen.d, "Dimension (vertices for kd)")->required();
  g->add_option("--copies", gen.copies, "Edge multiplicity (kd)");
  g->add_option("--n", gen.n, "Rows (gaussian)");
  g->add_option("--seed", gen.seed, "Stream seed (gaussian)");
  g->add_option("--levels", gen.levels, "Levels (mu)");
  g->add_option("--gamma", gen.gamma, "Level ratio (mu)");
  g->add_option("--permute-seed", gen.permute_seed, "Shuffle rows with this seed");
  g->add_option("--out", gen.out, "Output file")->required();

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run a sampler over a stream file");
  r->add_option("--algo", run.algo, "online | optimal | scaled | improved")->required()
      ->check(CLI::IsMember({"online", "optimal", "scaled", "improved"}));
  r->add_option("--plug", run.plug, "ConstApprox for improved: self | resparsify | passthrough")
      ->check(CLI::IsMember({"self", "resparsify", "passthrough"}));
  r->add_option("--eps", run.eps, "Target accuracy")->required();
  r->add_option("--seed-sample", run.seed_sample, "Sampling seed");
  r->add_option("--seed-perm", run.seed_perm, "Permute the input with this seed first");
  r->add_option("--c-mult", run.c_mult, "Sampling constant multiplier");
  r->add_option("--plug-c-mult", run.plug_c_mult, "Multiplier of the self plug");
  r->add_option("--k-floor", run.k_floor, "Seed block size override");
  r->add_option("--capacity-mult", run.capacity_mult, "Resparsify capacity multiplier");
  r->add_option("--beta", run.beta, "Resparsify approximation quality");
  r->add_flag("--jl", run.jl, "Score with the JL estimator");
  r->add_option("--c-jl", run.c_jl, "JL dimension constant");
  r->add_option("--in", run.in, "Input stream file")->required();
  r->add_option("--out", run.out, "Output sketch file")->required();
  r->add_option("--diag", run.diag, "Diagnostics sidecar (default: <out>.diag.jsonl)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check a sketch against its stream");
  v->add_option("--stream", ver.stream, "Stream file")->required();
  auto* sk_opt = v->add_option("--sketch", ver.sketch, "Sketch file");
  v->add_option("--eps", ver.eps, "Accuracy bound for pass/fail")->needs(sk_opt);
  v->add_option("--diag", ver.diag, "Diagnostics sidecar with the score log")->needs(sk_opt);
  v->add_flag("--mu", ver.mu, "Print mu of the stream");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a benchmark suite");
  b->add_option("--suite", bench.suite, "Suite name")->required();
  b->add_option("--out", bench.out, "CSV output")->required();
  b->add_option("--seeds", bench.seeds, "Seeds per grid point (default: suite default)");
  b->add_flag("--no-wall", bench.no_wall, "Leave wall_ms empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    kernels::set_thread_limit(threads);
    if (g->parsed()) return cmd_gen(gen);
    if (r->parsed()) return cmd_run(run);
    if (v->parsed()) return cmd_verify(ver);
    if (b->parsed()) return cmd_bench(bench);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::UnknownSuite ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
