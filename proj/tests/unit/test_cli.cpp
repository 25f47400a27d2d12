#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "specstream/io.hpp"
#include "specstream/kernels.hpp"

using namespace specstream;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(SPECSTREAM_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (const std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("specstream_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen writes canonical streams") {
  TempDir t;
  REQUIRE(cli("gen --kind kd --d 3 --copies 1 --out " + t / "k3.txt").code == 0);
  const RowStream k3 = io::load_stream(t / "k3.txt");
  Matrix l(3, 3);
  l << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK(k3.n() == 3);
  CHECK(kernels::gram(k3.rows()) == l);

  REQUIRE(cli("gen --kind gaussian --n 100 --d 5 --seed 7 --out " + t / "a.txt").code == 0);
  REQUIRE(cli("gen --kind gaussian --n 100 --d 5 --seed 7 --out " + t / "b.txt").code == 0);
  CHECK(slurp(t / "a.txt") == slurp(t / "b.txt"));

  REQUIRE(cli("gen --kind mu --d 4 --levels 3 --gamma 10 --out " + t / "mu.txt").code == 0);
  const Run mu = cli("verify --mu --stream " + t / "mu.txt");
  CHECK(mu.code == 0);
  double value = 0.0;
  REQUIRE(std::sscanf(mu.out.c_str(), "mu %lf", &value) == 1);
  CHECK(value == doctest::Approx(1e4).epsilon(1e-10));
}

TEST_CASE("run and verify") {
  TempDir t;
  std::ostringstream id;
  io::write_stream(id, RowStream(RowMatrix(Matrix::Identity(6, 6)), Layout::Dense));
  io::atomic_write(t / "id.txt", id.str());

  REQUIRE(cli("run --algo online --eps 0.3 --seed-sample 1 --in " + t / "id.txt" + " --out " +
              t / "id.sk").code == 0);
  const io::SketchFile sk = io::load_sketch(t / "id.sk");
  REQUIRE(sk.sketch.size() == 6);
  for (const SketchRow& r : sk.sketch.rows()) CHECK(r.weight == 1.0);
  const Run v = cli("verify --stream " + t / "id.txt" + " --sketch " + t / "id.sk" +
                    " --eps 0.3 --diag " + t / "id.sk.diag.jsonl");
  CHECK(v.code == 0);
  CHECK(v.out.find("eps_actual 0\n") != std::string::npos);
  CHECK(v.out.find("overestimate ok") != std::string::npos);

  REQUIRE(cli("gen --kind gaussian --n 20 --d 10 --seed 1 --out " + t / "short.txt").code == 0);
  REQUIRE(cli("run --algo scaled --eps 0.3 --in " + t / "short.txt" + " --out " + t / "short.sk")
              .code == 0);
  CHECK(io::load_sketch(t / "short.sk").sketch.size() == 20);

  REQUIRE(cli("gen --kind gaussian --n 30 --d 4 --seed 1 --out " + t / "d4.txt").code == 0);
  const Run mismatch = cli("verify --stream " + t / "d4.txt" + " --sketch " + t / "short.sk" + " --eps 0.3");
  CHECK(mismatch.code == 1);
  CHECK(mismatch.out.find("DimensionMismatch") != std::string::npos);
}

TEST_CASE("permuted runs verify against the input file") {
  TempDir t;
  REQUIRE(cli("gen --kind gaussian --n 400 --d 6 --seed 2 --out " + t / "g.txt").code == 0);
  REQUIRE(cli("run --algo scaled --eps 0.5 --seed-perm 9 --seed-sample 3 --in " + t / "g.txt" +
              " --out " + t / "g.sk").code == 0);
  const RowStream a = io::load_stream(t / "g.txt");
  const io::SketchFile sk = io::load_sketch(t / "g.sk");
  REQUIRE(!sk.sketch.empty());
  int matching = 0;
  for (const SketchRow& r : sk.sketch.rows()) matching += (r.row - a.row(r.source)).norm() == 0.0;
  CHECK(matching == static_cast<int>(sk.sketch.size()));
  const Run v = cli("verify --stream " + t / "g.txt" + " --sketch " + t / "g.sk" + " --diag " +
                    t / "g.sk.diag.jsonl");
  CHECK(v.code == 0);
  CHECK(v.out.find("overestimate ok") != std::string::npos);
}

TEST_CASE("resparsify plug respects its working-set bound") {
  TempDir t;
  REQUIRE(cli("gen --kind gaussian --n 8000 --d 8 --seed 3 --permute-seed 4 --out " + t / "g.txt")
              .code == 0);
  REQUIRE(cli("run --algo improved --plug resparsify --eps 0.3 --seed-sample 5 --in " +
              t / "g.txt" + " --out " + t / "g.sk").code == 0);
  std::ifstream diag(t / "g.sk.diag.jsonl");
  std::string first;
  std::getline(diag, first);
  const auto summary = nlohmann::json::parse(first);
  // 2C with C = ceil(4 * 9 * ln 8 * 8)
  CHECK(summary.at("max_working_rows").get<int>() <= 2 * 599);
  CHECK(summary.at("max_working_rows").get<int>() > 599);
}

TEST_CASE("runs are byte-reproducible") {
  TempDir t;
  REQUIRE(cli("gen --kind kd --d 6 --copies 40 --permute-seed 2 --out " + t / "k.txt").code == 0);
  for (const std::string algo : {"online", "optimal", "scaled", "improved"}) {
    const std::string base = "run --algo " + algo + " --eps 0.5 --seed-sample 3 --in " + t / "k.txt";
    REQUIRE(cli(base + " --out " + t / "x.sk").code == 0);
    REQUIRE(cli(base + " --out " + t / "y.sk").code == 0);
    CHECK(slurp(t / "x.sk") == slurp(t / "y.sk"));
    CHECK(slurp(t / "x.sk.diag.jsonl") == slurp(t / "y.sk.diag.jsonl"));
  }
}

TEST_CASE("usage errors and bench") {
  TempDir t;
  CHECK(cli("").code == 2);
  CHECK(cli("gen --kind kd").code == 2);
  CHECK(cli("run --algo nonsense --eps 0.1 --in a --out b").code == 2);
  CHECK(cli("bench --suite nope --out " + t / "x.csv").code == 2);
  CHECK_FALSE(fs::exists(t / "x.csv"));
  CHECK(cli("run --algo online --eps 0.3 --in " + t / "missing.txt" + " --out " + t / "o.sk").code == 1);
  CHECK_FALSE(fs::exists(t / "o.sk"));

  const Run b = cli("bench --suite mu-scaling --seeds 2 --out " + t / "mu.csv");
  CHECK(b.code == 0);
  CHECK(b.out.find("R^2") != std::string::npos);
  std::ifstream csv(t / "mu.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "algo,n,d,eps,seed_stream,seed_perm,seed_sample,sketch_rows,eps_actual,score_total,mu,"
        "max_working_rows,pinv_recomputes,drift_events,wall_ms");
}
