#include <array>
#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "specstream/bench.hpp"
#include "specstream/instances.hpp"
#include "specstream/kernels.hpp"
#include "specstream/leverage.hpp"
#include "specstream/verify.hpp"

using namespace specstream;

namespace {

Matrix laplacian_kd(int d) {
  return d * Matrix::Identity(d, d) - Matrix::Ones(d, d);
}

}  // namespace

TEST_CASE("K_d multigraph") {
  const RowStream k3 = gen_kd_multigraph(3, 1);
  CHECK(k3.n() == 3);
  CHECK(k3.layout() == Layout::Sparse);
  Matrix l3(3, 3);
  l3 << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK(kernels::gram(k3.rows()) == l3);
  CHECK(kernels::gram(gen_kd_multigraph(3, 2).rows()) == 2 * l3);
  for (int d = 2; d <= 10; ++d) {
    const RowStream s = gen_kd_multigraph(d, 3);
    CHECK(s.n() == 3 * d * (d - 1) / 2);
    CHECK(kernels::gram(s.rows()) == 3 * laplacian_kd(d));
    for (Eigen::Index i = 0; i < s.n(); ++i) {
      const auto r = s.rows().row(i);
      CHECK((r.array() != 0.0).count() == 2);
      CHECK(r.sum() == 0.0);
    }
  }
  CHECK(k3.meta().at("kind") == "kd");
}

TEST_CASE("Gaussian generator") {
  const RowStream a = gen_gaussian(10, 10, 4);
  CHECK(oracle::rank(kernels::gram(a.rows())) == 10);
  CHECK(gen_gaussian(50, 5, 7).rows() == gen_gaussian(50, 5, 7).rows());
  CHECK(gen_gaussian(50, 5, 7).rows() != gen_gaussian(50, 5, 8).rows());
  CHECK(leverage_scores(gen_gaussian(1000, 10, 3)).sum() == doctest::Approx(10.0).epsilon(1e-7));
}

TEST_CASE("mu-controlled generator") {
  const RowStream one = gen_mu_controlled(4, 1, 10.0);
  CHECK(one.n() == 4);
  CHECK(mu(one) == doctest::Approx(1.0));
  const RowStream s = gen_mu_controlled(4, 3, 10.0);
  CHECK(s.n() == 12);
  CHECK(mu(s) == doctest::Approx(1e4).epsilon(1e-6));
  CHECK(oracle::brute_mu(s.rows()) == doctest::Approx(1e4).epsilon(1e-6));
  // Prefix Gram after each level is gamma^(2l) I.
  Matrix g = Matrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 8; ++i) g += s.row(i) * s.row(i).transpose();
  CHECK((g - 100.0 * Matrix::Identity(4, 4)).norm() < 1e-9);
  CHECK(mu(gen_mu_controlled(3, 4, 10.0)) == doctest::Approx(1e6).epsilon(1e-6));
}

TEST_CASE("permutation") {
  const RowStream single(RowMatrix(Matrix::Ones(1, 3)), Layout::Dense);
  CHECK(permute(single, 5).rows() == single.rows());
  CHECK(permutation(100, 3) == permutation(100, 3));
  CHECK(permutation(100, 3) != permutation(100, 4));

  const RowStream a = gen_gaussian(300, 6, 1);
  const RowStream p = permute(a, 9);
  const Matrix ga = kernels::gram(a.rows());
  CHECK((kernels::gram(p.rows()) - ga).norm() <= 1e-12 * ga.norm());
  CHECK(p.meta().at("perm_seed") == 9);
  CHECK(p.meta().at("base").at("kind") == "gaussian");
}

TEST_CASE("permutations of 4 items are uniform") {
  std::map<std::vector<std::int64_t>, int> counts;
  constexpr int trials = 10000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) ++counts[permutation(4, seed)];
  CHECK(counts.size() == 24);
  const double expected = trials / 24.0;
  const double sigma = std::sqrt(trials * (1.0 / 24) * (23.0 / 24));
  double chi2 = 0.0;
  for (const auto& [perm, c] : counts) {
    CHECK(std::abs(c - expected) <= 3.0 * sigma);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 99.9% quantile of chi-square with 23 degrees of freedom.
  CHECK(chi2 < 49.73);
}

TEST_CASE("edge counts of uniform prefixes concentrate") {
  const RowStream base = gen_kd_multigraph(8, 64);
  const std::array<std::int64_t, 1> half{base.n() / 2};
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    good += edge_counts_concentrated(permute(base, seed), half, 0.5) ? 1 : 0;
  }
  CHECK(good >= 95);
}
