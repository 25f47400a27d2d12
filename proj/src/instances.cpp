#include "specstream/instances.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "specstream/error.hpp"
#include "specstream/rng.hpp"

namespace specstream {

RowStream incidence_stream(int d, const std::vector<std::pair<int, int>>& edges) {
  RowMatrix rows = RowMatrix::Zero(static_cast<Eigen::Index>(edges.size()), d);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u == v || u < 0 || v < 0 || u >= d || v >= d) {
      throw Error(ErrorCode::InvalidArgument, "invalid edge");
    }
    if (u > v) std::swap(u, v);
    rows(static_cast<Eigen::Index>(e), u) = 1.0;
    rows(static_cast<Eigen::Index>(e), v) = -1.0;
  }
  return RowStream(std::move(rows), Layout::Sparse,
                   {{"kind", "incidence"}, {"d", d}, {"edges", edges.size()}});
}

RowStream gen_kd_multigraph(int d, int copies) {
  if (d < 2 || copies < 1) {
    throw Error(ErrorCode::InvalidArgument, "gen_kd_multigraph requires d >= 2, copies >= 1");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(copies) * d * (d - 1) / 2);
  for (int u = 0; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) {
      for (int c = 0; c < copies; ++c) edges.emplace_back(u, v);
    }
  }
  RowStream base = incidence_stream(d, edges);
  return RowStream(base.rows(), Layout::Sparse, {{"kind", "kd"}, {"d", d}, {"copies", copies}});
}

RowStream gen_gaussian(std::int64_t n, int d, std::uint64_t seed) {
  if (d < 1 || n < d) throw Error(ErrorCode::InvalidArgument, "gen_gaussian requires n >= d >= 1");
  RowMatrix rows(n, d);
  for (std::int64_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto counter = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d) +
                           static_cast<std::uint64_t>(j);
      rows(i, j) = standard_normal(seed, RngStream::Gaussian, counter);
    }
  }
  return RowStream(std::move(rows), Layout::Dense,
                   {{"kind", "gaussian"}, {"n", n}, {"d", d}, {"seed", seed}});
}

RowStream gen_mu_controlled(int d, int levels, double gamma) {
  if (d < 1 || levels < 1 || !(gamma > 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "gen_mu_controlled requires gamma > 1, levels >= 1");
  }
  RowMatrix rows = RowMatrix::Zero(static_cast<Eigen::Index>(d) * levels, d);
  for (int l = 0; l < levels; ++l) {
    const double scale =
        l == 0 ? 1.0 : std::sqrt(std::pow(gamma, 2.0 * l) - std::pow(gamma, 2.0 * (l - 1)));
    for (int j = 0; j < d; ++j) rows(static_cast<Eigen::Index>(l) * d + j, j) = scale;
  }
  return RowStream(std::move(rows), Layout::Dense,
                   {{"kind", "mu"}, {"d", d}, {"levels", levels}, {"gamma", gamma}});
}

std::vector<std::int64_t> permutation(std::int64_t n, std::uint64_t seed) {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), std::int64_t{0});
  for (std::int64_t i = n - 1; i > 0; --i) {
    const double u = uniform01(seed, RngStream::Permute, static_cast<std::uint64_t>(i));
    const auto j = std::min<std::int64_t>(i, static_cast<std::int64_t>(u * static_cast<double>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

RowStream permute(const RowStream& stream, std::uint64_t seed) {
  const auto perm = permutation(stream.n(), seed);
  RowMatrix rows(stream.n(), stream.d());
  for (std::int64_t i = 0; i < stream.n(); ++i) rows.row(i) = stream.rows().row(perm[i]);
  nlohmann::json meta = {{"kind", "permuted"}, {"base", stream.meta()}, {"perm_seed", seed}};
  return RowStream(std::move(rows), stream.layout(), std::move(meta));
}

}  // namespace specstream
