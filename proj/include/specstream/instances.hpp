#pragma once

#include <cstdint>

#include "specstream/row_stream.hpp"

namespace specstream {

/// Incidence rows e_u - e_v (u < v) of the complete multigraph on d vertices,
/// each edge repeated `copies` times consecutively, edges in lexicographic
/// order. Sparse layout.
RowStream gen_kd_multigraph(int d, int copies);

/// i.i.d. standard normal entries. Dense layout.
RowStream gen_gaussian(std::int64_t n, int d, std::uint64_t seed);

/// d * levels rows. Level l contributes s_l * e_1, ..., s_l * e_d where
/// s_0 = 1 and s_l^2 = gamma^(2l) - gamma^(2(l-1)), so the prefix Gram after
/// level l is gamma^(2l) I and mu(A) = gamma^(2(levels-1)).
RowStream gen_mu_controlled(int d, int levels, double gamma);

/// Uniform (Fisher-Yates) permutation of the rows.
RowStream permute(const RowStream& stream, std::uint64_t seed);

/// The permutation used by permute(): result row i is source row perm[i].
std::vector<std::int64_t> permutation(std::int64_t n, std::uint64_t seed);

/// Incidence matrix rows for an explicit edge list.
RowStream incidence_stream(int d, const std::vector<std::pair<int, int>>& edges);

}  // namespace specstream
