#pragma once

#include <cstdint>

#include "specstream/linalg.hpp"
#include "specstream/sketch.hpp"

namespace specstream {

struct JlParams {
  double c_jl = 8.0;
  double distortion = 0.5;
  double ortho_tol = kDefaultOrthoTol;
  double rank_tol = 0.0;
  /// Use Pi = identity with k = #sketch rows. The estimate is then exact.
  bool identity_debug = false;
};

/// Sketch dimension k = max(4, ceil(c_jl * ln n_hint)).
int jl_dimension(double c_jl, std::int64_t n_hint);

/// Johnson-Lindenstrauss scorer for one frozen sketch M:
/// N = Pi * M * (M^T M)^+, with Pi a k x m matrix of independent +-1/sqrt(k)
/// signs. ||N a||^2 estimates a^T (M^T M)^+ a for a in the image.
struct JlScorer {
  Matrix n_matrix;      // k x d
  Matrix kernel_basis;  // d x (d - r), orthonormal basis of Ker(M^T M)
  int k = 0;
  double distortion = 0.5;
  double ortho_tol = kDefaultOrthoTol;

  int dim() const { return static_cast<int>(n_matrix.cols()); }
};

/// Signs are drawn from (seed, block_id). Throws EmptySketch.
JlScorer jl_build(const Sketch& sketch, std::int64_t n_hint, std::uint64_t seed,
                  std::uint64_t block_id = 0, const JlParams& params = {});

/// Estimated quadratic form ||N a||^2 (no kernel test).
double jl_quadratic(const JlScorer& scorer, const VectorRef& a,
                    std::int64_t* op_counter = nullptr);

/// Relative score estimate: 1 when a has a kernel component, otherwise
/// q/(q+1) with q = ||N a||^2. Work is proportional to nnz(a); when
/// op_counter is given, the number of multiply-adds is added to it.
double jl_score(const JlScorer& scorer, const VectorRef& a, std::int64_t* op_counter = nullptr);

}  // namespace specstream
