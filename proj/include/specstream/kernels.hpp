#pragma once

#include <span>
#include <vector>

#include "specstream/linalg.hpp"

// Batch kernels over row matrices. Each kernel has an OpenMP version and a
// serial reference kept for testing and benchmarking. The parallel gram
// reduces fixed-size chunks in chunk order, so its result does not depend on
// the thread count.
namespace specstream::kernels {

inline constexpr Eigen::Index kGramChunkRows = 512;

/// sum_i w_i^2 r_i r_i^T (w = 1 when weights is empty).
Matrix gram(const RowMatrix& rows, std::span<const double> weights = {});
Matrix gram_serial(const RowMatrix& rows, std::span<const double> weights = {});

/// q_i = w_i^2 r_i^T M r_i.
std::vector<double> quadratic_forms(const RowMatrix& rows, const Matrix& m,
                                    std::span<const double> weights = {});
std::vector<double> quadratic_forms_serial(const RowMatrix& rows, const Matrix& m,
                                           std::span<const double> weights = {});

/// ||r_i - P r_i|| / ||r_i|| (0 for zero rows).
std::vector<double> kernel_residuals(const RowMatrix& rows, const Matrix& projector);
std::vector<double> kernel_residuals_serial(const RowMatrix& rows, const Matrix& projector);

/// Caps the OpenMP worker count; reads SPECSTREAM_THREADS when n <= 0.
void set_thread_limit(int n = 0);
int thread_limit();

}  // namespace specstream::kernels
