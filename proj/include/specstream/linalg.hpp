#pragma once

#include <Eigen/Dense>

namespace specstream {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorRef = Eigen::Ref<const Vector>;

inline constexpr double kDefaultOrthoTol = 1e-8;
inline constexpr double kDegenerateDenominator = 1e-12;
inline constexpr double kSymmetryTol = 1e-12;

/// Default relative rank threshold: d * 2^-40.
double default_rank_tol(int dim);

/// Dense symmetric PSD matrix with a cached eigendecomposition.
///
/// Eigenvalues are stored in descending order. An eigenvalue counts as zero
/// iff it is <= rank_tol * lambda_max; such values (including small
/// negatives) are clamped to exactly 0. Construction fails with NotPsd if an
/// eigenvalue is more negative than that threshold, and with
/// PreconditionViolation if the input is not symmetric.
class SymPsd {
 public:
  /// rank_tol <= 0 selects default_rank_tol(dim).
  explicit SymPsd(Matrix entries, double rank_tol = 0.0);

  static SymPsd zero(int dim, double rank_tol = 0.0);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  double rank_tol() const { return rank_tol_; }
  double lambda_max() const { return eigenvalues_.size() ? eigenvalues_(0) : 0.0; }
  /// Absolute threshold rank_tol * lambda_max.
  double threshold() const { return rank_tol_ * lambda_max(); }
  int rank() const { return rank_; }
  bool is_zero() const { return rank_ == 0; }

 private:
  Matrix entries_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
  double rank_tol_;
  int rank_ = 0;
};

/// Moore-Penrose pseudo-inverse together with the orthogonal projector onto
/// the image of its source.
struct PInv {
  int source_rank = 0;
  Matrix matrix;
  Matrix projector;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

PInv pinv(const SymPsd& s);

/// Pseudo-inverse of s + k*u*u^T from p = pinv(s), for u orthogonal to Ker(s):
///   p - k * (p u)(p u)^T / (1 + k u^T p u).
/// Throws PreconditionViolation when u has a kernel component and
/// DegenerateUpdate when |1 + k u^T p u| < 1e-12.
PInv pinv_rank1_update(const SymPsd& s, const PInv& p, const VectorRef& u, double k,
                       double ortho_tol = kDefaultOrthoTol);

/// Same update without the SymPsd argument; used on hot paths where only the
/// maintained pseudo-inverse is kept.
PInv pinv_rank1_update(const PInv& p, const VectorRef& u, double k,
                       double ortho_tol = kDefaultOrthoTol);

/// ||a - P a|| <= ortho_tol * ||a||. The zero vector is orthogonal.
bool kernel_orthogonal(const PInv& p, const VectorRef& a, double ortho_tol = kDefaultOrthoTol);

/// Product of the nonzero eigenvalues; 1 for the zero matrix. Throws Overflow
/// when the product is not finite.
double pseudo_det(const SymPsd& s);

/// Natural log of pseudo_det, computed as a sum of logs.
double log_pseudo_det(const SymPsd& s);

/// Smallest eigenvalue above the rank threshold. Throws ZeroMatrix.
double min_nonzero_eig(const SymPsd& s);

/// Smallest eps with (1-eps) ref <= test <= (1+eps) ref in the Loewner order.
/// Returns +infinity when test carries mass on Ker(ref).
double approx_factor(const SymPsd& ref, const SymPsd& test);

/// Smallest eigenvalue of b - a, relative to max(||a||_F, ||b||_F).
/// Nonnegative (up to roundoff) iff a <= b.
double loewner_gap(const Matrix& a, const Matrix& b);

/// Tracks the rank of everything fed to it with an incremental orthonormal
/// basis (modified Gram-Schmidt).
class SpanTracker {
 public:
  explicit SpanTracker(int d, double tol = kDefaultOrthoTol);
  /// Returns true when the row raises the rank.
  bool add(const VectorRef& row);
  int rank() const { return rank_; }

 private:
  Matrix basis_;
  int rank_ = 0;
  double tol_;
};

}  // namespace specstream
