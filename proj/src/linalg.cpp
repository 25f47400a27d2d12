#include "specstream/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specstream/error.hpp"

namespace specstream {

double default_rank_tol(int dim) { return static_cast<double>(dim) * std::ldexp(1.0, -40); }

SymPsd::SymPsd(Matrix entries, double rank_tol)
    : entries_(std::move(entries)), rank_tol_(rank_tol) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "SymPsd requires a square matrix");
  }
  const int d = dim();
  if (rank_tol_ <= 0.0) rank_tol_ = default_rank_tol(std::max(d, 1));
  if (d == 0) return;

  const double norm = entries_.norm();
  if (norm > 0.0 && (entries_ - entries_.transpose()).norm() > kSymmetryTol * norm) {
    throw Error(ErrorCode::PreconditionViolation, "matrix is not symmetric");
  }
  // Symmetrize exactly so downstream products are symmetric bit-for-bit.
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_);
  eigenvalues_ = solver.eigenvalues().reverse();
  eigenvectors_ = solver.eigenvectors().rowwise().reverse();

  const double lmax = std::max(eigenvalues_(0), 0.0);
  const double thr = rank_tol_ * lmax;
  for (int i = 0; i < d; ++i) {
    double& lambda = eigenvalues_(i);
    if (lambda > thr && lmax > 0.0) {
      ++rank_;
    } else {
      if (lambda < -thr && lmax > 0.0) {
        throw Error(ErrorCode::NotPsd, "eigenvalue " + std::to_string(lambda) +
                                           " below -rank_tol*lambda_max");
      }
      lambda = 0.0;
    }
  }
  if (lmax == 0.0 && eigenvalues_.minCoeff() < 0.0) {
    throw Error(ErrorCode::NotPsd, "matrix is negative semidefinite and nonzero");
  }
}

SymPsd SymPsd::zero(int dim, double rank_tol) { return SymPsd(Matrix::Zero(dim, dim), rank_tol); }

PInv pinv(const SymPsd& s) {
  const int d = s.dim();
  const int r = s.rank();
  PInv out;
  out.source_rank = r;
  if (r == 0) {
    out.matrix = Matrix::Zero(d, d);
    out.projector = Matrix::Zero(d, d);
    return out;
  }
  const auto basis = s.eigenvectors().leftCols(r);
  const Vector inv = s.eigenvalues().head(r).cwiseInverse();
  out.matrix = basis * inv.asDiagonal() * basis.transpose();
  out.projector = basis * basis.transpose();
  return out;
}

bool kernel_orthogonal(const PInv& p, const VectorRef& a, double ortho_tol) {
  if (a.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "kernel_orthogonal");
  const double norm = a.norm();
  if (norm == 0.0) return true;
  return (a - p.projector * a).norm() <= ortho_tol * norm;
}

PInv pinv_rank1_update(const PInv& p, const VectorRef& u, double k, double ortho_tol) {
  if (u.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "pinv_rank1_update");
  if (!kernel_orthogonal(p, u, ortho_tol)) {
    throw Error(ErrorCode::PreconditionViolation, "update vector has a kernel component");
  }
  const Vector pu = p.matrix * u;
  const double denom = 1.0 + k * u.dot(pu);
  if (std::abs(denom) < kDegenerateDenominator) {
    throw Error(ErrorCode::DegenerateUpdate, "|1 + k u^T p u| below 1e-12");
  }
  PInv out;
  out.source_rank = p.source_rank;
  out.matrix = p.matrix - (k / denom) * pu * pu.transpose();
  out.projector = p.projector;
  return out;
}

PInv pinv_rank1_update(const SymPsd& s, const PInv& p, const VectorRef& u, double k,
                       double ortho_tol) {
  if (s.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "pinv_rank1_update");
  return pinv_rank1_update(p, u, k, ortho_tol);
}

double pseudo_det(const SymPsd& s) {
  double det = 1.0;
  for (int i = 0; i < s.rank(); ++i) det *= s.eigenvalues()(i);
  if (!std::isfinite(det)) throw Error(ErrorCode::Overflow, "pseudo-determinant overflows");
  return det;
}

double log_pseudo_det(const SymPsd& s) {
  double acc = 0.0;
  for (int i = 0; i < s.rank(); ++i) acc += std::log(s.eigenvalues()(i));
  return acc;
}

double min_nonzero_eig(const SymPsd& s) {
  if (s.rank() == 0) throw Error(ErrorCode::ZeroMatrix, "min_nonzero_eig of zero matrix");
  return s.eigenvalues()(s.rank() - 1);
}

double approx_factor(const SymPsd& ref, const SymPsd& test) {
  if (ref.dim() != test.dim()) throw Error(ErrorCode::DimensionMismatch, "approx_factor");
  const int d = ref.dim();
  const int r = ref.rank();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  if (r < d) {
    const auto kernel = ref.eigenvectors().rightCols(d - r);
    const Matrix off = kernel.transpose() * test.entries() * kernel;
    const double scale = std::max(test.lambda_max(), std::numeric_limits<double>::min());
    if (!test.is_zero() && off.norm() > 1e-9 * scale) return kInf;
  }
  if (r == 0) return test.is_zero() ? 0.0 : kInf;

  const auto basis = ref.eigenvectors().leftCols(r);
  const Vector inv_sqrt = ref.eigenvalues().head(r).cwiseSqrt().cwiseInverse();
  const Matrix whiten = basis * inv_sqrt.asDiagonal();
  const Matrix m = whiten.transpose() * test.entries() * whiten;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0) - 1.0), std::abs(ev(r - 1) - 1.0));
}

double loewner_gap(const Matrix& a, const Matrix& b) {
  const Matrix diff = b - a;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (diff + diff.transpose()),
                                               Eigen::EigenvaluesOnly);
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return solver.eigenvalues()(0) / scale;
}

SpanTracker::SpanTracker(int d, double tol) : basis_(d, d), tol_(tol) {}

bool SpanTracker::add(const VectorRef& row) {
  const double norm = row.norm();
  if (norm == 0.0 || rank_ == basis_.cols()) return false;
  Vector r = row;
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < rank_; ++j) r -= basis_.col(j).dot(r) * basis_.col(j);
  }
  const double resid = r.norm();
  if (resid <= tol_ * norm) return false;
  basis_.col(rank_++) = r / resid;
  return true;
}

}  // namespace specstream
