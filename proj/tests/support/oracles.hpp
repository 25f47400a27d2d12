#pragma once

// Reference computations for tests. Nothing here calls into the library's
// eigen-decomposition or pseudo-inverse code: eigenpairs come from a plain
// cyclic Jacobi sweep.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct Eig {
  Vec values;  // ascending
  Mat vectors; // columns
};

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
inline Eig jacobi(Mat a) {
  const Eigen::Index n = a.rows();
  Mat v = Mat::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
  Eig out{Vec(n), Mat(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

inline double cutoff(const Vec& values) {
  const double top = values.size() ? std::abs(values(values.size() - 1)) : 0.0;
  return 1e-10 * std::max(top, 1e-300) * static_cast<double>(std::max<Eigen::Index>(values.size(), 1));
}

/// Pseudo-inverse of a symmetric PSD matrix by spectral inversion.
inline Mat pinv(const Mat& s) {
  const Eig e = jacobi(s);
  const double tol = cutoff(e.values);
  Mat out = Mat::Zero(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) > tol) out += e.vectors.col(i) * e.vectors.col(i).transpose() / e.values(i);
  }
  return out;
}

inline int rank(const Mat& s) {
  const Eig e = jacobi(s);
  const double tol = cutoff(e.values);
  return static_cast<int>((e.values.array() > tol).count());
}

inline double pseudo_det(const Mat& s) {
  const Eig e = jacobi(s);
  const double tol = cutoff(e.values);
  double det = 1.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) > tol) det *= e.values(i);
  }
  return det;
}

inline double min_nonzero(const Mat& s) {
  const Eig e = jacobi(s);
  const double tol = cutoff(e.values);
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) > tol) return e.values(i);
  }
  return 0.0;
}

/// Relative leverage by definition: stack a under B and take the leverage of
/// the last row of the stacked matrix.
inline double stacked_relative_leverage(const Mat& b, const Vec& a) {
  Mat stacked(b.rows() + 1, b.cols());
  stacked.topRows(b.rows()) = b;
  stacked.row(b.rows()) = a.transpose();
  const Mat p = pinv(stacked.transpose() * stacked);
  return a.dot(p * a);
}

/// Leverage scores of every row of A.
inline std::vector<double> leverage(const Mat& a) {
  const Mat p = pinv(a.transpose() * a);
  std::vector<double> out(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = a.row(i).dot(p * a.row(i).transpose());
  }
  return out;
}

/// lambda_max(A^T A) / min over every prefix of its smallest nonzero eigenvalue.
inline double brute_mu(const Mat& a) {
  Mat g = Mat::Zero(a.cols(), a.cols());
  double least = INFINITY;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    g += a.row(i).transpose() * a.row(i);
    const double m = min_nonzero(g);
    if (m > 0.0) least = std::min(least, m);
  }
  return jacobi(g).values.maxCoeff() / least;
}

/// Smallest eps with (1-eps) ref <= test <= (1+eps) ref, both full rank.
inline double approx_factor_full_rank(const Mat& ref, const Mat& test) {
  const Eig e = jacobi(ref);
  Mat inv_sqrt = Mat::Zero(ref.rows(), ref.cols());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    inv_sqrt += e.vectors.col(i) * e.vectors.col(i).transpose() / std::sqrt(e.values(i));
  }
  const Mat w = inv_sqrt * test * inv_sqrt;
  const Eig ew = jacobi(0.5 * (w + w.transpose()));
  return std::max(std::abs(ew.values.minCoeff() - 1.0), std::abs(ew.values.maxCoeff() - 1.0));
}

/// Random test matrices with mt19937_64 (independent of the library's RNG).
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Mat gaussian(Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal_(rng_);
    }
    return m;
  }

  /// rows x cols with rank at most r (product of Gaussian factors).
  Mat low_rank(Eigen::Index rows, Eigen::Index cols, Eigen::Index r) {
    return gaussian(rows, r) * gaussian(r, cols);
  }

  Vec vec(Eigen::Index n) { return gaussian(n, 1).col(0); }

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace oracle
