#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "specstream/error.hpp"
#include "specstream/linalg.hpp"

using namespace specstream;

namespace {

double rel(const Matrix& a, const Matrix& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

Matrix random_psd(oracle::Gen& g, int d, int r) {
  const Matrix f = g.gaussian(r, d);
  return f.transpose() * f;
}

Vector project(const PInv& p, const Vector& v) { return p.projector * v; }

}  // namespace

TEST_CASE("SymPsd rejects asymmetric and indefinite input") {
  Matrix m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(SymPsd{m}, Error);
  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -1;
  try {
    SymPsd s(neg);
    FAIL("expected NotPsd");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPsd);
  }
}

TEST_CASE("SymPsd clamps tiny negative eigenvalues and counts rank") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 4;
  m(1, 1) = 1;
  m(2, 2) = -1e-14;
  const SymPsd s(m);
  CHECK(s.rank() == 2);
  CHECK(s.eigenvalues()(2) == 0.0);
  CHECK(s.lambda_max() == doctest::Approx(4.0));
}

TEST_CASE("pinv small cases") {
  const PInv id = pinv(SymPsd(Matrix::Identity(4, 4)));
  CHECK(rel(id.matrix, Matrix::Identity(4, 4)) < 1e-15);

  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 2;
  const PInv p = pinv(SymPsd(m));
  CHECK(p.matrix(0, 0) == doctest::Approx(0.5));
  CHECK(p.matrix(1, 1) == 0.0);
  CHECK(p.source_rank == 1);

  const PInv z = pinv(SymPsd::zero(3));
  CHECK(z.matrix.isZero());
  CHECK(z.projector.isZero());
}

TEST_CASE("pinv matches the Jacobi oracle and satisfies Penrose identities") {
  oracle::Gen g(11);
  SUBCASE("full rank 6x6") {
    const Matrix s = random_psd(g, 6, 9);
    CHECK(rel(pinv(SymPsd(s)).matrix, oracle::pinv(s)) < 1e-9);
  }
  SUBCASE("500 random inputs, d in 2..12, some rank deficient") {
    for (int t = 0; t < 500; ++t) {
      const int d = g.uniform_int(2, 12);
      const int r = g.uniform_int(1, d + 2);
      const Matrix s = random_psd(g, d, r);
      const PInv p = pinv(SymPsd(s));
      CHECK(rel(p.matrix * s * p.matrix, p.matrix) < 1e-8);
      CHECK(rel(s * p.matrix * s, s) < 1e-8);
      CHECK(rel(p.projector * p.projector, p.projector) < 1e-10);
      CHECK(rel(p.projector, p.projector.transpose()) < 1e-10);
      CHECK(p.source_rank == std::min(d, r));
    }
  }
}

TEST_CASE("Sherman-Morrison rank-1 update") {
  SUBCASE("identity plus e1") {
    const Matrix i2 = Matrix::Identity(2, 2);
    const PInv p = pinv(SymPsd(i2));
    const PInv q = pinv_rank1_update(SymPsd(i2), p, Vector::Unit(2, 0), 1.0);
    Matrix want = Matrix::Identity(2, 2);
    want(0, 0) = 0.5;
    CHECK(rel(q.matrix, want) < 1e-15);
  }
  SUBCASE("subtraction on the support") {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = 3;
    const SymPsd sp(s);
    const PInv q = pinv_rank1_update(sp, pinv(sp), Vector::Unit(2, 0), -1.0);
    CHECK(q.matrix(0, 0) == doctest::Approx(0.5));
    CHECK(q.matrix(1, 1) == 0.0);
  }
  SUBCASE("kernel component is rejected") {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = 1;
    const SymPsd sp(s);
    try {
      (void)pinv_rank1_update(sp, pinv(sp), Vector::Unit(2, 1), 1.0);
      FAIL("expected PreconditionViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PreconditionViolation);
    }
  }
  SUBCASE("degenerate denominator") {
    const SymPsd sp(Matrix::Identity(2, 2));
    try {
      (void)pinv_rank1_update(sp, pinv(sp), Vector::Unit(2, 0), -1.0);
      FAIL("expected DegenerateUpdate");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateUpdate);
    }
  }
  SUBCASE("random 8x8 matches recompute") {
    oracle::Gen g(5);
    for (int t = 0; t < 50; ++t) {
      const Matrix s = random_psd(g, 8, 5);
      const SymPsd sp(s);
      const PInv p = pinv(sp);
      const Vector u = project(p, g.vec(8));
      const PInv q = pinv_rank1_update(sp, p, u, 1.0);
      CHECK(rel(q.matrix, oracle::pinv(s + u * u.transpose())) < 1e-8);
    }
  }
  SUBCASE("chains of 20 updates") {
    oracle::Gen g(6);
    for (int t = 0; t < 40; ++t) {
      const int d = g.uniform_int(3, 10);
      Matrix s = random_psd(g, d, g.uniform_int(1, d));
      PInv p = pinv(SymPsd(s));
      for (int step = 0; step < 20; ++step) {
        const Vector u = project(p, g.vec(d));
        const double k = g.uniform(0.1, 3.0);
        p = pinv_rank1_update(p, u, k);
        s += k * u * u.transpose();
      }
      CHECK(rel(p.matrix, oracle::pinv(s)) < 1e-7);
    }
  }
}

TEST_CASE("pseudo-determinant") {
  CHECK(pseudo_det(SymPsd::zero(3)) == 1.0);
  CHECK(log_pseudo_det(SymPsd::zero(3)) == 0.0);
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 2;
  m(1, 1) = 3;
  CHECK(pseudo_det(SymPsd(m)) == doctest::Approx(6.0));

  SUBCASE("delta-limit oracle on rank-deficient input") {
    oracle::Gen g(8);
    for (int t = 0; t < 30; ++t) {
      const int d = g.uniform_int(3, 8);
      const int r = g.uniform_int(1, d - 1);
      const Matrix s = random_psd(g, d, r);
      const double delta = 1e-6 * oracle::min_nonzero(s);
      const double limit =
          (s + delta * Matrix::Identity(d, d)).determinant() / std::pow(delta, d - r);
      CHECK(pseudo_det(SymPsd(s)) == doctest::Approx(limit).epsilon(1e-4));
    }
  }
  SUBCASE("overflow in linear scale") {
    const Matrix big = 1e200 * Matrix::Identity(4, 4);
    CHECK_THROWS_AS(pseudo_det(SymPsd(big)), Error);
    CHECK(log_pseudo_det(SymPsd(big)) == doctest::Approx(4 * 200 * std::log(10.0)));
  }
}

TEST_CASE("min_nonzero_eig") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 5;
  m(1, 1) = 2;
  CHECK(min_nonzero_eig(SymPsd(m)) == doctest::Approx(2.0));
  CHECK(min_nonzero_eig(SymPsd(Matrix::Identity(4, 4))) == doctest::Approx(1.0));
  Matrix k3(3, 3);
  k3 << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK(min_nonzero_eig(SymPsd(k3)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(min_nonzero_eig(SymPsd::zero(2)), Error);
}

TEST_CASE("kernel_orthogonal") {
  const PInv id = pinv(SymPsd(Matrix::Identity(3, 3)));
  CHECK(kernel_orthogonal(id, Vector::Ones(3)));
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  CHECK_FALSE(kernel_orthogonal(pinv(SymPsd(m)), Vector::Unit(2, 1)));
  CHECK(kernel_orthogonal(pinv(SymPsd(m)), Vector::Zero(2)));

  oracle::Gen g(9);
  const Matrix s = random_psd(g, 6, 3);
  const PInv p = pinv(SymPsd(s));
  const Vector a = project(p, g.vec(6)) + 1e-12 * g.vec(6);
  CHECK(kernel_orthogonal(p, a));
}

TEST_CASE("approx_factor") {
  oracle::Gen g(10);
  const Matrix s = random_psd(g, 5, 8);
  CHECK(approx_factor(SymPsd(s), SymPsd(s)) < 1e-12);
  CHECK(approx_factor(SymPsd(s), SymPsd(1.1 * s)) == doctest::Approx(0.1));

  SUBCASE("matches a full-rank oracle") {
    for (int t = 0; t < 20; ++t) {
      const Matrix a = random_psd(g, 6, 12);
      const Matrix b = a + 0.05 * random_psd(g, 6, 2);
      CHECK(approx_factor(SymPsd(a), SymPsd(b)) ==
            doctest::Approx(oracle::approx_factor_full_rank(a, b)).epsilon(1e-8));
    }
  }
  SUBCASE("mass on the kernel gives infinity") {
    Matrix ref = Matrix::Zero(2, 2);
    ref(0, 0) = 1;
    CHECK(approx_factor(SymPsd(ref), SymPsd(Matrix::Identity(2, 2))) ==
          std::numeric_limits<double>::infinity());
  }
  SUBCASE("rank-deficient pair restricted to the image") {
    const Matrix f = g.gaussian(3, 6);
    const Matrix ref = f.transpose() * f;
    CHECK(approx_factor(SymPsd(ref), SymPsd(0.7 * ref)) == doctest::Approx(0.3));
  }
}

TEST_CASE("pseudo-determinant lemmas") {
  oracle::Gen g(12);
  SUBCASE("Det(A + uu^T) = Det(A)(1 + u^T A^+ u) for u in the image") {
    for (int t = 0; t < 200; ++t) {
      const int d = g.uniform_int(2, 10);
      const Matrix a = random_psd(g, d, g.uniform_int(1, d));
      const PInv p = pinv(SymPsd(a));
      const Vector u = project(p, g.vec(d));
      const double lhs = oracle::pseudo_det(a + u * u.transpose());
      const double rhs = oracle::pseudo_det(a) * (1.0 + u.dot(p.matrix * u));
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
      CHECK(pseudo_det(SymPsd(a + u * u.transpose())) == doctest::Approx(lhs).epsilon(1e-8));
    }
  }
  SUBCASE("Det(A + uu^T) >= lambda_min(A + uu^T) Det(A) for u off the image") {
    for (int t = 0; t < 200; ++t) {
      const int d = g.uniform_int(3, 10);
      const Matrix a = random_psd(g, d, g.uniform_int(1, d - 1));
      const Vector u = g.vec(d);
      const Matrix b = a + u * u.transpose();
      const SymPsd sb(b);
      CHECK(pseudo_det(sb) >= min_nonzero_eig(sb) * pseudo_det(SymPsd(a)) * (1 - 1e-9));
    }
  }
}

TEST_CASE("ordering properties") {
  oracle::Gen g(13);
  SUBCASE("x^T B^+ x <= x^T A^+ x for A <= B and x in Im(A)") {
    for (int t = 0; t < 200; ++t) {
      const int d = g.uniform_int(2, 10);
      const Matrix a = random_psd(g, d, g.uniform_int(1, d));
      const Matrix b = a + random_psd(g, d, g.uniform_int(1, d));
      const PInv pa = pinv(SymPsd(a));
      const PInv pb = pinv(SymPsd(b));
      const Vector x = project(pa, g.vec(d));
      CHECK(x.dot(pb.matrix * x) <= x.dot(pa.matrix * x) + 1e-9);
    }
  }
  SUBCASE("sorted eigenvalues of A <= B are dominated") {
    for (int t = 0; t < 200; ++t) {
      const int d = g.uniform_int(2, 10);
      const Matrix a = random_psd(g, d, g.uniform_int(1, d));
      const Matrix b = a + random_psd(g, d, g.uniform_int(1, d));
      const SymPsd sa(a), sb(b);
      for (int i = 0; i < d; ++i) {
        CHECK(sa.eigenvalues()(i) <= sb.eigenvalues()(i) + 1e-9 * sb.lambda_max());
      }
      CHECK(loewner_gap(a, b) >= -1e-12);
    }
  }
}

TEST_CASE("SpanTracker counts rank incrementally") {
  SpanTracker span(3);
  CHECK(span.add(Vector::Unit(3, 0)));
  CHECK_FALSE(span.add(2.0 * Vector::Unit(3, 0)));
  CHECK_FALSE(span.add(Vector::Zero(3)));
  CHECK(span.add(Vector::Ones(3)));
  CHECK(span.rank() == 2);
}
