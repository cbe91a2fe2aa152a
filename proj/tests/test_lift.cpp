#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>
#include <random>

#include "doctest.h"
#include "jsr/lift.hpp"
#include "jsr/sdp.hpp"

using namespace jsr;

namespace {

std::mt19937& rng() {
  static std::mt19937 g(2024);
  return g;
}

Mat random_mat(int n, bool complex_entries) {
  std::normal_distribution<double> d(0.0, 1.0);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = complex_entries ? Cplx(d(rng()), d(rng())) : Cplx(d(rng()), 0.0);
  return m;
}

SymPoint random_selfadjoint(ConeKind kind, int n) {
  Mat m = random_mat(n, kind == ConeKind::kHermitian);
  SymPoint p{kind, m};
  p.symmetrize();
  if (kind == ConeKind::kRealSymmetric) p.entries.imag().setZero();
  return p;
}

Vec random_vec(int n, bool complex_entries) {
  std::normal_distribution<double> d(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i)
    v[i] = complex_entries ? Cplx(d(rng()), d(rng())) : Cplx(d(rng()), 0.0);
  return v;
}

}  // namespace

TEST_CASE("svec dimensions") {
  CHECK(svec_dim(ConeKind::kRealSymmetric, 4) == 10);
  CHECK(svec_dim(ConeKind::kRealSymmetric, 2) == 3);
  CHECK(svec_dim(ConeKind::kHermitian, 3) == 9);
}

TEST_CASE("svec and smat are mutually inverse") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int n : {2, 3, 5}) {
      for (int trial = 0; trial < 10; ++trial) {
        const SymPoint x = random_selfadjoint(kind, n);
        const RealVec c = svec(x);
        CHECK(c.size() == svec_dim(kind, n));
        const SymPoint back = smat(kind, n, c);
        CHECK((back.entries - x.entries).norm() <= 1e-13 * (1.0 + x.frobenius()));
      }
    }
  }
}

TEST_CASE("svec is an isometry for the Frobenius inner product") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int trial = 0; trial < 20; ++trial) {
      const SymPoint x = random_selfadjoint(kind, 3);
      const SymPoint y = random_selfadjoint(kind, 3);
      const double frob = (x.entries.adjoint() * y.entries).trace().real();
      const double dot = svec(x).dot(svec(y));
      CHECK(dot == doctest::Approx(frob).epsilon(1e-12));
    }
  }
}

TEST_CASE("vector lift is the outer product") {
  Vec v(2);
  v << Cplx(1, 0), Cplx(2, 0);
  const SymPoint p = lift_vector(v, ConeKind::kRealSymmetric);
  RealMat expected(2, 2);
  expected << 1, 2, 2, 4;
  CHECK((p.entries.real() - expected).norm() <= 1e-14);
  CHECK(p.entries.imag().norm() == 0.0);

  Vec w(2);
  w << Cplx(1, 1), Cplx(0, -1);
  const SymPoint q = lift_vector(w, ConeKind::kHermitian);
  // (w w*)_01 = w_0 * conj(w_1) = (1+i)(i) = -1+i
  CHECK(q.entries(0, 0).real() == doctest::Approx(2.0));
  CHECK(q.entries(0, 1).real() == doctest::Approx(-1.0));
  CHECK(q.entries(0, 1).imag() == doctest::Approx(1.0));
  CHECK(q.entries(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("lifted vectors are PSD rank-one points of unit-consistent scale") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vec v = random_vec(3, kind == ConeKind::kHermitian);
      const SymPoint p = lift_vector(v, kind);
      CHECK(psd_check(p).first);
      CHECK(p.trace_real() == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
    }
  }
}

TEST_CASE("identity lifts to the identity operator") {
  const LiftedOperator op = lift_operator(Mat::Identity(2, 2),
                                          ConeKind::kRealSymmetric);
  CHECK(op.dim() == 3);
  CHECK((op.rep - RealMat::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("diagonal lift has the squared and mixed products on its diagonal") {
  RealMat d = RealMat::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  const LiftedOperator op = lift_operator(d.cast<Cplx>(),
                                          ConeKind::kRealSymmetric);
  // svec order for n=2: (0,0), (1,0), (1,1) -> diagonal {4, 6, 9}
  RealVec expected(3);
  expected << 4.0, 6.0, 9.0;
  CHECK((op.rep.diagonal() - expected).norm() <= 1e-13);
  CHECK((op.rep - RealMat(expected.asDiagonal())).norm() <= 1e-13);
}

TEST_CASE("operator lift is a multiplicative homomorphism") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int trial = 0; trial < 10; ++trial) {
      const bool cx = kind == ConeKind::kHermitian;
      const Mat a = random_mat(3, cx);
      const Mat b = random_mat(3, cx);
      const RealMat lhs = lift_operator(Mat(a * b), kind).rep;
      const RealMat rhs =
          lift_operator(a, kind).rep * lift_operator(b, kind).rep;
      CHECK((lhs - rhs).norm() <= 1e-11 * (1.0 + lhs.norm()));
    }
  }
}

TEST_CASE("lift intertwines matrix action and congruence of outer products") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int trial = 0; trial < 10; ++trial) {
      const bool cx = kind == ConeKind::kHermitian;
      const Mat a = random_mat(3, cx);
      const Vec v = random_vec(3, cx);
      const SymPoint lhs = apply_lifted(lift_operator(a, kind),
                                        lift_vector(v, kind));
      const SymPoint rhs = lift_vector(Vec(a * v), kind);
      CHECK((lhs.entries - rhs.entries).norm() <=
            1e-11 * (1.0 + rhs.frobenius()));
    }
  }
}

TEST_CASE("apply_lifted agrees with direct congruence") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int trial = 0; trial < 10; ++trial) {
      const bool cx = kind == ConeKind::kHermitian;
      const Mat a = random_mat(4, cx);
      const SymPoint x = random_selfadjoint(kind, 4);
      const SymPoint via_rep = apply_lifted(lift_operator(a, kind), x);
      const SymPoint direct = congruence(a, x);
      CHECK((via_rep.entries - direct.entries).norm() <=
            1e-11 * (1.0 + direct.frobenius()));
    }
  }
}

TEST_CASE("congruence preserves the PSD cone") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int trial = 0; trial < 10; ++trial) {
      const bool cx = kind == ConeKind::kHermitian;
      const Mat a = random_mat(3, cx);
      SymPoint x = random_selfadjoint(kind, 3);
      // square it to land in the cone
      x.entries = (x.entries * x.entries.adjoint()).eval();
      x.symmetrize();
      CHECK(psd_check(congruence(a, x), 1e-9).first);
    }
  }
}

TEST_CASE("square law for a single matrix: lifted spectral radius is squared") {
  for (const ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    for (int trial = 0; trial < 10; ++trial) {
      const bool cx = kind == ConeKind::kHermitian;
      const Mat a = random_mat(3, cx);
      const double r = spectral_radius(a);
      const double lifted = spectral_radius(lift_operator(a, kind).rep);
      CHECK(lifted == doctest::Approx(r * r).epsilon(1e-8));
    }
  }
}

TEST_CASE("real-symmetric lift of a real matrix keeps real coordinates") {
  const Mat a = random_mat(3, false);
  const SymPoint x = random_selfadjoint(ConeKind::kRealSymmetric, 3);
  const SymPoint y = congruence(a, x);
  CHECK(y.entries.imag().norm() <= 1e-14);
}
