#include "jsr/lift.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "jsr/errors.hpp"

namespace jsr {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;

void require_self_adjoint(const Mat& x) {
  const double drift = (x - x.adjoint()).norm();
  if (drift > 1e-12 * (1.0 + x.norm()))
    throw InputError("matrix is not self-adjoint (drift " +
                     std::to_string(drift) + ")");
}
}  // namespace

double SymPoint::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(entries, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("self-adjoint eigenvalue computation failed");
  return es.eigenvalues().minCoeff();
}

double SymPoint::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(entries, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("self-adjoint eigenvalue computation failed");
  return es.eigenvalues().maxCoeff();
}

RealVec svec(const SymPoint& x) {
  const int n = x.n();
  require_self_adjoint(x.entries);
  RealVec out(x.dim());
  int k = 0;
  if (x.cone_kind == ConeKind::kRealSymmetric) {
    for (int j = 0; j < n; ++j) {
      out[k++] = x.entries(j, j).real();
      for (int i = j + 1; i < n; ++i) out[k++] = kSqrt2 * x.entries(i, j).real();
    }
  } else {
    for (int j = 0; j < n; ++j) {
      out[k++] = x.entries(j, j).real();
      for (int i = j + 1; i < n; ++i) {
        out[k++] = kSqrt2 * x.entries(i, j).real();
        out[k++] = kSqrt2 * x.entries(i, j).imag();
      }
    }
  }
  return out;
}

SymPoint smat(ConeKind kind, int n, const RealVec& coords) {
  if (coords.size() != svec_dim(kind, n))
    throw InputError("coordinate vector has length " +
                     std::to_string(coords.size()) + ", expected " +
                     std::to_string(svec_dim(kind, n)));
  SymPoint x{kind, Mat::Zero(n, n)};
  int k = 0;
  for (int j = 0; j < n; ++j) {
    x.entries(j, j) = coords[k++];
    for (int i = j + 1; i < n; ++i) {
      if (kind == ConeKind::kRealSymmetric) {
        const double v = coords[k++] / kSqrt2;
        x.entries(i, j) = v;
        x.entries(j, i) = v;
      } else {
        const double re = coords[k++] / kSqrt2;
        const double im = coords[k++] / kSqrt2;
        x.entries(i, j) = Cplx(re, im);
        x.entries(j, i) = Cplx(re, -im);
      }
    }
  }
  return x;
}

SymPoint lift_vector(const Vec& v, ConeKind kind) {
  if (v.size() == 0 || v.norm() == 0.0)
    throw InputError("cannot lift the zero vector");
  const Mat outer = v * v.adjoint();
  SymPoint x{kind, Mat(v.size(), v.size())};
  if (kind == ConeKind::kRealSymmetric) {
    x.entries = outer.real().cast<Cplx>();
  } else {
    x.entries = outer;
  }
  x.symmetrize();
  return x;
}

LiftedOperator lift_operator(const Mat& a, ConeKind kind) {
  if (a.rows() != a.cols()) throw InputError("lift_operator: matrix not square");
  const int n = static_cast<int>(a.rows());
  if (kind == ConeKind::kRealSymmetric && (a.imag().array() != 0.0).any())
    throw InputError(
        "complex matrix cannot act on the real-symmetric cone; use the "
        "hermitian cone");
  const int d = svec_dim(kind, n);
  LiftedOperator op{kind, n, RealMat(d, d), std::nullopt};
  RealVec e = RealVec::Zero(d);
  for (int c = 0; c < d; ++c) {
    e[c] = 1.0;
    const SymPoint basis = smat(kind, n, e);
    SymPoint image{kind, a * basis.entries * a.adjoint()};
    image.symmetrize();
    op.rep.col(c) = svec(image);
    e[c] = 0.0;
  }
  return op;
}

SymPoint apply_lifted(const LiftedOperator& op, const SymPoint& x) {
  if (x.cone_kind != op.cone_kind || x.n() != op.n)
    throw InputError("apply_lifted: cone kind or dimension mismatch");
  return smat(op.cone_kind, op.n, op.rep * svec(x));
}

SymPoint congruence(const Mat& a, const SymPoint& x) {
  if (a.rows() != a.cols() || a.rows() != x.entries.rows())
    throw InputError("congruence: dimension mismatch");
  SymPoint out{x.cone_kind, a * x.entries * a.adjoint()};
  out.symmetrize();
  if (out.cone_kind == ConeKind::kRealSymmetric)
    out.entries.imag().setZero();
  return out;
}

}  // namespace jsr
