#pragma once

#include <optional>
#include <vector>

#include "jsr/matrix_core.hpp"

namespace jsr {

// Which self-adjoint cone the lifted iteration lives in.  Real matrix sets
// use real symmetric matrices (svec dimension n(n+1)/2); complex sets use
// Hermitian matrices stored in a realified coordinate vector of length n^2.
enum class ConeKind { kRealSymmetric, kHermitian };

inline ConeKind cone_for(ScalarKind s) {
  return s == ScalarKind::kReal ? ConeKind::kRealSymmetric : ConeKind::kHermitian;
}

inline int svec_dim(ConeKind kind, int n) {
  return kind == ConeKind::kRealSymmetric ? n * (n + 1) / 2 : n * n;
}

// A self-adjoint n x n matrix together with its cone tag.  Entries are stored
// as a complex matrix even in the real-symmetric case (imaginary part zero);
// the paths that care about realness go through svec coordinates anyway.
struct SymPoint {
  ConeKind cone_kind = ConeKind::kRealSymmetric;
  Mat entries;

  int n() const { return static_cast<int>(entries.rows()); }
  int dim() const { return svec_dim(cone_kind, n()); }

  // Hermitian part (X + X*)/2; cheap insurance against roundoff drift.
  void symmetrize() { entries = 0.5 * (entries + entries.adjoint()).eval(); }

  double frobenius() const { return entries.norm(); }
  double min_eigenvalue() const;
  double max_eigenvalue() const;
  double trace_real() const { return entries.trace().real(); }

  static SymPoint Zero(ConeKind kind, int n) {
    return SymPoint{kind, Mat::Zero(n, n)};
  }
  static SymPoint Identity(ConeKind kind, int n) {
    return SymPoint{kind, Mat::Identity(n, n)};
  }
};

// Congruence action X -> A X A^(*T) materialized as a dense real d x d matrix
// on svec coordinates.
struct LiftedOperator {
  ConeKind cone_kind = ConeKind::kRealSymmetric;
  int n = 0;
  RealMat rep;  // d x d
  std::optional<ProductWord> source_word;

  int dim() const { return static_cast<int>(rep.rows()); }
};

// svec/smat: mutually inverse isometries between self-adjoint matrices and
// real coordinate vectors.  Off-diagonal entries carry a sqrt(2) factor so the
// Frobenius inner product equals the coordinate dot product.  Ordering is
// column-major over the lower triangle, diagonal entry first in each column;
// Hermitian off-diagonals contribute (sqrt2*Re, sqrt2*Im) pairs.
RealVec svec(const SymPoint& x);
SymPoint smat(ConeKind kind, int n, const RealVec& coords);

// v -> Re(v v*) on the real-symmetric cone, v -> v v* on the Hermitian cone.
SymPoint lift_vector(const Vec& v, ConeKind kind);

LiftedOperator lift_operator(const Mat& a, ConeKind kind);

SymPoint apply_lifted(const LiftedOperator& op, const SymPoint& x);

// Direct congruence A X A^(*T) without materializing the d x d matrix; the
// engine's hot path uses this and keeps LiftedOperator for inspection/tests.
SymPoint congruence(const Mat& a, const SymPoint& x);

}  // namespace jsr
