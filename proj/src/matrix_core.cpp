#include "jsr/matrix_core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace jsr {

namespace {

bool all_finite(const Mat& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

bool exactly_real(const Mat& m) {
  return (m.imag().array() == 0.0).all();
}

void check_square_consistent(const std::vector<Mat>& mats) {
  if (mats.empty()) throw InputError("matrix set must be nonempty");
  const Eigen::Index n = mats.front().rows();
  if (n < 1) throw InputError("matrix dimension must be >= 1");
  for (size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != mats[i].cols())
      throw InputError("matrix " + std::to_string(i) + " is not square");
    if (mats[i].rows() != n)
      throw InputError("inconsistent dimension: matrix " + std::to_string(i) +
                       " is " + std::to_string(mats[i].rows()) + "x" +
                       std::to_string(mats[i].cols()) + ", expected " +
                       std::to_string(n));
    if (!all_finite(mats[i]))
      throw InputError("matrix " + std::to_string(i) +
                       " has a non-finite entry");
  }
}

}  // namespace

MatrixSet MatrixSet::FromReal(const std::vector<RealMat>& mats,
                              std::vector<std::string> labels) {
  MatrixSet s;
  s.scalar_kind = ScalarKind::kReal;
  for (const auto& m : mats) {
    Mat c(m.rows(), m.cols());
    c.real() = m;
    c.imag().setZero();
    s.matrices.push_back(std::move(c));
  }
  s.labels = std::move(labels);
  s.validate();
  return s;
}

MatrixSet MatrixSet::FromComplex(const std::vector<Mat>& mats,
                                 std::vector<std::string> labels) {
  MatrixSet s;
  s.scalar_kind = ScalarKind::kComplex;
  s.matrices = mats;
  s.labels = std::move(labels);
  s.validate();
  return s;
}

void MatrixSet::validate() const {
  check_square_consistent(matrices);
  const_cast<MatrixSet*>(this)->n = static_cast<int>(matrices.front().rows());
  if (scalar_kind == ScalarKind::kReal) {
    for (size_t i = 0; i < matrices.size(); ++i) {
      if (!exactly_real(matrices[i]))
        throw InputError("matrix " + std::to_string(i) +
                         " has a complex entry in a real set");
    }
  }
  if (!labels.empty() && labels.size() != matrices.size())
    throw InputError("labels must be absent or one per matrix");
}

Mat product_eval(const ProductWord& word, const MatrixSet& set) {
  for (int idx : word.indices) {
    if (idx < 0 || idx >= set.size())
      throw InputError("word index " + std::to_string(idx) +
                       " out of range for a set of " +
                       std::to_string(set.size()) + " matrices");
  }
  Mat p = Mat::Identity(set.n, set.n);
  for (int idx : word.indices) p = p * set.matrices[idx];
  return p;
}

double spectral_radius(const RealMat& m) {
  if (m.rows() != m.cols()) throw InputError("spectral_radius: matrix not square");
  if (!m.allFinite()) throw InputError("spectral_radius: non-finite entry");
  if (m.rows() == 0) return 0.0;
  if (m.rows() == 1) return std::abs(m(0, 0));
  Eigen::EigenSolver<RealMat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericError("real Schur iteration did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("spectral_radius: matrix not square");
  if (!all_finite(m)) throw InputError("spectral_radius: non-finite entry");
  if (m.rows() == 0) return 0.0;
  if (exactly_real(m)) return spectral_radius(RealMat(m.real()));
  if (m.rows() == 1) return std::abs(m(0, 0));
  Eigen::ComplexEigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericError("complex Schur iteration did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

struct FullEigen {
  Vec values;
  Mat vectors;
};

FullEigen full_eigen(const Mat& m) {
  FullEigen r;
  if (exactly_real(m)) {
    Eigen::EigenSolver<RealMat> es(m.real());
    if (es.info() != Eigen::Success)
      throw NumericError("real Schur iteration did not converge");
    r.values = es.eigenvalues();
    r.vectors = es.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<Mat> es(m);
    if (es.info() != Eigen::Success)
      throw NumericError("complex Schur iteration did not converge");
    r.values = es.eigenvalues();
    r.vectors = es.eigenvectors();
  }
  return r;
}

}  // namespace

EigenResult leading_eigenpair(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("leading_eigenpair: matrix not square");
  if (!all_finite(m)) throw InputError("leading_eigenpair: non-finite entry");
  const auto [values, vectors] = full_eigen(m);
  const Eigen::Index n = values.size();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(values[i]) > std::abs(values[best])) best = i;
  const double rho = std::abs(values[best]);

  EigenResult out;
  out.spectral_radius = rho;
  out.leading_value = values[best];
  out.leading_vector = vectors.col(best).normalized();
  int tied = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(values[i]) >= rho * (1.0 - kTolEigTie)) ++tied;
  out.leading_multiplicity_flag = tied > 1;

  const double mnorm = m.rows() == 0 ? 0.0 : m.cwiseAbs().maxCoeff() * m.rows();
  const double residual =
      (m * out.leading_vector - out.leading_value * out.leading_vector).norm();
  if (residual > kTolEigRes * (1.0 + mnorm))
    throw NumericError("leading eigenpair residual " + std::to_string(residual) +
                       " exceeds tolerance");
  return out;
}

std::vector<Vec> leading_eigenvectors(const Mat& m, double tol_tie) {
  const auto [values, vectors] = full_eigen(m);
  const Eigen::Index n = values.size();
  double rho = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) rho = std::max(rho, std::abs(values[i]));
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(values[a]) > std::abs(values[b]);
  });
  std::vector<Vec> out;
  for (Eigen::Index i : order) {
    if (std::abs(values[i]) < rho * (1.0 - tol_tie)) break;
    out.push_back(vectors.col(i).normalized());
  }
  return out;
}

ProductWord cyclic_canonical(const ProductWord& word) {
  const int k = word.length();
  if (k <= 1) return word;
  const auto& w = word.indices;
  int best = 0;
  for (int s = 1; s < k; ++s) {
    for (int j = 0; j < k; ++j) {
      const int a = w[(s + j) % k];
      const int b = w[(best + j) % k];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  std::vector<int> rot(k);
  for (int j = 0; j < k; ++j) rot[j] = w[(best + j) % k];
  return ProductWord(std::move(rot));
}

double operator_norm_2(const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("operator_norm_2: matrix not square");
  if (m.rows() == 0) return 0.0;
  // largest eigenvalue of M* M, clamped against roundoff
  Mat g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("operator_norm_2: eigen decomposition failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace jsr
