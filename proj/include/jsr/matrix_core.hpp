#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jsr/errors.hpp"

namespace jsr {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

enum class ScalarKind { kReal, kComplex };

// Default tolerances of the eigen layer.
inline constexpr double kTolEigTie = 1e-8;   // relative tie detection on |lambda|
inline constexpr double kTolEigRes = 1e-10;  // relative eigenpair residual bound

// The finite matrix family defining the switching system.
// Real sets are stored with exactly zero imaginary parts so that the real
// Schur path is taken by the eigensolver.
struct MatrixSet {
  ScalarKind scalar_kind = ScalarKind::kReal;
  int n = 0;
  std::vector<Mat> matrices;
  std::vector<std::string> labels;  // optional; empty or one per matrix

  int size() const { return static_cast<int>(matrices.size()); }

  static MatrixSet FromReal(const std::vector<RealMat>& mats,
                            std::vector<std::string> labels = {});
  static MatrixSet FromComplex(const std::vector<Mat>& mats,
                               std::vector<std::string> labels = {});

  // Throws InputError unless all matrices are square, of equal dimension
  // n >= 1, with finite entries, and the list is nonempty.
  void validate() const;
};

// A finite index sequence naming a product of the semigroup.  The first
// index is the leftmost factor; the empty word is the identity.
struct ProductWord {
  std::vector<int> indices;

  ProductWord() = default;
  explicit ProductWord(std::vector<int> idx) : indices(std::move(idx)) {}

  int length() const { return static_cast<int>(indices.size()); }
  bool empty() const { return indices.empty(); }
  bool operator==(const ProductWord& o) const = default;
};

struct EigenResult {
  double spectral_radius = 0.0;
  Cplx leading_value;
  Vec leading_vector;                     // unit 2-norm
  bool leading_multiplicity_flag = false; // >=2 eigenvalues tie at max modulus
};

// A_{w0} * A_{w1} * ... ; empty word yields the identity.
Mat product_eval(const ProductWord& word, const MatrixSet& set);

// max |lambda_i| over the eigenvalues of a square matrix.  Dispatches to the
// real Schur path when the matrix has an exactly zero imaginary part.
double spectral_radius(const Mat& m);
double spectral_radius(const RealMat& m);

// Eigenpair attaining the max modulus; flags ties within kTolEigTie.
EigenResult leading_eigenpair(const Mat& m);

// Every eigenvector whose eigenvalue modulus is within tol_tie (relative)
// of the spectral radius, unit-normalized, in decreasing modulus order.
std::vector<Vec> leading_eigenvectors(const Mat& m, double tol_tie = kTolEigTie);

// Lexicographically least rotation of the word.  Cyclic permutations of a
// product share their spectrum, so this canonical form deduplicates
// SMP candidates.
ProductWord cyclic_canonical(const ProductWord& word);

// Largest singular value.
double operator_norm_2(const Mat& m);

}  // namespace jsr
