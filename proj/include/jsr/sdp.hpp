#pragma once

#include <utility>
#include <vector>

#include "jsr/lift.hpp"

namespace jsr {

// Default tolerances for the conic solver; these propagate into the conitope
// layer and are recorded in emitted certificates.
inline constexpr double kTolGap = 1e-9;
inline constexpr double kTolFeas = 1e-9;
inline constexpr double kTolPsd = 1e-10;
inline constexpr int kMaxIpIters = 60;

// min sum(mu)  s.t.  sum_i mu_i * u_i >= x  (PSD order),  mu >= 0.
// The optimal value is the gauge of x with respect to the conical convex hull
// of the vertices.
struct NormProgram {
  std::vector<SymPoint> vertices;
  SymPoint target;
  double tol_gap = kTolGap;
  double tol_feas = kTolFeas;
  int max_iters = kMaxIpIters;  // Newton steps allowed per centering round
};

enum class SdpStatus { kOptimal, kInfeasible, kIterationLimit };

// On kIterationLimit the reported objective is still a certified upper bound
// on the gauge: every iterate of the solver is strictly feasible.  Only the
// gap (tightness) is lost, never soundness of the bound's direction.
struct SdpSolution {
  SdpStatus status = SdpStatus::kIterationLimit;
  std::vector<double> primal_mu;
  SymPoint dual_z;
  double objective = 0.0;
  double gap = 0.0;
};

SdpSolution solve_norm_program(const NormProgram& p);

// true iff lambda_min(X) >= -tol * (1 + ||X||_F); also returns lambda_min.
std::pair<bool, double> psd_check(const SymPoint& x, double tol = kTolPsd);

// lambda_min of the average of the vertices.  Strictly positive exactly when
// some nonnegative combination of the (PSD) vertices is positive definite:
// any zero eigenvector of the sum annihilates every summand.
double max_min_eig_combination(const std::vector<SymPoint>& vertices);

}  // namespace jsr
