#include "jsr/sdp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "jsr/errors.hpp"
#include "jsr/log.hpp"

namespace jsr {

namespace {

Mat hermitian_part(const Mat& x) { return 0.5 * (x + x.adjoint()); }

double min_eig(const Mat& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(x),
                                        Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("eigenvalue computation failed in solver");
  return es.eigenvalues().minCoeff();
}

bool strictly_pd(const Mat& x) {
  Eigen::LLT<Mat> llt(hermitian_part(x));
  return llt.info() == Eigen::Success;
}

}  // namespace

std::pair<bool, double> psd_check(const SymPoint& x, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(x.entries),
                                        Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("eigenvalue computation failed in psd_check");
  const double lam_min = es.eigenvalues().minCoeff();
  return {lam_min >= -tol * (1.0 + x.frobenius()), lam_min};
}

double max_min_eig_combination(const std::vector<SymPoint>& vertices) {
  if (vertices.empty()) throw InputError("no vertices given");
  Mat sum = Mat::Zero(vertices.front().n(), vertices.front().n());
  for (const auto& v : vertices) sum += v.entries;
  sum /= static_cast<double>(vertices.size());
  return min_eig(sum);
}

SdpSolution solve_norm_program(const NormProgram& p) {
  const int l = static_cast<int>(p.vertices.size());
  if (l == 0) throw InputError("norm program needs at least one vertex");
  const ConeKind kind = p.vertices.front().cone_kind;
  const int n_full = p.vertices.front().n();
  for (const auto& u : p.vertices)
    if (u.n() != n_full || u.cone_kind != kind)
      throw InputError("norm program vertices disagree in dimension or cone");
  if (p.target.n() != n_full || p.target.cone_kind != kind)
    throw InputError("norm program target dimension/cone mismatch");

  SdpSolution sol;
  sol.dual_z = SymPoint::Zero(kind, n_full);
  sol.primal_mu.assign(l, 0.0);

  const double norm_x = p.target.frobenius();
  if (norm_x == 0.0) {
    sol.status = SdpStatus::kOptimal;
    sol.objective = 0.0;
    sol.gap = 0.0;
    return sol;
  }

  // Range reduction: every vertex is dominated by the vertex sum T, so the
  // whole program lives on range(T).  A target with weight outside that range
  // is not dominated at any scale.
  Mat t_full = Mat::Zero(n_full, n_full);
  for (const auto& u : p.vertices) t_full += u.entries;
  t_full = hermitian_part(t_full);
  Eigen::SelfAdjointEigenSolver<Mat> tes(t_full);
  if (tes.info() != Eigen::Success)
    throw NumericError("eigenvalue computation failed on vertex sum");
  const double tau_max = tes.eigenvalues().maxCoeff();
  if (tau_max <= 0.0) {
    // all vertices are (numerically) zero: nonzero target is unreachable
    sol.status = SdpStatus::kInfeasible;
    sol.objective = std::numeric_limits<double>::infinity();
    return sol;
  }
  std::vector<int> keep;
  for (int i = 0; i < n_full; ++i)
    if (tes.eigenvalues()[i] > 1e-12 * tau_max) keep.push_back(i);
  const int n = static_cast<int>(keep.size());

  Mat basis(n_full, n);  // P: columns spanning range(T)
  for (int i = 0; i < n; ++i) basis.col(i) = tes.eigenvectors().col(keep[i]);

  std::vector<Mat> us(l);
  Mat xs;
  if (n < n_full) {
    Mat null_basis(n_full, n_full - n);
    for (int i = 0, c = 0; i < n_full; ++i)
      if (tes.eigenvalues()[i] <= 1e-12 * tau_max)
        null_basis.col(c++) = tes.eigenvectors().col(i);
    const Mat outside = hermitian_part(null_basis.adjoint() * p.target.entries *
                                       null_basis);
    Eigen::SelfAdjointEigenSolver<Mat> oes(outside, Eigen::EigenvaluesOnly);
    if (oes.eigenvalues().maxCoeff() > p.tol_feas * (1.0 + norm_x)) {
      sol.status = SdpStatus::kInfeasible;
      sol.objective = std::numeric_limits<double>::infinity();
      return sol;
    }
    for (int i = 0; i < l; ++i)
      us[i] = hermitian_part(basis.adjoint() * p.vertices[i].entries * basis);
    xs = hermitian_part(basis.adjoint() * p.target.entries * basis);
  } else {
    for (int i = 0; i < l; ++i) us[i] = hermitian_part(p.vertices[i].entries);
    xs = hermitian_part(p.target.entries);
  }

  Mat ts = Mat::Zero(n, n);
  for (const auto& u : us) ts += u;
  ts = hermitian_part(ts);

  // Strictly feasible start mu = alpha * ones: alpha*T >= X holds for any
  // alpha above the largest generalized eigenvalue of (X, T).
  Eigen::LLT<Mat> tchol(ts);
  if (tchol.info() != Eigen::Success)
    throw NumericError("vertex sum not positive definite after reduction");
  const Mat whitened = tchol.matrixL().solve(xs);
  const Mat w2 = tchol.matrixL().solve(whitened.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> ges(hermitian_part(w2),
                                         Eigen::EigenvaluesOnly);
  const double a0 = ges.eigenvalues().maxCoeff();
  const double alpha = 1.25 * std::max(a0, 0.0) + 0.1 + 0.1 * std::abs(a0);

  RealVec mu = RealVec::Constant(l, alpha);
  const double nu = static_cast<double>(n + l);  // barrier parameter count
  double t = nu / std::max(1.0, alpha * static_cast<double>(l));

  const auto slack = [&](const RealVec& m) {
    Mat s = -xs;
    for (int i = 0; i < l; ++i) s += m[i] * us[i];
    return hermitian_part(s);
  };

  // Best certified dual point seen so far, across all barrier weights.  Each
  // z is rescaled onto the dual-feasible set before use, so <x, z> is always
  // a true lower bound on the optimum; keeping the best one matters because
  // at very large weights the centering accuracy (hence the dual quality)
  // degrades in double precision, so the tightest dual usually comes from an
  // intermediate weight rather than the last one.
  double best_dual = -std::numeric_limits<double>::infinity();
  Mat best_z;
  bool have_dual = false;

  const auto store_solution = [&](SdpStatus status, double obj) {
    sol.status = status;
    sol.objective = obj;
    for (int i = 0; i < l; ++i) sol.primal_mu[i] = mu[i];
    if (have_dual) {
      sol.gap = std::max(obj - best_dual, 0.0);
      if (n < n_full) {
        sol.dual_z =
            SymPoint{kind, hermitian_part(basis * best_z * basis.adjoint())};
      } else {
        sol.dual_z = SymPoint{kind, hermitian_part(best_z)};
      }
      if (kind == ConeKind::kRealSymmetric) sol.dual_z.entries.imag().setZero();
    } else {
      sol.gap = nu / t;
    }
    return sol;
  };

  const auto finish_limit = [&]() {
    log_debug("norm program stalled; feasible upper bound ", mu.sum());
    return store_solution(SdpStatus::kIterationLimit, mu.sum());
  };

  // The target sitting exactly on the boundary of the hull (optimal slack
  // singular) is routine here: the scaled leading-product fixes its own
  // lifted eigenvector.  The path then needs its full budget of centering
  // rounds, and a stall near the end still leaves a feasible (hence valid)
  // objective.
  constexpr int kMaxRounds = 60;
  for (int round = 0; round < kMaxRounds; ++round) {
    // Newton centering for the current barrier weight t.
    bool stalled = false;
    for (int inner = 0; inner < p.max_iters; ++inner) {
      const Mat s = slack(mu);
      Eigen::LLT<Mat> schol(s);
      if (schol.info() != Eigen::Success) {
        // slack rounded off the cone: stop touching it at this weight
        stalled = true;
        break;
      }

      // W_i = L^-1 U_i L^-*; gradient and Hessian of the barrier in mu.
      std::vector<Mat> w(l);
      for (int i = 0; i < l; ++i) {
        const Mat tmp = schol.matrixL().solve(us[i]);
        w[i] = hermitian_part(
            schol.matrixL().solve(tmp.adjoint()).adjoint());
      }
      RealVec g(l);
      for (int i = 0; i < l; ++i)
        g[i] = t - w[i].trace().real() - 1.0 / mu[i];
      RealMat h(l, l);
      for (int i = 0; i < l; ++i) {
        for (int j = i; j < l; ++j) {
          const double hij = (w[i].array() * w[j].array().conjugate())
                                 .sum()
                                 .real();
          h(i, j) = hij;
          h(j, i) = hij;
        }
        h(i, i) += 1.0 / (mu[i] * mu[i]);
      }
      RealVec dmu = (h + 1e-14 * RealMat::Identity(l, l)).ldlt().solve(-g);
      double dec2 = -g.dot(dmu);
      if (!(dec2 > 0.0)) dec2 = 0.0;
      const double delta = std::sqrt(dec2);
      double step = delta <= 0.25 ? 1.0 : 1.0 / (1.0 + delta);

      bool moved = false;
      for (int bt = 0; bt < 60; ++bt) {
        const RealVec trial = mu + step * dmu;
        if ((trial.array() > 0.0).all() && strictly_pd(slack(trial))) {
          mu = trial;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        // an immovable iterate that is already decently centered is a normal
        // end of centering (conditioning floor), not a failure
        stalled = delta > 1e-6;
        break;
      }
      if (delta < 1e-7) break;
    }
    if (stalled) return finish_limit();

    const double obj = mu.sum();

    // Extract the dual point for this weight: z = S^-1 / t at the centered
    // iterate, with a pseudo-inverse fallback when the slack has rounded to
    // singular.  Rescaling z onto the dual-feasible set (z PSD, <u_i, z> <= 1
    // exactly) makes <x, z> a certified lower bound on the optimum, so the
    // reported gap is a true duality gap rather than a path estimate.  Only
    // the tail of the path produces competitive duals, so skip the extraction
    // while the path estimate is still far from tolerance.
    if (nu / t <= 1e4 * p.tol_gap * (1.0 + obj)) {
      const Mat s = slack(mu);
      Eigen::LLT<Mat> schol(s);
      Mat z;
      if (schol.info() == Eigen::Success) {
        z = schol.solve(Mat::Identity(n, n)) / t;
      } else {
        Eigen::SelfAdjointEigenSolver<Mat> ses(s);
        Vec inv = Vec::Zero(n);
        for (int i = 0; i < n; ++i) {
          const double ev = ses.eigenvalues()[i];
          if (ev > 1e-14) inv[i] = 1.0 / (ev * t);
        }
        z = ses.eigenvectors() * inv.asDiagonal() *
            ses.eigenvectors().adjoint();
      }
      double worst_feas = 0.0;
      for (int i = 0; i < l; ++i)
        worst_feas = std::max(worst_feas, (z * us[i]).trace().real());
      if (worst_feas > 1.0) z /= worst_feas;
      const double dual_value = (z * xs).trace().real();
      if (dual_value > best_dual) {
        best_dual = dual_value;
        best_z = z;
        have_dual = true;
      }
    }

    // Done when either the path estimate nu/t or the certified gap against
    // the best dual point meets the tolerance.
    if (nu / t <= p.tol_gap * (1.0 + obj) ||
        (have_dual && obj - best_dual <= p.tol_gap * (1.0 + obj))) {
      return store_solution(SdpStatus::kOptimal, obj);
    }
    t *= 10.0;
  }
  return finish_limit();
}

}  // namespace jsr
