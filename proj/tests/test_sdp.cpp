#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "jsr/errors.hpp"
#include "jsr/sdp.hpp"
#include "test_support.hpp"

using namespace jsr;
using jsr_test::audit_duality;
using jsr_test::grid_oracle_2x2;
using jsr_test::random_norm_program;
using jsr_test::random_psd;

namespace {

SymPoint diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return SymPoint{ConeKind::kRealSymmetric, m};
}

}  // namespace

TEST_CASE("psd_check accepts the PSD and rejects the indefinite") {
  CHECK(psd_check(SymPoint::Identity(ConeKind::kRealSymmetric, 3)).first);
  const auto [ok, lam] = psd_check(diag2(1.0, -1.0));
  CHECK_FALSE(ok);
  CHECK(lam == doctest::Approx(-1.0));
  CHECK(psd_check(SymPoint::Zero(ConeKind::kHermitian, 2)).first);
}

TEST_CASE("max_min_eig_combination") {
  SymPoint e1 = diag2(1.0, 0.0), e2 = diag2(0.0, 1.0);
  CHECK(max_min_eig_combination({e1, e2}) == doctest::Approx(0.5));
  CHECK(max_min_eig_combination({e1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(max_min_eig_combination({}), InputError);
}

TEST_CASE("norm program: lambda_max against the identity") {
  NormProgram p;
  p.vertices = {SymPoint::Identity(ConeKind::kRealSymmetric, 2)};
  p.target = diag2(2.0, 1.0);
  const SdpSolution sol = solve_norm_program(p);
  CHECK(sol.status == SdpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("norm program: a vertex has gauge one") {
  std::mt19937 rng(31);
  NormProgram p;
  for (int i = 0; i < 4; ++i)
    p.vertices.push_back(random_psd(ConeKind::kRealSymmetric, 3, rng));
  p.target = p.vertices[2];
  const SdpSolution sol = solve_norm_program(p);
  // boundary target: the optimum sits on a singular slack
  CHECK(sol.objective >= 1.0 - 1e-7);
  CHECK(sol.objective <= 1.0 + 1e-6);
}

TEST_CASE("norm program: zero target costs nothing") {
  NormProgram p;
  p.vertices = {diag2(1.0, 2.0)};
  p.target = SymPoint::Zero(ConeKind::kRealSymmetric, 2);
  const SdpSolution sol = solve_norm_program(p);
  CHECK(sol.status == SdpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.0));
}

TEST_CASE("norm program: target outside the vertex span is infeasible") {
  NormProgram p;
  p.vertices = {diag2(1.0, 0.0)};
  p.target = diag2(0.0, 1.0);
  const SdpSolution sol = solve_norm_program(p);
  CHECK(sol.status == SdpStatus::kInfeasible);
  CHECK(std::isinf(sol.objective));
}

TEST_CASE("norm program: degenerate span handled by range reduction") {
  NormProgram p;
  p.vertices = {diag2(1.0, 0.0)};
  p.target = diag2(0.5, 0.0);
  const SdpSolution sol = solve_norm_program(p);
  CHECK(sol.status == SdpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("norm program: rank-one vertex dominating its own ray") {
  std::mt19937 rng(7);
  const Vec v = jsr_test::random_vec(3, rng, false);
  NormProgram p;
  p.vertices = {lift_vector(v, ConeKind::kRealSymmetric)};
  p.target = p.vertices[0];
  p.target.entries *= 0.25;
  const SdpSolution sol = solve_norm_program(p);
  CHECK(sol.status == SdpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("duality audit on random programs, both cones") {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> pick_n(2, 4), pick_l(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const ConeKind kind =
        trial % 2 == 0 ? ConeKind::kRealSymmetric : ConeKind::kHermitian;
    const auto prog = random_norm_program(kind, pick_n(rng), pick_l(rng), rng);
    NormProgram p;
    p.vertices = prog.vertices;
    p.target = prog.target;
    const SdpSolution sol = solve_norm_program(p);
    REQUIRE(sol.status == SdpStatus::kOptimal);
    const auto audit = audit_duality(prog.vertices, prog.target, sol);
    CHECK(std::abs(audit.primal - audit.dual) <=
          1e-7 * (1.0 + std::abs(audit.primal)));
    CHECK(audit.worst_dual_feas <= 1.0 + 1e-7);
    CHECK(audit.slack_min_eig >= -1e-9 * (1.0 + prog.target.frobenius()));
    CHECK(audit.z_min_eig >= -1e-9);
  }
}

TEST_CASE("solver agrees with the 2x2 grid oracle") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> pick_l(1, 3);
  for (int trial = 0; trial < 12; ++trial) {
    const auto prog =
        random_norm_program(ConeKind::kRealSymmetric, 2, pick_l(rng), rng);
    NormProgram p;
    p.vertices = prog.vertices;
    p.target = prog.target;
    const SdpSolution sol = solve_norm_program(p);
    REQUIRE(sol.status == SdpStatus::kOptimal);
    const double oracle = grid_oracle_2x2(prog.vertices, prog.target, 1e-3);
    // the grid value sits above the optimum by at most O(step)
    CHECK(sol.objective <= oracle + 1e-6);
    CHECK(oracle - sol.objective <= 2e-3);
  }
}

TEST_CASE("iteration-limited solve still reports a feasible upper bound") {
  std::mt19937 rng(11);
  const auto prog = random_norm_program(ConeKind::kRealSymmetric, 3, 4, rng);
  NormProgram p;
  p.vertices = prog.vertices;
  p.target = prog.target;
  p.max_iters = 1;  // starve the centering so the path cannot finish
  const SdpSolution limited = solve_norm_program(p);
  p.max_iters = kMaxIpIters;
  const SdpSolution full = solve_norm_program(p);
  REQUIRE(full.status == SdpStatus::kOptimal);
  CHECK(limited.objective >= full.objective - 1e-9);
}

TEST_CASE("input validation") {
  NormProgram p;
  CHECK_THROWS_AS(solve_norm_program(p), InputError);  // no vertices
  p.vertices = {SymPoint::Identity(ConeKind::kRealSymmetric, 2)};
  p.target = SymPoint::Identity(ConeKind::kRealSymmetric, 3);
  CHECK_THROWS_AS(solve_norm_program(p), InputError);  // dimension mismatch
}
