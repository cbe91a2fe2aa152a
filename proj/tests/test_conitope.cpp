#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "jsr/conitope.hpp"
#include "jsr/errors.hpp"
#include "test_support.hpp"

using namespace jsr;
using jsr_test::random_psd;
using jsr_test::random_vec;

namespace {

SymPoint diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return SymPoint{ConeKind::kRealSymmetric, m};
}

Vertex plain_vertex(const SymPoint& p) { return Vertex{p, ProductWord{}, 0, 0.0}; }

Conitope make_conitope(ConeKind kind, const std::vector<SymPoint>& pts) {
  std::vector<Vertex> vs;
  vs.reserve(pts.size());
  for (const auto& p : pts) vs.push_back(plain_vertex(p));
  return Conitope(kind, std::move(vs));
}

// A validated conitope over `count` random interior-friendly PSD vertices.
Conitope random_conitope(ConeKind kind, int n, int count, std::mt19937& rng) {
  std::vector<SymPoint> pts;
  for (int i = 0; i < count; ++i) pts.push_back(random_psd(kind, n, rng));
  Conitope c = make_conitope(kind, pts);
  REQUIRE(c.interior_nonempty());
  return c;
}

}  // namespace

TEST_CASE("construction rejects empty and inconsistent vertex lists") {
  CHECK_THROWS_AS(Conitope(ConeKind::kRealSymmetric, {}), InputError);

  std::vector<Vertex> mixed_dims = {
      plain_vertex(SymPoint::Identity(ConeKind::kRealSymmetric, 2)),
      plain_vertex(SymPoint::Identity(ConeKind::kRealSymmetric, 3))};
  CHECK_THROWS_AS(Conitope(ConeKind::kRealSymmetric, std::move(mixed_dims)),
                  InputError);

  std::vector<Vertex> mixed_kind = {
      plain_vertex(SymPoint::Identity(ConeKind::kRealSymmetric, 2)),
      plain_vertex(SymPoint::Identity(ConeKind::kHermitian, 2))};
  CHECK_THROWS_AS(Conitope(ConeKind::kRealSymmetric, std::move(mixed_kind)),
                  InputError);
}

TEST_CASE("gauge against the identity vertex is the largest eigenvalue") {
  Conitope c = make_conitope(ConeKind::kRealSymmetric,
                             {SymPoint::Identity(ConeKind::kRealSymmetric, 2)});
  REQUIRE(c.interior_nonempty());
  // min mu with mu*I >= diag(2,1) is 2
  CHECK(c.norm(diag2(2.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(c.norm(diag2(0.5, 0.25)) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(c.norm(SymPoint::Zero(ConeKind::kRealSymmetric, 2)) == 0.0);
}

TEST_CASE("every vertex lies inside; conic combinations with mass <= 1 too") {
  std::mt19937 rng(101);
  for (ConeKind kind : {ConeKind::kRealSymmetric, ConeKind::kHermitian}) {
    Conitope c = random_conitope(kind, 3, 4, rng);
    for (const auto& v : c.vertices()) {
      CHECK(c.norm(v.point) <= 1.0 + 1e-8);
      CHECK(c.contains(v.point));
    }
    // strict sub-unit conic combination of the vertices
    SymPoint combo = SymPoint::Zero(kind, 3);
    for (const auto& v : c.vertices())
      combo.entries += (0.9 / c.size()) * v.point.entries;
    combo.symmetrize();
    CHECK(c.contains(combo));
    CHECK(c.norm(combo) <= 0.9 + 1e-7);
    // scaling the same point past the hull must leave it outside
    SymPoint outside = combo;
    outside.entries *= 3.0;
    CHECK_FALSE(c.contains(outside));
  }
}

TEST_CASE("norm refuses to run before the interior has been established") {
  Conitope c = make_conitope(ConeKind::kRealSymmetric,
                             {SymPoint::Identity(ConeKind::kRealSymmetric, 2)});
  CHECK_THROWS_AS(c.norm(diag2(1.0, 1.0)), StateError);
  // zero target short-circuits to membership without a solve
  CHECK(c.contains(SymPoint::Zero(ConeKind::kRealSymmetric, 2)));
  CHECK_THROWS_AS(c.contains(diag2(1.0, 1.0)), StateError);
  // once validated, the same calls succeed
  REQUIRE(c.interior_nonempty());
  CHECK(c.norm(diag2(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("interior detection: rank-deficient spans fail, full spans pass") {
  // a single rank-one vertex spans no interior
  Conitope flat = make_conitope(ConeKind::kRealSymmetric, {diag2(1.0, 0.0)});
  CHECK_FALSE(flat.interior_nonempty());
  CHECK_THROWS_AS(flat.norm(diag2(1.0, 0.0)), StateError);

  // two complementary rank-one vertices average to a definite point
  Conitope axes = make_conitope(ConeKind::kRealSymmetric,
                                {diag2(1.0, 0.0), diag2(0.0, 1.0)});
  CHECK(axes.interior_nonempty());
  // an absurd threshold rejects the same set and invalidates norm again
  Conitope axes2 = make_conitope(ConeKind::kRealSymmetric,
                                 {diag2(1.0, 0.0), diag2(0.0, 1.0)});
  CHECK_FALSE(axes2.interior_nonempty(10.0));
  CHECK_THROWS_AS(axes2.norm(diag2(1.0, 1.0)), StateError);
}

TEST_CASE("pruning drops dominated vertices and keeps generators") {
  // I/2 is half of I: mass 0.5, pruned; I needs mass 2 from I/2: kept
  {
    SymPoint half = SymPoint::Identity(ConeKind::kRealSymmetric, 2);
    half.entries *= 0.5;
    Conitope c = make_conitope(
        ConeKind::kRealSymmetric,
        {SymPoint::Identity(ConeKind::kRealSymmetric, 2), half});
    REQUIRE(c.interior_nonempty());
    Conitope pruned = c.essential_system();
    REQUIRE(pruned.size() == 1);
    CHECK(pruned.vertices()[0].point.entries(0, 0).real() ==
          doctest::Approx(1.0));
  }
  // complementary rank-one vertices cannot express each other: unchanged
  {
    Conitope c = make_conitope(ConeKind::kRealSymmetric,
                               {diag2(1.0, 0.0), diag2(0.0, 1.0)});
    REQUIRE(c.interior_nonempty());
    CHECK(c.essential_system().size() == 2);
  }
  // an interior point of the first two goes away; order of survivors kept
  {
    Conitope c = make_conitope(
        ConeKind::kRealSymmetric,
        {diag2(1.0, 0.0), diag2(0.0, 1.0), diag2(0.4, 0.4)});
    REQUIRE(c.interior_nonempty());
    Conitope pruned = c.essential_system();
    REQUIRE(pruned.size() == 2);
    CHECK(pruned.vertices()[0].point.entries(0, 0).real() ==
          doctest::Approx(1.0));
    CHECK(pruned.vertices()[1].point.entries(1, 1).real() ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("pruning keeps the earliest copy of near-duplicates with its provenance") {
  SymPoint p = diag2(1.0, 2.0);
  Vertex original{p, ProductWord({0, 1}), 1, -0.25};
  Vertex copy{p, ProductWord({1, 1, 1}), 0, 0.5};
  Conitope c(ConeKind::kRealSymmetric, {original, copy});
  REQUIRE(c.interior_nonempty());
  Conitope pruned = c.essential_system();
  REQUIRE(pruned.size() == 1);
  CHECK(pruned.vertices()[0].word == ProductWord({0, 1}));
  CHECK(pruned.vertices()[0].origin == 1);
  CHECK(pruned.vertices()[0].scale_log == doctest::Approx(-0.25));
}

TEST_CASE("provenance fields survive pruning and extension") {
  Vertex a{diag2(1.0, 0.0), ProductWord({0}), 0, 0.1};
  Vertex b{diag2(0.0, 1.0), ProductWord({1, 0}), 1, -0.3};
  Conitope c(ConeKind::kRealSymmetric, {a, b});
  REQUIRE(c.interior_nonempty());
  // newcomer with strong correlation: neither dominated by the axes with
  // mass <= 1 nor cheap enough to displace them
  Mat m(2, 2);
  m << 1.0, 0.9, 0.9, 1.0;
  SymPoint corr{ConeKind::kRealSymmetric, m};
  Conitope grown = c.extend({Vertex{corr, ProductWord({1}), 0, 0.7}});
  REQUIRE(grown.size() == 3);
  CHECK(grown.vertices()[0].word == ProductWord({0}));
  CHECK(grown.vertices()[0].scale_log == doctest::Approx(0.1));
  CHECK(grown.vertices()[1].word == ProductWord({1, 0}));
  CHECK(grown.vertices()[1].origin == 1);
  CHECK(grown.vertices()[2].word == ProductWord({1}));
  CHECK(grown.vertices()[2].scale_log == doctest::Approx(0.7));
}

TEST_CASE("extension prunes any dominated vertex, incoming or incumbent") {
  Conitope c = make_conitope(ConeKind::kRealSymmetric,
                             {diag2(1.0, 0.0), diag2(0.0, 1.0)});
  REQUIRE(c.interior_nonempty());
  // dominated newcomer disappears
  Conitope same = c.extend({plain_vertex(diag2(0.3, 0.3))});
  CHECK(same.size() == 2);
  // a newcomer that dominates an incumbent displaces it:
  // diag(1,0) <= 0.5 * diag(2,0.1), so only diag(0,1) and the newcomer stay
  Conitope displaced = c.extend({plain_vertex(diag2(2.0, 0.1))});
  REQUIRE(displaced.size() == 2);
  CHECK(displaced.vertices()[0].point.entries(1, 1).real() ==
        doctest::Approx(1.0));
  CHECK(displaced.vertices()[1].point.entries(0, 0).real() ==
        doctest::Approx(2.0));
  // the grown conitope is still valid for norm computations
  CHECK(displaced.norm(diag2(2.0, 0.1)) <= 1.0 + 1e-8);
  // a mutually essential newcomer simply joins
  Mat m(2, 2);
  m << 1.0, 0.9, 0.9, 1.0;
  Conitope grown = c.extend({plain_vertex(SymPoint{ConeKind::kRealSymmetric, m})});
  CHECK(grown.size() == 3);
}

TEST_CASE("gauge is positively homogeneous") {
  std::mt19937 rng(733);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    const ConeKind kind =
        trial % 2 == 0 ? ConeKind::kRealSymmetric : ConeKind::kHermitian;
    const int n = 2 + trial % 3;
    Conitope c = random_conitope(kind, n, 3, rng);
    SymPoint x = random_psd(kind, n, rng);
    const double alpha = scale(rng);
    SymPoint ax = x;
    ax.entries *= alpha;
    const double nx = c.norm(x);
    const double nax = c.norm(ax);
    CHECK(std::abs(nax - alpha * nx) <= 1e-7 * (1.0 + std::abs(nax)));
  }
}

TEST_CASE("gauge satisfies the triangle inequality") {
  std::mt19937 rng(947);
  for (int trial = 0; trial < 30; ++trial) {
    const ConeKind kind =
        trial % 2 == 0 ? ConeKind::kRealSymmetric : ConeKind::kHermitian;
    const int n = 2 + trial % 3;
    Conitope c = random_conitope(kind, n, 3, rng);
    SymPoint x = random_psd(kind, n, rng);
    SymPoint y = random_psd(kind, n, rng);
    SymPoint sum = x;
    sum.entries += y.entries;
    sum.symmetrize();
    const double nsum = c.norm(sum);
    const double nx = c.norm(x);
    const double ny = c.norm(y);
    CHECK(nsum <= nx + ny + 1e-7 * (1.0 + nx + ny));
  }
}

TEST_CASE("gauge is monotone in the semidefinite order") {
  std::mt19937 rng(1511);
  for (int trial = 0; trial < 30; ++trial) {
    const ConeKind kind =
        trial % 2 == 0 ? ConeKind::kRealSymmetric : ConeKind::kHermitian;
    const int n = 2 + trial % 3;
    Conitope c = random_conitope(kind, n, 3, rng);
    SymPoint x = random_psd(kind, n, rng);
    SymPoint y = x;  // y = x + PSD bump, so x <= y in the PSD order
    y.entries += random_psd(kind, n, rng, 0.0).entries;
    y.symmetrize();
    const double nx = c.norm(x);
    const double ny = c.norm(y);
    CHECK(nx <= ny + 1e-7 * (1.0 + ny));
  }
}

TEST_CASE("pruning preserves the generated cone: gauges agree on probes") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 12; ++trial) {
    const ConeKind kind =
        trial % 2 == 0 ? ConeKind::kRealSymmetric : ConeKind::kHermitian;
    const int n = 2 + trial % 2;
    // build with deliberate redundancy: duplicates and interior points
    std::vector<SymPoint> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(random_psd(kind, n, rng));
    SymPoint interior = SymPoint::Zero(kind, n);
    for (const auto& p : pts) interior.entries += 0.2 * p.entries;
    interior.symmetrize();
    pts.push_back(interior);
    pts.push_back(pts[1]);
    Conitope c = make_conitope(kind, pts);
    REQUIRE(c.interior_nonempty());
    Conitope pruned = c.essential_system();
    CHECK(pruned.size() < c.size());
    for (int probe = 0; probe < 4; ++probe) {
      SymPoint x = random_psd(kind, n, rng);
      const double before = c.norm(x);
      const double after = pruned.norm(x);
      CHECK(std::abs(before - after) <= 1e-7 * (1.0 + before));
    }
  }
}

TEST_CASE("pruning is idempotent and leaves only essential vertices") {
  std::mt19937 rng(3141);
  for (int trial = 0; trial < 8; ++trial) {
    const ConeKind kind =
        trial % 2 == 0 ? ConeKind::kRealSymmetric : ConeKind::kHermitian;
    const int n = 2 + trial % 2;
    Conitope c = random_conitope(kind, n, 5, rng);
    Conitope once = c.essential_system();
    Conitope twice = once.essential_system();
    CHECK(twice.size() == once.size());
    // each survivor is outside the hull of the others
    for (int i = 0; i < once.size(); ++i) {
      std::vector<SymPoint> others;
      for (int j = 0; j < once.size(); ++j)
        if (j != i) others.push_back(once.vertices()[j].point);
      if (others.empty()) continue;
      Conitope rest = make_conitope(kind, others);
      if (!rest.interior_nonempty()) continue;  // gauge needs an interior
      CHECK(rest.norm(once.vertices()[i].point) > 1.0 + 5e-9);
    }
    // and every survivor still has unit gauge in the full system
    for (const auto& v : once.vertices()) {
      const double g = once.norm(v.point);
      CHECK(g <= 1.0 + 1e-7);
      CHECK(g >= 1.0 - 1e-6);
    }
  }
}
