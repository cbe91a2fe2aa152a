#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jsr/conitope.hpp"

namespace jsr {

// Engine-level defaults; every value is recorded in reports and certificates.
inline constexpr double kTolB = 1e-8;
inline constexpr double kTolCert = 1e-7;
inline constexpr int kMaxMainIters = 100;
inline constexpr int kMaxVertices = 5000;
inline constexpr long kProductBudget = 1'000'000;
inline constexpr int kDefaultMaxSmpLen = 4;

struct EngineOptions {
  int max_smp_len = kDefaultMaxSmpLen;
  int max_iters = kMaxMainIters;
  int max_vertices = kMaxVertices;
  long product_budget = kProductBudget;
  double tol_B = kTolB;
  double tol_member = kTolMember;
  double tol_interior = kTolInterior;
  double tol_cert = kTolCert;
  double tol_gap = kTolGap;
  double tol_feas = kTolFeas;
  int max_ip_iters = kMaxIpIters;
};

struct ToleranceSnapshot {
  double tol_B = kTolB;
  double tol_member = kTolMember;
  double tol_interior = kTolInterior;
  double tol_cert = kTolCert;
  double tol_gap = kTolGap;
  double tol_feas = kTolFeas;
  double tol_psd = kTolPsd;

  static ToleranceSnapshot FromOptions(const EngineOptions& o) {
    return ToleranceSnapshot{o.tol_B,   o.tol_member, o.tol_interior,
                             o.tol_cert, o.tol_gap,    o.tol_feas,
                             kTolPsd};
  }
};

// A candidate optimal product: cyclically canonical word and its averaged
// spectral radius rho(P)^(1/len).
struct SmpCandidate {
  ProductWord word;
  double value = 0.0;
};

struct IterationRecord {
  double C = 0.0;        // lower bound, unlifted scale
  double Y = 0.0;        // upper bound, unlifted scale
  double B = 0.0;        // max conitope norm of images, lifted scale
  int vertices = 0;
};

// How the initial lifted point(s) of a certificate's conitope are obtained,
// so verification can reproduce every vertex from provenance alone.
enum class InitialPointRule { kSmpEigenvectors, kIdentity };

struct Certificate {
  SmpCandidate smp;
  double scale = 0.0;              // C: matrices were divided by this value
  ConeKind cone_kind = ConeKind::kRealSymmetric;
  InitialPointRule initial_rule = InitialPointRule::kSmpEigenvectors;
  int n = 0;
  std::vector<Vertex> vertices;    // the invariant conitope, lifted scale
  double lower = 0.0;
  double upper = 0.0;
  ToleranceSnapshot tolerances;
};

struct RunResult {
  bool exact = false;
  double lower = 0.0;
  double upper = 0.0;
  SmpCandidate smp;
  std::vector<IterationRecord> iterations;
  std::optional<Certificate> certificate;
  int steps = 0;
  int restarts = 0;
  bool split_used = false;
  std::string note;  // human-readable outcome detail (cap hit, split, ...)
  ToleranceSnapshot tolerances;
};

struct BoundsResult {
  double lower = 0.0;
  double upper = 0.0;
  SmpCandidate best;  // the word attaining the lower bound
  int depth_completed = 0;
  bool budget_exceeded = false;
};

struct SubspaceSplit {
  Mat basis_s;       // n x r, orthonormal columns spanning the invariant part
  Mat basis_s_perp;  // n x (n-r)
  MatrixSet restricted;   // action on the subspace
  MatrixSet compressed;   // action on the orthogonal complement
};

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> violations;
};

// Best averaged spectral radius over all words of length <= max_len, one
// necklace representative per cyclic class; ties prefer shorter then
// lexicographically smaller words.  Throws BudgetError past product_budget.
SmpCandidate smp_search(const MatrixSet& set, int max_len,
                        long product_budget = kProductBudget);

// Exhaustive sandwich bounds: lower = max over k<=depth of the best averaged
// spectral radius; upper = min over k<=depth of (max 2-norm over length-k
// words)^(1/k).  On budget exhaustion returns the bounds completed so far
// with the flag set.
BoundsResult brute_force_bounds(const MatrixSet& set, int depth,
                                long product_budget = kProductBudget);

// The conitope method: SMP candidate search, lifted eigenvector start,
// interior-building preprocessing (with invariant-subspace splitting when the
// orbit span stalls), then image/prune iterations until the conitope is
// invariant; restarts with a longer candidate search when the initial points
// fall strictly inside the current conitope.
RunResult algorithm1(const MatrixSet& set, const EngineOptions& opts = {});

// The dynamical procedure: identity start, no restarts; a scan of contiguous
// subproducts of image words raises the scale in place whenever it finds a
// better candidate.  Not expected to close the conitope in finite time in
// general; the lower bound C converges to the target value.
RunResult algorithm2(const MatrixSet& set, const EngineOptions& opts = {});

// Best averaged spectral radius over the contiguous subwords of `word`
// (including the word itself), evaluated on the unlifted matrices.  `cache`
// memoizes per cyclically-canonical subword.
SmpCandidate subproduct_scan(const ProductWord& word, const MatrixSet& set,
                             std::map<std::vector<int>, double>* cache = nullptr);

// max over vertices and operators of |op(vertex)|_C; a valid upper bound on
// the spectral radius of the lifted operator set (lifted scale).
double upper_bound_from_conitope(const Conitope& c,
                                 const std::vector<Mat>& scaled_matrices);

// Orbit-closure span of Re(v0) (then Im(v0); complex span for complex sets).
// Returns a split when the span is a proper subspace, none when it is full.
std::optional<SubspaceSplit> detect_invariant_subspace(const MatrixSet& set,
                                                       const Vec& v0,
                                                       double tol_rank = 1e-9);

// Independent re-check of an exact certificate: (a) the claimed product value
// is reproduced from the word; (b) conitope interior and per-vertex PSD;
// (c) every vertex is reproduced from its provenance word; (d) the initial
// points lie inside the conitope; (e) invariance of the conitope under every
// scaled operator; (f) bound ordering.  Fresh solver state throughout.
VerifyResult verify_certificate(const Certificate& cert, const MatrixSet& set);

}  // namespace jsr
