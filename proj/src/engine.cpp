#include "jsr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "jsr/errors.hpp"
#include "jsr/log.hpp"

namespace jsr {

namespace {

constexpr double kTieWindow = 1e-12;   // relative improvement threshold
constexpr double kTolRescale = 1e-10;  // minimal relative gain worth a rescale
constexpr double kTolRepro = 1e-6;     // vertex provenance reproduction slack
constexpr double kDupTol = 1e-12;      // lifted-point duplicate filter

std::vector<Mat> divide_all(const MatrixSet& set, double c) {
  std::vector<Mat> out;
  out.reserve(set.matrices.size());
  for (const auto& a : set.matrices) out.push_back(a / c);
  return out;
}

double averaged_radius(double rho, int len) {
  return len <= 1 ? rho : std::pow(rho, 1.0 / static_cast<double>(len));
}

// Shared spectral-radius cache keyed by cyclically canonical word; rotations
// share spectral radius, so one entry covers the whole necklace.
using RhoCache = std::map<std::vector<int>, double>;

double cached_rho(const ProductWord& word, const MatrixSet& set,
                  RhoCache* cache) {
  const ProductWord canon = cyclic_canonical(word);
  if (cache != nullptr) {
    auto it = cache->find(canon.indices);
    if (it != cache->end()) return it->second;
  }
  const double value = spectral_radius(product_eval(canon, set));
  if (cache != nullptr) (*cache)[canon.indices] = value;
  return value;
}

// Depth-first sweep over all words of length exactly `len` with incremental
// prefix products.  Calls visit(word, product) on every node of the level;
// returns false if the node budget ran out mid-level.
template <typename Visitor>
bool sweep_level(const MatrixSet& set, int len, long* budget, Visitor&& visit) {
  const int m = set.size();
  std::vector<int> word(len, 0);
  std::vector<Mat> prefix(len + 1);
  prefix[0] = Mat::Identity(set.n, set.n);

  int depth = 0;
  while (true) {
    if (depth == len) {
      visit(word, prefix[len]);
      // backtrack to the rightmost position that can still advance
      while (depth > 0 && word[depth - 1] == m - 1) --depth;
      if (depth == 0) return true;
      ++word[depth - 1];
      word.resize(len);
      for (int i = depth; i < len; ++i) word[i] = 0;
      --depth;  // re-extend from the changed position
      if (--(*budget) < 0) return false;
      prefix[depth + 1] = prefix[depth] * set.matrices[word[depth]];
      ++depth;
      continue;
    }
    if (--(*budget) < 0) return false;
    prefix[depth + 1] = prefix[depth] * set.matrices[word[depth]];
    ++depth;
  }
}

bool is_canonical(const std::vector<int>& w) {
  const int k = static_cast<int>(w.size());
  for (int s = 1; s < k; ++s) {
    for (int j = 0; j < k; ++j) {
      const int a = w[(s + j) % k];
      const int b = w[j];
      if (a != b) {
        if (a < b) return false;
        break;
      }
    }
  }
  return true;
}

SmpCandidate smp_search_impl(const MatrixSet& set, int max_len, long budget,
                             RhoCache* cache) {
  if (max_len < 1) throw InputError("candidate search depth must be >= 1");
  SmpCandidate best;
  long remaining = budget;
  for (int len = 1; len <= max_len; ++len) {
    const bool complete = sweep_level(
        set, len, &remaining, [&](const std::vector<int>& w, const Mat& p) {
          if (!is_canonical(w)) return;
          double rho;
          if (cache != nullptr) {
            auto it = cache->find(w);
            if (it == cache->end()) {
              rho = spectral_radius(p);
              (*cache)[w] = rho;
            } else {
              rho = it->second;
            }
          } else {
            rho = spectral_radius(p);
          }
          const double value = averaged_radius(rho, len);
          if (value > best.value * (1.0 + kTieWindow)) {
            best.value = value;
            best.word = ProductWord(w);
          }
        });
    if (!complete)
      throw BudgetError("candidate product search exceeded the budget of " +
                        std::to_string(budget) +
                        " evaluations; reduce the search depth");
  }
  return best;
}

std::vector<Vec> initial_vectors(const Mat& product) {
  const EigenResult eig = leading_eigenpair(product);
  if (eig.leading_multiplicity_flag)
    return leading_eigenvectors(product, kTolEigTie);
  return {eig.leading_vector};
}

// Lift and near-duplicate-filter a batch of base vectors (conjugate pairs
// lift to one point).
std::vector<SymPoint> lift_unique(const std::vector<Vec>& vecs, ConeKind kind) {
  std::vector<SymPoint> out;
  for (const auto& v : vecs) {
    SymPoint p = lift_vector(v, kind);
    bool dup = false;
    for (const auto& q : out) {
      if ((p.entries - q.entries).norm() <= kDupTol * (1.0 + q.frobenius())) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Vertex> images_of(const Conitope& u, const std::vector<Mat>& ops) {
  std::vector<Vertex> out;
  out.reserve(u.vertices().size() * ops.size());
  for (const auto& v : u.vertices()) {
    for (int j = 0; j < static_cast<int>(ops.size()); ++j) {
      Vertex w;
      w.point = congruence(ops[j], v.point);
      w.word.indices.reserve(v.word.length() + 1);
      w.word.indices.push_back(j);
      w.word.indices.insert(w.word.indices.end(), v.word.indices.begin(),
                            v.word.indices.end());
      w.origin = v.origin;
      w.scale_log = v.scale_log;
      out.push_back(std::move(w));
    }
  }
  // duplicate images (e.g. sign-flipped eigenvectors) waste norm solves
  std::vector<Vertex> unique;
  for (auto& w : out) {
    bool dup = false;
    for (const auto& q : unique) {
      if ((w.point.entries - q.point.entries).norm() <=
          kDupTol * (1.0 + q.point.frobenius())) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(w));
  }
  return unique;
}

struct SandwichTracker {
  double best_lower = 0.0;
  double best_upper = std::numeric_limits<double>::infinity();

  void see_lower(double c) { best_lower = std::max(best_lower, c); }
  void see_upper(double y) { best_upper = std::min(best_upper, y); }
};

Certificate make_certificate(const SmpCandidate& smp, double scale,
                             ConeKind kind, InitialPointRule rule, int n,
                             const Conitope& u, double lower, double upper,
                             const EngineOptions& opts) {
  Certificate cert;
  cert.smp = smp;
  cert.scale = scale;
  cert.cone_kind = kind;
  cert.initial_rule = rule;
  cert.n = n;
  cert.vertices = u.vertices();
  cert.lower = lower;
  cert.upper = upper;
  cert.tolerances = ToleranceSnapshot::FromOptions(opts);
  return cert;
}

RunResult bounds_only_result(const SandwichTracker& sw, const SmpCandidate& smp,
                             std::string note,
                             std::vector<IterationRecord> iters, int steps,
                             int restarts, const EngineOptions& opts) {
  RunResult out;
  out.exact = false;
  out.tolerances = ToleranceSnapshot::FromOptions(opts);
  out.lower = sw.best_lower;
  out.upper = std::max(sw.best_upper, sw.best_lower);  // guard against dust
  out.smp = smp;
  out.iterations = std::move(iters);
  out.steps = steps;
  out.restarts = restarts;
  out.note = std::move(note);
  return out;
}

// Zero spectral radius at every searched length: either the whole semigroup
// vanishes (products of length n are all zero — simultaneous nilpotency) and
// the value is exactly 0, or only bounds can be reported.
RunResult handle_nilpotent(const MatrixSet& set, const EngineOptions& opts) {
  RunResult out;
  out.tolerances = ToleranceSnapshot::FromOptions(opts);
  long budget = opts.product_budget;
  bool all_zero = true;
  sweep_level(set, set.n, &budget, [&](const std::vector<int>&, const Mat& p) {
    if (p.cwiseAbs().maxCoeff() > 0.0) all_zero = false;
  });
  if (budget >= 0 && all_zero) {
    out.exact = true;
    out.lower = 0.0;
    out.upper = 0.0;
    out.note = "all products of length n vanish; the value is exactly zero";
    return out;
  }
  const BoundsResult bf = brute_force_bounds(set, set.n, opts.product_budget);
  out.exact = false;
  out.lower = bf.lower;
  out.upper = bf.upper;
  out.note =
      "all candidate products searched had zero spectral radius; reporting "
      "enumeration bounds only";
  return out;
}

RunResult combine_split(const MatrixSet& set, const EngineOptions& opts,
                        RunResult a, RunResult b) {
  RunResult out;
  out.tolerances = ToleranceSnapshot::FromOptions(opts);
  out.split_used = true;
  out.steps = a.steps + b.steps;
  out.restarts = a.restarts + b.restarts;
  out.lower = std::max(a.lower, b.lower);
  out.upper = std::max(a.upper, b.upper);
  out.exact = a.exact && b.exact &&
              out.upper - out.lower <= opts.tol_cert * (1.0 + out.lower);
  // The branch value is attained by the same word on the original set:
  // products are block triangular, so the full spectral radius is the max of
  // the branch spectral radii.
  const RunResult& lead = a.lower >= b.lower ? a : b;
  out.smp = lead.smp;
  if (!out.smp.word.empty()) {
    const double full =
        averaged_radius(spectral_radius(product_eval(out.smp.word, set)),
                        out.smp.word.length());
    out.smp.value = full;
    out.lower = std::max(out.lower, full);
  }
  out.iterations = std::move(a.iterations);
  out.iterations.insert(out.iterations.end(), b.iterations.begin(),
                        b.iterations.end());
  out.note = "common invariant subspace found; value is the maximum over the "
             "restricted and compressed parts (no conitope certificate)";
  return out;
}

}  // namespace

SmpCandidate smp_search(const MatrixSet& set, int max_len, long product_budget) {
  set.validate();
  return smp_search_impl(set, max_len, product_budget, nullptr);
}

BoundsResult brute_force_bounds(const MatrixSet& set, int depth,
                                long product_budget) {
  set.validate();
  if (depth < 1) throw InputError("bounds depth must be >= 1");
  BoundsResult out;
  out.upper = std::numeric_limits<double>::infinity();
  long remaining = product_budget;
  for (int len = 1; len <= depth; ++len) {
    double level_norm = 0.0;
    const bool complete = sweep_level(
        set, len, &remaining, [&](const std::vector<int>& w, const Mat& p) {
          level_norm = std::max(level_norm, operator_norm_2(p));
          if (is_canonical(w)) {
            const double value = averaged_radius(spectral_radius(p), len);
            if (value > out.best.value * (1.0 + kTieWindow)) {
              out.best.value = value;
              out.best.word = ProductWord(w);
            }
          }
        });
    // spectral radii of enumerated products are valid lower bounds even from
    // a partial level; the norm maximum needs the whole level
    out.lower = std::max(out.lower, out.best.value);
    if (!complete) {
      out.budget_exceeded = true;
      return out;
    }
    out.upper = std::min(out.upper, averaged_radius(level_norm, len));
    out.depth_completed = len;
  }
  return out;
}

SmpCandidate subproduct_scan(const ProductWord& word, const MatrixSet& set,
                             RhoCache* cache) {
  if (word.length() < 1) throw InputError("subproduct scan needs a nonempty word");
  SmpCandidate best;
  const int k = word.length();
  for (int len = 1; len <= k; ++len) {
    for (int start = 0; start + len <= k; ++start) {
      ProductWord sub(std::vector<int>(word.indices.begin() + start,
                                       word.indices.begin() + start + len));
      const double value =
          averaged_radius(cached_rho(sub, set, cache), len);
      if (value > best.value * (1.0 + kTieWindow)) {
        best.value = value;
        best.word = cyclic_canonical(sub);
      }
    }
  }
  return best;
}

double upper_bound_from_conitope(const Conitope& c,
                                 const std::vector<Mat>& scaled_matrices) {
  double worst = 0.0;
  for (const auto& v : c.vertices()) {
    for (const auto& a : scaled_matrices) {
      worst = std::max(worst, c.norm(congruence(a, v.point)));
    }
  }
  return worst;
}

std::optional<SubspaceSplit> detect_invariant_subspace(const MatrixSet& set,
                                                       const Vec& v0,
                                                       double tol_rank) {
  set.validate();
  if (v0.size() != set.n || v0.norm() == 0.0)
    throw InputError("subspace detection needs a nonzero n-vector");
  const int n = set.n;

  const auto orbit_span = [&](const Vec& seed) -> Mat {
    Mat basis(n, 0);
    const auto add_column = [&](const Vec& c) -> bool {
      Vec r = c;
      for (int i = 0; i < basis.cols(); ++i)
        r -= basis.col(i) * (basis.col(i).adjoint() * r)(0, 0);
      // re-orthogonalize once; classical Gram-Schmidt loses accuracy
      for (int i = 0; i < basis.cols(); ++i)
        r -= basis.col(i) * (basis.col(i).adjoint() * r)(0, 0);
      if (r.norm() <= tol_rank * (1.0 + c.norm())) return false;
      basis.conservativeResize(n, basis.cols() + 1);
      basis.col(basis.cols() - 1) = r / r.norm();
      return true;
    };
    add_column(seed);
    int frontier_begin = 0;
    while (frontier_begin < basis.cols() && basis.cols() < n) {
      const int frontier_end = static_cast<int>(basis.cols());
      for (int i = frontier_begin; i < frontier_end; ++i) {
        for (const auto& a : set.matrices) {
          add_column(a * basis.col(i));
          if (basis.cols() == n) return basis;
        }
      }
      frontier_begin = frontier_end;
    }
    return basis;
  };

  std::vector<Vec> seeds;
  if (set.scalar_kind == ScalarKind::kReal) {
    Vec re = v0.real().cast<Cplx>();
    Vec im = v0.imag().cast<Cplx>();
    if (re.norm() > 0) seeds.push_back(re);
    if (im.norm() > 0) seeds.push_back(im);
  } else {
    seeds.push_back(v0);
  }

  for (const auto& seed : seeds) {
    const Mat basis = orbit_span(seed);
    const int r = static_cast<int>(basis.cols());
    if (r >= n) continue;

    // complete to an orthonormal basis of the whole space
    Mat full(n, n);
    full.leftCols(r) = basis;
    int c = r;
    for (int i = 0; i < n && c < n; ++i) {
      Vec cand = Vec::Zero(n);
      cand[i] = 1.0;
      for (int j = 0; j < c; ++j)
        cand -= full.col(j) * (full.col(j).adjoint() * cand)(0, 0);
      for (int j = 0; j < c; ++j)
        cand -= full.col(j) * (full.col(j).adjoint() * cand)(0, 0);
      if (cand.norm() > 1e-8) {
        full.col(c++) = cand / cand.norm();
      }
    }
    if (c < n) continue;  // degenerate completion; try next seed

    SubspaceSplit split;
    split.basis_s = full.leftCols(r);
    split.basis_s_perp = full.rightCols(n - r);

    std::vector<Mat> restricted, compressed;
    for (const auto& a : set.matrices) {
      restricted.push_back(split.basis_s.adjoint() * a * split.basis_s);
      compressed.push_back(split.basis_s_perp.adjoint() * a *
                           split.basis_s_perp);
    }
    if (set.scalar_kind == ScalarKind::kReal) {
      std::vector<RealMat> rr, cc;
      for (const auto& m : restricted) rr.push_back(m.real());
      for (const auto& m : compressed) cc.push_back(m.real());
      split.restricted = MatrixSet::FromReal(rr);
      split.compressed = MatrixSet::FromReal(cc);
    } else {
      split.restricted = MatrixSet::FromComplex(restricted);
      split.compressed = MatrixSet::FromComplex(compressed);
    }
    return split;
  }
  return std::nullopt;
}

RunResult algorithm1(const MatrixSet& set, const EngineOptions& opts) {
  set.validate();
  const ConeKind kind = cone_for(set.scalar_kind);
  RhoCache rho_cache;
  SandwichTracker sw;
  std::vector<IterationRecord> iters;
  int total_steps = 0;
  int restarts = 0;
  int smp_len = opts.max_smp_len;
  SmpCandidate best_smp;

  while (true) {
    const SmpCandidate smp =
        smp_search_impl(set, smp_len, opts.product_budget, &rho_cache);
    if (smp.value <= 0.0) return handle_nilpotent(set, opts);
    if (smp.value > best_smp.value) best_smp = smp;
    const double c_scale = smp.value;
    sw.see_lower(c_scale);

    const Mat product = product_eval(smp.word, set);
    const std::vector<Vec> init_vecs = initial_vectors(product);
    const std::vector<SymPoint> init_points = lift_unique(init_vecs, kind);
    const std::vector<Mat> scaled = divide_all(set, c_scale);

    std::vector<Vertex> seed_vertices;
    for (int i = 0; i < static_cast<int>(init_points.size()); ++i) {
      Vertex v;
      v.point = init_points[i];
      v.origin = i;
      seed_vertices.push_back(std::move(v));
    }
    Conitope u(kind, std::move(seed_vertices));

    // Interior-building phase: push the orbit of the initial points until
    // their span meets the cone interior; a stalled span exposes a common
    // invariant subspace and the problem splits into smaller blocks.
    int rounds = 0;
    while (!u.interior_nonempty(opts.tol_interior)) {
      if (++rounds > set.n) {
        const auto split = detect_invariant_subspace(set, init_vecs.front());
        if (split.has_value()) {
          log_info("invariant subspace of dimension ",
                   split->restricted.n, " found; splitting");
          RunResult a = algorithm1(split->restricted, opts);
          RunResult b = algorithm1(split->compressed, opts);
          return combine_split(set, opts, std::move(a), std::move(b));
        }
        throw NumericError(
            "orbit span never reached the cone interior, but no invariant "
            "subspace was detected");
      }
      u = u.extend(images_of(u, scaled), opts.tol_member);
    }

    // Main loop: grow the conitope by images until it is invariant, restart
    // with a deeper candidate search if the initial points fall strictly
    // inside (the candidate cannot be optimal then).
    bool restart = false;
    while (!restart) {
      if (total_steps >= opts.max_iters) {
        return bounds_only_result(
            sw, best_smp, "main-loop iteration cap reached", std::move(iters),
            total_steps, restarts, opts);
      }
      ++total_steps;

      const std::vector<Vertex> images = images_of(u, scaled);
      double b_val = 0.0;
      try {
        for (const auto& w : images)
          b_val = std::max(b_val, u.norm(w.point));
      } catch (const NumericError& e) {
        return bounds_only_result(
            sw, best_smp,
            std::string("norm solver gave up during the invariance check: ") +
                e.what(),
            std::move(iters), total_steps, restarts, opts);
      }
      const double y = c_scale * std::sqrt(std::max(b_val, 0.0));
      sw.see_upper(y);
      iters.push_back(IterationRecord{c_scale, y, b_val, u.size()});
      log_debug("step ", total_steps, ": C=", c_scale, " B=", b_val,
                " vertices=", u.size());

      if (b_val <= 1.0 + opts.tol_B) {
        RunResult out;
        out.tolerances = ToleranceSnapshot::FromOptions(opts);
        out.exact = true;
        out.lower = std::min(c_scale, y);
        out.upper = std::max(c_scale, y);
        out.smp = smp;
        out.iterations = std::move(iters);
        out.steps = total_steps;
        out.restarts = restarts;
        out.certificate = make_certificate(
            smp, c_scale, kind, InitialPointRule::kSmpEigenvectors, set.n, u,
            out.lower, out.upper, opts);
        return out;
      }

      Conitope extended = u.extend(images, opts.tol_member);
      if (extended.size() > opts.max_vertices) {
        return bounds_only_result(sw, best_smp, "vertex cap reached",
                                  std::move(iters), total_steps, restarts,
                                  opts);
      }

      double d_val = std::numeric_limits<double>::infinity();
      try {
        double worst = 0.0;
        for (const auto& p : init_points)
          worst = std::max(worst, extended.norm(p));
        d_val = worst;
      } catch (const NumericError&) {
        // treat an unresolved membership as "still on the boundary"
        d_val = 1.0;
      }
      if (d_val < 1.0 - opts.tol_member) {
        log_info("initial points fell inside (D=", d_val,
                 "); candidate is not optimal, restarting with depth ",
                 smp_len + 1);
        ++restarts;
        ++smp_len;
        restart = true;
      } else {
        u = std::move(extended);
      }
    }
  }
}

RunResult algorithm2(const MatrixSet& set, const EngineOptions& opts) {
  set.validate();
  const ConeKind kind = cone_for(set.scalar_kind);
  RhoCache rho_cache;
  SandwichTracker sw;
  std::vector<IterationRecord> iters;

  // Start from the best single matrix and the identity point.
  SmpCandidate cand;
  for (int i = 0; i < set.size(); ++i) {
    const double rho = cached_rho(ProductWord({i}), set, &rho_cache);
    if (rho > cand.value * (1.0 + kTieWindow)) {
      cand.value = rho;
      cand.word = ProductWord({i});
    }
  }
  if (cand.value <= 0.0) return handle_nilpotent(set, opts);
  double c_scale = cand.value;
  sw.see_lower(c_scale);
  std::vector<Mat> scaled = divide_all(set, c_scale);

  std::vector<Vertex> seed(1);
  seed[0].point = SymPoint::Identity(kind, set.n);
  Conitope u(kind, std::move(seed));
  u.interior_nonempty(opts.tol_interior);  // identity: trivially true

  const auto classical_fallback = [&](std::string reason, int steps) {
    // the enumeration upper bound can beat a stagnant conitope bound
    try {
      const BoundsResult bf = brute_force_bounds(set, 4, opts.product_budget);
      if (bf.depth_completed >= 1) sw.see_upper(bf.upper);
      sw.see_lower(bf.lower);
    } catch (const BudgetError&) {
    }
    return bounds_only_result(sw, cand, std::move(reason), std::move(iters),
                              steps, 0, opts);
  };

  for (int step = 1; step <= opts.max_iters; ++step) {
    const std::vector<Vertex> images = images_of(u, scaled);
    double b_val = 0.0;
    try {
      for (const auto& w : images) b_val = std::max(b_val, u.norm(w.point));
    } catch (const NumericError& e) {
      return classical_fallback(
          std::string("norm solver gave up during the invariance check: ") +
              e.what(),
          step);
    }
    const double y = c_scale * std::sqrt(std::max(b_val, 0.0));
    sw.see_upper(y);
    iters.push_back(IterationRecord{c_scale, y, b_val, u.size()});
    log_debug("step ", step, ": C=", c_scale, " B=", b_val,
              " vertices=", u.size());

    if (b_val <= 1.0 + opts.tol_B) {
      RunResult out;
      out.tolerances = ToleranceSnapshot::FromOptions(opts);
      out.exact = true;
      out.lower = std::min(c_scale, y);
      out.upper = std::max(c_scale, y);
      out.smp = cand;
      out.iterations = std::move(iters);
      out.steps = step;
      out.certificate =
          make_certificate(cand, c_scale, kind, InitialPointRule::kIdentity,
                           set.n, u, out.lower, out.upper, opts);
      return out;
    }

    Conitope extended = u.extend(images, opts.tol_member);
    if (extended.size() > opts.max_vertices)
      return classical_fallback("vertex cap reached", step);
    u = std::move(extended);

    // Scan contiguous subproducts of the image words for a better candidate;
    // a find rescales the run in place as if it had started there.
    SmpCandidate found = cand;
    for (const auto& w : images) {
      const SmpCandidate s = subproduct_scan(w.word, set, &rho_cache);
      if (s.value > found.value * (1.0 + kTieWindow)) found = s;
    }
    if (found.value > c_scale * (1.0 + kTolRescale)) {
      const double ratio = found.value / c_scale;
      log_info("better candidate found by subproduct scan (", found.value,
               "); rescaling");
      cand = found;
      c_scale = found.value;
      sw.see_lower(c_scale);
      scaled = divide_all(set, c_scale);
      std::vector<Vertex> rescaled = u.vertices();
      for (auto& v : rescaled) {
        const double factor =
            std::pow(ratio, -2.0 * static_cast<double>(v.word.length()));
        v.point.entries *= factor;
        v.scale_log += std::log(factor);
      }
      Conitope next(kind, std::move(rescaled));
      next.interior_nonempty(opts.tol_interior);
      u = std::move(next);
    }
  }
  return classical_fallback("main-loop iteration cap reached", opts.max_iters);
}

VerifyResult verify_certificate(const Certificate& cert, const MatrixSet& set) {
  set.validate();
  VerifyResult res;
  auto fail = [&](std::string why) { res.violations.push_back(std::move(why)); };

  // structural compatibility is an input problem, not an invalid certificate
  if (cert.n != set.n)
    throw InputError("certificate dimension " + std::to_string(cert.n) +
                     " does not match problem dimension " +
                     std::to_string(set.n));
  if (cert.cone_kind != cone_for(set.scalar_kind))
    throw InputError("certificate cone kind does not match the problem's scalar kind");
  if (cert.vertices.empty()) throw InputError("certificate has no vertices");
  if (cert.smp.word.empty()) throw InputError("certificate has an empty product word");
  for (int idx : cert.smp.word.indices)
    if (idx < 0 || idx >= set.size())
      throw InputError("certificate product word indexes outside the set");
  for (const auto& v : cert.vertices)
    for (int idx : v.word.indices)
      if (idx < 0 || idx >= set.size())
        throw InputError("certificate vertex word indexes outside the set");

  const double tol_cert = cert.tolerances.tol_cert;

  // (a) the claimed product value is reproduced from the word
  const Mat product = product_eval(cert.smp.word, set);
  const double value =
      averaged_radius(spectral_radius(product), cert.smp.word.length());
  if (std::abs(value - cert.smp.value) > 1e-10 * (1.0 + value))
    fail("claimed product value " + std::to_string(cert.smp.value) +
         " is not reproduced (recomputed " + std::to_string(value) + ")");
  if (std::abs(cert.scale - cert.smp.value) > 1e-12 * (1.0 + cert.smp.value))
    fail("certificate scale differs from the product value");
  if (cert.lower > cert.upper + 1e-12 * (1.0 + cert.upper))
    fail("claimed lower bound exceeds the upper bound");
  if (std::abs(cert.lower - cert.smp.value) > tol_cert * (1.0 + cert.smp.value))
    fail("claimed lower bound differs from the product value");

  // (b) vertex cone membership and conitope interior
  for (size_t i = 0; i < cert.vertices.size(); ++i) {
    const auto [ok, lam] = psd_check(cert.vertices[i].point,
                                     cert.tolerances.tol_psd);
    if (!ok)
      fail("vertex " + std::to_string(i) +
           " is not positive semidefinite (min eigenvalue " +
           std::to_string(lam) + ")");
  }
  Conitope u(cert.cone_kind, cert.vertices);
  if (!u.interior_nonempty(cert.tolerances.tol_interior)) {
    fail("conitope has no interior; the gauge is not a norm");
    res.ok = false;
    return res;  // the remaining checks need a working norm
  }

  // (c) every vertex is reproduced from its provenance word
  std::vector<SymPoint> init_points;
  if (cert.initial_rule == InitialPointRule::kSmpEigenvectors) {
    init_points = lift_unique(initial_vectors(product), cert.cone_kind);
  } else {
    init_points = {SymPoint::Identity(cert.cone_kind, set.n)};
  }
  const std::vector<Mat> scaled = divide_all(set, cert.scale);
  for (size_t i = 0; i < cert.vertices.size(); ++i) {
    const Vertex& v = cert.vertices[i];
    if (v.origin < 0 || v.origin >= static_cast<int>(init_points.size())) {
      fail("vertex " + std::to_string(i) + " references initial point " +
           std::to_string(v.origin) + " which does not exist");
      continue;
    }
    Mat map = Mat::Identity(set.n, set.n);
    for (int idx : v.word.indices) map = map * scaled[idx];
    SymPoint expected = congruence(map, init_points[v.origin]);
    const double err = (v.point.entries - expected.entries).norm();
    if (err > kTolRepro * (1.0 + expected.frobenius()))
      fail("vertex " + std::to_string(i) +
           " is not reproduced by its provenance word (deviation " +
           std::to_string(err) + ")");
  }

  // (d) the initial points lie inside the conitope
  try {
    for (size_t i = 0; i < init_points.size(); ++i) {
      const double val = u.norm(init_points[i]);
      if (val > 1.0 + tol_cert)
        fail("initial point " + std::to_string(i) +
             " lies outside the conitope (gauge " + std::to_string(val) + ")");
    }
  } catch (const NumericError& e) {
    fail(std::string("initial-point membership could not be resolved: ") +
         e.what());
  }

  // (e) invariance: every image of every vertex stays inside
  try {
    for (size_t i = 0; i < cert.vertices.size(); ++i) {
      for (size_t j = 0; j < scaled.size(); ++j) {
        const SymPoint img = congruence(scaled[j], cert.vertices[i].point);
        const double val = u.norm(img);
        if (val > 1.0 + tol_cert)
          fail("image of vertex " + std::to_string(i) + " under operator " +
               std::to_string(j) + " escapes the conitope (gauge " +
               std::to_string(val) + ")");
      }
    }
  } catch (const NumericError& e) {
    fail(std::string("invariance check could not be resolved: ") + e.what());
  }

  res.ok = res.violations.empty();
  return res;
}

}  // namespace jsr
