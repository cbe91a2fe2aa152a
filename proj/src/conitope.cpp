#include "jsr/conitope.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "jsr/errors.hpp"
#include "jsr/log.hpp"

namespace jsr {

namespace {

// Gauge of x with respect to a raw vertex list; +inf when x is not dominated
// at any scale.  Does not require an interior (range reduction inside the
// solver handles degenerate spans), so the pruning pass can use it during
// preprocessing.  A stalled solve is reported as a numeric error carrying the
// best feasible bound; callers that can live with an over-estimate catch it.
double membership_value(const std::vector<SymPoint>& vertices,
                        const SymPoint& x) {
  NormProgram prog;
  prog.vertices = vertices;
  prog.target = x;
  const SdpSolution sol = solve_norm_program(prog);
  switch (sol.status) {
    case SdpStatus::kOptimal:
      return sol.objective;
    case SdpStatus::kInfeasible:
      return std::numeric_limits<double>::infinity();
    case SdpStatus::kIterationLimit:
    default:
      throw NumericError(
          "conitope norm solve hit the iteration limit; best bound " +
          std::to_string(sol.objective));
  }
}

}  // namespace

Conitope::Conitope(ConeKind kind, std::vector<Vertex> vertices)
    : kind_(kind), vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InputError("conitope needs at least one vertex");
  const int n = vertices_.front().point.n();
  for (const auto& v : vertices_) {
    if (v.point.n() != n || v.point.cone_kind != kind_)
      throw InputError("conitope vertices disagree in dimension or cone kind");
  }
}

double Conitope::norm(const SymPoint& x) const {
  if (!valid_)
    throw StateError(
        "conitope norm requires a validated interior; run interior_nonempty "
        "(preprocessing) first");
  if (x.frobenius() == 0.0) return 0.0;
  std::vector<SymPoint> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(v.point);
  return membership_value(pts, x);
}

bool Conitope::contains(const SymPoint& x, double tol_member) const {
  if (x.frobenius() == 0.0) return true;
  return norm(x) <= 1.0 + tol_member;
}

bool Conitope::interior_nonempty(double tol) {
  std::vector<SymPoint> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(v.point);
  valid_ = max_min_eig_combination(pts) > tol;
  return valid_;
}

Conitope Conitope::essential_system(double tol_member) const {
  std::vector<Vertex> kept = vertices_;

  // Near-duplicate prefilter: drop the newer copy so established provenance
  // survives.
  for (int i = static_cast<int>(kept.size()) - 1; i > 0; --i) {
    for (int j = 0; j < i; ++j) {
      const double ref = 1.0 + kept[j].point.frobenius();
      if ((kept[i].point.entries - kept[j].point.entries).norm() <= 1e-12 * ref) {
        kept.erase(kept.begin() + i);
        break;
      }
    }
  }

  // Greedy removal, newest first: a vertex expressible from the others with
  // mass <= 1 + tol_member generates nothing new.
  for (int idx = static_cast<int>(kept.size()) - 1; idx >= 0; --idx) {
    if (kept.size() == 1) break;
    std::vector<SymPoint> others;
    others.reserve(kept.size() - 1);
    for (int j = 0; j < static_cast<int>(kept.size()); ++j)
      if (j != idx) others.push_back(kept[j].point);
    double val = std::numeric_limits<double>::infinity();
    try {
      val = membership_value(others, kept[idx].point);
    } catch (const NumericError& e) {
      log_info("membership solve failed, vertex retained: ", e.what());
      continue;
    }
    if (val <= 1.0 + tol_member) kept.erase(kept.begin() + idx);
  }

  Conitope out(kind_, std::move(kept));
  out.valid_ = valid_;  // pruning preserves the generated conitope
  return out;
}

Conitope Conitope::extend(std::vector<Vertex> new_vertices,
                          double tol_member) const {
  std::vector<Vertex> all = vertices_;
  all.reserve(all.size() + new_vertices.size());
  for (auto& v : new_vertices) all.push_back(std::move(v));
  Conitope grown(kind_, std::move(all));
  grown.valid_ = valid_;  // a superset keeps any established interior
  return grown.essential_system(tol_member);
}

}  // namespace jsr
