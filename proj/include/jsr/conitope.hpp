#pragma once

#include <vector>

#include "jsr/sdp.hpp"

namespace jsr {

inline constexpr double kTolMember = 1e-8;
inline constexpr double kTolInterior = 1e-10;

// A conitope vertex with the provenance needed to reproduce it: the word of
// scaled operators applied to the initial point (index 0 = initial point
// label) and the accumulated log-scale applied by in-place rescaling.
struct Vertex {
  SymPoint point;
  ProductWord word;     // product mapping the initial point to this vertex
  int origin = 0;       // which initial point the word was applied to
  double scale_log = 0.0;
};

// Finitely generated conical convex hull: x belongs iff some nonnegative
// combination of vertices with total mass <= 1 dominates x in the PSD order.
// The induced gauge is a norm on the cone once the vertex span meets the cone
// interior; callers must establish that via interior_nonempty before norm().
class Conitope {
 public:
  Conitope(ConeKind kind, std::vector<Vertex> vertices);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  ConeKind cone_kind() const { return kind_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  bool valid() const { return valid_; }

  // Gauge of x: optimal value of the vertex-combination program.  Requires a
  // validated conitope (interior_nonempty returned true).  Returns +inf when
  // x is not dominated at any scale (possible only for degenerate spans).
  double norm(const SymPoint& x) const;

  bool contains(const SymPoint& x, double tol_member = kTolMember) const;

  // True iff lambda_min(average of vertices) > tol; caches the validity flag
  // that norm() requires.
  bool interior_nonempty(double tol = kTolInterior);

  // Minimal generating subset: drops every vertex expressible with mass
  // <= 1 + tol_member from the others, testing newest-first.  Vertices whose
  // membership solve fails are retained conservatively.
  Conitope essential_system(double tol_member = kTolMember) const;

  // essential_system of the union with new vertices (appended, so they are
  // tested for redundancy first).
  Conitope extend(std::vector<Vertex> new_vertices,
                  double tol_member = kTolMember) const;

 private:
  ConeKind kind_;
  std::vector<Vertex> vertices_;
  bool valid_ = false;
};

}  // namespace jsr
