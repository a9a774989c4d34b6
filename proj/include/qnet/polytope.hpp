#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qnet/rational.hpp"

namespace qnet {

enum class Provenance { Inner, Outer, Exact, Fixture };
std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

/// a . r <= b with a >= 0, b >= 0. `note` carries a human-readable witness
/// (for cut bounds, the cut side).
struct Halfspace {
  RationalVector a;
  Rational b;
  std::string note;
};

/// Down-closed convex polytope in the nonnegative orthant, always bounded.
/// Stored as half-spaces; vertices are computed exactly on demand.
class RatePolytope {
 public:
  RatePolytope() = default;
  RatePolytope(int dim, std::vector<Halfspace> halfspaces, Provenance provenance);

  /// Down-closed convex hull of a point set (the origin is always included).
  static RatePolytope hull_of(int dim, const std::vector<RationalVector>& points, Provenance provenance);

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  Provenance provenance() const { return provenance_; }
  RatePolytope with_provenance(Provenance p) const;

  /// Vertex list, sorted lexicographically.
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  /// Irredundant half-spaces (facets other than r_i >= 0, plus r_i <= 0 for
  /// coordinates that are identically zero), in a canonical order.
  std::vector<Halfspace> facets() const;

  bool contains(const RationalVector& r) const;
  bool subset_of(const RatePolytope& other) const;
  friend bool operator==(const RatePolytope& x, const RatePolytope& y) {
    return x.dim_ == y.dim_ && x.vertices_ == y.vertices_;
  }

  /// max_{r in P} w . r
  Rational support(const RationalVector& w) const;
  RatePolytope scaled(const Rational& factor) const;
  /// Convex hull of the union.
  RatePolytope hull_union(const RatePolytope& other) const;
  RatePolytope intersect(const RatePolytope& other) const;

  /// Checks that every vertex with any coordinate lowered to zero stays inside.
  bool is_down_closed() const;

 private:
  void compute_vertices();

  int dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  Provenance provenance_ = Provenance::Inner;
  std::vector<RationalVector> vertices_;
};

/// Result of comparing an inner region with an outer region.
struct GapReport {
  bool exact = false;
  /// When not exact: a direction where the supports differ.
  RationalVector witness_weight;
  Rational inner_support;
  Rational outer_support;
};
GapReport compare_regions(const RatePolytope& inner, const RatePolytope& outer);

/// Support oracle: maximum of w . r over a region together with a maximizer.
struct SupportAnswer {
  Rational value;
  RationalVector point;
};
using SupportOracle = std::function<SupportAnswer(const RationalVector& w)>;

/// Materializes a down-closed polytope from its support oracle by hull
/// refinement: probe each facet normal of the current inner hull and add the
/// maximizer while it lies beyond the facet. Exact on termination.
RatePolytope materialize(int dim, const SupportOracle& oracle, Provenance provenance);

/// Exact solution of a square system, or nullopt when singular.
std::optional<RationalVector> solve_square(std::vector<RationalVector> m, RationalVector rhs);

std::string format_point(const RationalVector& v);

}  // namespace qnet
