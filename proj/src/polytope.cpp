#include "qnet/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qnet {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Inner: return "inner";
    case Provenance::Outer: return "outer";
    case Provenance::Exact: return "exact";
    case Provenance::Fixture: return "fixture";
  }
  return "inner";
}

Provenance parse_provenance(std::string_view text) {
  if (text == "inner") return Provenance::Inner;
  if (text == "outer") return Provenance::Outer;
  if (text == "exact") return Provenance::Exact;
  if (text == "fixture") return Provenance::Fixture;
  throw InputError("unknown provenance '" + std::string(text) + "'");
}

std::string format_point(const RationalVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<RationalVector>& m, int cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < cols && row < static_cast<int>(m.size()); ++c) {
    int p = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r) {
      if (!m[r][c].is_zero()) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (size_t j = 0; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

/// The unique (up to scale) vector orthogonal to all rows, if the rows have
/// rank cols - 1.
std::optional<RationalVector> null_vector(std::vector<RationalVector> m, int cols) {
  auto pivots = rref(m, cols);
  if (static_cast<int>(pivots.size()) != cols - 1) return std::nullopt;
  int free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
  RationalVector v(cols, Rational(0));
  v[free_col] = 1;
  for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];
  return v;
}

template <typename F>
void for_each_subset(int n, int k, F&& f) {
  if (k > n || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool halfspace_less(const Halfspace& x, const Halfspace& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

/// Scales (a, b) so that a is a primitive integer vector.
Halfspace normalized(RationalVector a, Rational b, std::string note = {}) {
  RationalVector p = primitive_integer_direction(a);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) {
      Rational factor = p[i] / a[i];
      return {std::move(p), b * factor, std::move(note)};
    }
  }
  return {std::move(a), std::move(b), std::move(note)};
}

/// Facets of the down-closed hull of `points` in the orthant.
std::vector<Halfspace> hull_facets(int dim, const std::vector<RationalVector>& input) {
  std::vector<int> active;
  for (int i = 0; i < dim; ++i) {
    bool nonzero = false;
    for (const auto& p : input) nonzero = nonzero || p[i] > 0;
    if (nonzero) active.push_back(i);
  }
  std::vector<Halfspace> out;
  for (int i = 0; i < dim; ++i) {
    if (std::find(active.begin(), active.end(), i) == active.end()) {
      RationalVector a(dim, Rational(0));
      a[i] = 1;
      out.push_back({a, 0, {}});
    }
  }
  const int d = static_cast<int>(active.size());
  if (d == 0) return out;

  // Keep the maximal points, then close them under coordinate projections.
  std::set<RationalVector> proj;
  for (const auto& p : input) {
    RationalVector q;
    for (int i : active) q.push_back(p[i]);
    proj.insert(q);
  }
  std::vector<RationalVector> maximal;
  for (const auto& p : proj) {
    bool dominated = false;
    for (const auto& q : proj) {
      if (p == q) continue;
      bool geq = true;
      for (int i = 0; i < d && geq; ++i) geq = q[i] >= p[i];
      if (geq) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(p);
  }
  std::set<RationalVector> closed;
  for (const auto& p : maximal) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      RationalVector q = p;
      for (int i = 0; i < d; ++i) {
        if (mask & (1 << i)) q[i] = 0;
      }
      closed.insert(q);
    }
  }
  std::vector<RationalVector> pts(closed.begin(), closed.end());

  std::set<std::pair<RationalVector, Rational>> seen;
  for_each_subset(static_cast<int>(pts.size()), d, [&](const std::vector<int>& idx) {
    std::vector<RationalVector> diffs;
    for (int j = 1; j < d; ++j) {
      RationalVector row(d);
      for (int i = 0; i < d; ++i) row[i] = pts[idx[j]][i] - pts[idx[0]][i];
      diffs.push_back(row);
    }
    std::optional<RationalVector> a;
    if (d == 1) {
      a = RationalVector{1};
    } else {
      a = null_vector(diffs, d);
    }
    if (!a) return;
    Rational b = dot(*a, pts[idx[0]]);
    bool any_above = false, any_below = false;
    for (const auto& p : pts) {
      Rational v = dot(*a, p);
      if (v > b) any_above = true;
      if (v < b) any_below = true;
      if (any_above && any_below) return;
    }
    if (any_above) {
      for (auto& x : *a) x = -x;
      b = -b;
    }
    for (const auto& x : *a) {
      if (x < 0) return;  // coordinate facet r_i >= 0
    }
    Halfspace h = normalized(*a, b);
    if (!seen.insert({h.a, h.b}).second) return;
    RationalVector full(dim, Rational(0));
    for (int i = 0; i < d; ++i) full[active[i]] = h.a[i];
    out.push_back({full, h.b, {}});
  });
  std::sort(out.begin(), out.end(), halfspace_less);
  return out;
}

}  // namespace

std::optional<RationalVector> solve_square(std::vector<RationalVector> m, RationalVector rhs) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  auto pivots = rref(m, n);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  RationalVector x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

RatePolytope::RatePolytope(int dim, std::vector<Halfspace> halfspaces, Provenance provenance)
    : dim_(dim), halfspaces_(std::move(halfspaces)), provenance_(provenance) {
  if (dim <= 0) throw InputError("polytope dimension must be positive");
  for (const auto& h : halfspaces_) {
    if (static_cast<int>(h.a.size()) != dim) throw InputError("half-space dimension mismatch");
    for (const auto& x : h.a) {
      if (x < 0) throw InputError("half-space normal must be nonnegative");
    }
    if (h.b < 0) throw InputError("half-space offset must be nonnegative");
  }
  compute_vertices();
}

void RatePolytope::compute_vertices() {
  for (int i = 0; i < dim_; ++i) {
    bool bounded = false;
    for (const auto& h : halfspaces_) bounded = bounded || h.a[i] > 0;
    if (!bounded) throw InputError("rate region is unbounded in coordinate " + std::to_string(i + 1));
  }
  std::vector<std::pair<RationalVector, Rational>> rows;
  for (const auto& h : halfspaces_) rows.push_back({h.a, h.b});
  for (int i = 0; i < dim_; ++i) {
    RationalVector a(dim_, Rational(0));
    a[i] = -1;
    rows.push_back({a, 0});
  }
  std::set<RationalVector> found;
  for_each_subset(static_cast<int>(rows.size()), dim_, [&](const std::vector<int>& idx) {
    std::vector<RationalVector> m;
    RationalVector rhs;
    for (int j : idx) {
      m.push_back(rows[j].first);
      rhs.push_back(rows[j].second);
    }
    auto x = solve_square(m, rhs);
    if (!x) return;
    for (const auto& [a, b] : rows) {
      if (dot(a, *x) > b) return;
    }
    found.insert(*x);
  });
  vertices_.assign(found.begin(), found.end());
}

RatePolytope RatePolytope::hull_of(int dim, const std::vector<RationalVector>& points, Provenance provenance) {
  std::vector<RationalVector> pts{RationalVector(dim, Rational(0))};
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) throw InputError("point dimension mismatch");
    for (const auto& x : p) {
      if (x < 0) throw InputError("rate points must be nonnegative");
    }
    pts.push_back(p);
  }
  return RatePolytope(dim, hull_facets(dim, pts), provenance);
}

RatePolytope RatePolytope::with_provenance(Provenance p) const {
  RatePolytope copy = *this;
  copy.provenance_ = p;
  return copy;
}

std::vector<Halfspace> RatePolytope::facets() const {
  auto out = hull_facets(dim_, vertices_);
  // Carry notes over from matching input half-spaces.
  for (auto& f : out) {
    for (const auto& h : halfspaces_) {
      if (h.note.empty()) continue;
      Halfspace n = normalized(h.a, h.b);
      if (n.a == f.a && n.b == f.b) {
        f.note = h.note;
        break;
      }
    }
  }
  return out;
}

bool RatePolytope::contains(const RationalVector& r) const {
  if (static_cast<int>(r.size()) != dim_) throw InputError("rate vector dimension mismatch");
  for (const auto& x : r) {
    if (x < 0) return false;
  }
  for (const auto& h : halfspaces_) {
    if (dot(h.a, r) > h.b) return false;
  }
  return true;
}

bool RatePolytope::subset_of(const RatePolytope& other) const {
  if (dim_ != other.dim_) throw InputError("polytope dimension mismatch");
  for (const auto& v : vertices_) {
    if (!other.contains(v)) return false;
  }
  return true;
}

Rational RatePolytope::support(const RationalVector& w) const {
  Rational best = 0;
  for (const auto& v : vertices_) best = std::max(best, dot(w, v));
  return best;
}

RatePolytope RatePolytope::scaled(const Rational& factor) const {
  if (factor < 0) throw InputError("scale factor must be nonnegative");
  std::vector<Halfspace> hs = halfspaces_;
  for (auto& h : hs) h.b *= factor;
  return RatePolytope(dim_, std::move(hs), provenance_);
}

RatePolytope RatePolytope::hull_union(const RatePolytope& other) const {
  if (dim_ != other.dim_) throw InputError("polytope dimension mismatch");
  std::vector<RationalVector> pts = vertices_;
  pts.insert(pts.end(), other.vertices_.begin(), other.vertices_.end());
  return hull_of(dim_, pts, provenance_);
}

RatePolytope RatePolytope::intersect(const RatePolytope& other) const {
  if (dim_ != other.dim_) throw InputError("polytope dimension mismatch");
  std::vector<Halfspace> hs = halfspaces_;
  hs.insert(hs.end(), other.halfspaces_.begin(), other.halfspaces_.end());
  return RatePolytope(dim_, std::move(hs), provenance_);
}

bool RatePolytope::is_down_closed() const {
  if (!contains(RationalVector(dim_, Rational(0)))) return false;
  for (const auto& v : vertices_) {
    for (int i = 0; i < dim_; ++i) {
      RationalVector w = v;
      w[i] = 0;
      if (!contains(w)) return false;
    }
  }
  return true;
}

GapReport compare_regions(const RatePolytope& inner, const RatePolytope& outer) {
  GapReport report;
  if (inner == outer) {
    report.exact = true;
    return report;
  }
  for (const auto& f : inner.facets()) {
    Rational out = outer.support(f.a);
    Rational in = inner.support(f.a);
    if (out != in) {
      report.witness_weight = f.a;
      report.inner_support = in;
      report.outer_support = out;
      return report;
    }
  }
  for (const auto& f : outer.facets()) {
    Rational out = outer.support(f.a);
    Rational in = inner.support(f.a);
    if (out != in) {
      report.witness_weight = f.a;
      report.inner_support = in;
      report.outer_support = out;
      return report;
    }
  }
  // Vertex sets differ yet every facet direction agrees: cannot happen for
  // full-dimensional regions, fall back to the coordinate directions.
  for (int i = 0; i < inner.dim(); ++i) {
    RationalVector w(inner.dim(), Rational(0));
    w[i] = 1;
    if (inner.support(w) != outer.support(w)) {
      report.witness_weight = w;
      report.inner_support = inner.support(w);
      report.outer_support = outer.support(w);
      return report;
    }
  }
  return report;
}

RatePolytope materialize(int dim, const SupportOracle& oracle, Provenance provenance) {
  std::vector<RationalVector> points;
  auto probe = [&](const RationalVector& w) {
    SupportAnswer ans = oracle(w);
    if (static_cast<int>(ans.point.size()) != dim) throw Error("support oracle returned wrong dimension");
    points.push_back(ans.point);
    return ans;
  };
  for (int i = 0; i < dim; ++i) {
    RationalVector w(dim, Rational(0));
    w[i] = 1;
    probe(w);
  }
  probe(RationalVector(dim, Rational(1)));

  std::set<std::pair<RationalVector, Rational>> confirmed;
  for (int round = 0; round < 10000; ++round) {
    bool grew = false;
    for (const auto& f : hull_facets(dim, points)) {
      if (f.b.is_zero() || confirmed.count({f.a, f.b})) continue;
      SupportAnswer ans = probe(f.a);
      if (ans.value > f.b) {
        grew = true;
      } else {
        confirmed.insert({f.a, f.b});
      }
    }
    if (!grew) {
      std::vector<RationalVector> pts = points;
      pts.push_back(RationalVector(dim, Rational(0)));
      return RatePolytope(dim, hull_facets(dim, pts), provenance);
    }
  }
  throw Error("hull refinement did not converge");
}

}  // namespace qnet
