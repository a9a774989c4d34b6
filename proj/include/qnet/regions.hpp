#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnet/flowcore.hpp"
#include "qnet/netmodel.hpp"
#include "qnet/polytope.hpp"

namespace qnet {

// ---------------------------------------------------------------- cut bounds

/// sum_{i in subset} r_i <= bound, witnessed by a cut.
struct CutBound {
  std::vector<int> subset;  // 0-based pair indices, sorted
  Capacity bound;
  CutCertificate witness;
  /// "directed" (c-> with the subset's senders inside) or "separating"
  /// (c-> + c<- over cuts separating every pair of the subset).
  std::string rule;
  /// False when the separating bound was restricted to the sender-side
  /// pattern because the network is too large to enumerate.
  bool exhaustive = true;
  /// Every minimizing cut side, filled when requested.
  std::vector<std::vector<int>> minimizers;
};

struct CutOptions {
  bool collect_minimizers = false;
  /// Permit the restricted separating bound above the enumeration cap.
  bool allow_restricted = false;
};

constexpr int kCutEnumerationCap = 20;

std::vector<CutBound> cut_outer_bounds(const Network& net, Scenario scenario,
                                       const std::vector<std::vector<int>>& subsets,
                                       const CutOptions& options = {});

/// All nonempty pair subsets, ordered by size then lexicographically.
std::vector<std::vector<int>> all_pair_subsets(int k);

/// Polytope cut out by the bounds of every nonempty subset.
RatePolytope outer_region(const Network& net, Scenario scenario, const CutOptions& options = {});

std::string describe_cut(const Network& net, const std::vector<int>& side);

// ----------------------------------------------------------- admissible paths

/// Forward directed path carrying the cbits for one reversed segment: from
/// the segment start (position `begin`) to the vertex at `target` >= `end`.
struct Bridge {
  int begin = 0;
  int end = 0;
  int target = 0;
  std::vector<int> edges;
};

struct AdmissiblePath {
  int pair = -1;
  int start = -1;
  std::vector<PathStep> steps;
  std::vector<Bridge> bridges;

  std::vector<int> vertices(const Network& net) const;
  std::string describe(const Network& net) const;
};

struct ReversalCheck {
  bool ok = false;
  std::vector<Bridge> witnesses;
  /// (begin, end) vertex positions of the first segment without a bridge.
  std::optional<std::pair<int, int>> failing_segment;
};

ReversalCheck check_reversal_condition(const Network& net, int start, const std::vector<PathStep>& steps);

struct PathEnumeration {
  std::vector<AdmissiblePath> paths;
  bool truncated = false;
};

constexpr int kPathCap = 100000;

PathEnumeration enumerate_admissible_paths(const Network& net, int pair, Scenario scenario, int max_len);

// --------------------------------------------------------------- inner region

struct PathPacking {
  RationalVector rates;
  /// (path index, amount) for each path with positive amount.
  std::vector<std::pair<int, Rational>> uses;
};

/// Region achievable by fractional packing of admissible paths.
class PathRegion {
 public:
  PathRegion(Network net, Scenario scenario, int max_len);

  const Network& network() const { return net_; }
  Scenario scenario() const { return scenario_; }
  int max_len() const { return max_len_; }
  const std::vector<AdmissiblePath>& paths() const { return paths_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// max w . r with an optimal packing.
  PathPacking maximize(const RationalVector& w) const;
  /// A packing achieving at least `rates`, or nullopt.
  std::optional<PathPacking> packing_for(const RationalVector& rates) const;
  bool contains(const RationalVector& rates) const { return packing_for(rates).has_value(); }

  /// Materialized polytope (only for k <= 3).
  const std::optional<RatePolytope>& polytope() const { return polytope_; }

 private:
  Network net_;
  Scenario scenario_;
  int max_len_;
  std::vector<AdmissiblePath> paths_;
  std::vector<std::string> warnings_;
  std::optional<RatePolytope> polytope_;
};

constexpr int kMaterializeMaxPairs = 3;

/// `max_len` defaults to |V| - 1 (every simple path).
PathRegion inner_region(const Network& net, Scenario scenario, std::optional<int> max_len = {});

// ------------------------------------------------------------------- two pair

struct TwoPairDecomposition {
  std::vector<int> s_v;  // side containing A1, A2
  std::vector<int> s_h;  // side containing A1, B2
  Rational v1, v2, h1, h2, d1, d2;
  Rational a1, a2, b1, b2;
};

struct TwoPairExact {
  RatePolytope region;
  TwoPairDecomposition decomposition;
  Rational r1_max, r2_max, sum_max;
};

TwoPairExact two_pair_back_exact(const Network& net);

struct TwoPairProtocol {
  RationalVector target;
  std::vector<PathFlow> paths;
  /// "1", "2a", "2b" for the rate-1-maximizing corner, with the pair roles
  /// swapped ("1'", ...) for the other corner; "interior" or "zero" otherwise.
  std::string case_label;
};

TwoPairProtocol two_pair_back_protocol(const Network& net, const RationalVector& target);

// ------------------------------------------------------- entanglement assisted

struct EntAssistedRegion {
  RatePolytope classical_outer;
  RatePolytope classical_inner;
  RatePolytope quantum_outer;
  RatePolytope quantum_inner;
  bool exact = false;
  GapReport gap;
  std::string note;
};

EntAssistedRegion ent_assisted_region(const Network& net, const std::optional<RatePolytope>& classical_fixture);

// ------------------------------------------------------------------ multicast

Rational classical_multicast_rate(const Network& net, int source, const std::vector<int>& receivers);

}  // namespace qnet
