#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnet/netmodel.hpp"

namespace qnet {

enum class Orientation { Directed, Undirected };

/// Bipartition with its crossing capacities: `forward` sums channels leaving
/// `side`, `backward` sums channels entering it.
struct CutCertificate {
  std::vector<int> side;
  Capacity forward;
  Capacity backward;

  /// forward + backward (the undirected crossing capacity).
  Capacity both() const;
};

CutCertificate make_cut(const Network& net, std::vector<int> side);

struct MaxFlowResult {
  Rational value;
  CutCertificate cut;
  /// Net flow per edge, tail-to-head positive.
  RationalVector edge_flow;
};

/// Max flow between vertex sets with a certifying min cut (source side is the
/// residual reachability set, so `sources` lie in it and `sinks` do not).
/// Undirected mode lets each channel carry flow either way from one shared
/// capacity.
MaxFlowResult max_flow_min_cut(const Network& net, const std::vector<int>& sources,
                               const std::vector<int>& sinks, Orientation orientation);

/// Per-commodity edge flows. Entries are signed only in undirected mode
/// (negative means head-to-tail).
struct CommodityFlow {
  Orientation orientation = Orientation::Directed;
  std::vector<RationalVector> edge_flow;
  RationalVector rates;
};

struct PathStep {
  int edge = -1;
  bool reversed = false;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct PathFlow {
  int pair = -1;
  int start = -1;
  std::vector<PathStep> steps;
  Rational amount;

  /// Vertex sequence from the sender to the receiver.
  std::vector<int> vertices(const Network& net) const;
};

std::string describe_path(const Network& net, int start, const std::vector<PathStep>& steps);

/// Checks conservation, rates and joint capacity; returns a reason on failure.
std::optional<std::string> flow_violation(const Network& net, const CommodityFlow& flow);

/// Splits each commodity into simple sender-to-receiver paths; leftover
/// circulations are dropped.
std::vector<PathFlow> decompose_paths(const Network& net, const CommodityFlow& flow);

/// Sums a path packing back into edge flows.
CommodityFlow flow_from_paths(const Network& net, const std::vector<PathFlow>& paths,
                              Orientation orientation);

struct RoutingCheck {
  bool feasible = false;
  std::optional<CommodityFlow> witness;
  /// Pair whose single-commodity cut is violated, with that cut.
  std::optional<std::pair<int, CutCertificate>> violated_cut;
  std::string reason;
};

/// Exact fractional multicommodity feasibility at the given rates.
RoutingCheck routing_feasible(const Network& net, const RationalVector& rates, Orientation orientation);

struct WeightedRate {
  Rational value;
  RationalVector rates;
  CommodityFlow flow;
};

/// Maximizes sum_i w_i r_i over the fractional routing region.
WeightedRate max_weighted_rate(const Network& net, const RationalVector& weights,
                               Orientation orientation);

}  // namespace qnet
