#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnet/layering.hpp"
#include "qnet/polytope.hpp"

namespace qnet {

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

constexpr long kPathSearchBudget = 1000000;

/// Sender-anchored 4-cycle in the layered network (layered vertex indices):
/// sender -> c1_first -> c2 <- c1_second <- sender.
struct FourCycle {
  int sender = -1;
  int c1_first = -1;
  int c2 = -1;
  int c1_second = -1;
};

struct ShallowConditions {
  bool receivers_are_sinks = true;
  std::vector<int> forwarding_receivers;
  /// Longest simple directed path from a sender to a receiver (-1: none).
  int max_path_len = -1;
  std::vector<FourCycle> forbidden_4cycles;
  std::optional<LayeredNetwork> layered;
  std::string layering_error;
};

ShallowConditions check_conditions(const Network& net, long budget = kPathSearchBudget);

struct ShallowCertificate {
  ShallowConditions conditions;
  bool certified = false;
  std::vector<std::string> reasons;
  /// Unassisted routing region, provenance exact (certified, k <= 3 only).
  std::optional<RatePolytope> region;
};

ShallowCertificate certify_routing_optimal(const Network& net, long budget = kPathSearchBudget);

std::string describe_cycle(const LayeredNetwork& ln, const FourCycle& c);

}  // namespace qnet
