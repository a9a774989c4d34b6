#pragma once

#include <string>
#include <vector>

#include "qnet/qcore.hpp"

namespace qnet {

/// Qubit guard for the exhaustive partition scan.
constexpr int kEoaMaxQubits = 14;

/// A multiparty pure state with two designated parties. Parties are the
/// register owners of the state; every other owner is a helper.
struct AssistanceInstance {
  PureState state;
  std::string a;
  std::string b;
  std::vector<std::string> helpers;  // sorted

  static AssistanceInstance make(PureState state, const std::string& a, const std::string& b);
  /// Rejects mixed input (purity below 1 - 1e-9); otherwise keeps the
  /// dominant eigenvector. `parties[i]` owns qubit i of `rho`.
  static AssistanceInstance from_density(const DensityOperator& rho, const std::vector<std::string>& parties,
                                         const std::string& a, const std::string& b);
};

struct PartitionValue {
  std::vector<std::string> t;
  double s_at = 0;
  double s_btc = 0;
};

struct EoaResult {
  double value = 0;
  std::vector<std::string> t;
  std::vector<std::string> tc;
  std::vector<PartitionValue> evaluated;
};

/// min over helper subsets T of min{S(AT), S(BT^c)}. Ties go to the
/// smallest T, then the lexicographically first.
EoaResult eoa_regularized(const AssistanceInstance& inst);

struct LedgerEntry {
  std::string between;  // e.g. "A-B", "T-A", "C-A"
  double ebits = 0;
  bool consumed = false;  // ebits < 0
  std::string label;
};

struct MergingLedger {
  LedgerEntry a_b;
  LedgerEntry t_a;
  LedgerEntry tc_b;
  std::vector<LedgerEntry> t_parties;
  std::vector<LedgerEntry> tc_parties;
  std::vector<std::string> advisories;
};

/// Ebit ledger for the ordered partition (T_1..T_p | T^c_1..T^c_q).
MergingLedger merging_ledger(const AssistanceInstance& inst, const std::vector<std::string>& t,
                             const std::vector<std::string>& tc);

}  // namespace qnet
