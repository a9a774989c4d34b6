#include "qnet/eoa.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qnet {

namespace {

// Sides up to this many qubits get their own reduced density matrix.
constexpr int kDirectSide = 8;

std::vector<std::string> registers_of(const PureState& s, const std::vector<std::string>& parties) {
  std::vector<std::string> out;
  for (const auto& p : parties) {
    auto r = s.registers_of(p);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

double side_entropy(const PureState& s, const std::vector<std::string>& parties) {
  auto regs = registers_of(s, parties);
  if (regs.empty()) return 0;
  if (static_cast<int>(regs.size()) <= kDirectSide) return DensityOperator::of(s, regs).entropy();
  return entropy(s, regs);
}

std::vector<std::string> with(std::vector<std::string> v, const std::string& p) {
  v.insert(v.begin(), p);
  return v;
}

LedgerEntry entry(std::string between, double ebits, std::string label) {
  if (std::abs(ebits) < kEntropyTol) ebits = 0;
  LedgerEntry e{std::move(between), ebits, ebits < 0, std::move(label)};
  if (e.consumed) e.label += " (entanglement consumed)";
  return e;
}

}  // namespace

AssistanceInstance AssistanceInstance::make(PureState state, const std::string& a, const std::string& b) {
  if (a == b) throw InputError("parties A and B must differ");
  if (std::abs(state.norm() - 1) > kEntropyTol) throw InputError("state not pure: norm differs from 1");
  std::set<std::string> parties;
  for (const auto& l : state.labels()) parties.insert(l.party);
  if (!parties.count(a)) throw InputError("party '" + a + "' owns no register");
  if (!parties.count(b)) throw InputError("party '" + b + "' owns no register");
  AssistanceInstance inst{std::move(state), a, b, {}};
  for (const auto& p : parties) {
    if (p != a && p != b) inst.helpers.push_back(p);
  }
  return inst;
}

AssistanceInstance AssistanceInstance::from_density(const DensityOperator& rho, const std::vector<std::string>& parties,
                                                    const std::string& a, const std::string& b) {
  const auto& names = rho.labels();
  if (parties.size() != names.size()) throw InputError("party map does not match the registers");
  const Matrix& m = rho.matrix();
  double purity = (m * m).trace().real();
  if (purity < 1 - kEntropyTol) throw InputError("state not pure: Tr rho^2 = " + std::to_string(purity));
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Vector top = es.eigenvectors().col(es.eigenvectors().cols() - 1);
  // DensityOperator lists the first label as the most significant bit;
  // PureState keeps qubit i at bit i.
  const int n = static_cast<int>(names.size());
  Vector amp = Vector::Zero(top.size());
  for (Eigen::Index i = 0; i < top.size(); ++i) {
    Eigen::Index j = 0;
    for (int q = 0; q < n; ++q) {
      if ((i >> (n - 1 - q)) & 1) j |= Eigen::Index(1) << q;
    }
    amp(j) = top(i);
  }
  std::vector<RegisterLabel> labels;
  for (int q = 0; q < n; ++q) labels.push_back({parties[q], names[q]});
  return make(PureState(labels, amp / amp.norm()), a, b);
}

EoaResult eoa_regularized(const AssistanceInstance& inst) {
  if (inst.state.num_qubits() > kEoaMaxQubits) {
    throw InputError("state has " + std::to_string(inst.state.num_qubits()) + " qubits, limit is " +
                     std::to_string(kEoaMaxQubits));
  }
  const auto& h = inst.helpers;
  const int m = static_cast<int>(h.size());
  std::vector<std::vector<std::string>> subsets;
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::string> t;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) t.push_back(h[i]);
    }
    subsets.push_back(std::move(t));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });

  EoaResult best;
  bool have = false;
  for (const auto& t : subsets) {
    std::vector<std::string> tc;
    std::set_difference(h.begin(), h.end(), t.begin(), t.end(), std::back_inserter(tc));
    PartitionValue pv{t, side_entropy(inst.state, with(t, inst.a)), side_entropy(inst.state, with(tc, inst.b))};
    if (std::abs(pv.s_at - pv.s_btc) > kEntropyTol) {
      throw Error("pure-state symmetry violated: S(AT) = " + std::to_string(pv.s_at) +
                  ", S(BT^c) = " + std::to_string(pv.s_btc));
    }
    double v = std::min(pv.s_at, pv.s_btc);
    if (!have || v < best.value - kEntropyTol) {
      best.value = v;
      best.t = t;
      best.tc = tc;
      have = true;
    }
    best.evaluated.push_back(std::move(pv));
  }
  if (std::abs(best.value) < kEntropyTol) best.value = 0;
  return best;
}

MergingLedger merging_ledger(const AssistanceInstance& inst, const std::vector<std::string>& t,
                             const std::vector<std::string>& tc) {
  std::multiset<std::string> given(t.begin(), t.end());
  given.insert(tc.begin(), tc.end());
  if (given != std::multiset<std::string>(inst.helpers.begin(), inst.helpers.end())) {
    throw InputError("partition must cover every helper exactly once");
  }
  const auto& s = inst.state;
  MergingLedger L;
  const double s_a = side_entropy(s, {inst.a});
  const double s_b = side_entropy(s, {inst.b});
  const double s_at = side_entropy(s, with(t, inst.a));
  const double s_btc = side_entropy(s, with(tc, inst.b));
  L.a_b = entry("A-B", s_at, "S(AT) ebits between A and B");
  L.t_a = entry("T-A", s_a - s_at, "-S(T|A) ebits between T and A");
  L.tc_b = entry("Tc-B", s_b - s_btc, "-S(T^c|B) ebits between T^c and B");

  auto chain = [&](const std::vector<std::string>& group, const std::string& anchor, const std::string& anchor_name,
                   std::vector<LedgerEntry>& out, double total) {
    std::vector<std::string> prefix{anchor};
    double prev = side_entropy(s, prefix);
    double sum = 0;
    for (const auto& p : group) {
      prefix.push_back(p);
      double cur = side_entropy(s, prefix);
      sum += prev - cur;
      out.push_back(entry(p + "-" + anchor_name, prev - cur, "-S(" + p + "|" + anchor_name + " and earlier) ebits"));
      prev = cur;
    }
    if (std::abs(sum - total) > kEntropyTol) {
      throw Error("chain rule violated: per-party sum " + std::to_string(sum) + " vs " + std::to_string(total));
    }
  };
  chain(t, inst.a, "A", L.t_parties, s_a - s_at);
  chain(tc, inst.b, "B", L.tc_parties, s_b - s_btc);

  auto consumed = [](const MergingLedger& l) {
    double c = 0;
    for (const auto* e : {&l.t_a, &l.tc_b}) c += std::min(0.0, e->ebits);
    return -c;
  };
  if (tc.empty()) {
    L.advisories.push_back("T^c is empty: nothing is merged to B");
  } else {
    double all_t = std::min(0.0, s_a - side_entropy(s, with(inst.helpers, inst.a)));
    if (-all_t < consumed(L) - kEntropyTol) {
      L.advisories.push_back("an empty T^c consumes " + std::to_string(consumed(L) + all_t) + " fewer ebits");
    }
  }
  return L;
}

}  // namespace qnet
