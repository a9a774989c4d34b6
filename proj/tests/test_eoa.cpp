#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "qnet/eoa.hpp"

using namespace qnet;

namespace {

PureState ghz3() {
  PureState s({{"A", "a"}, {"B", "b"}, {"C", "c"}});
  s.apply(gate_matrix("H"), std::vector<int>{0});
  s.apply(gate_matrix("CNOT"), std::vector<int>{0, 1});
  s.apply(gate_matrix("CNOT"), std::vector<int>{0, 2});
  return s;
}

// One qubit per party A, B, C1, ..., plus a second qubit for A when `extra`.
PureState random_parties(int helpers, uint64_t seed, bool extra = false) {
  std::vector<RegisterLabel> l{{"A", "a"}, {"B", "b"}};
  for (int i = 0; i < helpers; ++i) l.push_back({"C" + std::to_string(i + 1), "c" + std::to_string(i + 1)});
  if (extra) l.push_back({"A", "a2"});
  return random_state(l, seed);
}

std::vector<std::string> regs_of(const PureState& s, const std::vector<std::string>& parties) {
  std::vector<std::string> out;
  for (const auto& p : parties) {
    for (const auto& r : s.registers_of(p)) out.push_back(r);
  }
  return out;
}

// Brute force min over helper subsets of min{S(AT), S(BT^c)} straight from qcore.
double brute_eoa(const AssistanceInstance& inst) {
  const auto& h = inst.helpers;
  double best = 1e300;
  for (uint32_t m = 0; m < (1u << h.size()); ++m) {
    std::vector<std::string> at{inst.a}, btc{inst.b};
    for (size_t i = 0; i < h.size(); ++i) (m >> i & 1 ? at : btc).push_back(h[i]);
    best = std::min(best, std::min(entropy(inst.state, regs_of(inst.state, at)),
                                   entropy(inst.state, regs_of(inst.state, btc))));
  }
  return best;
}

}  // namespace

TEST_CASE("GHZ gives one ebit with T empty") {
  auto inst = AssistanceInstance::make(ghz3(), "A", "B");
  CHECK(inst.helpers == std::vector<std::string>{"C"});
  auto r = eoa_regularized(inst);
  CHECK(r.value == doctest::Approx(1).epsilon(1e-9));
  CHECK(r.t.empty());
  CHECK(r.tc == std::vector<std::string>{"C"});
  CHECK(r.evaluated.size() == 2);
}

TEST_CASE("product and two-party states") {
  PureState zero({{"A", "a"}, {"B", "b"}, {"C", "c"}});
  CHECK(eoa_regularized(AssistanceInstance::make(zero, "A", "B")).value == doctest::Approx(0));
  // A unentangled, B and C share a Bell pair: nothing to distil.
  PureState bc({{"A", "a"}, {"B", "b"}, {"C", "c"}});
  bc.apply(gate_matrix("H"), std::vector<int>{1});
  bc.apply(gate_matrix("CNOT"), std::vector<int>{1, 2});
  CHECK(eoa_regularized(AssistanceInstance::make(bc, "A", "B")).value == doctest::Approx(0).epsilon(1e-9));
  // No helpers: the entropy of entanglement.
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    PureState s = random_state({{"A", "a"}, {"A", "a2"}, {"B", "b"}}, seed);
    auto r = eoa_regularized(AssistanceInstance::make(s, "A", "B"));
    CHECK(r.value == doctest::Approx(entropy(s, {"a", "a2"})).epsilon(1e-9));
  }
}

TEST_CASE("matches brute force on random states") {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    auto inst = AssistanceInstance::make(random_parties(1 + seed % 3, seed, seed % 2), "A", "B");
    CAPTURE(seed);
    auto r = eoa_regularized(inst);
    CHECK(r.value == doctest::Approx(brute_eoa(inst)).epsilon(1e-9));
    CHECK(r.evaluated.size() == (size_t(1) << inst.helpers.size()));
  }
}

TEST_CASE("swapping A and B gives the same value") {
  for (uint64_t seed = 20; seed <= 30; ++seed) {
    PureState s = random_parties(3, seed);
    double ab = eoa_regularized(AssistanceInstance::make(s, "A", "B")).value;
    double ba = eoa_regularized(AssistanceInstance::make(s, "B", "A")).value;
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
  }
}

TEST_CASE("local unitaries leave the value unchanged") {
  for (uint64_t seed = 40; seed <= 45; ++seed) {
    PureState s = random_parties(2, seed);
    double before = eoa_regularized(AssistanceInstance::make(s, "A", "B")).value;
    for (int q = 0; q < s.num_qubits(); ++q) s.apply(random_unitary_2x2(seed * 10 + q), std::vector<int>{q});
    CHECK(eoa_regularized(AssistanceInstance::make(s, "A", "B")).value == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("GHZ merging ledger") {
  auto inst = AssistanceInstance::make(ghz3(), "A", "B");
  auto l = merging_ledger(inst, {"C"}, {});
  CHECK(l.a_b.ebits == doctest::Approx(1));
  CHECK(l.t_a.ebits == doctest::Approx(0).epsilon(1e-9));
  REQUIRE(l.t_parties.size() == 1);
  CHECK(l.t_parties[0].between == "C-A");
  CHECK(l.t_parties[0].ebits == doctest::Approx(0).epsilon(1e-9));
  CHECK(l.tc_parties.empty());
  CHECK(std::find(l.advisories.begin(), l.advisories.end(), "T^c is empty: nothing is merged to B") !=
        l.advisories.end());

  auto m = merging_ledger(inst, {}, {"C"});
  CHECK(m.a_b.ebits == doctest::Approx(1));
  CHECK(m.tc_b.ebits == doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("ledger chain rule against conditional entropies") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    PureState s = random_parties(2 + seed % 2, seed + 500);
    auto inst = AssistanceInstance::make(s, "A", "B");
    std::vector<std::string> t, tc;
    for (size_t i = 0; i < inst.helpers.size(); ++i) (((seed >> i) & 1) ? t : tc).push_back(inst.helpers[i]);
    auto l = merging_ledger(inst, t, tc);
    CHECK(l.a_b.ebits == doctest::Approx(entropy(s, regs_of(s, [&] {
                                          auto v = t;
                                          v.push_back("A");
                                          return v;
                                        }())))
                             .epsilon(1e-9));
    std::vector<std::string> prefix{"A"};
    double sum = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      double want = -cond_entropy(s, regs_of(s, {t[i]}), regs_of(s, prefix));
      CHECK(l.t_parties[i].ebits == doctest::Approx(want).epsilon(1e-9));
      CHECK(l.t_parties[i].consumed == (l.t_parties[i].ebits < 0));
      sum += want;
      prefix.push_back(t[i]);
    }
    CHECK(l.t_a.ebits == doctest::Approx(sum).epsilon(1e-9));
    CHECK(l.t_a.ebits == doctest::Approx(-cond_entropy(s, regs_of(s, t), regs_of(s, {"A"}))).epsilon(1e-9));
    prefix = {"B"};
    sum = 0;
    for (size_t i = 0; i < tc.size(); ++i) {
      sum += -cond_entropy(s, regs_of(s, {tc[i]}), regs_of(s, prefix));
      prefix.push_back(tc[i]);
    }
    CHECK(l.tc_b.ebits == doctest::Approx(sum).epsilon(1e-9));
  }
}

TEST_CASE("input validation") {
  auto inst = AssistanceInstance::make(ghz3(), "A", "B");
  CHECK_THROWS_WITH_AS(merging_ledger(inst, {"C"}, {"C"}), doctest::Contains("exactly once"), InputError);
  CHECK_THROWS_AS(merging_ledger(inst, {}, {}), InputError);
  CHECK_THROWS_AS(merging_ledger(inst, {"D"}, {}), InputError);
  CHECK_THROWS_AS(AssistanceInstance::make(ghz3(), "A", "A"), InputError);
  CHECK_THROWS_AS(AssistanceInstance::make(ghz3(), "A", "Z"), InputError);
  Vector bad = Vector::Zero(8);
  bad[0] = 1;
  bad[7] = 1;
  CHECK_THROWS_WITH(PureState({{"A", "a"}, {"B", "b"}, {"C", "c"}}, bad), doctest::Contains("not normalized"));
}

TEST_CASE("density input must be pure") {
  PureState g = ghz3();
  auto rho = DensityOperator::of(g, {"a", "b", "c"});
  auto inst = AssistanceInstance::from_density(rho, {"A", "B", "C"}, "A", "B");
  CHECK(eoa_regularized(inst).value == doctest::Approx(1).epsilon(1e-9));
  auto mixed = rho.partial_trace_keep({"a", "b"});
  CHECK_THROWS_AS(AssistanceInstance::from_density(mixed, {"A", "B"}, "A", "B"), InputError);
}

TEST_CASE("qubit guard") {
  std::vector<RegisterLabel> l{{"A", "a"}, {"B", "b"}};
  for (int i = 0; i < kEoaMaxQubits - 1; ++i) l.push_back({"C", "c" + std::to_string(i)});
  CHECK_THROWS_AS(eoa_regularized(AssistanceInstance::make(PureState(l), "A", "B")), InputError);
}
