#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qnet/qcore.hpp"

using namespace qnet;

namespace {

std::vector<RegisterLabel> regs(int n) {
  std::vector<RegisterLabel> out;
  for (int i = 0; i < n; ++i) out.push_back({"P" + std::to_string(i), "q" + std::to_string(i)});
  return out;
}

PureState bell() {
  PureState s(regs(2));
  s.apply(gate_matrix("H"), std::vector<int>{0});
  s.apply(gate_matrix("CNOT"), std::vector<int>{0, 1});
  return s;
}

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

// Reduced state on one qubit by explicit summation over the amplitudes.
Matrix single_qubit_rho(const PureState& s, int q) {
  Matrix rho = Matrix::Zero(2, 2);
  const auto& a = s.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      if ((i & ~(Eigen::Index(1) << q)) != (j & ~(Eigen::Index(1) << q))) continue;
      rho((i >> q) & 1, (j >> q) & 1) += a[i] * std::conj(a[j]);
    }
  }
  return rho;
}

}  // namespace

TEST_CASE("named gates are unitary") {
  for (auto g : {"I", "H", "X", "Y", "Z", "S", "T", "CNOT", "CZ", "SWAP"}) {
    CAPTURE(g);
    CHECK(is_unitary(gate_matrix(g)));
  }
  CHECK_FALSE(is_unitary(Matrix::Ones(2, 2)));
  CHECK(is_unitary(random_unitary_2x2(7)));
  CHECK_THROWS(gate_matrix("FOO"));
}

TEST_CASE("bit order: qubit q is bit q of the index") {
  PureState s(regs(3));
  s.apply(gate_matrix("X"), std::vector<int>{1});
  CHECK(std::abs(s.amplitudes()[2] - Complex(1)) < 1e-12);
  CHECK(s.probability_one(1) == doctest::Approx(1));
  CHECK(s.probability_one(0) == doctest::Approx(0));
  // CNOT control is the first listed qubit.
  s.apply(gate_matrix("CNOT"), std::vector<int>{1, 2});
  CHECK(std::abs(s.amplitudes()[6] - Complex(1)) < 1e-12);
}

TEST_CASE("bell pair entropies") {
  PureState b = bell();
  CHECK(entropy(b, {"q0"}) == doctest::Approx(1).epsilon(1e-12));
  CHECK(entropy(b, {"q0", "q1"}) == doctest::Approx(0).epsilon(1e-12));
  CHECK(mutual_info(b, {"q0"}, {"q1"}) == doctest::Approx(2));
  CHECK(coherent_info(b, {"q0"}, {"q1"}) == doctest::Approx(1));
  CHECK(cond_entropy(b, {"q0"}, {"q1"}) == doctest::Approx(-1));
  CHECK(entanglement_E(b, {"q0"}) == doctest::Approx(1));
  CHECK(entropy(PureState(regs(2)), {"q0"}) == doctest::Approx(0));
}

TEST_CASE("W state single-qubit entropy") {
  Vector a = Vector::Zero(8);
  a[1] = a[2] = a[4] = 1 / std::sqrt(3.0);
  PureState w(regs(3), a);
  for (int q = 0; q < 3; ++q) {
    CHECK(entropy(w, {"q" + std::to_string(q)}) == doctest::Approx(h2(1.0 / 3)));
  }
}

TEST_CASE("reduced states match explicit summation") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    PureState s = random_state(regs(4), seed);
    for (int q = 0; q < 4; ++q) {
      Matrix want = single_qubit_rho(s, q);
      Matrix got = s.reduced({q});
      CHECK((want - got).norm() < 1e-12);
      auto d = DensityOperator::of(s, {"q" + std::to_string(q)});
      CHECK((d.matrix() - want).norm() < 1e-12);
    }
  }
}

TEST_CASE("complementary entropies of a pure state agree") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    PureState s = random_state(regs(5), seed);
    CHECK(entropy(s, {"q0", "q3"}) == doctest::Approx(entropy(s, {"q1", "q2", "q4"})).epsilon(1e-9));
    CHECK(entropy(s, {"q2"}) == doctest::Approx(entropy(s, {"q0", "q1", "q3", "q4"})).epsilon(1e-9));
  }
}

TEST_CASE("strong subadditivity and Araki-Lieb on random states") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    PureState s = random_state(regs(4), seed * 13);
    double ab = entropy(s, {"q0", "q1"}), bc = entropy(s, {"q1", "q2"}), b = entropy(s, {"q1"}),
           abc = entropy(s, {"q0", "q1", "q2"});
    CHECK(ab + bc >= abc + b - 1e-9);
    double a = entropy(s, {"q0"});
    CHECK(ab >= std::abs(a - b) - 1e-9);
    CHECK(ab <= a + b + 1e-9);
    CHECK(mutual_info(s, {"q0"}, {"q1", "q2"}) >= -1e-9);
  }
}

TEST_CASE("local unitaries leave entropies unchanged") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    PureState s = random_state(regs(4), seed);
    double before = entropy(s, {"q0", "q1"});
    s.apply(random_unitary_2x2(seed + 100), std::vector<int>{0});
    s.apply(random_unitary_2x2(seed + 200), std::vector<int>{3});
    s.apply(gate_matrix("CNOT"), std::vector<int>{0, 1});
    CHECK(entropy(s, {"q0", "q1"}) == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("fidelity and trace distance") {
  PureState b = bell();
  CHECK(fidelity(b, b) == doctest::Approx(1));
  PureState z(regs(2));
  CHECK(fidelity(z, b) == doctest::Approx(0.5));
  Matrix rho = b.reduced({0, 1});
  Vector psi = b.amplitudes();
  CHECK(fidelity(rho, psi) == doctest::Approx(1));
  Matrix mixed = Matrix::Identity(2, 2) / 2.0;
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1;
  CHECK(trace_distance(mixed, zero) == doctest::Approx(0.5));
  CHECK(trace_distance(zero, zero) == doctest::Approx(0));
}

TEST_CASE("projective measurement") {
  PureState b = bell();
  double p = b.project(0, 1);
  CHECK(p == doctest::Approx(0.5));
  CHECK(b.probability_one(1) == doctest::Approx(1));
  CHECK(b.norm() == doctest::Approx(1));
}

TEST_CASE("partial trace keeps requested order") {
  PureState s(regs(2));
  s.apply(gate_matrix("X"), std::vector<int>{1});
  auto d = DensityOperator::of(s, {"q0", "q1"});
  // Order q1, q0: q1 is the most significant bit, value 1, so index 2.
  auto swapped = d.partial_trace_keep({"q1", "q0"});
  CHECK(std::abs(swapped.matrix()(2, 2) - Complex(1)) < 1e-12);
  auto kept = d.partial_trace_keep({"q1"});
  CHECK(std::abs(kept.matrix()(1, 1) - Complex(1)) < 1e-12);
  CHECK(kept.entropy() == doctest::Approx(0));
}

TEST_CASE("density operator validation") {
  CHECK_THROWS(DensityOperator({"a"}, Matrix::Identity(4, 4) / 4.0));
  Matrix not_herm = Matrix::Zero(2, 2);
  not_herm(0, 0) = 1;
  not_herm(0, 1) = 1;
  CHECK_THROWS(DensityOperator({"a"}, not_herm));
  CHECK_THROWS(DensityOperator({"a"}, Matrix::Identity(2, 2)));
  CHECK_NOTHROW(DensityOperator({"a"}, Matrix::Identity(2, 2) / 2.0));
  CHECK(DensityOperator({"a"}, Matrix::Identity(2, 2) / 2.0).entropy() == doctest::Approx(1));
}

TEST_CASE("register bookkeeping") {
  PureState s(regs(2));
  CHECK(s.has("q1"));
  CHECK_FALSE(s.has("zz"));
  CHECK_THROWS(s.index_of("zz"));
  int q = s.add_register({"P0", "fresh"});
  CHECK(q == 2);
  CHECK(s.registers_of("P0") == std::vector<std::string>{"q0", "fresh"});
  s.move_register("fresh", "P1");
  CHECK(s.owner("fresh") == "P1");
  CHECK_THROWS(s.add_register({"P0", "q0"}));
  Vector bad = Vector::Zero(4);
  bad[0] = 2;
  CHECK_THROWS(entanglement_E(PureState(regs(2), bad), {"q0"}));
}
