#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnet/rational.hpp"

namespace qnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kUnitaryTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kEntropyTol = 1e-9;
constexpr int kMaxQubits = 24;

/// One qubit register. Qubit q of a state is bit q of the amplitude index.
struct RegisterLabel {
  std::string party;
  std::string name;
};

/// Dense pure state over uniquely named single-qubit registers.
class PureState {
 public:
  PureState();
  /// |0...0> over the given registers.
  explicit PureState(std::vector<RegisterLabel> labels);
  PureState(std::vector<RegisterLabel> labels, Vector amplitudes);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  const std::vector<RegisterLabel>& labels() const { return labels_; }
  const Vector& amplitudes() const { return amp_; }

  bool has(const std::string& name) const;
  int index_of(const std::string& name) const;
  std::vector<int> indices_of(const std::vector<std::string>& names) const;
  const std::string& owner(const std::string& name) const { return labels_[index_of(name)].party; }
  std::vector<std::string> registers_of(const std::string& party) const;

  /// Appends a fresh |0> register; returns its qubit index.
  int add_register(RegisterLabel label);
  void move_register(const std::string& name, const std::string& new_owner);

  /// Applies a 2^m x 2^m unitary; qubits[0] is the most significant bit of
  /// the gate's local index.
  void apply(const Matrix& u, const std::vector<int>& qubits);
  void apply(const Matrix& u, const std::vector<std::string>& names) { apply(u, indices_of(names)); }
  /// Applies `u` on `targets` on the branch where every control qubit is 1.
  void apply_controlled(const Matrix& u, const std::vector<int>& controls, const std::vector<int>& targets);

  /// Projects qubit onto |outcome> and renormalizes; returns the probability.
  double project(int qubit, int outcome);
  /// Probability of reading 1 on a qubit.
  double probability_one(int qubit) const;

  /// rho on the given qubits (in listed order, first = most significant).
  Matrix reduced(const std::vector<int>& qubits) const;
  double norm() const { return amp_.norm(); }

 private:
  std::vector<RegisterLabel> labels_;
  Vector amp_;
};

/// Mixed state over labelled subsystems (one qubit per label).
class DensityOperator {
 public:
  DensityOperator(std::vector<std::string> labels, Matrix rho);
  static DensityOperator of(const PureState& state, const std::vector<std::string>& names);

  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& matrix() const { return rho_; }
  DensityOperator partial_trace_keep(const std::vector<std::string>& keep) const;
  double entropy() const;

 private:
  std::vector<std::string> labels_;
  Matrix rho_;
};

/// Named gates: I, H, X, Y, Z, S, T, CNOT, CZ, SWAP.
Matrix gate_matrix(const std::string& name);
bool is_unitary(const Matrix& u, double tol = kUnitaryTol);

/// -Tr rho log2 rho with eigenvalues clamped to [0, 1].
double von_neumann_entropy(const Matrix& rho);

double entropy(const PureState& s, const std::vector<std::string>& subsystem);
double mutual_info(const PureState& s, const std::vector<std::string>& x, const std::vector<std::string>& y);
/// I(S1 > S2) = S(S2) - S(S1 S2)
double coherent_info(const PureState& s, const std::vector<std::string>& s1, const std::vector<std::string>& s2);
/// S(X|Y) = S(XY) - S(Y)
double cond_entropy(const PureState& s, const std::vector<std::string>& x, const std::vector<std::string>& y);
/// S of one side of a pure state; throws if `s` is not normalized.
double entanglement_E(const PureState& s, const std::vector<std::string>& side);

/// |<target|state>|^2 over identical register lists.
double fidelity(const PureState& state, const PureState& target);
/// <psi| rho |psi>
double fidelity(const Matrix& rho, const Vector& psi);
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// Haar-like random pure state (normalized complex Gaussian amplitudes).
PureState random_state(std::vector<RegisterLabel> labels, uint64_t seed);
/// Random 2x2 unitary.
Matrix random_unitary_2x2(uint64_t seed);

}  // namespace qnet
