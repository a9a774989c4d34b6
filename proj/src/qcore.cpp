#include "qnet/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace qnet {

namespace {

void check_unique(const std::vector<RegisterLabel>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l.name).second) throw InputError("duplicate register '" + l.name + "'");
  }
  if (labels.size() > kMaxQubits) throw InputError("too many qubits for dense simulation");
}

/// Amplitudes reshaped to (kept local index) x (rest index).
Matrix split(const Vector& amp, int n, const std::vector<int>& keep) {
  const int m = static_cast<int>(keep.size());
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
  }
  Matrix out = Matrix::Zero(Eigen::Index{1} << m, Eigen::Index{1} << rest.size());
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    if (amp[i] == Complex(0)) continue;
    Eigen::Index row = 0, col = 0;
    for (int j = 0; j < m; ++j) row |= ((i >> keep[j]) & 1) << (m - 1 - j);
    for (size_t j = 0; j < rest.size(); ++j) col |= ((i >> rest[j]) & 1) << j;
    out(row, col) = amp[i];
  }
  return out;
}

void check_subsystem(const std::vector<int>& idx) {
  auto sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("subsystem lists a register twice");
  }
}

}  // namespace

PureState::PureState() : amp_(Vector::Ones(1)) {}

PureState::PureState(std::vector<RegisterLabel> labels) : labels_(std::move(labels)) {
  check_unique(labels_);
  amp_ = Vector::Zero(Eigen::Index{1} << labels_.size());
  amp_[0] = 1;
}

PureState::PureState(std::vector<RegisterLabel> labels, Vector amplitudes)
    : labels_(std::move(labels)), amp_(std::move(amplitudes)) {
  check_unique(labels_);
  if (amp_.size() != (Eigen::Index{1} << labels_.size())) throw InputError("amplitude count does not match registers");
  if (std::abs(amp_.norm() - 1.0) > 1e-9) throw InputError("state is not normalized");
}

bool PureState::has(const std::string& name) const {
  return std::any_of(labels_.begin(), labels_.end(), [&](const RegisterLabel& l) { return l.name == name; });
}

int PureState::index_of(const std::string& name) const {
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].name == name) return static_cast<int>(i);
  }
  throw InputError("unknown register '" + name + "'");
}

std::vector<int> PureState::indices_of(const std::vector<std::string>& names) const {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(index_of(n));
  return out;
}

std::vector<std::string> PureState::registers_of(const std::string& party) const {
  std::vector<std::string> out;
  for (const auto& l : labels_) {
    if (l.party == party) out.push_back(l.name);
  }
  return out;
}

int PureState::add_register(RegisterLabel label) {
  if (has(label.name)) throw InputError("duplicate register '" + label.name + "'");
  if (labels_.size() + 1 > kMaxQubits) throw InputError("too many qubits for dense simulation");
  labels_.push_back(std::move(label));
  Vector bigger = Vector::Zero(amp_.size() * 2);
  bigger.head(amp_.size()) = amp_;
  amp_ = std::move(bigger);
  return num_qubits() - 1;
}

void PureState::move_register(const std::string& name, const std::string& new_owner) {
  labels_[index_of(name)].party = new_owner;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

void PureState::apply(const Matrix& u, const std::vector<int>& qubits) { apply_controlled(u, {}, qubits); }

void PureState::apply_controlled(const Matrix& u, const std::vector<int>& controls, const std::vector<int>& targets) {
  const int m = static_cast<int>(targets.size());
  if (u.rows() != (Eigen::Index{1} << m) || u.cols() != u.rows()) throw InputError("gate dimension mismatch");
  if (!is_unitary(u)) throw InputError("gate is not unitary");
  std::vector<int> all = targets;
  all.insert(all.end(), controls.begin(), controls.end());
  for (int q : all) {
    if (q < 0 || q >= num_qubits()) throw InputError("qubit index out of range");
  }
  check_subsystem(all);
  Eigen::Index target_mask = 0, control_mask = 0;
  for (int q : targets) target_mask |= Eigen::Index{1} << q;
  for (int q : controls) control_mask |= Eigen::Index{1} << q;
  const Eigen::Index dim = Eigen::Index{1} << m;
  std::vector<Eigen::Index> offset(dim);
  for (Eigen::Index l = 0; l < dim; ++l) {
    Eigen::Index off = 0;
    for (int j = 0; j < m; ++j) {
      if ((l >> (m - 1 - j)) & 1) off |= Eigen::Index{1} << targets[j];
    }
    offset[l] = off;
  }
  Vector local(dim);
  for (Eigen::Index base = 0; base < amp_.size(); ++base) {
    if (base & target_mask) continue;
    if ((base & control_mask) != control_mask) continue;
    for (Eigen::Index l = 0; l < dim; ++l) local[l] = amp_[base | offset[l]];
    Vector out = u * local;
    for (Eigen::Index l = 0; l < dim; ++l) amp_[base | offset[l]] = out[l];
  }
}

double PureState::probability_one(int qubit) const {
  double p = 0;
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    if ((i >> qubit) & 1) p += std::norm(amp_[i]);
  }
  return p;
}

double PureState::project(int qubit, int outcome) {
  double p = 0;
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    if (((i >> qubit) & 1) != outcome) {
      amp_[i] = 0;
    } else {
      p += std::norm(amp_[i]);
    }
  }
  if (p <= 0) throw Error("projection onto a zero-probability outcome");
  amp_ /= std::sqrt(p);
  return p;
}

Matrix PureState::reduced(const std::vector<int>& qubits) const {
  check_subsystem(qubits);
  Matrix m = split(amp_, num_qubits(), qubits);
  return m * m.adjoint();
}

DensityOperator::DensityOperator(std::vector<std::string> labels, Matrix rho)
    : labels_(std::move(labels)), rho_(std::move(rho)) {
  if (rho_.rows() != (Eigen::Index{1} << labels_.size()) || rho_.cols() != rho_.rows()) {
    throw InputError("density matrix dimension mismatch");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw InputError("density matrix is not Hermitian");
  if (std::abs(rho_.trace().real() - 1.0) > kNormTol * 1e3) throw InputError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
  if (es.eigenvalues().minCoeff() < -1e-10) throw InputError("density matrix is not positive");
}

DensityOperator DensityOperator::of(const PureState& state, const std::vector<std::string>& names) {
  return DensityOperator(names, state.reduced(state.indices_of(names)));
}

DensityOperator DensityOperator::partial_trace_keep(const std::vector<std::string>& keep) const {
  const int n = static_cast<int>(labels_.size());
  std::vector<int> kidx, tidx;
  for (const auto& k : keep) {
    auto it = std::find(labels_.begin(), labels_.end(), k);
    if (it == labels_.end()) throw InputError("unknown subsystem '" + k + "'");
    kidx.push_back(static_cast<int>(it - labels_.begin()));
  }
  check_subsystem(kidx);
  for (int q = 0; q < n; ++q) {
    if (std::find(kidx.begin(), kidx.end(), q) == kidx.end()) tidx.push_back(q);
  }
  // Labels map to bits with the first label most significant.
  auto bit = [n](Eigen::Index i, int q) { return (i >> (n - 1 - q)) & 1; };
  const int m = static_cast<int>(kidx.size());
  Matrix out = Matrix::Zero(Eigen::Index{1} << m, Eigen::Index{1} << m);
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho_.cols(); ++j) {
      bool same = true;
      for (int q : tidx) same = same && bit(i, q) == bit(j, q);
      if (!same) continue;
      Eigen::Index r = 0, c = 0;
      for (int a = 0; a < m; ++a) {
        r |= bit(i, kidx[a]) << (m - 1 - a);
        c |= bit(j, kidx[a]) << (m - 1 - a);
      }
      out(r, c) += rho_(i, j);
    }
  }
  return DensityOperator(keep, out);
}

double DensityOperator::entropy() const { return von_neumann_entropy(rho_); }

Matrix gate_matrix(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0, 1);
  Matrix m;
  if (name == "I") {
    m = Matrix::Identity(2, 2);
  } else if (name == "H") {
    m.resize(2, 2);
    m << r, r, r, -r;
  } else if (name == "X") {
    m.resize(2, 2);
    m << 0, 1, 1, 0;
  } else if (name == "Y") {
    m.resize(2, 2);
    m << 0, -i, i, 0;
  } else if (name == "Z") {
    m.resize(2, 2);
    m << 1, 0, 0, -1;
  } else if (name == "S") {
    m.resize(2, 2);
    m << 1, 0, 0, i;
  } else if (name == "T") {
    m.resize(2, 2);
    m << 1, 0, 0, std::exp(i * (M_PI / 4));
  } else if (name == "CNOT") {
    m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  } else if (name == "CZ") {
    m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
  } else if (name == "SWAP") {
    m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  } else {
    throw InputError("unknown gate '" + name + "'");
  }
  return m;
}

double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double l = std::clamp(es.eigenvalues()[k], 0.0, 1.0);
    if (l > 0) s -= l * std::log2(l);
  }
  return s;
}

double entropy(const PureState& s, const std::vector<std::string>& subsystem) {
  auto idx = s.indices_of(subsystem);
  check_subsystem(idx);
  if (idx.empty()) return 0;
  Matrix m = split(s.amplitudes(), s.num_qubits(), idx);
  // Same nonzero spectrum either way; use the smaller side.
  return m.rows() <= m.cols() ? von_neumann_entropy(m * m.adjoint()) : von_neumann_entropy(m.adjoint() * m);
}

namespace {
std::vector<std::string> join(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
}  // namespace

double mutual_info(const PureState& s, const std::vector<std::string>& x, const std::vector<std::string>& y) {
  return entropy(s, x) + entropy(s, y) - entropy(s, join(x, y));
}

double coherent_info(const PureState& s, const std::vector<std::string>& s1, const std::vector<std::string>& s2) {
  return entropy(s, s2) - entropy(s, join(s1, s2));
}

double cond_entropy(const PureState& s, const std::vector<std::string>& x, const std::vector<std::string>& y) {
  return entropy(s, join(x, y)) - entropy(s, y);
}

double entanglement_E(const PureState& s, const std::vector<std::string>& side) {
  if (std::abs(s.norm() - 1.0) > 1e-9) throw InputError("state is not normalized");
  return entropy(s, side);
}

double fidelity(const PureState& state, const PureState& target) {
  if (state.amplitudes().size() != target.amplitudes().size()) throw InputError("dimension mismatch");
  return std::norm(target.amplitudes().dot(state.amplitudes()));
}

double fidelity(const Matrix& rho, const Vector& psi) {
  if (rho.rows() != psi.size()) throw InputError("dimension mismatch");
  return std::real(psi.dot(rho * psi));
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) throw InputError("dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho - sigma, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

PureState random_state(std::vector<RegisterLabel> labels, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vector amp(Eigen::Index{1} << labels.size());
  for (Eigen::Index i = 0; i < amp.size(); ++i) amp[i] = Complex(g(rng), g(rng));
  amp /= amp.norm();
  return PureState(std::move(labels), amp);
}

Matrix random_unitary_2x2(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(2, 2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(2, 2);
}

}  // namespace qnet
