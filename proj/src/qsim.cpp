#include "qnet/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace qnet {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Alloc: return "alloc";
    case StepKind::CreateEbit: return "create_ebit";
    case StepKind::LocalOp: return "local_op";
    case StepKind::SendQuantum: return "send_quantum";
    case StepKind::SendClassical: return "send_classical";
    case StepKind::Measure: return "measure";
    case StepKind::ClassicallyControlled: return "classically_controlled";
    case StepKind::CopyClassical: return "copy_classical";
    case StepKind::Discard: return "discard";
    case StepKind::Checkpoint: return "checkpoint";
  }
  return "local_op";
}

StepKind parse_step_kind(std::string_view text) {
  for (auto k : {StepKind::Alloc, StepKind::CreateEbit, StepKind::LocalOp, StepKind::SendQuantum,
                 StepKind::SendClassical, StepKind::Measure, StepKind::ClassicallyControlled,
                 StepKind::CopyClassical, StepKind::Discard, StepKind::Checkpoint}) {
    if (to_string(k) == text) return k;
  }
  throw InputError("unknown step kind '" + std::string(text) + "'");
}

std::map<std::pair<std::string, int>, int> Ledger::usage() const {
  std::map<std::pair<std::string, int>, int> out;
  for (const auto& q : quantum) ++out[{q.edge, q.call}];
  return out;
}

std::vector<std::string> Ledger::payload(const std::vector<std::string>& edges) const {
  std::vector<std::string> out;
  for (const auto& q : quantum) {
    if (std::find(edges.begin(), edges.end(), q.edge) == edges.end()) continue;
    if (std::find(out.begin(), out.end(), q.reg) == out.end()) out.push_back(q.reg);
  }
  return out;
}

std::string reference_name(const std::string& input) { return "ref:" + input; }

bool classical_permitted(const Network& net, Scenario scenario, int from, int to) {
  if (from == to) return true;
  switch (scenario) {
    case Scenario::Unassisted:
    case Scenario::EntAssisted: return false;
    case Scenario::ForwardCC: return net.reachable(from, to);
    case Scenario::BackwardCC: return net.reachable(to, from);
    case Scenario::TwoWayCC: return net.reachable(from, to) || net.reachable(to, from);
  }
  return false;
}

namespace {

class Runner {
 public:
  Runner(const Network& net, Scenario scenario, const ProtocolScript& script, const RunOptions& options)
      : net_(net), scenario_(scenario), script_(script), options_(options), rng_(options.seed) {
    if (script.calls < 1) throw InputError("script needs at least one network call");
    result_.ledger.calls = script.calls;
    for (const auto& m : script.messages) {
      if (m.pair < 0 || m.pair >= net.num_pairs()) throw InputError("message pair index out of range");
      std::string sender = net.vertex_id(net.pairs()[m.pair].sender);
      std::string ref = reference_name(m.input);
      add(ref, kReferenceParty, false, true);
      add(m.input, sender, m.classical, false);
      int r = state_.index_of(ref), q = state_.index_of(m.input);
      state_.apply(gate_matrix("H"), std::vector<int>{r});
      state_.apply(gate_matrix("CNOT"), std::vector<int>{r, q});
    }
    result_.initial = state_;
  }

  RunResult run() {
    for (size_t i = 0; i < script_.steps.size(); ++i) {
      try {
        execute(script_.steps[i]);
      } catch (const ProtocolError& e) {
        throw ProtocolError("step " + std::to_string(i + 1) + " (" + to_string(script_.steps[i].kind) +
                            "): " + e.what());
      }
    }
    result_.final_state = state_;
    result_.registers = regs_;
    return std::move(result_);
  }

 private:
  void add(const std::string& name, const std::string& party, bool classical, bool reference) {
    if (regs_.count(name)) throw ProtocolError("register '" + name + "' already exists");
    state_.add_register({party, name});
    regs_[name] = {classical, false, reference};
  }

  void check_party(const std::string& party) const {
    if (!net_.find_vertex(party)) throw ProtocolError("unknown party '" + party + "'");
  }

  /// Live register owned by `party`.
  RegisterInfo& owned(const std::string& name, const std::string& party) {
    auto it = regs_.find(name);
    if (it == regs_.end()) throw ProtocolError("unknown register '" + name + "'");
    if (it->second.discarded) throw ProtocolError("register '" + name + "' was discarded");
    if (it->second.reference) throw ProtocolError("reference register '" + name + "' is not accessible");
    if (state_.owner(name) != party) {
      throw ProtocolError("party " + party + " does not own register '" + name + "' (held by " +
                          state_.owner(name) + ")");
    }
    return it->second;
  }

  Matrix matrix_of(const Step& s) const {
    if (s.gate == "unitary") {
      if (!s.matrix) throw ProtocolError("unitary step without a matrix");
      if (!is_unitary(*s.matrix)) throw ProtocolError("matrix is not unitary");
      return *s.matrix;
    }
    return gate_matrix(s.gate);
  }

  void execute(const Step& s) {
    switch (s.kind) {
      case StepKind::Alloc:
        check_party(s.party);
        for (const auto& r : s.registers) add(r, s.party, s.classical, false);
        break;
      case StepKind::CreateEbit: {
        check_party(s.party);
        std::string other = s.party2.empty() ? s.party : s.party2;
        check_party(other);
        if (s.registers.size() != 2) throw ProtocolError("create_ebit needs two registers");
        if (other != s.party && scenario_ != Scenario::EntAssisted) {
          throw ProtocolError("free ebits between " + s.party + " and " + other +
                              " need entanglement assistance");
        }
        add(s.registers[0], s.party, false, false);
        add(s.registers[1], other, false, false);
        state_.apply(gate_matrix("H"), std::vector<std::string>{s.registers[0]});
        state_.apply(gate_matrix("CNOT"), s.registers);
        if (other != s.party) result_.ledger.ebits.push_back({s.party, other});
        break;
      }
      case StepKind::LocalOp:
        for (const auto& r : s.registers) {
          if (owned(r, s.party).classical) throw ProtocolError("local_op on classical register '" + r + "'");
        }
        state_.apply(matrix_of(s), s.registers);
        break;
      case StepKind::SendQuantum: {
        auto e = net_.find_edge(s.edge);
        if (!e) throw ProtocolError("unknown channel '" + s.edge + "'");
        const Edge& edge = net_.edges()[*e];
        if (s.call < 0 || s.call >= script_.calls) throw ProtocolError("call index out of range");
        if (s.registers.size() != 1) throw ProtocolError("send_quantum carries exactly one register");
        owned(s.registers[0], net_.vertex_id(edge.tail));
        int& used = uses_[{s.edge, s.call}];
        ++used;
        if (!edge.capacity.is_unlimited() && Rational(used) > edge.capacity.value()) {
          throw ProtocolError("capacity exceeded on channel " + s.edge + " in call " + std::to_string(s.call));
        }
        state_.move_register(s.registers[0], net_.vertex_id(edge.head));
        result_.ledger.quantum.push_back({s.edge, s.call, s.registers[0]});
        break;
      }
      case StepKind::SendClassical: {
        check_party(s.from);
        check_party(s.to);
        for (const auto& r : s.registers) {
          if (!owned(r, s.from).classical) throw ProtocolError("send_classical of quantum register '" + r + "'");
        }
        if (!classical_permitted(net_, scenario_, net_.vertex_index(s.from), net_.vertex_index(s.to))) {
          throw ProtocolError("classical message " + s.from + " -> " + s.to + " not permitted under " +
                              to_string(scenario_));
        }
        for (const auto& r : s.registers) {
          state_.move_register(r, s.to);
          result_.ledger.classical.push_back({s.from, s.to, r});
        }
        break;
      }
      case StepKind::Measure:
        for (const auto& r : s.registers) {
          auto& info = owned(r, s.party);
          if (info.classical) throw ProtocolError("register '" + r + "' is already classical");
          if (s.basis == "X") {
            state_.apply(gate_matrix("H"), std::vector<std::string>{r});
          } else if (s.basis != "Z") {
            throw ProtocolError("unknown basis '" + s.basis + "'");
          }
          info.classical = true;
          if (options_.sample) {
            int q = state_.index_of(r);
            double p1 = state_.probability_one(q);
            int outcome = std::uniform_real_distribution<double>(0, 1)(rng_) < p1 ? 1 : 0;
            state_.project(q, outcome);
          }
        }
        break;
      case StepKind::ClassicallyControlled: {
        if (!owned(s.control, s.party).classical) throw ProtocolError("control '" + s.control + "' is not classical");
        for (const auto& r : s.registers) {
          if (owned(r, s.party).classical) throw ProtocolError("controlled gate on classical register '" + r + "'");
        }
        state_.apply_controlled(matrix_of(s), {state_.index_of(s.control)}, state_.indices_of(s.registers));
        break;
      }
      case StepKind::CopyClassical: {
        if (!owned(s.control, s.party).classical) throw ProtocolError("copy source '" + s.control + "' is not classical");
        for (const auto& r : s.registers) {
          add(r, s.party, true, false);
          state_.apply(gate_matrix("CNOT"), std::vector<std::string>{s.control, r});
        }
        break;
      }
      case StepKind::Discard:
        for (const auto& r : s.registers) owned(r, s.party).discarded = true;
        break;
      case StepKind::Checkpoint:
        result_.checkpoints.push_back({s.label, state_, regs_});
        break;
    }
  }

  const Network& net_;
  Scenario scenario_;
  const ProtocolScript& script_;
  RunOptions options_;
  std::mt19937_64 rng_;
  PureState state_;
  std::map<std::string, RegisterInfo> regs_;
  std::map<std::pair<std::string, int>, int> uses_;
  RunResult result_;
};

}  // namespace

RunResult run_protocol(const Network& net, Scenario scenario, const ProtocolScript& script, const RunOptions& options) {
  return Runner(net, scenario, script, options).run();
}

VerifyReport verify_protocol(const Network& net, Scenario scenario, const ProtocolScript& script,
                             const std::optional<RationalVector>& expected_rates, const RunOptions& options) {
  RunResult run = run_protocol(net, scenario, script, options);
  const int k = net.num_pairs();
  VerifyReport report;
  report.rates.assign(k, Rational(0));
  report.classical_rates.assign(k, Rational(0));
  report.ledger = run.ledger;
  report.passed = true;
  const Vector phi = [] {
    Vector v = Vector::Zero(4);
    v[0] = v[3] = 1 / std::sqrt(2.0);
    return v;
  }();
  for (const auto& m : script.messages) {
    const std::string receiver = net.vertex_id(net.pairs()[m.pair].receiver);
    auto it = run.registers.find(m.output);
    if (it == run.registers.end() || it->second.discarded || run.final_state.owner(m.output) != receiver) {
      throw ProtocolError("message '" + m.input + "' not delivered to receiver " + receiver);
    }
    const PureState& st = run.final_state;
    Matrix rho = st.reduced({st.index_of(reference_name(m.input)), st.index_of(m.output)});
    double f = m.classical ? std::real(rho(0, 0) + rho(3, 3)) : fidelity(rho, phi);
    report.messages.push_back({m.pair, m.input, m.output, m.classical, f});
    if (f < 1 - kFidelityTol) report.passed = false;
    Rational per_call = Rational(1, script.calls);
    report.rates[m.pair] += per_call;
    if (m.classical) report.classical_rates[m.pair] += per_call;
  }
  if (expected_rates) {
    report.expected_rates = expected_rates;
    report.rates_match = *expected_rates == report.rates;
    if (!report.rates_match) report.passed = false;
  }
  return report;
}

void append_teleport(std::vector<Step>& steps, const std::string& from, const std::string& to,
                     const std::string& msg, const std::string& from_half, const std::string& to_half) {
  Step s;
  s.kind = StepKind::LocalOp;
  s.party = from;
  s.gate = "CNOT";
  s.registers = {msg, from_half};
  steps.push_back(s);
  s.gate = "H";
  s.registers = {msg};
  steps.push_back(s);
  Step m;
  m.kind = StepKind::Measure;
  m.party = from;
  m.registers = {msg, from_half};
  steps.push_back(m);
  for (const auto& bit : {msg, from_half}) {
    Step c;
    c.kind = StepKind::SendClassical;
    c.from = from;
    c.to = to;
    c.registers = {bit};
    steps.push_back(c);
  }
  Step x;
  x.kind = StepKind::ClassicallyControlled;
  x.party = to;
  x.control = from_half;
  x.gate = "X";
  x.registers = {to_half};
  steps.push_back(x);
  Step z = x;
  z.control = msg;
  z.gate = "Z";
  steps.push_back(z);
}

void append_superdense(std::vector<Step>& steps, const std::string& from, const std::string& to,
                       const std::string& edge, int call, const std::string& c1, const std::string& c2,
                       const std::string& from_half, const std::string& to_half) {
  Step x;
  x.kind = StepKind::ClassicallyControlled;
  x.party = from;
  x.control = c2;
  x.gate = "X";
  x.registers = {from_half};
  steps.push_back(x);
  Step z = x;
  z.control = c1;
  z.gate = "Z";
  steps.push_back(z);
  Step send;
  send.kind = StepKind::SendQuantum;
  send.edge = edge;
  send.call = call;
  send.registers = {from_half};
  steps.push_back(send);
  Step op;
  op.kind = StepKind::LocalOp;
  op.party = to;
  op.gate = "CNOT";
  op.registers = {from_half, to_half};
  steps.push_back(op);
  op.gate = "H";
  op.registers = {from_half};
  steps.push_back(op);
  Step m;
  m.kind = StepKind::Measure;
  m.party = to;
  m.registers = {from_half, to_half};
  steps.push_back(m);
}

}  // namespace qnet
