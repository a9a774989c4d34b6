#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnet/netmodel.hpp"
#include "qnet/qcore.hpp"

namespace qnet {

/// Raised when a script breaks a resource or ownership rule.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

enum class StepKind {
  Alloc,
  CreateEbit,
  LocalOp,
  SendQuantum,
  SendClassical,
  Measure,
  ClassicallyControlled,
  CopyClassical,
  Discard,
  Checkpoint,
};
std::string to_string(StepKind k);
StepKind parse_step_kind(std::string_view text);

struct Step {
  StepKind kind = StepKind::LocalOp;
  /// Acting party (alloc, create_ebit, local_op, measure, controlled, copy, discard).
  std::string party;
  /// Holder of the second ebit half; empty means `party`.
  std::string party2;
  std::vector<std::string> registers;
  /// alloc: create classical registers.
  bool classical = false;
  /// Gate name, or "unitary" with `matrix`.
  std::string gate;
  std::optional<Matrix> matrix;
  std::string edge;
  int call = 0;
  std::string from;
  std::string to;
  /// Classical control register (classically_controlled) or copy source.
  std::string control;
  /// "Z" (default) or "X" for measure.
  std::string basis = "Z";
  std::string label;
};

/// A message: `input` starts at the pair's sender, maximally entangled with
/// a reference register, and must end as `output` at the pair's receiver.
struct MessageSpec {
  int pair = 0;
  std::string input;
  std::string output;
  bool classical = false;
};

struct ProtocolScript {
  std::string name;
  std::string description;
  int calls = 1;
  std::vector<MessageSpec> messages;
  std::vector<Step> steps;
};

struct QuantumUse {
  std::string edge;
  int call = 0;
  std::string reg;
};
struct ClassicalSend {
  std::string from;
  std::string to;
  std::string reg;
};
struct EbitRecord {
  std::string a;
  std::string b;
};

struct Ledger {
  int calls = 1;
  std::vector<QuantumUse> quantum;
  std::vector<ClassicalSend> classical;
  std::vector<EbitRecord> ebits;

  /// Uses per (edge, call).
  std::map<std::pair<std::string, int>, int> usage() const;
  /// Registers that crossed any of the given edges.
  std::vector<std::string> payload(const std::vector<std::string>& edges) const;
};

struct RegisterInfo {
  bool classical = false;
  bool discarded = false;
  bool reference = false;
};

struct Snapshot {
  std::string label;
  PureState state;
  std::map<std::string, RegisterInfo> registers;
};

struct RunOptions {
  /// Sample measurement outcomes instead of deferring them.
  bool sample = false;
  uint64_t seed = 1;
};

struct RunResult {
  PureState initial;
  PureState final_state;
  Ledger ledger;
  std::map<std::string, RegisterInfo> registers;
  std::vector<Snapshot> checkpoints;
};

/// Reference register paired with a message input.
std::string reference_name(const std::string& input);
constexpr const char* kReferenceParty = "R";

RunResult run_protocol(const Network& net, Scenario scenario, const ProtocolScript& script,
                       const RunOptions& options = {});

/// True when `from` may send a free classical message to `to`.
bool classical_permitted(const Network& net, Scenario scenario, int from, int to);

struct MessageReport {
  int pair = 0;
  std::string input;
  std::string output;
  bool classical = false;
  double fidelity = 0;
};

struct VerifyReport {
  std::vector<MessageReport> messages;
  /// Messages (of either kind) per call, per pair.
  RationalVector rates;
  /// Classical messages only, per call, per pair.
  RationalVector classical_rates;
  bool passed = false;
  std::optional<RationalVector> expected_rates;
  bool rates_match = true;
  Ledger ledger;
};

constexpr double kFidelityTol = 1e-9;

VerifyReport verify_protocol(const Network& net, Scenario scenario, const ProtocolScript& script,
                             const std::optional<RationalVector>& expected_rates = {},
                             const RunOptions& options = {});

// --------------------------------------------------------------- macros

/// Appends teleportation of `msg` from `from` to `to` over the ebit halves
/// (`from_half` at `from`, `to_half` at `to`). The two measured registers
/// travel as the cbits. After the macro `to_half` holds the message.
void append_teleport(std::vector<Step>& steps, const std::string& from, const std::string& to,
                     const std::string& msg, const std::string& from_half, const std::string& to_half);

/// Appends superdense coding of classical registers `c1`, `c2` at `from`
/// into `from_half`, a send over `edge`, and decoding at `to` into
/// (`from_half`, `to_half`) = (c1, c2).
void append_superdense(std::vector<Step>& steps, const std::string& from, const std::string& to,
                       const std::string& edge, int call, const std::string& c1, const std::string& c2,
                       const std::string& from_half, const std::string& to_half);

// --------------------------------------------------------------- builtins

struct BuiltinScript {
  ProtocolScript script;
  /// "builtin:<name>" or an inline network.
  Network network;
  Scenario scenario;
  RationalVector expected_rates;
};

const std::vector<std::string>& builtin_script_names();
BuiltinScript builtin_script(std::string_view name);

// --------------------------------------------------------------- audit

struct AuditReport {
  double secret_entropy = 0;  // S(secret) = S(R)
  double significant_entropy = 0;  // S(S_s)
  double gamma = 0;  // I(S_u : R)
  double eps_prime = 0;  // I(R > secret) - I(R > S_s S_u)
  double bound = 0;  // S(secret) - (eps' + gamma) / 2
  bool holds = false;
};

/// Entropic significant-share check on a pure snapshot. The four register
/// groups must partition every register of the snapshot.
AuditReport secret_sharing_audit(const PureState& snapshot, const std::vector<std::string>& references,
                                 const std::vector<std::string>& significant,
                                 const std::vector<std::string>& unauthorized,
                                 const std::vector<std::string>& rest);

/// Audit of a named checkpoint with shares taken from edge payloads: S_s is
/// what crossed `significant_edges`, S_u what crossed `unauthorized_edges`
/// (minus S_s), references are R, everything else is rest.
AuditReport audit_checkpoint(const RunResult& run, std::string_view label,
                             const std::vector<std::string>& significant_edges,
                             const std::vector<std::string>& unauthorized_edges);

// --------------------------------------------------------------- GF(2)

/// XOR of symbols: source bit names or edge ids (the symbol an edge carried).
using LinearForm = std::vector<std::string>;

struct ClassicalScheme {
  /// source bit -> vertex holding it
  std::vector<std::pair<std::string, std::string>> sources;
  std::vector<std::pair<std::string, LinearForm>> edge_forms;
  struct Decoder {
    std::string receiver;
    std::string bit;
    LinearForm form;
  };
  std::vector<Decoder> decoders;
};

struct DecodeResult {
  std::string receiver;
  std::string bit;
  bool correct = false;
  int failures = 0;  // inputs where the decoded value is wrong
};

struct ClassicalResult {
  std::vector<DecodeResult> decoders;
  int inputs = 0;
  bool all_correct = false;
};

ClassicalResult run_classical_linear_protocol(const Network& net, const ClassicalScheme& scheme);

/// XOR coding scheme for the butterfly.
ClassicalScheme butterfly_xor_scheme();

}  // namespace qnet
