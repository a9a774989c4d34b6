#include <algorithm>

#include "qnet/qsim.hpp"

namespace qnet {

namespace {

Step send(const std::string& edge, int call, const std::string& reg) {
  Step s;
  s.kind = StepKind::SendQuantum;
  s.edge = edge;
  s.call = call;
  s.registers = {reg};
  return s;
}

/// Sends `reg` hop by hop along the vertex chain in one call.
void route(std::vector<Step>& steps, const std::vector<std::string>& chain, int call, const std::string& reg) {
  for (size_t i = 0; i + 1 < chain.size(); ++i) steps.push_back(send(chain[i] + "->" + chain[i + 1], call, reg));
}

Step ebit(const std::string& party, const std::string& a, const std::string& b, const std::string& party2 = {}) {
  Step s;
  s.kind = StepKind::CreateEbit;
  s.party = party;
  s.party2 = party2;
  s.registers = {a, b};
  return s;
}

Step checkpoint(const std::string& label) {
  Step s;
  s.kind = StepKind::Checkpoint;
  s.label = label;
  return s;
}

Network single_edge(const std::string& name, const std::string& tail, const std::string& head) {
  return Network::build({{"A1", Role::sender(0)}, {"B1", Role::receiver(0)}},
                        {{tail + "->" + head, tail, head, Capacity(1)}}, {}, name);
}

BuiltinScript butterfly_unassisted() {
  ProtocolScript p{"butterfly_unassisted", "route one qubit A1 -> C1 -> C2 -> B1", 1, {{0, "m1", "m1", false}}, {}};
  route(p.steps, {"A1", "C1", "C2", "B1"}, 0, "m1");
  return {p, builtin_network("butterfly"), Scenario::Unassisted, {1, 0}};
}

BuiltinScript butterfly_timeshare() {
  ProtocolScript p{"butterfly_timeshare", "two calls: pair 1 then pair 2 through C1 -> C2", 2,
                   {{0, "m1", "m1", false}, {1, "m2", "m2", false}}, {}};
  route(p.steps, {"A1", "C1", "C2", "B1"}, 0, "m1");
  route(p.steps, {"A2", "C1", "C2", "B2"}, 1, "m2");
  p.steps.push_back(checkpoint("delivered"));
  return {p, builtin_network("butterfly"), Scenario::Unassisted, {Rational(1, 2), Rational(1, 2)}};
}

/// Two back-assisted paths for pair 2: A2 -> C1 <- A1 -> B2 and A2 -> B1 <- C2 -> B2.
BuiltinScript butterfly_back(bool broken) {
  ProtocolScript p{broken ? "butterfly_back_broken" : "butterfly_back_02",
                   broken ? "back-assisted (0,2) protocol with one teleportation correction removed"
                          : "rate pair (0,2) by reversing A1->C1 and C2->B1 with teleportation",
                   1,
                   {{1, "m2a", "t1b", false}, {1, "m2b", "t2b", false}},
                   {}};
  auto& s = p.steps;
  // First path: ebit from A1 to C1 over the reversed channel, C1 teleports back.
  s.push_back(ebit("A1", "t1a", "t1b"));
  s.push_back(send("A1->C1", 0, "t1a"));
  s.push_back(send("A2->C1", 0, "m2a"));
  append_teleport(s, "C1", "A1", "m2a", "t1a", "t1b");
  s.push_back(send("A1->B2", 0, "t1b"));
  // Second path: ebit from C2 to B1, B1 teleports back to C2.
  s.push_back(send("A2->B1", 0, "m2b"));
  s.push_back(ebit("C2", "t2b", "t2a"));
  s.push_back(send("C2->B1", 0, "t2a"));
  append_teleport(s, "B1", "C2", "m2b", "t2a", "t2b");
  if (broken) {
    // Drop the phase bit: its classical send and the Z correction.
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](const Step& st) {
                             return (st.kind == StepKind::SendClassical && st.registers[0] == "m2b") ||
                                    (st.kind == StepKind::ClassicallyControlled && st.control == "m2b");
                           }),
            s.end());
  }
  s.push_back(send("C2->B2", 0, "t2b"));
  return {p, builtin_network("butterfly"), Scenario::BackwardCC, {0, 2}};
}

/// Two calls. Call 0: A1 spreads an ebit to C1 and B2, C1 teleports A2's
/// qubit to B2 with cbits along C1 -> C2 -> B2, leaving C1 -> C2 idle.
/// Call 1: both pairs route through C1 -> C2, one use borrowed from call 0.
BuiltinScript butterfly_forward() {
  ProtocolScript p{"butterfly_forward_2call", "rate pair (1/2,1) in two calls", 2,
                   {{1, "m2a", "e2", false}, {0, "m1", "m1", false}, {1, "m2b", "m2b", false}}, {}};
  auto& s = p.steps;
  s.push_back(ebit("A1", "e1", "e2"));
  s.push_back(send("A1->C1", 0, "e1"));
  s.push_back(send("A1->B2", 0, "e2"));
  s.push_back(send("A2->C1", 0, "m2a"));
  append_teleport(s, "C1", "B2", "m2a", "e1", "e2");
  route(s, {"A1", "C1", "C2", "B1"}, 1, "m1");
  s.push_back(send("A2->C1", 1, "m2b"));
  s.push_back(send("C1->C2", 0, "m2b"));
  s.push_back(send("C2->B2", 1, "m2b"));
  return {p, builtin_network("butterfly"), Scenario::ForwardCC, {Rational(1, 2), 1}};
}

BuiltinScript crown_110() {
  ProtocolScript p{"crown_routing_110", "rate triplet (1,1,0) by routing", 1,
                   {{0, "m1", "m1", false}, {1, "m2", "m2", false}}, {}};
  route(p.steps, {"A1", "A3", "C2", "B1"}, 0, "m1");
  route(p.steps, {"A2", "A3", "C1", "B2"}, 0, "m2");
  return {p, builtin_network("inverted_crown"), Scenario::Unassisted, {1, 1, 0}};
}

BuiltinScript crown_002() {
  ProtocolScript p{"crown_routing_002", "rate triplet (0,0,2) by routing", 1,
                   {{2, "m3a", "m3a", false}, {2, "m3b", "m3b", false}}, {}};
  route(p.steps, {"A3", "C1", "B3"}, 0, "m3a");
  route(p.steps, {"A3", "C2", "B3"}, 0, "m3b");
  return {p, builtin_network("inverted_crown"), Scenario::Unassisted, {0, 0, 2}};
}

BuiltinScript crown_timeshare() {
  ProtocolScript p{"crown_timeshare", "(1,1,0) in call 0 and (0,0,2) in call 1", 2,
                   {{0, "m1", "m1", false}, {1, "m2", "m2", false}, {2, "m3a", "m3a", false}, {2, "m3b", "m3b", false}},
                   {}};
  route(p.steps, {"A1", "A3", "C2", "B1"}, 0, "m1");
  route(p.steps, {"A2", "A3", "C1", "B2"}, 0, "m2");
  route(p.steps, {"A3", "C1", "B3"}, 1, "m3a");
  route(p.steps, {"A3", "C2", "B3"}, 1, "m3b");
  p.steps.push_back(checkpoint("delivered"));
  return {p, builtin_network("inverted_crown"), Scenario::Unassisted, {Rational(1, 2), Rational(1, 2), 1}};
}

/// (1,0,2): A2 spreads an ebit over A2 -> A3 and A2 -> B1; A3 teleports
/// A1's qubit to B1 with cbits over the bridge A3 -> C2 -> B1.
BuiltinScript crown_forward() {
  ProtocolScript p{"crown_forward_102", "rate triplet (1,0,2) reversing A2->A3", 1,
                   {{0, "m1", "y", false}, {2, "m3a", "m3a", false}, {2, "m3b", "m3b", false}}, {}};
  auto& s = p.steps;
  s.push_back(ebit("A2", "x", "y"));
  s.push_back(send("A2->A3", 0, "x"));
  s.push_back(send("A2->B1", 0, "y"));
  s.push_back(send("A1->A3", 0, "m1"));
  append_teleport(s, "A3", "B1", "m1", "x", "y");
  route(s, {"A3", "C1", "B3"}, 0, "m3a");
  route(s, {"A3", "C2", "B3"}, 0, "m3b");
  return {p, builtin_network("inverted_crown"), Scenario::ForwardCC, {1, 0, 2}};
}

/// The receiver B1 owns the only channel, B1 -> A1; back assistance lets
/// A1 teleport over an ebit B1 distributes through it.
BuiltinScript teleport_reversed_edge() {
  ProtocolScript p{"teleport_reversed_edge", "teleportation against a single channel", 1, {{0, "m1", "tb", false}}, {}};
  auto& s = p.steps;
  s.push_back(ebit("B1", "tb", "ta"));
  s.push_back(send("B1->A1", 0, "ta"));
  append_teleport(s, "A1", "B1", "m1", "ta", "tb");
  return {p, single_edge("reversed_edge", "B1", "A1"), Scenario::BackwardCC, {1}};
}

BuiltinScript superdense_edge() {
  ProtocolScript p{"superdense_edge", "two cbits over one qubit channel with a free ebit", 1,
                   {{0, "c1", "ea", true}, {0, "c2", "eb", true}}, {}};
  auto& s = p.steps;
  s.push_back(ebit("A1", "ea", "eb", "B1"));
  append_superdense(s, "A1", "B1", "A1->B1", 0, "c1", "c2", "ea", "eb");
  return {p, single_edge("single_edge", "A1", "B1"), Scenario::EntAssisted, {2}};
}

}  // namespace

const std::vector<std::string>& builtin_script_names() {
  static const std::vector<std::string> names{
      "butterfly_unassisted", "butterfly_timeshare", "butterfly_back_02", "butterfly_back_broken",
      "butterfly_forward_2call", "crown_routing_110",  "crown_routing_002",   "crown_timeshare",
      "crown_forward_102",      "teleport_reversed_edge", "superdense_edge",
  };
  return names;
}

BuiltinScript builtin_script(std::string_view name) {
  if (name == "butterfly_unassisted") return butterfly_unassisted();
  if (name == "butterfly_timeshare") return butterfly_timeshare();
  if (name == "butterfly_back_02") return butterfly_back(false);
  if (name == "butterfly_back_broken") return butterfly_back(true);
  if (name == "butterfly_forward_2call") return butterfly_forward();
  if (name == "crown_routing_110") return crown_110();
  if (name == "crown_routing_002") return crown_002();
  if (name == "crown_timeshare") return crown_timeshare();
  if (name == "crown_forward_102") return crown_forward();
  if (name == "teleport_reversed_edge") return teleport_reversed_edge();
  if (name == "superdense_edge") return superdense_edge();
  throw InputError("unknown builtin script '" + std::string(name) + "'");
}

}  // namespace qnet
