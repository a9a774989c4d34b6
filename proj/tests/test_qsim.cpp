#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qnet/qsim.hpp"

using namespace qnet;

namespace {

Step send(const std::string& edge, int call, const std::string& reg) {
  Step s;
  s.kind = StepKind::SendQuantum;
  s.edge = edge;
  s.call = call;
  s.registers = {reg};
  return s;
}

Step alloc(const std::string& party, std::vector<std::string> regs, bool classical) {
  Step s;
  s.kind = StepKind::Alloc;
  s.party = party;
  s.registers = std::move(regs);
  s.classical = classical;
  return s;
}

Network line(const std::string& name) {
  return Network::build({{"A1", Role::sender(0)}, {"C", Role::helper()}, {"B1", Role::receiver(0)}},
                        {{"A1->C", "A1", "C", Capacity(1)}, {"C->B1", "C", "B1", Capacity(1)}}, {}, name);
}

Network single(const std::string& tail, const std::string& head) {
  return Network::build({{"A1", Role::sender(0)}, {"B1", Role::receiver(0)}},
                        {{tail + "->" + head, tail, head, Capacity(1)}}, {}, "single");
}

ProtocolScript one_message(int calls = 1) { return {"t", "", calls, {{0, "m1", "m1", false}}, {}}; }

}  // namespace

TEST_CASE("every builtin script reaches its fidelity and rates") {
  for (const auto& name : builtin_script_names()) {
    CAPTURE(name);
    auto b = builtin_script(name);
    auto r = verify_protocol(b.network, b.scenario, b.script, b.expected_rates);
    if (name == "butterfly_back_broken") {
      CHECK_FALSE(r.passed);
      double worst = 1;
      for (const auto& m : r.messages) worst = std::min(worst, m.fidelity);
      CHECK(worst < 1 - 1e-3);
    } else {
      CHECK(r.passed);
      CHECK(r.rates_match);
      CHECK(r.rates == b.expected_rates);
      for (const auto& m : r.messages) CHECK(m.fidelity == doctest::Approx(1).epsilon(1e-9));
    }
  }
}

TEST_CASE("ledger never exceeds channel capacity") {
  for (const auto& name : builtin_script_names()) {
    CAPTURE(name);
    auto b = builtin_script(name);
    auto run = run_protocol(b.network, b.scenario, b.script);
    for (const auto& [key, uses] : run.ledger.usage()) {
      const auto& e = b.network.edges()[b.network.edge_index(key.first)];
      CHECK(key.second < b.script.calls);
      if (!e.capacity.is_unlimited()) CHECK(Rational(uses) <= e.capacity.value());
    }
    if (b.scenario != Scenario::EntAssisted) CHECK(run.ledger.ebits.empty());
  }
}

TEST_CASE("sampled outcomes give the same fidelity") {
  for (auto name : {"butterfly_back_02", "butterfly_forward_2call", "crown_forward_102", "teleport_reversed_edge",
                    "superdense_edge"}) {
    CAPTURE(name);
    auto b = builtin_script(name);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      RunOptions o;
      o.sample = true;
      o.seed = seed;
      CHECK(verify_protocol(b.network, b.scenario, b.script, b.expected_rates, o).passed);
    }
  }
}

TEST_CASE("teleportation over a forward-assisted channel") {
  Network net = single("A1", "B1");
  ProtocolScript p{"tele", "", 1, {{0, "m1", "tb", false}}, {}};
  Step e;
  e.kind = StepKind::CreateEbit;
  e.party = "A1";
  e.registers = {"ta", "tb"};
  p.steps.push_back(e);
  p.steps.push_back(send("A1->B1", 0, "tb"));
  append_teleport(p.steps, "A1", "B1", "m1", "ta", "tb");
  auto r = verify_protocol(net, Scenario::ForwardCC, p, RationalVector{1});
  CHECK(r.passed);
  CHECK(r.ledger.quantum.size() == 1);
  CHECK(r.ledger.classical.size() == 2);
  // Without classical assistance the corrections cannot be sent.
  CHECK_THROWS_WITH_AS(verify_protocol(net, Scenario::Unassisted, p), doctest::Contains("not permitted"),
                       ProtocolError);
}

TEST_CASE("superdense coding and reversed teleportation") {
  // Two cbits over one qubit plus a free ebit, then one qubit over two
  // cbits against a reversed channel.
  auto b = builtin_script("superdense_edge");
  auto r = verify_protocol(b.network, b.scenario, b.script);
  CHECK(r.passed);
  CHECK(r.classical_rates == RationalVector{2});
  CHECK(r.ledger.ebits.size() == 1);
  auto t = builtin_script("teleport_reversed_edge");
  auto rt = verify_protocol(t.network, t.scenario, t.script);
  CHECK(rt.passed);
  CHECK(rt.classical_rates == RationalVector{0});
}

TEST_CASE("capacity exceeded in one call") {
  Network b = builtin_network("butterfly");
  ProtocolScript p{"t", "", 1, {{0, "m1", "m1", false}, {1, "m2", "m2", false}}, {}};
  p.steps = {send("A1->C1", 0, "m1"), send("A2->C1", 0, "m2"), send("C1->C2", 0, "m1"), send("C1->C2", 0, "m2")};
  CHECK_THROWS_WITH_AS(run_protocol(b, Scenario::Unassisted, p), doctest::Contains("capacity exceeded on channel C1->C2"),
                       ProtocolError);
  // Same sends spread over two calls are fine.
  p.calls = 2;
  p.steps[1].call = p.steps[3].call = 1;
  CHECK_NOTHROW(run_protocol(b, Scenario::Unassisted, p));
}

TEST_CASE("forbidden classical message") {
  Network net = line("line");
  ProtocolScript p = one_message();
  p.steps.push_back(alloc("B1", {"c"}, true));
  Step s;
  s.kind = StepKind::SendClassical;
  s.from = "B1";
  s.to = "A1";
  s.registers = {"c"};
  p.steps.push_back(s);
  CHECK_THROWS_WITH_AS(run_protocol(net, Scenario::Unassisted, p), doctest::Contains("not permitted"), ProtocolError);
  CHECK_THROWS_AS(run_protocol(net, Scenario::ForwardCC, p), ProtocolError);
  CHECK_NOTHROW(run_protocol(net, Scenario::BackwardCC, p));
}

TEST_CASE("classical permission follows the scenario") {
  Network net = line("line");
  int a = net.vertex_index("A1"), c = net.vertex_index("C"), b = net.vertex_index("B1");
  CHECK_FALSE(classical_permitted(net, Scenario::Unassisted, a, b));
  CHECK(classical_permitted(net, Scenario::ForwardCC, a, b));
  CHECK_FALSE(classical_permitted(net, Scenario::ForwardCC, b, c));
  CHECK(classical_permitted(net, Scenario::BackwardCC, b, c));
  CHECK(classical_permitted(net, Scenario::TwoWayCC, b, a));
}

TEST_CASE("register ownership is enforced") {
  Network b = builtin_network("butterfly");
  ProtocolScript p = one_message();
  p.steps = {send("A2->C1", 0, "m1")};
  CHECK_THROWS_WITH_AS(run_protocol(b, Scenario::Unassisted, p), doctest::Contains("does not own"), ProtocolError);
  p.steps = {send("A1->C1", 0, "nope")};
  CHECK_THROWS_WITH_AS(run_protocol(b, Scenario::Unassisted, p), doctest::Contains("unknown register"), ProtocolError);
  p.steps = {send("A1->C1", 0, reference_name("m1"))};
  CHECK_THROWS_AS(run_protocol(b, Scenario::Unassisted, p), ProtocolError);
  p.steps = {send("A1->Z", 0, "m1")};
  CHECK_THROWS_WITH_AS(run_protocol(b, Scenario::Unassisted, p), doctest::Contains("unknown channel"), ProtocolError);
  p.steps = {send("A1->C1", 3, "m1")};
  CHECK_THROWS_AS(run_protocol(b, Scenario::Unassisted, p), ProtocolError);
}

TEST_CASE("undelivered message") {
  Network net = line("line");
  ProtocolScript p = one_message();
  p.steps = {send("A1->C", 0, "m1")};
  CHECK_THROWS_WITH_AS(verify_protocol(net, Scenario::Unassisted, p), doctest::Contains("not delivered"),
                       ProtocolError);
  p.steps.push_back(send("C->B1", 0, "m1"));
  CHECK(verify_protocol(net, Scenario::Unassisted, p).passed);
}

TEST_CASE("free ebits need entanglement assistance") {
  Network net = single("A1", "B1");
  ProtocolScript p{"t", "", 1, {}, {}};
  Step e;
  e.kind = StepKind::CreateEbit;
  e.party = "A1";
  e.party2 = "B1";
  e.registers = {"x", "y"};
  p.steps = {e};
  for (auto sc : {Scenario::Unassisted, Scenario::ForwardCC, Scenario::BackwardCC, Scenario::TwoWayCC}) {
    CHECK_THROWS_WITH_AS(run_protocol(net, sc, p), doctest::Contains("entanglement assistance"), ProtocolError);
  }
  auto r = run_protocol(net, Scenario::EntAssisted, p);
  CHECK(r.ledger.ebits.size() == 1);
}

TEST_CASE("wrong message state lowers fidelity") {
  Network net = line("line");
  ProtocolScript p = one_message();
  Step x;
  x.kind = StepKind::LocalOp;
  x.party = "C";
  x.gate = "X";
  x.registers = {"m1"};
  p.steps = {send("A1->C", 0, "m1"), x, send("C->B1", 0, "m1")};
  auto r = verify_protocol(net, Scenario::Unassisted, p);
  CHECK_FALSE(r.passed);
  CHECK(r.messages[0].fidelity == doctest::Approx(0).epsilon(1e-9));
  // Rates off from the expectation also fail.
  p.steps = {send("A1->C", 0, "m1"), send("C->B1", 0, "m1")};
  auto wrong = verify_protocol(net, Scenario::Unassisted, p, RationalVector{2});
  CHECK_FALSE(wrong.rates_match);
  CHECK_FALSE(wrong.passed);
}

TEST_CASE("step kind names round trip") {
  for (auto k : {StepKind::Alloc, StepKind::CreateEbit, StepKind::LocalOp, StepKind::SendQuantum,
                 StepKind::SendClassical, StepKind::Measure, StepKind::ClassicallyControlled, StepKind::CopyClassical,
                 StepKind::Discard, StepKind::Checkpoint}) {
    CHECK(parse_step_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_step_kind("jump"), InputError);
}

// ------------------------------------------------------------------ audits

TEST_CASE("audit of the butterfly timeshare checkpoint") {
  auto b = builtin_script("butterfly_timeshare");
  auto run = run_protocol(b.network, b.scenario, b.script);
  auto a = audit_checkpoint(run, "delivered", {"C1->C2"}, {"A1->C1", "A2->C1", "C2->B1", "C2->B2"});
  CHECK(a.secret_entropy == doctest::Approx(2));
  CHECK(a.significant_entropy == doctest::Approx(2));
  CHECK(std::abs(a.gamma) <= 1e-9);
  CHECK(a.holds);
  CHECK(a.significant_entropy >= a.bound - 1e-9);
  CHECK_THROWS_AS(audit_checkpoint(run, "missing", {"C1->C2"}, {}), InputError);
}

TEST_CASE("audit of the crown timeshare checkpoint") {
  auto b = builtin_script("crown_timeshare");
  auto run = run_protocol(b.network, b.scenario, b.script);
  auto a = audit_checkpoint(run, "delivered", {"A3->C1", "A3->C2"}, {});
  CHECK(a.secret_entropy == doctest::Approx(4));
  CHECK(std::abs(a.gamma) <= 1e-9);
  CHECK(a.holds);
}

TEST_CASE("audit on hand-built states") {
  // R maximally entangled with m.
  PureState s({{"R", "r"}, {"A", "m"}, {"A", "x"}});
  s.apply(gate_matrix("H"), std::vector<int>{0});
  s.apply(gate_matrix("CNOT"), std::vector<int>{0, 1});
  auto full = secret_sharing_audit(s, {"r"}, {"m"}, {}, {"x"});
  CHECK(full.secret_entropy == doctest::Approx(1));
  CHECK(full.significant_entropy == doctest::Approx(1));
  CHECK(full.eps_prime == doctest::Approx(0).epsilon(1e-9));
  CHECK(full.bound == doctest::Approx(1));
  CHECK(full.holds);
  // The unauthorized share holds the whole secret: gamma = 2, bound drops to 0.
  auto leak = secret_sharing_audit(s, {"r"}, {"x"}, {"m"}, {});
  CHECK(leak.gamma == doctest::Approx(2));
  CHECK(leak.holds);
  CHECK_THROWS_AS(secret_sharing_audit(s, {"r"}, {"m"}, {"m"}, {"x"}), InputError);
  CHECK_THROWS_AS(secret_sharing_audit(s, {"r"}, {"m"}, {}, {}), InputError);
}

// ------------------------------------------------------------------- GF(2)

TEST_CASE("xor coding on the butterfly") {
  Network b = builtin_network("butterfly");
  auto r = run_classical_linear_protocol(b, butterfly_xor_scheme());
  CHECK(r.all_correct);
  CHECK(r.inputs == 4);
  CHECK(r.decoders.size() == 2);
  for (const auto& d : r.decoders) CHECK(d.failures == 0);
}

TEST_CASE("silencing any channel breaks a receiver") {
  Network b = builtin_network("butterfly");
  auto scheme = butterfly_xor_scheme();
  for (size_t i = 0; i < scheme.edge_forms.size(); ++i) {
    auto cut = scheme;
    cut.edge_forms[i].second.clear();
    CAPTURE(cut.edge_forms[i].first);
    auto r = run_classical_linear_protocol(b, cut);
    CHECK_FALSE(r.all_correct);
  }
}

TEST_CASE("causality and cycles are rejected") {
  Network b = builtin_network("butterfly");
  auto scheme = butterfly_xor_scheme();
  for (auto& [edge, form] : scheme.edge_forms) {
    if (edge == "A1->C1") form = {"x2"};
  }
  CHECK_THROWS_WITH_AS(run_classical_linear_protocol(b, scheme), doctest::Contains("causality violation"), InputError);

  Network loop = Network::build({{"A1", Role::sender(0)}, {"X", Role::helper()}, {"Y", Role::helper()},
                                 {"B1", Role::receiver(0)}},
                                {{"A1->X", "A1", "X", Capacity(1)},
                                 {"X->Y", "X", "Y", Capacity(1)},
                                 {"Y->X", "Y", "X", Capacity(1)},
                                 {"Y->B1", "Y", "B1", Capacity(1)}});
  ClassicalScheme c;
  c.sources = {{"x1", "A1"}};
  c.edge_forms = {{"A1->X", {"x1"}}, {"X->Y", {"Y->X"}}, {"Y->X", {"X->Y"}}, {"Y->B1", {"X->Y"}}};
  c.decoders = {{"B1", "x1", {"Y->B1"}}};
  CHECK_THROWS_WITH_AS(run_classical_linear_protocol(loop, c), doctest::Contains("cyclic dependency"), InputError);
}

TEST_CASE("identity routing along a path") {
  Network net = line("line");
  ClassicalScheme c;
  c.sources = {{"x1", "A1"}};
  c.edge_forms = {{"A1->C", {"x1"}}, {"C->B1", {"A1->C"}}};
  c.decoders = {{"B1", "x1", {"C->B1"}}};
  auto r = run_classical_linear_protocol(net, c);
  CHECK(r.all_correct);
  CHECK(r.inputs == 2);
  c.decoders = {{"B1", "x1", {"C->B1", "C->B1"}}};
  CHECK_FALSE(run_classical_linear_protocol(net, c).all_correct);
}
