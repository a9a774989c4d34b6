#include "qnet/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qnet {

namespace {

bool has_prefix(const std::string& s, std::string_view p) { return s.rfind(p, 0) == 0; }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Rational rational_of(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    std::ostringstream os;
    os << v.get<double>();
    return parse_rational(os.str());
  }
  throw InputError("expected a rational number, got " + v.dump());
}

RationalVector rational_vector_of(const Json& v) {
  if (!v.is_array()) throw InputError("expected an array of rationals");
  RationalVector out;
  for (const auto& x : v) out.push_back(rational_of(x));
  return out;
}

Json capacity_json(const Capacity& c) { return to_string(c); }

Capacity capacity_of(const Json& v) {
  if (v.is_string() && (v == "inf" || v == "unlimited")) return Capacity::unlimited();
  return Capacity(rational_of(v));
}

std::string role_string(const Role& r) {
  switch (r.kind) {
    case RoleKind::Sender: return "sender:" + std::to_string(r.pair + 1);
    case RoleKind::Receiver: return "receiver:" + std::to_string(r.pair + 1);
    case RoleKind::Helper: return "helper";
  }
  return "helper";
}

Role role_of(const std::string& s) {
  if (s == "helper") return Role::helper();
  auto colon = s.find(':');
  std::string kind = s.substr(0, colon);
  if (colon == std::string::npos || (kind != "sender" && kind != "receiver")) {
    throw InputError("bad role '" + s + "'");
  }
  int idx = 0;
  try {
    size_t used = 0;
    idx = std::stoi(s.substr(colon + 1), &used);
    if (used != s.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InputError("bad role '" + s + "'");
  }
  if (idx < 1) throw InputError("pair index in role '" + s + "' must be >= 1");
  return kind == "sender" ? Role::sender(idx - 1) : Role::receiver(idx - 1);
}

std::vector<std::string> strings_of(const Json& v) {
  if (!v.is_array()) throw InputError("expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw InputError("expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<std::string> vertex_names(const Network& net, const std::vector<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(net.vertex_id(v));
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse '" + path + "': " + e.what());
  }
}

// ------------------------------------------------------------------ network

Network network_from_json(const Json& j) {
  try {
    std::vector<Network::VertexSpec> vs;
    for (const auto& v : field(j, "vertices")) vs.push_back({str(v, "id"), role_of(str(v, "role"))});
    std::vector<Network::EdgeSpec> es;
    for (const auto& e : field(j, "edges")) {
      std::string tail = str(e, "tail"), head = str(e, "head");
      std::string id = e.contains("id") ? str(e, "id") : tail + "->" + head;
      es.push_back({id, tail, head, e.contains("capacity") ? capacity_of(e.at("capacity")) : Capacity(1)});
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    if (j.contains("pairs")) {
      for (const auto& p : j.at("pairs")) {
        auto two = strings_of(p);
        if (two.size() != 2) throw InputError("each pair is [sender, receiver]");
        pairs.emplace_back(two[0], two[1]);
      }
    }
    std::string name = j.contains("name") ? str(j, "name") : std::string();
    return Network::build(std::move(vs), std::move(es), std::move(pairs), std::move(name));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed network: ") + e.what());
  }
}

Json network_to_json(const Network& net) {
  Json j;
  if (!net.name().empty()) j["name"] = net.name();
  j["vertices"] = Json::array();
  for (const auto& v : net.vertices()) j["vertices"].push_back({{"id", v.id}, {"role", role_string(v.role)}});
  j["edges"] = Json::array();
  for (const auto& e : net.edges()) {
    j["edges"].push_back({{"id", e.id},
                          {"tail", net.vertex_id(e.tail)},
                          {"head", net.vertex_id(e.head)},
                          {"capacity", capacity_json(e.capacity)}});
  }
  j["pairs"] = Json::array();
  for (const auto& p : net.pairs()) j["pairs"].push_back({net.vertex_id(p.sender), net.vertex_id(p.receiver)});
  return j;
}

Network load_network(const std::string& spec) {
  if (has_prefix(spec, kBuiltinPrefix)) return builtin_network(spec.substr(std::string(kBuiltinPrefix).size()));
  return network_from_json(read_json_file(spec));
}

// ---------------------------------------------------------------- polytopes

Json rational_vector_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json polytope_to_json(const RatePolytope& p) {
  Json j;
  j["dim"] = p.dim();
  j["halfspaces"] = Json::array();
  for (const auto& h : p.facets()) {
    Json hj{{"a", rational_vector_json(h.a)}, {"b", to_string(h.b)}};
    if (!h.note.empty()) hj["note"] = h.note;
    j["halfspaces"].push_back(hj);
  }
  j["vertices"] = Json::array();
  for (const auto& v : p.vertices()) j["vertices"].push_back(rational_vector_json(v));
  j["provenance"] = to_string(p.provenance());
  return j;
}

RatePolytope polytope_from_json(const Json& j) {
  try {
    int dim = field(j, "dim").get<int>();
    if (dim < 1) throw InputError("polytope dimension must be >= 1");
    Provenance prov = j.contains("provenance") ? parse_provenance(str(j, "provenance")) : Provenance::Fixture;
    std::vector<Halfspace> hs;
    if (j.contains("halfspaces")) {
      for (const auto& h : j.at("halfspaces")) {
        Halfspace x{rational_vector_of(field(h, "a")), rational_of(field(h, "b")),
                    h.contains("note") ? str(h, "note") : std::string()};
        if (static_cast<int>(x.a.size()) != dim) throw InputError("half-space dimension mismatch");
        hs.push_back(std::move(x));
      }
      RatePolytope p(dim, std::move(hs), prov);
      if (j.contains("vertices")) {
        std::vector<RationalVector> listed;
        for (const auto& v : j.at("vertices")) listed.push_back(rational_vector_of(v));
        if (RatePolytope::hull_of(dim, listed, prov) != p) {
          throw InputError("listed vertices do not match the half-spaces");
        }
      }
      return p;
    }
    std::vector<RationalVector> pts;
    for (const auto& v : field(j, "vertices")) {
      pts.push_back(rational_vector_of(v));
      if (static_cast<int>(pts.back().size()) != dim) throw InputError("vertex dimension mismatch");
    }
    return RatePolytope::hull_of(dim, pts, prov);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed polytope: ") + e.what());
  }
}

RatePolytope load_polytope(const std::string& path) { return polytope_from_json(read_json_file(path)); }

std::string polytope_csv(const RatePolytope& p) {
  std::ostringstream os;
  os << "kind";
  for (int i = 1; i <= p.dim(); ++i) os << ",r" << i;
  os << ",b\n";
  for (const auto& v : p.vertices()) {
    os << "vertex";
    for (const auto& x : v) os << "," << to_string(x);
    os << ",\n";
  }
  for (const auto& h : p.facets()) {
    os << "facet";
    for (const auto& x : h.a) os << "," << to_string(x);
    os << "," << to_string(h.b) << "\n";
  }
  return os.str();
}

// -------------------------------------------------------------------- state

Json state_to_json(const PureState& s) {
  Json j;
  j["registers"] = Json::array();
  for (int q = 0; q < s.num_qubits(); ++q) {
    j["registers"].push_back({{"party", s.labels()[q].party}, {"name", s.labels()[q].name}, {"qubit", q}});
  }
  j["amplitudes"] = Json::array();
  const Vector& a = s.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i)) < 1e-15) continue;
    std::string bits;
    for (int q = 0; q < s.num_qubits(); ++q) bits += ((i >> q) & 1) ? '1' : '0';
    j["amplitudes"].push_back({bits, a(i).real(), a(i).imag()});
  }
  return j;
}

PureState state_from_json(const Json& j) {
  try {
    const Json& regs = field(j, "registers");
    const int n = static_cast<int>(regs.size());
    if (n > kMaxQubits) throw InputError("state has too many qubits");
    std::vector<RegisterLabel> labels(n);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      const Json& r = regs[i];
      int q = r.contains("qubit") ? r.at("qubit").get<int>() : i;
      if (q < 0 || q >= n || seen[q]) throw InputError("bad or repeated qubit index in state registers");
      seen[q] = true;
      labels[q] = {str(r, "party"), str(r, "name")};
    }
    Vector amp = Vector::Zero(Eigen::Index{1} << n);
    for (const auto& e : field(j, "amplitudes")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw InputError("amplitude entries are [bits, re, im]");
      std::string bits = e[0].get<std::string>();
      if (static_cast<int>(bits.size()) != n) throw InputError("bitstring '" + bits + "' has the wrong length");
      Eigen::Index idx = 0;
      for (int q = 0; q < n; ++q) {
        if (bits[q] == '1') {
          idx |= Eigen::Index{1} << q;
        } else if (bits[q] != '0') {
          throw InputError("bad bitstring '" + bits + "'");
        }
      }
      amp(idx) += Complex(e[1].get<double>(), e.size() == 3 ? e[2].get<double>() : 0.0);
    }
    return PureState(labels, amp);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed state: ") + e.what());
  }
}

// ------------------------------------------------------------------ scripts

Json step_to_json(const Step& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  if (!s.party.empty()) j["party"] = s.party;
  if (!s.party2.empty()) j["party2"] = s.party2;
  if (!s.registers.empty()) j["registers"] = s.registers;
  if (s.classical) j["classical"] = true;
  if (!s.gate.empty()) j["gate"] = s.gate;
  if (s.matrix) {
    Json m = Json::array();
    for (Eigen::Index r = 0; r < s.matrix->rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < s.matrix->cols(); ++c) row.push_back({(*s.matrix)(r, c).real(), (*s.matrix)(r, c).imag()});
      m.push_back(row);
    }
    j["matrix"] = m;
  }
  if (!s.edge.empty()) {
    j["edge"] = s.edge;
    j["call"] = s.call;
  }
  if (!s.from.empty()) j["from"] = s.from;
  if (!s.to.empty()) j["to"] = s.to;
  if (!s.control.empty()) j["control"] = s.control;
  if (s.kind == StepKind::Measure && s.basis != "Z") j["basis"] = s.basis;
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

Step step_from_json(const Json& j) {
  Step s;
  s.kind = parse_step_kind(str(j, "kind"));
  auto opt = [&](const char* key, std::string& out) {
    if (j.contains(key)) out = str(j, key);
  };
  opt("party", s.party);
  opt("party2", s.party2);
  opt("gate", s.gate);
  opt("edge", s.edge);
  opt("from", s.from);
  opt("to", s.to);
  opt("control", s.control);
  opt("basis", s.basis);
  opt("label", s.label);
  if (j.contains("registers")) s.registers = strings_of(j.at("registers"));
  if (j.contains("classical")) s.classical = j.at("classical").get<bool>();
  if (j.contains("call")) s.call = j.at("call").get<int>();
  if (j.contains("matrix")) {
    const Json& m = j.at("matrix");
    const auto n = static_cast<Eigen::Index>(m.size());
    Matrix u(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (static_cast<Eigen::Index>(m[r].size()) != n) throw InputError("matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) u(r, c) = Complex(m[r][c][0].get<double>(), m[r][c][1].get<double>());
    }
    s.matrix = u;
  }
  return s;
}

Json script_to_json(const ProtocolScript& script, const std::optional<Network>& network,
                    std::optional<Scenario> scenario, const std::optional<RationalVector>& expected_rates) {
  Json j;
  j["name"] = script.name;
  if (!script.description.empty()) j["description"] = script.description;
  if (network) {
    const auto& names = builtin_network_names();
    if (std::find(names.begin(), names.end(), network->name()) != names.end()) {
      j["network"] = kBuiltinPrefix + network->name();
    } else {
      j["network"] = network_to_json(*network);
    }
  }
  if (scenario) j["scenario"] = to_string(*scenario);
  if (expected_rates) j["expected_rates"] = rational_vector_json(*expected_rates);
  j["calls"] = script.calls;
  j["messages"] = Json::array();
  for (const auto& m : script.messages) {
    Json mj{{"pair", m.pair + 1}, {"input", m.input}, {"output", m.output}};
    if (m.classical) mj["classical"] = true;
    j["messages"].push_back(mj);
  }
  j["steps"] = Json::array();
  for (const auto& s : script.steps) j["steps"].push_back(step_to_json(s));
  return j;
}

ScriptDocument script_from_json(const Json& j) {
  try {
    ScriptDocument d;
    d.script.name = j.contains("name") ? str(j, "name") : std::string();
    if (j.contains("description")) d.script.description = str(j, "description");
    d.script.calls = j.contains("calls") ? j.at("calls").get<int>() : 1;
    if (d.script.calls < 1) throw InputError("calls must be >= 1");
    for (const auto& m : field(j, "messages")) {
      int pair = field(m, "pair").get<int>();
      if (pair < 1) throw InputError("message pair indices start at 1");
      std::string input = str(m, "input");
      d.script.messages.push_back({pair - 1, input, m.contains("output") ? str(m, "output") : input,
                                   m.contains("classical") && m.at("classical").get<bool>()});
    }
    for (const auto& s : field(j, "steps")) d.script.steps.push_back(step_from_json(s));
    if (j.contains("network")) {
      const Json& n = j.at("network");
      d.network = n.is_string() ? load_network(n.get<std::string>()) : network_from_json(n);
    }
    if (j.contains("scenario")) d.scenario = parse_scenario(str(j, "scenario"));
    if (j.contains("expected_rates")) d.expected_rates = rational_vector_of(j.at("expected_rates"));
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed script: ") + e.what());
  }
}

ScriptDocument load_script(const std::string& spec) {
  if (has_prefix(spec, kBuiltinPrefix)) {
    auto b = builtin_script(spec.substr(std::string(kBuiltinPrefix).size()));
    return {b.script, b.network, b.scenario, b.expected_rates};
  }
  return script_from_json(read_json_file(spec));
}

// ------------------------------------------------------------------ reports

Json cut_bound_to_json(const Network& net, const CutBound& c) {
  Json pairs = Json::array();
  for (int i : c.subset) pairs.push_back(i + 1);
  Json j{{"pairs", pairs},
         {"bound", capacity_json(c.bound)},
         {"rule", c.rule},
         {"cut", describe_cut(net, c.witness.side)},
         {"forward", capacity_json(c.witness.forward)},
         {"backward", capacity_json(c.witness.backward)},
         {"exhaustive", c.exhaustive}};
  if (!c.minimizers.empty()) {
    Json m = Json::array();
    for (const auto& side : c.minimizers) m.push_back(describe_cut(net, side));
    j["minimizers"] = m;
  }
  return j;
}

Json path_to_json(const Network& net, const AdmissiblePath& p) {
  Json j{{"pair", p.pair + 1}, {"path", p.describe(net)}};
  if (!p.bridges.empty()) {
    Json b = Json::array();
    for (const auto& br : p.bridges) {
      Json edges = Json::array();
      for (int e : br.edges) edges.push_back(net.edges()[e].id);
      b.push_back(edges);
    }
    j["bridges"] = b;
  }
  return j;
}

Json ledger_to_json(const Ledger& l) {
  Json j;
  j["calls"] = l.calls;
  j["quantum"] = Json::array();
  for (const auto& q : l.quantum) j["quantum"].push_back({{"edge", q.edge}, {"call", q.call}, {"register", q.reg}});
  j["classical"] = Json::array();
  for (const auto& c : l.classical) j["classical"].push_back({{"from", c.from}, {"to", c.to}, {"register", c.reg}});
  j["ebits"] = Json::array();
  for (const auto& e : l.ebits) j["ebits"].push_back({e.a, e.b});
  return j;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["fidelities"] = Json::array();
  for (const auto& m : r.messages) {
    Json mj{{"pair", m.pair + 1}, {"input", m.input}, {"output", m.output}, {"fidelity", m.fidelity}};
    if (m.classical) mj["classical"] = true;
    j["fidelities"].push_back(mj);
  }
  j["rates"] = rational_vector_json(r.rates);
  j["classical_rates"] = rational_vector_json(r.classical_rates);
  if (r.expected_rates) {
    j["expected_rates"] = rational_vector_json(*r.expected_rates);
    j["rates_match"] = r.rates_match;
  }
  j["ledger"] = ledger_to_json(r.ledger);
  return j;
}

Json certificate_to_json(const Network& net, const ShallowCertificate& c) {
  const auto& k = c.conditions;
  Json j;
  j["status"] = c.certified ? "certified" : "not_applicable";
  j["reasons"] = c.reasons;
  Json cond;
  cond["receivers_are_sinks"] = k.receivers_are_sinks;
  cond["forwarding_receivers"] = vertex_names(net, k.forwarding_receivers);
  cond["max_path_len"] = k.max_path_len;
  cond["layered"] = k.layered.has_value();
  if (!k.layering_error.empty()) cond["layering_error"] = k.layering_error;
  Json cyc = Json::array();
  if (k.layered) {
    for (const auto& f : k.forbidden_4cycles) cyc.push_back(describe_cycle(*k.layered, f));
  }
  cond["forbidden_4cycles"] = cyc;
  j["conditions"] = cond;
  if (c.region) j["region"] = polytope_to_json(*c.region);
  return j;
}

Json two_pair_to_json(const Network& net, const TwoPairExact& t) {
  const auto& d = t.decomposition;
  Json j;
  j["region"] = polytope_to_json(t.region);
  j["r1_max"] = to_string(t.r1_max);
  j["r2_max"] = to_string(t.r2_max);
  j["sum_max"] = to_string(t.sum_max);
  j["decomposition"] = {{"s_v", vertex_names(net, d.s_v)},
                        {"s_h", vertex_names(net, d.s_h)},
                        {"v1", to_string(d.v1)},
                        {"v2", to_string(d.v2)},
                        {"h1", to_string(d.h1)},
                        {"h2", to_string(d.h2)},
                        {"d1", to_string(d.d1)},
                        {"d2", to_string(d.d2)},
                        {"a1", to_string(d.a1)},
                        {"a2", to_string(d.a2)},
                        {"b1", to_string(d.b1)},
                        {"b2", to_string(d.b2)}};
  return j;
}

Json gap_to_json(const GapReport& g) {
  Json j{{"exact", g.exact}};
  if (!g.exact) {
    j["direction"] = rational_vector_json(g.witness_weight);
    j["inner_support"] = to_string(g.inner_support);
    j["outer_support"] = to_string(g.outer_support);
  }
  return j;
}

Json eoa_to_json(const EoaResult& r, const MergingLedger& l) {
  auto entry = [](const LedgerEntry& e) {
    return Json{{"between", e.between}, {"ebits", e.ebits}, {"consumed", e.consumed}, {"label", e.label}};
  };
  Json j;
  j["value"] = r.value;
  j["partition"] = {{"T", r.t}, {"Tc", r.tc}};
  Json led;
  led["A-B"] = entry(l.a_b);
  led["T-A"] = entry(l.t_a);
  led["Tc-B"] = entry(l.tc_b);
  led["T_parties"] = Json::array();
  for (const auto& e : l.t_parties) led["T_parties"].push_back(entry(e));
  led["Tc_parties"] = Json::array();
  for (const auto& e : l.tc_parties) led["Tc_parties"].push_back(entry(e));
  led["advisories"] = l.advisories;
  j["ledger"] = led;
  Json ev = Json::array();
  for (const auto& p : r.evaluated) ev.push_back({{"T", p.t}, {"S_AT", p.s_at}, {"S_BTc", p.s_btc}});
  j["evaluated"] = ev;
  return j;
}

}  // namespace qnet
