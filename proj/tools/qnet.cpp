// Command-line front end: region analysis, protocol simulation, shallow
// certification, entanglement of assistance, multicast rates.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qnet/eoa.hpp"
#include "qnet/json_io.hpp"
#include "qnet/regions.hpp"
#include "qnet/shallowcert.hpp"

using namespace qnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitGap = 2;
constexpr int kExitFidelity = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_subset(const std::string& text, int k) {
  std::vector<int> out;
  for (const auto& t : split(text, ',')) {
    int i = 0;
    try {
      i = std::stoi(t);
    } catch (const std::exception&) {
      throw InputError("bad subset '" + text + "'");
    }
    if (i < 1 || i > k) throw InputError("pair index " + t + " out of range");
    out.push_back(i - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw InputError("empty subset");
  return out;
}

/// Region CSV: one block of vertex and facet rows per named region.
std::string regions_csv(const std::vector<std::pair<std::string, const RatePolytope*>>& regions) {
  std::ostringstream os;
  bool header = false;
  for (const auto& [name, p] : regions) {
    std::istringstream rows(polytope_csv(*p));
    std::string line;
    std::getline(rows, line);
    if (!header) {
      os << "region," << line << "\n";
      header = true;
    }
    while (std::getline(rows, line)) os << name << "," << line << "\n";
  }
  return os.str();
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct AnalyzeArgs {
  std::string network;
  std::string scenario = "unassisted";
  int max_len = -1;
  std::string fixture;
  bool require_exact = false;
  std::string format = "json";
  std::vector<std::string> subsets;
};

int cmd_analyze(const AnalyzeArgs& a) {
  Network net = load_network(a.network);
  Scenario sc = parse_scenario(a.scenario);
  std::optional<RatePolytope> fixture;
  if (!a.fixture.empty()) fixture = load_polytope(a.fixture);
  if (fixture && fixture->dim() != net.num_pairs()) throw InputError("fixture dimension differs from the pair count");
  const int k = net.num_pairs();

  Json report;
  report["network"] = net.name();
  report["scenario"] = to_string(sc);
  report["pairs"] = k;

  bool exact_known = false, exact = false;
  std::vector<std::pair<std::string, const RatePolytope*>> csv;

  if (sc == Scenario::EntAssisted) {
    if (k > kMaterializeMaxPairs) throw InputError("entanglement-assisted analysis needs at most 3 pairs");
    EntAssistedRegion ent = ent_assisted_region(net, fixture);
    report["classical_outer"] = polytope_to_json(ent.classical_outer);
    report["classical_inner"] = polytope_to_json(ent.classical_inner);
    report["quantum_outer"] = polytope_to_json(ent.quantum_outer);
    report["quantum_inner"] = polytope_to_json(ent.quantum_inner);
    report["gap"] = gap_to_json(ent.gap);
    if (!ent.note.empty()) report["note"] = ent.note;
    exact_known = true;
    exact = ent.exact;
    report["exact"] = exact;
    if (a.format == "csv") {
      std::cout << regions_csv({{"quantum_inner", &ent.quantum_inner}, {"quantum_outer", &ent.quantum_outer}});
    } else {
      emit(report);
    }
    return a.require_exact && !exact ? kExitGap : kExitOk;
  }

  CutOptions opts;
  opts.collect_minimizers = true;
  opts.allow_restricted = true;
  std::vector<std::vector<int>> subsets;
  for (int i = 0; i < k; ++i) subsets.push_back({i});
  if (k > 1) {
    std::vector<int> all(k);
    for (int i = 0; i < k; ++i) all[i] = i;
    subsets.push_back(all);
  }
  for (const auto& s : a.subsets) {
    auto sub = parse_subset(s, k);
    if (std::find(subsets.begin(), subsets.end(), sub) == subsets.end()) subsets.push_back(sub);
  }
  Json bounds = Json::array();
  for (const auto& c : cut_outer_bounds(net, sc, subsets, opts)) bounds.push_back(cut_bound_to_json(net, c));
  RatePolytope outer = outer_region(net, sc, opts);
  Json outer_j{{"bounds", bounds}};

  // A certified shallow network's routing region is exact without
  // assistance, which can be tighter than every cut.
  try {
    ShallowCertificate cert = certify_routing_optimal(net);
    report["certification"] = certificate_to_json(net, cert);
    if (sc == Scenario::Unassisted && cert.region) {
      RatePolytope tightened = outer.intersect(*cert.region);
      if (!(tightened == outer)) outer_j["tightened_by"] = "shallow certification";
      outer = tightened.with_provenance(Provenance::Outer);
    }
  } catch (const SearchBudgetExceeded& e) {
    report["certification"] = {{"status", "budget_exceeded"}, {"reasons", {e.what()}}};
  }
  outer_j["region"] = polytope_to_json(outer);
  report["outer"] = outer_j;

  PathRegion inner = inner_region(net, sc, a.max_len >= 0 ? std::optional<int>(a.max_len) : std::nullopt);
  Json paths = Json::array();
  for (const auto& p : inner.paths()) paths.push_back(path_to_json(net, p));
  Json inner_j;
  inner_j["max_len"] = inner.max_len();
  if (inner.polytope()) inner_j["region"] = polytope_to_json(*inner.polytope());
  inner_j["paths"] = paths;
  inner_j["warnings"] = inner.warnings();
  report["inner"] = inner_j;

  if (inner.polytope()) {
    GapReport gap = compare_regions(*inner.polytope(), outer);
    report["gap"] = gap_to_json(gap);
    exact_known = true;
    exact = gap.exact;
    csv.push_back({"inner", &*inner.polytope()});
  } else {
    report["gap"] = {{"exact", nullptr}, {"note", "inner region not materialized for more than 3 pairs"}};
  }
  csv.push_back({"outer", &outer});

  if (fixture) {
    Json fj;
    fj["region"] = polytope_to_json(*fixture);
    if (inner.polytope()) {
      fj["matches_inner"] = *fixture == *inner.polytope();
      fj["gap_to_inner"] = gap_to_json(compare_regions(*inner.polytope(), *fixture));
    }
    fj["inside_outer"] = fixture->subset_of(outer);
    report["fixture"] = fj;
    csv.push_back({"fixture", &*fixture});
  }
  report["exact"] = exact_known ? Json(exact) : Json(nullptr);

  if (a.format == "csv") {
    std::cout << regions_csv(csv);
  } else {
    emit(report);
  }
  return a.require_exact && !(exact_known && exact) ? kExitGap : kExitOk;
}

int cmd_simulate(const std::string& script_spec, const std::string& network_spec, const std::string& scenario,
                 bool sample, uint64_t seed) {
  ScriptDocument doc = load_script(script_spec);
  if (!network_spec.empty()) doc.network = load_network(network_spec);
  if (!scenario.empty()) doc.scenario = parse_scenario(scenario);
  if (!doc.network) throw InputError("script names no network; pass --network");
  if (!doc.scenario) throw InputError("script names no scenario; pass --scenario");
  RunOptions opts{sample, seed};
  VerifyReport r = verify_protocol(*doc.network, *doc.scenario, doc.script, doc.expected_rates, opts);
  Json j;
  j["script"] = doc.script.name;
  j["network"] = doc.network->name();
  j["scenario"] = to_string(*doc.scenario);
  Json body = verify_report_to_json(r);
  for (auto& [key, value] : body.items()) j[key] = value;
  emit(j);
  bool fidelity_ok = std::all_of(r.messages.begin(), r.messages.end(),
                                 [](const MessageReport& m) { return m.fidelity >= 1 - kFidelityTol; });
  return fidelity_ok ? kExitOk : kExitFidelity;
}

int cmd_two_pair(const std::string& network_spec, const std::string& target, const std::string& format) {
  Network net = load_network(network_spec);
  TwoPairExact t = two_pair_back_exact(net);
  if (format == "csv") {
    std::cout << regions_csv({{"two_pair", &t.region}});
    return kExitOk;
  }
  Json j;
  j["network"] = net.name();
  j["exact"] = true;
  Json body = two_pair_to_json(net, t);
  for (auto& [key, value] : body.items()) j[key] = value;
  if (!target.empty()) {
    RationalVector r;
    for (const auto& x : split(target, ',')) r.push_back(parse_rational(x));
    TwoPairProtocol p = two_pair_back_protocol(net, r);
    Json pj;
    pj["target"] = rational_vector_json(p.target);
    pj["case"] = p.case_label;
    pj["paths"] = Json::array();
    for (const auto& f : p.paths) {
      pj["paths"].push_back({{"pair", f.pair + 1}, {"path", describe_path(net, f.start, f.steps)},
                             {"amount", to_string(f.amount)}});
    }
    j["protocol"] = pj;
  }
  emit(j);
  return kExitOk;
}

int cmd_certify(const std::string& network_spec) {
  Network net = load_network(network_spec);
  Json j;
  j["network"] = net.name();
  Json body = certificate_to_json(net, certify_routing_optimal(net));
  for (auto& [key, value] : body.items()) j[key] = value;
  emit(j);
  return kExitOk;
}

int cmd_eoa(const std::string& state_path, const std::string& a, const std::string& b, const std::string& partition) {
  std::string path = state_path;
  if (path.rfind(kBuiltinPrefix, 0) == 0) {
    throw InputError("states have no builtins; pass a file such as data/states/ghz3.json");
  }
  auto inst = AssistanceInstance::make(state_from_json(read_json_file(path)), a, b);
  EoaResult r = eoa_regularized(inst);
  std::vector<std::string> t = r.t, tc = r.tc;
  if (!partition.empty()) {
    auto bar = partition.find('|');
    if (bar == std::string::npos) throw InputError("partition is 'T1,T2|Tc1,Tc2'");
    t = split(partition.substr(0, bar), ',');
    tc = split(partition.substr(bar + 1), ',');
  }
  emit(eoa_to_json(r, merging_ledger(inst, t, tc)));
  return kExitOk;
}

int cmd_multicast(const std::string& network_spec, const std::string& source, const std::vector<std::string>& receivers) {
  Network net = load_network(network_spec);
  std::vector<int> rs;
  for (const auto& r : receivers) rs.push_back(net.vertex_index(r));
  Rational rate = classical_multicast_rate(net, net.vertex_index(source), rs);
  emit(Json{{"network", net.name()}, {"source", source}, {"receivers", receivers}, {"rate", to_string(rate)}});
  return kExitOk;
}

int cmd_export(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& name : builtin_script_names()) {
    BuiltinScript b = builtin_script(name);
    std::ofstream out(std::filesystem::path(dir) / (name + ".json"));
    if (!out) throw InputError("cannot write into '" + dir + "'");
    out << script_to_json(b.script, b.network, b.scenario, b.expected_rates).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions and protocol checks for k-pair quantum network communication"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "inner and outer rate regions of a network");
  analyze->add_option("network", an.network, "network file or builtin:<name>")->required();
  analyze->add_option("--scenario", an.scenario, "unassisted|forward|backward|twoway|ent")
      ->check(CLI::IsMember({"unassisted", "forward", "backward", "twoway", "ent"}));
  analyze->add_option("--max-len", an.max_len, "longest admissible path considered");
  analyze->add_option("--fixture", an.fixture, "reference polytope JSON");
  analyze->add_option("--subset", an.subsets, "extra pair subset for cut bounds, e.g. 1,3");
  analyze->add_flag("--require-exact", an.require_exact, "exit 2 when inner and outer differ");
  analyze->add_option("--format", an.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  std::string script, sim_net, sim_scenario;
  bool sample = false;
  uint64_t seed = 1;
  auto* simulate = app.add_subcommand("simulate", "run and verify a protocol script");
  simulate->add_option("script", script, "script file or builtin:<script>")->required();
  simulate->add_option("--network", sim_net, "override the script's network");
  simulate->add_option("--scenario", sim_scenario, "override the script's scenario")
      ->check(CLI::IsMember({"unassisted", "forward", "backward", "twoway", "ent"}));
  simulate->add_flag("--sample", sample, "sample measurement outcomes");
  simulate->add_option("--seed", seed, "seed for --sample");

  std::string tp_net, tp_target, tp_format = "json";
  auto* two_pair = app.add_subcommand("two-pair", "exact back-assisted region of a 2-pair network");
  two_pair->add_option("network", tp_net)->required();
  two_pair->add_option("--target", tp_target, "rate pair to realize, e.g. 0,2");
  two_pair->add_option("--format", tp_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  std::string cs_net;
  auto* certify = app.add_subcommand("certify-shallow", "check the conditions for optimal routing");
  certify->add_option("network", cs_net)->required();

  std::string state, party_a, party_b, partition;
  auto* eoa = app.add_subcommand("eoa", "entanglement of assistance between two parties");
  eoa->add_option("state", state, "state JSON")->required();
  eoa->add_option("A", party_a)->required();
  eoa->add_option("B", party_b)->required();
  eoa->add_option("--partition", partition, "ledger partition 'T1,T2|Tc1' (default: the minimizer)");

  std::string mc_net, mc_source;
  std::vector<std::string> mc_receivers;
  auto* multicast = app.add_subcommand("multicast-rate", "classical multicast rate from one source");
  multicast->add_option("network", mc_net)->required();
  multicast->add_option("source", mc_source)->required();
  multicast->add_option("receivers", mc_receivers)->required();

  std::string export_dir;
  auto* exporter = app.add_subcommand("export-scripts", "write every builtin script as JSON");
  exporter->add_option("dir", export_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(an);
    if (simulate->parsed()) return cmd_simulate(script, sim_net, sim_scenario, sample, seed);
    if (two_pair->parsed()) return cmd_two_pair(tp_net, tp_target, tp_format);
    if (certify->parsed()) return cmd_certify(cs_net);
    if (eoa->parsed()) return cmd_eoa(state, party_a, party_b, partition);
    if (multicast->parsed()) return cmd_multicast(mc_net, mc_source, mc_receivers);
    if (exporter->parsed()) return cmd_export(export_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
