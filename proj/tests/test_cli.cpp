#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "qnet/json_io.hpp"

using namespace qnet;

namespace {

const std::string kData = QNET_DATA_DIR;

struct Run {
  int code = -1;
  std::string out;
};

Run qnet_cli(const std::string& args) {
  std::string cmd = std::string(QNET_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_json(const std::string& args, int expected_code = 0) {
  Run r = qnet_cli(args);
  CHECK(r.code == expected_code);
  return Json::parse(r.out);
}

}  // namespace

// ------------------------------------------------------------- round trips

TEST_CASE("network json round trip") {
  for (auto name : {"butterfly", "inverted_crown", "shallow_demo"}) {
    Network n = builtin_network(name);
    Json j = network_to_json(n);
    Network back = network_from_json(j);
    CHECK(network_to_json(back) == j);
    CHECK(back.num_edges() == n.num_edges());
    CHECK(back.num_pairs() == n.num_pairs());
  }
  Json j = network_to_json(builtin_network("butterfly"));
  j["edges"][0]["capacity"] = "inf";
  CHECK(network_from_json(j).edges()[0].capacity.is_unlimited());
  j["edges"][0]["head"] = "nowhere";
  CHECK_THROWS_AS(network_from_json(j), InputError);
  CHECK_THROWS_AS(load_network(kData + "/does_not_exist.json"), InputError);
  CHECK(load_network("builtin:butterfly").num_vertices() == 6);

  // Edge ids and unit capacities are filled in when omitted.
  Network relay = load_network(kData + "/networks/shared_relay.json");
  CHECK(relay.num_pairs() == 2);
  CHECK(relay.edges()[relay.edge_index("A2->C")].capacity == Capacity(1));
  CHECK(relay.edges()[relay.edge_index("C->B2")].capacity == Capacity(2));
}

TEST_CASE("polytope json round trip and csv") {
  for (const auto& f : std::filesystem::directory_iterator(kData + "/fixtures")) {
    CAPTURE(f.path().string());
    RatePolytope p = load_polytope(f.path().string());
    CHECK(p.provenance() == Provenance::Fixture);
    RatePolytope back = polytope_from_json(polytope_to_json(p));
    CHECK(back == p);
    CHECK(back.provenance() == p.provenance());
  }
  RatePolytope tri = RatePolytope::hull_of(2, {{1, 0}, {0, 1}}, Provenance::Exact);
  std::string csv = polytope_csv(tri);
  CHECK(csv.rfind("kind,r1,r2,b\n", 0) == 0);
  CHECK(csv.find("facet,1,1,1") != std::string::npos);
  Json bad = polytope_to_json(tri);
  bad["vertices"].push_back(Json::array({"2", "2"}));
  CHECK_THROWS_AS(polytope_from_json(bad), InputError);
}

TEST_CASE("state json round trip") {
  PureState s = random_state({{"A", "a"}, {"B", "b"}, {"C", "c"}}, 3);
  PureState back = state_from_json(state_to_json(s));
  CHECK(fidelity(back, s) == doctest::Approx(1));
  PureState g = state_from_json(read_json_file(kData + "/states/ghz3.json"));
  CHECK(g.num_qubits() == 3);
  CHECK(entropy(g, {"a"}) == doctest::Approx(1));
  // Character q is qubit q: "10" sets qubit 0, which is index 1.
  Json one = {{"registers", {{{"party", "A"}, {"name", "a"}, {"qubit", 0}}, {{"party", "B"}, {"name", "b"}, {"qubit", 1}}}},
              {"amplitudes", {{"10", 1, 0}}}};
  PureState o = state_from_json(one);
  CHECK(std::abs(o.amplitudes()[1] - Complex(1)) < 1e-12);
}

TEST_CASE("script json round trip") {
  for (const auto& name : builtin_script_names()) {
    CAPTURE(name);
    auto b = builtin_script(name);
    Json j = script_to_json(b.script, b.network, b.scenario, b.expected_rates);
    auto doc = script_from_json(j);
    CHECK(script_to_json(doc.script, doc.network, doc.scenario, doc.expected_rates) == j);
    REQUIRE(doc.network);
    auto r = verify_protocol(*doc.network, *doc.scenario, doc.script, doc.expected_rates);
    CHECK(r.passed == (name != "butterfly_back_broken"));
    auto file = load_script(kData + "/scripts/" + name + ".json");
    CHECK(script_to_json(file.script, file.network, file.scenario, file.expected_rates) == j);
  }
}

TEST_CASE("report json uses 1-based pairs") {
  Network b = builtin_network("butterfly");
  auto bounds = cut_outer_bounds(b, Scenario::Unassisted, {{0, 1}});
  Json j = cut_bound_to_json(b, bounds[0]);
  CHECK(j["pairs"] == Json::array({1, 2}));
}

// ---------------------------------------------------------------- binary

TEST_CASE("analyze: unassisted butterfly is exact") {
  Json j = run_json("analyze builtin:butterfly --scenario unassisted --require-exact");
  CHECK(j["exact"] == true);
  CHECK(j["certification"]["status"] == "certified");
  CHECK(j["outer"]["tightened_by"] == "shallow certification");
  CHECK(j["outer"]["region"]["vertices"] == Json::parse(R"([["0","0"],["0","1"],["1","0"]])"));
}

TEST_CASE("analyze: forward butterfly has a gap and matches the fixture inner") {
  Run r = qnet_cli("analyze builtin:butterfly --scenario forward --require-exact --fixture " + kData +
                   "/fixtures/butterfly_forward.json");
  CHECK(r.code == 2);
  Json j = Json::parse(r.out);
  CHECK(j["exact"] == false);
  CHECK(j["fixture"]["matches_inner"] == true);
  CHECK(j["fixture"]["inside_outer"] == true);
  CHECK(qnet_cli("analyze builtin:butterfly --scenario forward").code == 0);
}

TEST_CASE("analyze: backward crown and entanglement assistance") {
  CHECK(run_json("analyze builtin:inverted_crown --scenario backward --require-exact")["exact"] == true);
  Json e = run_json("analyze builtin:butterfly --scenario ent --require-exact --fixture " + kData +
                    "/fixtures/butterfly_coded_classical.json");
  CHECK(e["exact"] == true);
}

TEST_CASE("analyze: csv output") {
  Run r = qnet_cli("analyze builtin:butterfly --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("region,kind,r1,r2,b\n", 0) == 0);
  CHECK(r.out.find("outer,facet,1,1,1") != std::string::npos);
}

TEST_CASE("simulate exit codes") {
  for (const auto& name : builtin_script_names()) {
    CAPTURE(name);
    Run r = qnet_cli("simulate " + kData + "/scripts/" + name + ".json");
    CHECK(r.code == (name == "butterfly_back_broken" ? 3 : 0));
    Json j = Json::parse(r.out);
    CHECK(j["passed"] == (r.code == 0));
  }
  CHECK(qnet_cli("simulate builtin:butterfly_back_02 --sample --seed 4").code == 0);
}

TEST_CASE("two-pair, certify-shallow, eoa, multicast") {
  Json t = run_json("two-pair builtin:butterfly --target 0,2");
  CHECK(t["exact"] == true);
  CHECK(t["sum_max"] == "2");
  Json c = run_json("certify-shallow builtin:inverted_crown");
  CHECK(c["status"] == "certified");
  Json e = run_json("eoa " + kData + "/states/ghz3.json A B");
  CHECK(e["value"].get<double>() == doctest::Approx(1).epsilon(1e-9));
  CHECK(e["partition"]["T"].empty());
  Json p = run_json("eoa " + kData + "/states/ghz3.json A B --partition \"C|\"");
  CHECK(p["ledger"]["A-B"]["ebits"].get<double>() == doctest::Approx(1).epsilon(1e-9));
  Json m = run_json("multicast-rate builtin:butterfly A1 B1 B2");
  CHECK(m["rate"] == "1");
}

TEST_CASE("input errors exit with 1") {
  CHECK(qnet_cli("analyze " + kData + "/missing.json").code == 1);
  CHECK(qnet_cli("analyze builtin:butterfly --scenario sideways").code == 1);
  CHECK(qnet_cli("simulate builtin:no_such_script").code == 1);
  CHECK(qnet_cli("eoa " + kData + "/states/ghz3.json A A").code == 1);
  CHECK(qnet_cli("eoa " + kData + "/states/ghz3.json A B --partition \"C|C\"").code == 1);
  CHECK(qnet_cli("multicast-rate builtin:butterfly A1 A1").code == 1);
  CHECK(qnet_cli("frobnicate").code == 1);
}

TEST_CASE("output is byte-identical across runs") {
  for (const std::string& args : std::vector<std::string>{"analyze builtin:inverted_crown --scenario forward", "analyze builtin:butterfly --format csv",
                           "two-pair builtin:butterfly", "eoa " + kData + "/states/ghz3.json A B",
                           "simulate builtin:crown_timeshare"}) {
    CAPTURE(args);
    CHECK(qnet_cli(args).out == qnet_cli(args).out);
  }
}

TEST_CASE("export-scripts writes loadable files") {
  auto dir = std::filesystem::temp_directory_path() / "qnet_export_test";
  std::filesystem::remove_all(dir);
  CHECK(qnet_cli("export-scripts " + dir.string()).code == 0);
  for (const auto& name : builtin_script_names()) {
    auto path = dir / (name + ".json");
    REQUIRE(std::filesystem::exists(path));
    CHECK(read_json_file(path.string()) == read_json_file(kData + "/scripts/" + name + ".json"));
  }
  std::filesystem::remove_all(dir);
}
