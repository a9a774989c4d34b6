#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qnet/json_io.hpp"
#include "qnet/regions.hpp"
#include "qnet/shallowcert.hpp"

using namespace qnet;

namespace {

bool has_reason(const ShallowCertificate& c, const std::string& needle) {
  for (const auto& r : c.reasons) {
    if (r.find(needle) != std::string::npos) return true;
  }
  return false;
}

// Butterfly plus a receiver that feeds a dead-end helper. Nothing else changes:
// the extra channel lies on no sender-to-receiver route.
Network receiver_forwards() {
  Network b = builtin_network("butterfly");
  auto vs = b.vertex_specs();
  vs.push_back({"E", Role::helper()});
  auto es = b.edge_specs();
  es.push_back({"B1->E", "B1", "E", Capacity(1)});
  return Network::build(vs, es, {}, "receiver_forwards");
}

// Butterfly with C2->B1 detoured through an extra helper D.
Network long_route() {
  Network b = builtin_network("butterfly");
  auto vs = b.vertex_specs();
  vs.push_back({"D", Role::helper()});
  auto es = b.edge_specs();
  for (auto& e : es) {
    if (e.id == "C2->B1") {
      e.id = "C2->D";
      e.head = "D";
    }
  }
  es.push_back({"D->B1", "D", "B1", Capacity(1)});
  return Network::build(vs, es, {}, "long_route");
}

Network diamond() {
  return Network::build({{"A1", Role::sender(0)},
                         {"X", Role::helper()},
                         {"Y", Role::helper()},
                         {"Z", Role::helper()},
                         {"B1", Role::receiver(0)}},
                        {{"A1->X", "A1", "X", Capacity(1)},
                         {"A1->Y", "A1", "Y", Capacity(1)},
                         {"X->Z", "X", "Z", Capacity(1)},
                         {"Y->Z", "Y", "Z", Capacity(1)},
                         {"Z->B1", "Z", "B1", Capacity(1)}},
                        {}, "diamond");
}

// Random network whose channels only go from an earlier to a later layer of
// A, C1, C2, B, so routes are short; many of these get certified.
Network random_shallow(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0, 1);
  std::vector<std::pair<std::string, int>> layer{{"A1", 0}, {"A2", 0}, {"X1", 1}, {"X2", 1}, {"Y1", 2}, {"B1", 3}, {"B2", 3}};
  std::vector<Network::VertexSpec> vs{{"A1", Role::sender(0)},  {"A2", Role::sender(1)}, {"X1", Role::helper()},
                                      {"X2", Role::helper()},   {"Y1", Role::helper()},  {"B1", Role::receiver(0)},
                                      {"B2", Role::receiver(1)}};
  std::vector<Network::EdgeSpec> es;
  for (const auto& [t, lt] : layer) {
    for (const auto& [h, lh] : layer) {
      if (lh > lt && coin(rng) < 0.35) {
        es.push_back({t + "->" + h, t, h, Capacity(Rational(1 + static_cast<int>(coin(rng) * 2)))});
      }
    }
  }
  return Network::build(vs, es, {}, "shallow" + std::to_string(seed));
}

}  // namespace

TEST_CASE("builtins are certified") {
  for (auto name : {"butterfly", "inverted_crown", "shallow_demo"}) {
    CAPTURE(name);
    auto c = certify_routing_optimal(builtin_network(name));
    CHECK(c.certified);
    CHECK(c.reasons.empty());
    CHECK(c.conditions.receivers_are_sinks);
    CHECK(c.conditions.max_path_len <= 3);
    CHECK(c.conditions.layered.has_value());
    CHECK(c.conditions.forbidden_4cycles.empty());
    REQUIRE(c.region);
    CHECK(c.region->provenance() == Provenance::Exact);
  }
}

TEST_CASE("certified butterfly region is the triangle") {
  auto c = certify_routing_optimal(builtin_network("butterfly"));
  REQUIRE(c.region);
  RatePolytope tri = RatePolytope::hull_of(2, {{1, 0}, {0, 1}}, Provenance::Exact);
  CHECK(*c.region == tri);
  CHECK(*c.region == load_polytope(std::string(QNET_DATA_DIR) + "/fixtures/butterfly_unassisted.json"));
  CHECK(c.conditions.max_path_len == 3);
}

TEST_CASE("certified crown region matches the fixture") {
  auto c = certify_routing_optimal(builtin_network("inverted_crown"));
  REQUIRE(c.region);
  CHECK(*c.region == load_polytope(std::string(QNET_DATA_DIR) + "/fixtures/crown_unassisted.json"));
}

TEST_CASE("receiver that forwards") {
  auto c = certify_routing_optimal(receiver_forwards());
  CHECK_FALSE(c.certified);
  CHECK(c.reasons.size() == 1);
  CHECK(has_reason(c, "receiver with outgoing channels: B1"));
  CHECK(c.conditions.forwarding_receivers.size() == 1);
  CHECK_FALSE(c.region);
}

TEST_CASE("sender-to-receiver route longer than three") {
  auto c = certify_routing_optimal(long_route());
  CHECK_FALSE(c.certified);
  CHECK(c.conditions.max_path_len == 4);
  CHECK(has_reason(c, "path of length 4 exceeds 3"));
  CHECK(c.conditions.receivers_are_sinks);
}

TEST_CASE("sender-anchored 4-cycle") {
  auto c = certify_routing_optimal(diamond());
  CHECK_FALSE(c.certified);
  CHECK(c.reasons.size() == 1);
  CHECK(has_reason(c, "forbidden 4-cycle"));
  REQUIRE(c.conditions.forbidden_4cycles.size() >= 1);
  CHECK(c.conditions.max_path_len == 3);
}

TEST_CASE("path search budget") {
  CHECK_THROWS_AS(check_conditions(builtin_network("butterfly"), 2), SearchBudgetExceeded);
  CHECK_NOTHROW(check_conditions(builtin_network("butterfly")));
}

TEST_CASE("certified regions on random networks match the routing LP") {
  int certified = 0;
  for (uint64_t seed = 1; seed <= 400 && certified < 15; ++seed) {
    Network net = random_shallow(seed);
    auto c = certify_routing_optimal(net);
    if (!c.certified) continue;
    ++certified;
    CAPTURE(seed);
    REQUIRE(c.region);
    auto outer = outer_region(net, Scenario::Unassisted);
    CHECK(c.region->subset_of(outer));
    for (RationalVector w : {RationalVector{1, 0}, RationalVector{0, 1}, RationalVector{1, 1}, RationalVector{2, 1},
                             RationalVector{1, 3}}) {
      CHECK(c.region->support(w) == oracle::edge_lp_support(net, w, false));
    }
  }
  CHECK(certified >= 5);
}
