#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qnet/flowcore.hpp"
#include "qnet/lp.hpp"

using namespace qnet;

namespace {

std::vector<int> sources_of(const Network& net, int pair) { return {net.pairs()[pair].sender}; }
std::vector<int> sinks_of(const Network& net, int pair) { return {net.pairs()[pair].receiver}; }

}  // namespace

TEST_CASE("lp: small optimum") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3 -> (3,1), value 11
  lp::Problem p;
  int x = p.add_variable(3), y = p.add_variable(2);
  p.add_constraint({{x, 1}, {y, 1}}, lp::Sense::LessEqual, 4);
  p.add_constraint({{x, 1}, {y, 3}}, lp::Sense::LessEqual, 6);
  p.add_constraint({{x, 1}}, lp::Sense::LessEqual, 3);
  auto s = lp::maximize(p);
  REQUIRE(s.optimal());
  CHECK(s.objective == 11);
  CHECK(s.values[x] == 3);
  CHECK(s.values[y] == 1);
}

TEST_CASE("lp: equality and >= rows, fractional optimum") {
  // max x + y, 2x + y = 3, x >= 1/2 -> y = 3 - 2x, objective 3 - x at x = 1/2
  lp::Problem p;
  int x = p.add_variable(1), y = p.add_variable(1);
  p.add_constraint({{x, 2}, {y, 1}}, lp::Sense::Equal, 3);
  p.add_constraint({{x, 1}}, lp::Sense::GreaterEqual, Rational(1, 2));
  auto s = lp::maximize(p);
  REQUIRE(s.optimal());
  CHECK(s.objective == Rational(5, 2));
}

TEST_CASE("lp: infeasible and unbounded") {
  lp::Problem p;
  int x = p.add_variable(1);
  p.add_constraint({{x, 1}}, lp::Sense::LessEqual, 1);
  p.add_constraint({{x, 1}}, lp::Sense::GreaterEqual, 2);
  CHECK(lp::maximize(p).status == lp::Status::Infeasible);

  lp::Problem q;
  int a = q.add_variable(1), b = q.add_variable(0);
  q.add_constraint({{a, 1}, {b, -1}}, lp::Sense::LessEqual, 1);
  CHECK(lp::maximize(q).status == lp::Status::Unbounded);
}

TEST_CASE("lp: degenerate example terminates") {
  // Beale's cycling example; Bland's rule must still reach the optimum 1/20.
  lp::Problem p;
  int x1 = p.add_variable(Rational(3, 4)), x2 = p.add_variable(-150), x3 = p.add_variable(Rational(1, 50)),
      x4 = p.add_variable(-6);
  p.add_constraint({{x1, Rational(1, 4)}, {x2, -60}, {x3, Rational(-1, 25)}, {x4, 9}}, lp::Sense::LessEqual, 0);
  p.add_constraint({{x1, Rational(1, 2)}, {x2, -90}, {x3, Rational(-1, 50)}, {x4, 3}}, lp::Sense::LessEqual, 0);
  p.add_constraint({{x3, 1}}, lp::Sense::LessEqual, 1);
  auto s = lp::maximize(p);
  REQUIRE(s.optimal());
  CHECK(s.objective == Rational(1, 20));
}

TEST_CASE("max flow on the butterfly") {
  Network b = builtin_network("butterfly");
  auto r = max_flow_min_cut(b, sources_of(b, 0), sinks_of(b, 0), Orientation::Directed);
  CHECK(r.value == 1);
  CHECK(r.cut.forward == Capacity(1));
  auto u = max_flow_min_cut(b, sources_of(b, 0), sinks_of(b, 0), Orientation::Undirected);
  CHECK(u.value == 2);
  CHECK(u.cut.both() == Capacity(2));
}

TEST_CASE("max flow equals brute-force min cut on random networks") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Network net = oracle::random_network(seed, 7, 1, 0.3, 3);
    auto d = max_flow_min_cut(net, sources_of(net, 0), sinks_of(net, 0), Orientation::Directed);
    CHECK(d.value == oracle::brute_directed_cut(net, sources_of(net, 0), sinks_of(net, 0)));
    CHECK(d.cut.forward == Capacity(d.value));
    auto u = max_flow_min_cut(net, sources_of(net, 0), sinks_of(net, 0), Orientation::Undirected);
    CHECK(u.value == oracle::brute_separating_cut(net, {0}));
    CHECK(u.cut.both() == Capacity(u.value));
  }
}

TEST_CASE("overlapping terminals are rejected") {
  Network b = builtin_network("butterfly");
  CHECK_THROWS_AS(max_flow_min_cut(b, {0}, {0}, Orientation::Directed), InputError);
}

TEST_CASE("path decomposition round trip") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Network net = oracle::random_network(seed, 7, 2, 0.3, 2);
    for (auto o : {Orientation::Directed, Orientation::Undirected}) {
      auto best = max_weighted_rate(net, {1, 1}, o);
      CHECK_FALSE(flow_violation(net, best.flow));
      auto paths = decompose_paths(net, best.flow);
      RationalVector rates(2, 0);
      for (const auto& p : paths) {
        CHECK(p.amount > 0);
        rates[p.pair] += p.amount;
        auto vs = p.vertices(net);
        CHECK(vs.front() == net.pairs()[p.pair].sender);
        CHECK(vs.back() == net.pairs()[p.pair].receiver);
      }
      CHECK(rates == best.rates);
      CHECK_FALSE(flow_violation(net, flow_from_paths(net, paths, o)));
    }
  }
}

TEST_CASE("flow violations are reported") {
  Network b = builtin_network("butterfly");
  CommodityFlow f;
  f.orientation = Orientation::Directed;
  f.rates = {1, 1};
  f.edge_flow.assign(2, RationalVector(b.num_edges(), 0));
  // Both pairs route through C1->C2 at rate 1.
  for (auto id : {"A1->C1", "C1->C2", "C2->B1"}) f.edge_flow[0][b.edge_index(id)] = 1;
  for (auto id : {"A2->C1", "C1->C2", "C2->B2"}) f.edge_flow[1][b.edge_index(id)] = 1;
  auto v = flow_violation(b, f);
  REQUIRE(v);
  CHECK(v->find("C1->C2") != std::string::npos);
  f.edge_flow[1][b.edge_index("C2->B2")] = 0;
  CHECK(flow_violation(b, f));
  CHECK_THROWS_AS(decompose_paths(b, f), InputError);
}

TEST_CASE("routing feasibility with certificate") {
  Network b = builtin_network("butterfly");
  CHECK(routing_feasible(b, {1, 0}, Orientation::Directed).feasible);
  CHECK(routing_feasible(b, {Rational(1, 2), Rational(1, 2)}, Orientation::Directed).feasible);
  auto no = routing_feasible(b, {2, 0}, Orientation::Directed);
  CHECK_FALSE(no.feasible);
  REQUIRE(no.violated_cut);
  CHECK(no.violated_cut->first == 0);
  CHECK(no.violated_cut->second.forward == Capacity(1));
  CHECK(routing_feasible(b, {0, 2}, Orientation::Undirected).feasible);
  CHECK_THROWS_AS(routing_feasible(b, {-1, 0}, Orientation::Directed), InputError);
}

TEST_CASE("weighted routing matches the edge LP oracle") {
  Network b = builtin_network("butterfly");
  CHECK(max_weighted_rate(b, {1, 1}, Orientation::Directed).value == 1);
  CHECK(max_weighted_rate(b, {1, 1}, Orientation::Undirected).value == 2);
  CHECK_THROWS_AS(max_weighted_rate(b, {0, 0}, Orientation::Directed), InputError);
  for (uint64_t seed = 100; seed < 130; ++seed) {
    Network net = oracle::random_network(seed, 7, 2, 0.25, 2);
    RationalVector w{Rational(seed % 3 + 1), Rational(seed % 2 + 1)};
    CHECK(max_weighted_rate(net, w, Orientation::Directed).value == oracle::edge_lp_support(net, w, false));
    CHECK(max_weighted_rate(net, w, Orientation::Undirected).value == oracle::edge_lp_support(net, w, true));
  }
}
