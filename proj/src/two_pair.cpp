#include <algorithm>

#include "qnet/regions.hpp"

namespace qnet {

namespace {

Rational finite_or_throw(const Capacity& c, const char* what) {
  if (c.is_unlimited()) throw Error(std::string(what) + " is unbounded (unlimited channels)");
  return c.value();
}

}  // namespace

TwoPairExact two_pair_back_exact(const Network& net) {
  if (net.num_pairs() != 2) throw InputError("two-pair solver needs exactly 2 pairs");
  const auto& p1 = net.pairs()[0];
  const auto& p2 = net.pairs()[1];
  const auto und = Orientation::Undirected;

  Rational r1 = max_flow_min_cut(net, {p1.sender}, {p1.receiver}, und).value;
  Rational r2 = max_flow_min_cut(net, {p2.sender}, {p2.receiver}, und).value;
  auto vert = max_flow_min_cut(net, {p1.sender, p2.sender}, {p1.receiver, p2.receiver}, und);
  auto horiz = max_flow_min_cut(net, {p1.sender, p2.receiver}, {p2.sender, p1.receiver}, und);
  Rational sum = std::min(vert.value, horiz.value);

  TwoPairDecomposition dec;
  dec.s_v = vert.cut.side;
  dec.s_h = horiz.cut.side;
  // Quadrants: 0 = A1's (S_v and S_h), 1 = A2's (S_v only), 2 = B2's (S_h only), 3 = B1's.
  std::vector<int> quadrant(net.num_vertices(), 3);
  std::vector<char> in_v(net.num_vertices(), 0), in_h(net.num_vertices(), 0);
  for (int v : dec.s_v) in_v[v] = 1;
  for (int v : dec.s_h) in_h[v] = 1;
  for (int v = 0; v < net.num_vertices(); ++v) {
    quadrant[v] = in_v[v] ? (in_h[v] ? 0 : 1) : (in_h[v] ? 2 : 3);
  }
  for (const auto& e : net.edges()) {
    int a = std::min(quadrant[e.tail], quadrant[e.head]), b = std::max(quadrant[e.tail], quadrant[e.head]);
    if (a == b) continue;
    Rational c = finite_or_throw(e.capacity, "bundle capacity");
    if (a == 0 && b == 2) dec.v1 += c;
    if (a == 1 && b == 3) dec.v2 += c;
    if (a == 0 && b == 1) dec.h1 += c;
    if (a == 2 && b == 3) dec.h2 += c;
    if (a == 0 && b == 3) dec.d1 += c;
    if (a == 1 && b == 2) dec.d2 += c;
  }
  // Bottleneck of a terminal: undirected flow from it to outside its quadrant.
  auto bottleneck = [&](int terminal) {
    std::vector<int> outside;
    for (int v = 0; v < net.num_vertices(); ++v) {
      if (quadrant[v] != quadrant[terminal]) outside.push_back(v);
    }
    return max_flow_min_cut(net, {terminal}, outside, und).value;
  };
  dec.a1 = bottleneck(p1.sender);
  dec.a2 = bottleneck(p2.sender);
  dec.b1 = bottleneck(p1.receiver);
  dec.b2 = bottleneck(p2.receiver);

  std::vector<Halfspace> hs{
      {{1, 0}, r1, "pair 1 cut"},
      {{0, 1}, r2, "pair 2 cut"},
      {{1, 1}, sum, vert.value <= horiz.value ? "vertical cut " + describe_cut(net, dec.s_v)
                                               : "horizontal cut " + describe_cut(net, dec.s_h)},
  };
  return {RatePolytope(2, std::move(hs), Provenance::Exact), dec, r1, r2, sum};
}

TwoPairProtocol two_pair_back_protocol(const Network& net, const RationalVector& target) {
  TwoPairExact exact = two_pair_back_exact(net);
  if (target.size() != 2 || !exact.region.contains(target)) {
    throw InputError("target " + format_point(target) + " outside the two-pair region");
  }
  TwoPairProtocol out{target, {}, "interior"};
  if (target[0].is_zero() && target[1].is_zero()) {
    out.case_label = "zero";
    return out;
  }
  const auto& d = exact.decomposition;
  Rational r1_star = std::min(exact.r1_max, exact.sum_max);
  Rational r2_star = std::min(exact.r2_max, exact.sum_max);
  auto label = [](const Rational& a, const Rational& b, const Rational& x1, const Rational& x2,
                  const Rational& y1, const Rational& y2) -> std::string {
    // x1/y2 and y1/x2 are the two square routes of the maximized pair.
    if (std::min(a, b) <= std::min(x1 + y1, x2 + y2)) return "1";
    if ((x1 < y2 && y1 < x2) || (x1 > y2 && y1 > x2)) return "2a";
    return "2b";
  };
  if (target == RationalVector{r1_star, exact.sum_max - r1_star}) {
    out.case_label = label(d.a1, d.b1, d.v1, d.v2, d.h1, d.h2);
  } else if (target == RationalVector{exact.sum_max - r2_star, r2_star}) {
    out.case_label = label(d.a2, d.b2, d.v1, d.h1, d.h2, d.v2) + "'";
  } else if (target[0] + target[1] == exact.sum_max) {
    out.case_label = "time-share";
  }
  auto check = routing_feasible(net, target, Orientation::Undirected);
  if (!check.feasible) throw Error("no undirected routing reaches " + format_point(target) + ": " + check.reason);
  out.paths = decompose_paths(net, *check.witness);
  return out;
}

}  // namespace qnet
