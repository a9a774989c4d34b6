#include <algorithm>
#include <set>

#include "qnet/regions.hpp"

namespace qnet {

namespace {

RatePolytope directed_routing_region(const Network& net) {
  const int k = net.num_pairs();
  return materialize(
      k,
      [&](const RationalVector& w) {
        bool any = std::any_of(w.begin(), w.end(), [](const Rational& x) { return x > 0; });
        if (!any) return SupportAnswer{0, RationalVector(k, Rational(0))};
        auto best = max_weighted_rate(net, w, Orientation::Directed);
        return SupportAnswer{best.value, best.rates};
      },
      Provenance::Inner);
}

}  // namespace

EntAssistedRegion ent_assisted_region(const Network& net, const std::optional<RatePolytope>& classical_fixture) {
  const int k = net.num_pairs();
  if (k == 0) throw InputError("network has no commodity pairs");
  if (classical_fixture && classical_fixture->dim() != k) throw InputError("fixture dimension mismatch");

  // Superdense coding doubles every quantum cut bound for classical data.
  RatePolytope outer = outer_region(net, Scenario::Unassisted).scaled(2).with_provenance(Provenance::Outer);
  RatePolytope inner = directed_routing_region(net).scaled(2);
  if (classical_fixture) inner = inner.hull_union(*classical_fixture);
  inner = inner.with_provenance(Provenance::Inner);

  EntAssistedRegion out{outer, inner, outer.scaled(Rational(1, 2)), inner.scaled(Rational(1, 2)), false, {}, {}};
  out.gap = compare_regions(inner, outer);
  out.exact = out.gap.exact;
  if (out.exact) {
    out.classical_inner = out.classical_inner.with_provenance(Provenance::Exact);
    out.classical_outer = out.classical_outer.with_provenance(Provenance::Exact);
    out.quantum_inner = out.quantum_inner.with_provenance(Provenance::Exact);
    out.quantum_outer = out.quantum_outer.with_provenance(Provenance::Exact);
    out.note = "inner and outer bounds coincide";
  } else {
    out.note = "gap between the routing/fixture inner bound and the cut outer bound in direction " +
               format_point(out.gap.witness_weight) +
               "; no classical code reaching the cut bound is known here, so it is left open";
  }
  return out;
}

Rational classical_multicast_rate(const Network& net, int source, const std::vector<int>& receivers) {
  if (receivers.empty()) throw InputError("multicast needs at least one receiver");
  if (source < 0 || source >= net.num_vertices()) throw InputError("source vertex out of range");
  std::optional<Rational> best;
  for (int r : receivers) {
    if (r == source) throw InputError("source is among the receivers");
    Rational v = max_flow_min_cut(net, {source}, {r}, Orientation::Directed).value;
    if (!best || v < *best) best = v;
  }
  return *best;
}

}  // namespace qnet
