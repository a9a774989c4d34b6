#include "qnet/shallowcert.hpp"

#include <algorithm>

#include "qnet/regions.hpp"

namespace qnet {

namespace {

int longest_simple_path(const Network& net, long budget) {
  long visited = 0;
  int best = -1;
  std::vector<char> on_path(net.num_vertices(), 0);
  auto dfs = [&](auto&& self, int v, int depth) -> void {
    if (++visited > budget) {
      throw SearchBudgetExceeded("longest-path search exceeded " + std::to_string(budget) + " nodes");
    }
    if (net.is_receiver(v)) best = std::max(best, depth);
    for (int e : net.out_edges(v)) {
      int w = net.edges()[e].head;
      if (on_path[w]) continue;
      on_path[w] = 1;
      self(self, w, depth + 1);
      on_path[w] = 0;
    }
  };
  for (const auto& p : net.pairs()) {
    on_path[p.sender] = 1;
    dfs(dfs, p.sender, 0);
    on_path[p.sender] = 0;
  }
  return best;
}

std::vector<FourCycle> find_forbidden_cycles(const LayeredNetwork& ln) {
  const Network& g = ln.layered;
  std::vector<FourCycle> out;
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (ln.layer_of(s) != Layer::A || !ln.original.is_sender(ln.copies[s].original)) continue;
    const int owner = ln.copies[s].original;
    // C1-layer successors of the sender, excluding its own copies.
    std::vector<int> firsts;
    for (int e : g.out_edges(s)) {
      int c = g.edges()[e].head;
      if (ln.layer_of(c) == Layer::C1 && ln.copies[c].original != owner) firsts.push_back(c);
    }
    std::sort(firsts.begin(), firsts.end());
    firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
    for (size_t i = 0; i < firsts.size(); ++i) {
      for (size_t j = i + 1; j < firsts.size(); ++j) {
        int a = firsts[i], b = firsts[j];
        if (ln.copies[a].original == ln.copies[b].original) continue;
        std::vector<int> common;
        for (int e : g.out_edges(a)) {
          int c2 = g.edges()[e].head;
          if (ln.layer_of(c2) != Layer::C2) continue;
          for (int f : g.out_edges(b)) {
            if (g.edges()[f].head == c2) common.push_back(c2);
          }
        }
        std::sort(common.begin(), common.end());
        common.erase(std::unique(common.begin(), common.end()), common.end());
        for (int c2 : common) out.push_back({s, a, c2, b});
      }
    }
  }
  return out;
}

}  // namespace

std::string describe_cycle(const LayeredNetwork& ln, const FourCycle& c) {
  const auto& g = ln.layered;
  return g.vertex_id(c.sender) + " -> " + g.vertex_id(c.c1_first) + " -> " + g.vertex_id(c.c2) + " <- " +
         g.vertex_id(c.c1_second) + " <- " + g.vertex_id(c.sender);
}

ShallowConditions check_conditions(const Network& net, long budget) {
  ShallowConditions out;
  for (int v = 0; v < net.num_vertices(); ++v) {
    if (net.is_receiver(v) && !net.out_edges(v).empty()) out.forwarding_receivers.push_back(v);
  }
  out.receivers_are_sinks = out.forwarding_receivers.empty();
  out.max_path_len = longest_simple_path(net, budget);
  try {
    out.layered = normalize_layers(net);
    out.forbidden_4cycles = find_forbidden_cycles(*out.layered);
  } catch (const NonLayerableError& e) {
    out.layering_error = e.what();
  }
  return out;
}

ShallowCertificate certify_routing_optimal(const Network& net, long budget) {
  ShallowCertificate cert;
  cert.conditions = check_conditions(net, budget);
  const auto& c = cert.conditions;
  if (!c.receivers_are_sinks) {
    std::string who;
    for (int v : c.forwarding_receivers) who += (who.empty() ? "" : ",") + net.vertex_id(v);
    cert.reasons.push_back("receiver with outgoing channels: " + who);
  }
  if (c.max_path_len > 3) {
    cert.reasons.push_back("sender-to-receiver path of length " + std::to_string(c.max_path_len) + " exceeds 3");
  }
  if (!c.layering_error.empty()) cert.reasons.push_back("not layerable: " + c.layering_error);
  if (!c.forbidden_4cycles.empty()) {
    cert.reasons.push_back("forbidden 4-cycle: " + describe_cycle(*c.layered, c.forbidden_4cycles.front()));
  }
  cert.certified = cert.reasons.empty();
  if (cert.certified && net.num_pairs() <= kMaterializeMaxPairs) {
    auto inner = inner_region(net, Scenario::Unassisted);
    cert.region = inner.polytope()->with_provenance(Provenance::Exact);
  }
  return cert;
}

}  // namespace qnet
