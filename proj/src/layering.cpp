#include "qnet/layering.hpp"

#include <algorithm>
#include <queue>

namespace qnet {

std::string to_string(Layer layer) {
  switch (layer) {
    case Layer::A: return "A";
    case Layer::C1: return "C1";
    case Layer::C2: return "C2";
    case Layer::B: return "B";
  }
  return "?";
}

int LayeredNetwork::copy_in(int original_vertex, Layer layer) const {
  for (int c : duplicates[original_vertex]) {
    if (copies[c].layer == layer) return c;
  }
  return -1;
}

namespace {

std::vector<char> directed_closure(const Network& net, const std::vector<int>& seeds, bool forward) {
  std::vector<char> mark(net.num_vertices(), 0);
  std::queue<int> q;
  for (int s : seeds) {
    if (!mark[s]) {
      mark[s] = 1;
      q.push(s);
    }
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    const auto& incident = forward ? net.out_edges(v) : net.in_edges(v);
    for (int e : incident) {
      int w = forward ? net.edges()[e].head : net.edges()[e].tail;
      if (!mark[w]) {
        mark[w] = 1;
        q.push(w);
      }
    }
  }
  return mark;
}

}  // namespace

LayeredNetwork normalize_layers(const Network& net) {
  if (net.num_pairs() == 0) throw InputError("layering needs at least one pair");
  const int n = net.num_vertices();
  const auto& edges = net.edges();

  std::vector<int> senders, receivers;
  for (const auto& p : net.pairs()) {
    senders.push_back(p.sender);
    receivers.push_back(p.receiver);
  }
  auto from_senders = directed_closure(net, senders, true);
  auto to_receivers = directed_closure(net, receivers, false);

  LayeredNetwork out{net, net, {}, std::vector<std::vector<int>>(n), {}, {}};

  std::vector<char> relevant_edge(edges.size(), 0);
  for (int e = 0; e < net.num_edges(); ++e) {
    relevant_edge[e] = from_senders[edges[e].tail] && to_receivers[edges[e].head];
    if (!relevant_edge[e]) out.pruned_edges.push_back(e);
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    if (relevant_edge[e] && net.is_receiver(edges[e].tail)) {
      throw NonLayerableError("receiver '" + net.vertex_id(edges[e].tail) +
                              "' forwards along channel '" + edges[e].id + "'");
    }
  }

  // Longest incoming route length per vertex over the relevant subgraph.
  std::vector<int> indeg(n, 0), depth(n, 0);
  for (int e = 0; e < net.num_edges(); ++e) {
    if (relevant_edge[e]) ++indeg[edges[e].head];
  }
  std::queue<int> q;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) q.push(v);
  }
  int visited = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ++visited;
    for (int e : net.out_edges(v)) {
      if (!relevant_edge[e]) continue;
      int w = edges[e].head;
      depth[w] = std::max(depth[w], depth[v] + 1);
      if (--indeg[w] == 0) q.push(w);
    }
  }
  if (visited != n) throw NonLayerableError("directed cycle on a sender-to-receiver route");

  // Transition of each relevant edge: 0 = A->C1, 1 = C1->C2, 2 = C2->B.
  std::vector<int> transition(edges.size(), -1);
  for (int e = 0; e < net.num_edges(); ++e) {
    if (!relevant_edge[e]) continue;
    int t = net.is_receiver(edges[e].head) ? 2 : depth[edges[e].tail];
    if (depth[edges[e].tail] > 2 || t > 2) {
      throw NonLayerableError("depth > 3: channel '" + edges[e].id +
                              "' lies beyond three hops after duplication");
    }
    transition[e] = t;
  }

  // Layer range of the copies of each vertex.
  std::vector<int> lo(n, 4), hi(n, -1);
  for (int v = 0; v < n; ++v) {
    if (net.is_receiver(v)) {
      lo[v] = hi[v] = 3;
    } else if (net.is_sender(v)) {
      lo[v] = hi[v] = 0;
    }
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    if (transition[e] < 0) continue;
    int u = edges[e].tail, w = edges[e].head;
    lo[u] = std::min(lo[u], transition[e]);
    hi[u] = std::max(hi[u], transition[e]);
    if (!net.is_receiver(w)) {
      lo[w] = std::min(lo[w], transition[e] + 1);
      hi[w] = std::max(hi[w], transition[e] + 1);
    }
  }

  std::vector<Network::VertexSpec> vspecs;
  std::vector<Network::EdgeSpec> especs;
  for (int v = 0; v < n; ++v) {
    if (hi[v] < lo[v]) continue;
    for (int layer = lo[v]; layer <= hi[v]; ++layer) {
      Role role = Role::helper();
      if (net.is_sender(v) && layer == 0) role = net.vertices()[v].role;
      if (net.is_receiver(v)) role = net.vertices()[v].role;
      out.duplicates[v].push_back(static_cast<int>(vspecs.size()));
      out.copies.push_back({v, static_cast<Layer>(layer)});
      vspecs.push_back({net.vertex_id(v) + "@" + to_string(static_cast<Layer>(layer)), role});
    }
  }
  auto copy_name = [&](int v, int layer) {
    return net.vertex_id(v) + "@" + to_string(static_cast<Layer>(layer));
  };
  for (int v = 0; v < n; ++v) {
    for (int layer = lo[v]; layer < hi[v]; ++layer) {
      especs.push_back({"dup:" + copy_name(v, layer), copy_name(v, layer), copy_name(v, layer + 1),
                        Capacity::unlimited()});
      out.edge_origin.push_back(-1);
    }
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    if (transition[e] < 0) continue;
    especs.push_back({edges[e].id, copy_name(edges[e].tail, transition[e]),
                      copy_name(edges[e].head, transition[e] + 1), edges[e].capacity});
    out.edge_origin.push_back(e);
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : net.pairs()) pairs.emplace_back(copy_name(p.sender, 0), copy_name(p.receiver, 3));
  out.layered = Network::build(std::move(vspecs), std::move(especs), std::move(pairs),
                               net.name().empty() ? "layered" : net.name() + "@layered");
  return out;
}

}  // namespace qnet
