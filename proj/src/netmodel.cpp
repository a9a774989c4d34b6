#include "qnet/netmodel.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace qnet {

Network Network::build(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges,
                       std::vector<std::pair<std::string, std::string>> pairs, std::string name) {
  Network net;
  net.name_ = std::move(name);

  std::map<std::string, int, std::less<>> index;
  for (auto& v : vertices) {
    if (v.id.empty()) throw InputError("vertex with empty id");
    if (!index.emplace(v.id, static_cast<int>(net.vertices_.size())).second) {
      throw InputError("duplicate vertex id '" + v.id + "'");
    }
    net.vertices_.push_back({std::move(v.id), v.role});
  }

  std::set<std::string> edge_ids;
  for (auto& e : edges) {
    auto t = index.find(e.tail);
    auto h = index.find(e.head);
    if (t == index.end()) throw InputError("unknown vertex reference '" + e.tail + "'");
    if (h == index.end()) throw InputError("unknown vertex reference '" + e.head + "'");
    if (t->second == h->second) throw InputError("self-loop on vertex '" + e.tail + "'");
    if (!e.capacity.is_unlimited() && e.capacity.value() < 0) {
      throw InputError("negative capacity on edge '" + e.id + "'");
    }
    if (e.id.empty()) e.id = "e" + std::to_string(net.edges_.size());
    if (!edge_ids.insert(e.id).second) throw InputError("duplicate edge id '" + e.id + "'");
    net.edges_.push_back({std::move(e.id), t->second, h->second, e.capacity});
  }

  // Pairs: either explicit or derived from roles; both must agree.
  std::map<int, int> sender_of, receiver_of;
  for (int v = 0; v < net.num_vertices(); ++v) {
    const Role& r = net.vertices_[v].role;
    if (r.kind == RoleKind::Helper) continue;
    if (r.pair < 0) throw InputError("negative pair index on vertex '" + net.vertices_[v].id + "'");
    auto& slot = r.kind == RoleKind::Sender ? sender_of : receiver_of;
    if (!slot.emplace(r.pair, v).second) {
      throw InputError("duplicate pair roles: two vertices claim the same role for pair " +
                       std::to_string(r.pair + 1));
    }
  }
  if (pairs.empty()) {
    int k = 0;
    for (const auto& [p, v] : sender_of) k = std::max(k, p + 1);
    for (const auto& [p, v] : receiver_of) k = std::max(k, p + 1);
    for (int p = 0; p < k; ++p) {
      if (!sender_of.count(p) || !receiver_of.count(p)) {
        throw InputError("pair " + std::to_string(p + 1) + " lacks a sender or a receiver");
      }
      net.pairs_.push_back({sender_of[p], receiver_of[p]});
    }
  } else {
    std::set<int> used_as_sender, used_as_receiver;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto s = index.find(pairs[p].first);
      auto r = index.find(pairs[p].second);
      if (s == index.end()) throw InputError("unknown vertex reference '" + pairs[p].first + "'");
      if (r == index.end()) throw InputError("unknown vertex reference '" + pairs[p].second + "'");
      if (s->second == r->second) throw InputError("pair sender and receiver coincide");
      if (!used_as_sender.insert(s->second).second || !used_as_receiver.insert(r->second).second) {
        throw InputError("duplicate pair roles: a vertex serves two pairs in the same role");
      }
      Role& sr = net.vertices_[s->second].role;
      Role& rr = net.vertices_[r->second].role;
      const int pi = static_cast<int>(p);
      // Helpers listed in a pair adopt the pair's role.
      if (sr.kind == RoleKind::Helper) sr = Role::sender(pi);
      if (rr.kind == RoleKind::Helper) rr = Role::receiver(pi);
      if (!(sr == Role::sender(pi)) || !(rr == Role::receiver(pi))) {
        throw InputError("vertex roles disagree with pair " + std::to_string(p + 1));
      }
      net.pairs_.push_back({s->second, r->second});
    }
    for (int v = 0; v < net.num_vertices(); ++v) {
      const Role& r = net.vertices_[v].role;
      if (r.kind != RoleKind::Helper && r.pair >= net.num_pairs()) {
        throw InputError("vertex '" + net.vertices_[v].id + "' refers to a missing pair");
      }
    }
  }

  net.out_.assign(net.vertices_.size(), {});
  net.in_.assign(net.vertices_.size(), {});
  for (int e = 0; e < net.num_edges(); ++e) {
    net.out_[net.edges_[e].tail].push_back(e);
    net.in_[net.edges_[e].head].push_back(e);
  }
  return net;
}

std::optional<int> Network::find_vertex(std::string_view id) const {
  for (int v = 0; v < num_vertices(); ++v) {
    if (vertices_[v].id == id) return v;
  }
  return std::nullopt;
}

int Network::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw InputError("unknown vertex reference '" + std::string(id) + "'");
}

std::optional<int> Network::find_edge(std::string_view id) const {
  for (int e = 0; e < num_edges(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

int Network::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw InputError("unknown edge '" + std::string(id) + "'");
}

bool Network::reachable(int from, int to) const {
  std::vector<char> seen(vertices_.size(), 0);
  std::queue<int> q;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : out_[v]) {
      int w = edges_[e].head;
      if (w == to) return true;
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  return false;
}

std::vector<Network::VertexSpec> Network::vertex_specs() const {
  std::vector<VertexSpec> out;
  for (const auto& v : vertices_) out.push_back({v.id, v.role});
  return out;
}

std::vector<Network::EdgeSpec> Network::edge_specs() const {
  std::vector<EdgeSpec> out;
  for (const auto& e : edges_) {
    out.push_back({e.id, vertices_[e.tail].id, vertices_[e.head].id, e.capacity});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Network::pair_specs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : pairs_) out.emplace_back(vertices_[p.sender].id, vertices_[p.receiver].id);
  return out;
}

Network Network::scaled(const Rational& factor) const {
  if (factor <= 0) throw InputError("capacity scale factor must be positive");
  auto edges = edge_specs();
  for (auto& e : edges) {
    if (!e.capacity.is_unlimited()) e.capacity = Capacity(Rational(e.capacity.value() * factor));
  }
  return build(vertex_specs(), std::move(edges), pair_specs(), name_);
}

Network Network::with_edge(EdgeSpec edge) const {
  auto edges = edge_specs();
  edges.push_back(std::move(edge));
  return build(vertex_specs(), std::move(edges), pair_specs(), name_);
}

Network Network::without_edge(int e) const {
  auto edges = edge_specs();
  edges.erase(edges.begin() + e);
  return build(vertex_specs(), std::move(edges), pair_specs(), name_);
}

Network Network::renamed(std::string name) const {
  Network copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool Network::has_integer_capacities() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) {
    return !e.capacity.is_unlimited() && denominator(e.capacity.value()) == 1;
  });
}

NormalizedNetwork normalize_capacities(const Network& net) {
  RationalVector caps;
  for (const auto& e : net.edges()) {
    if (!e.capacity.is_unlimited()) caps.push_back(e.capacity.value());
  }
  Integer scale = lcm_of_denominators(caps);
  return {net.scaled(Rational(scale)), scale};
}

Scenario region_equivalent(Scenario s) {
  return s == Scenario::TwoWayCC ? Scenario::BackwardCC : s;
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Unassisted: return "unassisted";
    case Scenario::ForwardCC: return "forward";
    case Scenario::BackwardCC: return "backward";
    case Scenario::TwoWayCC: return "twoway";
    case Scenario::EntAssisted: return "ent";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view text) {
  for (Scenario s : all_scenarios()) {
    if (to_string(s) == text) return s;
  }
  throw InputError("unknown scenario '" + std::string(text) + "'");
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> all = {Scenario::Unassisted, Scenario::ForwardCC,
                                            Scenario::BackwardCC, Scenario::TwoWayCC,
                                            Scenario::EntAssisted};
  return all;
}

namespace {

Network::EdgeSpec unit(const std::string& tail, const std::string& head) {
  return {tail + "->" + head, tail, head, Capacity(1)};
}

}  // namespace

Network builtin_network(std::string_view name) {
  using VS = Network::VertexSpec;
  if (name == "butterfly") {
    return Network::build(
        {VS{"A1", Role::sender(0)}, VS{"A2", Role::sender(1)}, VS{"C1", Role::helper()},
         VS{"C2", Role::helper()}, VS{"B1", Role::receiver(0)}, VS{"B2", Role::receiver(1)}},
        {unit("A1", "C1"), unit("A2", "C1"), unit("C1", "C2"), unit("A1", "B2"),
         unit("A2", "B1"), unit("C2", "B1"), unit("C2", "B2")},
        {{"A1", "B1"}, {"A2", "B2"}}, "butterfly");
  }
  if (name == "inverted_crown") {
    // A3 collects from both other senders and feeds the two helpers; each
    // helper serves the opposite pair's receiver and B3; A1, A2 have direct
    // channels to the opposite receiver.
    return Network::build(
        {VS{"A1", Role::sender(0)}, VS{"A2", Role::sender(1)}, VS{"A3", Role::sender(2)},
         VS{"C1", Role::helper()}, VS{"C2", Role::helper()}, VS{"B1", Role::receiver(0)},
         VS{"B2", Role::receiver(1)}, VS{"B3", Role::receiver(2)}},
        {unit("A1", "A3"), unit("A2", "A3"), unit("A1", "B2"), unit("A2", "B1"),
         unit("A3", "C1"), unit("A3", "C2"), unit("C1", "B2"), unit("C1", "B3"),
         unit("C2", "B1"), unit("C2", "B3")},
        {{"A1", "B1"}, {"A2", "B2"}, {"A3", "B3"}}, "inverted_crown");
  }
  if (name == "path") {
    return Network::build({VS{"A1", Role::sender(0)}, VS{"C", Role::helper()},
                           VS{"B1", Role::receiver(0)}},
                          {unit("A1", "C"), unit("C", "B1")}, {{"A1", "B1"}}, "path");
  }
  if (name == "shallow_demo") {
    return Network::build(
        {VS{"A1", Role::sender(0)}, VS{"A2", Role::sender(1)}, VS{"A3", Role::sender(2)},
         VS{"X1", Role::helper()}, VS{"X2", Role::helper()}, VS{"Y1", Role::helper()},
         VS{"Y2", Role::helper()}, VS{"B1", Role::receiver(0)}, VS{"B2", Role::receiver(1)},
         VS{"B3", Role::receiver(2)}},
        {unit("A1", "X1"), unit("A2", "X1"), unit("A3", "X2"), unit("X1", "Y1"),
         unit("X1", "Y2"), unit("X2", "Y2"), unit("Y1", "B1"), unit("Y1", "B2"),
         unit("Y2", "B2"), unit("Y2", "B3"), unit("A3", "B3")},
        {{"A1", "B1"}, {"A2", "B2"}, {"A3", "B3"}}, "shallow_demo");
  }
  throw InputError("unknown builtin network '" + std::string(name) + "'");
}

const std::vector<std::string>& builtin_network_names() {
  static const std::vector<std::string> names = {"butterfly", "inverted_crown", "path",
                                                  "shallow_demo"};
  return names;
}

}  // namespace qnet
