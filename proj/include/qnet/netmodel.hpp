#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnet/rational.hpp"

namespace qnet {

enum class RoleKind { Sender, Receiver, Helper };

/// Role of a vertex. `pair` is the 0-based pair index for senders/receivers.
struct Role {
  RoleKind kind = RoleKind::Helper;
  int pair = -1;

  static Role sender(int pair) { return {RoleKind::Sender, pair}; }
  static Role receiver(int pair) { return {RoleKind::Receiver, pair}; }
  static Role helper() { return {}; }
  friend bool operator==(const Role&, const Role&) = default;
};

struct Vertex {
  std::string id;
  Role role;
};

struct Edge {
  std::string id;
  int tail = -1;
  int head = -1;
  Capacity capacity;
};

struct CommodityPair {
  int sender = -1;
  int receiver = -1;
};

/// Directed capacitated multigraph with role-tagged vertices and k commodity
/// pairs. Instances are immutable once built; `Network::build` validates.
class Network {
 public:
  struct VertexSpec {
    std::string id;
    Role role;
  };
  struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
    Capacity capacity;
  };

  /// Validates and builds. `pairs` holds (sender id, receiver id); when it is
  /// empty the pairs are derived from the vertex roles.
  static Network build(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges,
                       std::vector<std::pair<std::string, std::string>> pairs = {},
                       std::string name = {});

  const std::string& name() const { return name_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<CommodityPair>& pairs() const { return pairs_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_pairs() const { return static_cast<int>(pairs_.size()); }

  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }

  std::optional<int> find_vertex(std::string_view id) const;
  int vertex_index(std::string_view id) const;
  std::optional<int> find_edge(std::string_view id) const;
  int edge_index(std::string_view id) const;
  const std::string& vertex_id(int v) const { return vertices_[v].id; }

  bool is_sender(int v) const { return vertices_[v].role.kind == RoleKind::Sender; }
  bool is_receiver(int v) const { return vertices_[v].role.kind == RoleKind::Receiver; }

  /// True when some directed path of length >= 1 leads from `from` to `to`.
  bool reachable(int from, int to) const;

  /// Every finite capacity multiplied by `factor` (> 0).
  Network scaled(const Rational& factor) const;
  /// Copy with one extra edge appended.
  Network with_edge(EdgeSpec edge) const;
  /// Copy without the edge at index `e` (ids of the others unchanged).
  Network without_edge(int e) const;
  Network renamed(std::string name) const;

  std::vector<VertexSpec> vertex_specs() const;
  std::vector<EdgeSpec> edge_specs() const;
  std::vector<std::pair<std::string, std::string>> pair_specs() const;

  /// True when every capacity is finite and integral.
  bool has_integer_capacities() const;

 private:
  std::string name_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<CommodityPair> pairs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Integer-normalized copy: capacities multiplied by the LCM of their
/// denominators. Rates of the copy are `scale` times the original rates.
struct NormalizedNetwork {
  Network network;
  Integer scale;
};
NormalizedNetwork normalize_capacities(const Network& net);

enum class Scenario { Unassisted, ForwardCC, BackwardCC, TwoWayCC, EntAssisted };

/// Two-way assistance behaves as backward assistance for every region
/// computation; the distinction only survives in reports.
Scenario region_equivalent(Scenario s);
std::string to_string(Scenario s);
Scenario parse_scenario(std::string_view text);
const std::vector<Scenario>& all_scenarios();

/// "butterfly", "inverted_crown", "path", "shallow_demo".
Network builtin_network(std::string_view name);
const std::vector<std::string>& builtin_network_names();

}  // namespace qnet
