#include <algorithm>
#include <queue>

#include "qnet/lp.hpp"
#include "qnet/regions.hpp"

namespace qnet {

std::vector<int> AdmissiblePath::vertices(const Network& net) const {
  return PathFlow{pair, start, steps, 0}.vertices(net);
}

std::string AdmissiblePath::describe(const Network& net) const {
  std::string s = describe_path(net, start, steps);
  for (const auto& b : bridges) {
    auto vs = vertices(net);
    s += " [bridge " + net.vertex_id(vs[b.begin]);
    for (int e : b.edges) s += " -> " + net.vertex_id(net.edges()[e].head);
    s += "]";
  }
  return s;
}

namespace {

/// Shortest directed path (BFS, edges in index order) from `from` to any
/// vertex whose flag is set; returns the edge list or nullopt.
std::optional<std::vector<int>> bfs_to_any(const Network& net, int from, const std::vector<char>& goal) {
  std::vector<int> parent(net.num_vertices(), -1);
  std::vector<char> seen(net.num_vertices(), 0);
  std::queue<int> q;
  q.push(from);
  seen[from] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : net.out_edges(v)) {
      int w = net.edges()[e].head;
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = e;
      if (goal[w]) {
        std::vector<int> edges;
        for (int u = w; u != from; u = net.edges()[parent[u]].tail) edges.push_back(parent[u]);
        std::reverse(edges.begin(), edges.end());
        return edges;
      }
      q.push(w);
    }
  }
  return std::nullopt;
}

}  // namespace

ReversalCheck check_reversal_condition(const Network& net, int start, const std::vector<PathStep>& steps) {
  std::vector<int> vs = PathFlow{-1, start, steps, 0}.vertices(net);
  {
    auto sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("non-simple path " + describe_path(net, start, steps));
    }
  }
  ReversalCheck out;
  out.ok = true;
  const int len = static_cast<int>(steps.size());
  for (int t = 0; t < len;) {
    if (!steps[t].reversed) {
      ++t;
      continue;
    }
    int begin = t;
    while (t < len && steps[t].reversed) ++t;
    int end = t;
    std::vector<char> goal(net.num_vertices(), 0);
    for (int j = end; j <= len; ++j) goal[vs[j]] = 1;
    auto bridge = bfs_to_any(net, vs[begin], goal);
    if (!bridge) {
      out.ok = false;
      out.failing_segment = std::make_pair(begin, end);
      out.witnesses.clear();
      return out;
    }
    int head = bridge->empty() ? vs[begin] : net.edges()[bridge->back()].head;
    int target = static_cast<int>(std::find(vs.begin(), vs.end(), head) - vs.begin());
    out.witnesses.push_back({begin, end, target, *bridge});
  }
  return out;
}

PathEnumeration enumerate_admissible_paths(const Network& net, int pair, Scenario scenario, int max_len) {
  if (pair < 0 || pair >= net.num_pairs()) throw InputError("pair index out of range");
  if (max_len < 1) throw InputError("max_len must be at least 1");
  const Scenario s = region_equivalent(scenario);
  const bool reversals = s == Scenario::BackwardCC || s == Scenario::ForwardCC;
  const bool needs_bridges = s == Scenario::ForwardCC;
  const int source = net.pairs()[pair].sender, sink = net.pairs()[pair].receiver;

  PathEnumeration out;
  std::vector<char> on_path(net.num_vertices(), 0);
  std::vector<PathStep> steps;

  auto emit = [&] {
    AdmissiblePath p{pair, source, steps, {}};
    bool any_reversed = std::any_of(steps.begin(), steps.end(), [](const PathStep& st) { return st.reversed; });
    if (needs_bridges && any_reversed) {
      auto check = check_reversal_condition(net, source, steps);
      if (!check.ok) return;
      p.bridges = std::move(check.witnesses);
    }
    out.paths.push_back(std::move(p));
  };

  auto dfs = [&](auto&& self, int v) -> void {
    if (out.truncated) return;
    if (v == sink) {
      if (static_cast<int>(out.paths.size()) >= kPathCap) {
        out.truncated = true;
        return;
      }
      emit();
      return;
    }
    if (static_cast<int>(steps.size()) >= max_len) return;
    auto go = [&](int e, bool reversed) {
      const auto& edge = net.edges()[e];
      int w = reversed ? edge.tail : edge.head;
      if (on_path[w]) return;
      if (!edge.capacity.is_unlimited() && edge.capacity.value().is_zero()) return;
      on_path[w] = 1;
      steps.push_back({e, reversed});
      self(self, w);
      steps.pop_back();
      on_path[w] = 0;
    };
    for (int e : net.out_edges(v)) go(e, false);
    if (reversals) {
      for (int e : net.in_edges(v)) go(e, true);
    }
  };
  on_path[source] = 1;
  dfs(dfs, source);
  return out;
}

PathRegion::PathRegion(Network net, Scenario scenario, int max_len)
    : net_(std::move(net)), scenario_(scenario), max_len_(max_len) {
  const int k = net_.num_pairs();
  if (k == 0) throw InputError("network has no commodity pairs");
  for (int i = 0; i < k; ++i) {
    auto en = enumerate_admissible_paths(net_, i, scenario_, max_len_);
    if (en.truncated) {
      warnings_.push_back("pair " + std::to_string(i + 1) + ": path enumeration truncated at " +
                          std::to_string(kPathCap) + " paths; region may be underestimated");
    }
    for (auto& p : en.paths) paths_.push_back(std::move(p));
  }
  // Warn when max_len is below some pair's shortest (undirected) connection.
  for (int i = 0; i < k; ++i) {
    std::vector<int> dist(net_.num_vertices(), -1);
    std::queue<int> q;
    q.push(net_.pairs()[i].sender);
    dist[net_.pairs()[i].sender] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& e : net_.edges()) {
        int w = e.tail == v ? e.head : e.head == v ? e.tail : -1;
        if (w >= 0 && dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    if (dist[net_.pairs()[i].receiver] > max_len_) {
      warnings_.push_back("max_len " + std::to_string(max_len_) + " is shorter than the shortest connection of pair " +
                          std::to_string(i + 1));
    }
  }
  if (k <= kMaterializeMaxPairs) {
    polytope_ = materialize(
        k,
        [this](const RationalVector& w) {
          PathPacking p = maximize(w);
          return SupportAnswer{dot(w, p.rates), p.rates};
        },
        Provenance::Inner);
  }
}

namespace {

/// Capacity rows over path variables 0..paths-1.
void add_capacity_rows(const Network& net, const std::vector<AdmissiblePath>& paths, lp::Problem& problem) {
  std::vector<std::vector<lp::Term>> rows(net.num_edges());
  for (size_t p = 0; p < paths.size(); ++p) {
    for (const auto& st : paths[p].steps) rows[st.edge].push_back({static_cast<int>(p), 1});
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    if (rows[e].empty() || net.edges()[e].capacity.is_unlimited()) continue;
    problem.add_constraint(std::move(rows[e]), lp::Sense::LessEqual, net.edges()[e].capacity.value());
  }
}

PathPacking packing_from(const std::vector<AdmissiblePath>& paths, int k, const RationalVector& x) {
  PathPacking out{RationalVector(k, Rational(0)), {}};
  for (size_t p = 0; p < paths.size(); ++p) {
    if (x[p] > 0) {
      out.rates[paths[p].pair] += x[p];
      out.uses.push_back({static_cast<int>(p), x[p]});
    }
  }
  return out;
}

}  // namespace

PathPacking PathRegion::maximize(const RationalVector& w) const {
  const int k = net_.num_pairs();
  if (static_cast<int>(w.size()) != k) throw InputError("weight vector has wrong dimension");
  lp::Problem problem;
  for (const auto& p : paths_) problem.add_variable(w[p.pair]);
  add_capacity_rows(net_, paths_, problem);
  auto sol = lp::maximize(problem);
  if (sol.status == lp::Status::Unbounded) throw Error("path region is unbounded (unlimited route)");
  if (!sol.optimal()) throw Error("path packing LP unexpectedly infeasible");
  return packing_from(paths_, k, sol.values);
}

std::optional<PathPacking> PathRegion::packing_for(const RationalVector& rates) const {
  const int k = net_.num_pairs();
  if (static_cast<int>(rates.size()) != k) throw InputError("rate vector has wrong dimension");
  lp::Problem problem;
  for (size_t p = 0; p < paths_.size(); ++p) problem.add_variable(0);
  add_capacity_rows(net_, paths_, problem);
  for (int i = 0; i < k; ++i) {
    std::vector<lp::Term> terms;
    for (size_t p = 0; p < paths_.size(); ++p) {
      if (paths_[p].pair == i) terms.push_back({static_cast<int>(p), 1});
    }
    if (terms.empty()) {
      if (rates[i] > 0) return std::nullopt;
      continue;
    }
    problem.add_constraint(std::move(terms), lp::Sense::GreaterEqual, rates[i]);
  }
  auto sol = lp::maximize(problem);
  if (!sol.optimal()) return std::nullopt;
  return packing_from(paths_, k, sol.values);
}

PathRegion inner_region(const Network& net, Scenario scenario, std::optional<int> max_len) {
  int len = max_len.value_or(std::max(1, net.num_vertices() - 1));
  return PathRegion(net, scenario, len);
}

}  // namespace qnet
