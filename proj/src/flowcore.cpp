#include "qnet/flowcore.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "qnet/lp.hpp"

namespace qnet {

Capacity CutCertificate::both() const { return forward + backward; }

CutCertificate make_cut(const Network& net, std::vector<int> side) {
  std::sort(side.begin(), side.end());
  side.erase(std::unique(side.begin(), side.end()), side.end());
  std::vector<char> in(net.num_vertices(), 0);
  for (int v : side) in.at(v) = 1;
  CutCertificate cut{std::move(side), Capacity(0), Capacity(0)};
  for (const auto& e : net.edges()) {
    if (in[e.tail] && !in[e.head]) cut.forward = cut.forward + e.capacity;
    if (!in[e.tail] && in[e.head]) cut.backward = cut.backward + e.capacity;
  }
  return cut;
}

namespace {

/// Residual network with arcs stored in pairs (i, i ^ 1).
class Residual {
 public:
  explicit Residual(int n) : adj_(n) {}

  int add_pair(int u, int v, const Capacity& cap_uv, const Capacity& cap_vu) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({u, v, cap_uv, 0});
    arcs_.push_back({v, u, cap_vu, 0});
    adj_[u].push_back(id);
    adj_[v].push_back(id + 1);
    return id;
  }

  bool has_residual(int a) const {
    return arcs_[a].cap.is_unlimited() || arcs_[a].flow < arcs_[a].cap.value();
  }

  /// Edmonds-Karp; returns the total flow pushed from s to t.
  Rational run(int s, int t) {
    Rational total = 0;
    const int n = static_cast<int>(adj_.size());
    for (;;) {
      std::vector<int> parent(n, -1);
      std::vector<char> seen(n, 0);
      std::queue<int> q;
      q.push(s);
      seen[s] = 1;
      while (!q.empty() && !seen[t]) {
        int v = q.front();
        q.pop();
        for (int a : adj_[v]) {
          int w = arcs_[a].to;
          if (!seen[w] && has_residual(a)) {
            seen[w] = 1;
            parent[w] = a;
            q.push(w);
          }
        }
      }
      if (!seen[t]) return total;
      std::optional<Rational> bottleneck;
      for (int v = t; v != s; v = arcs_[parent[v]].from) {
        const Arc& arc = arcs_[parent[v]];
        if (arc.cap.is_unlimited()) continue;
        Rational room = arc.cap.value() - arc.flow;
        if (!bottleneck || room < *bottleneck) bottleneck = room;
      }
      if (!bottleneck) throw Error("max flow is unbounded (path of unlimited channels)");
      for (int v = t; v != s; v = arcs_[parent[v]].from) {
        arcs_[parent[v]].flow += *bottleneck;
        arcs_[parent[v] ^ 1].flow -= *bottleneck;
      }
      total += *bottleneck;
    }
  }

  std::vector<char> reachable_from(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int a : adj_[v]) {
        if (!seen[arcs_[a].to] && has_residual(a)) {
          seen[arcs_[a].to] = 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return seen;
  }

  const Rational& flow(int a) const { return arcs_[a].flow; }

 private:
  struct Arc {
    int from;
    int to;
    Capacity cap;
    Rational flow;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace

MaxFlowResult max_flow_min_cut(const Network& net, const std::vector<int>& sources,
                               const std::vector<int>& sinks, Orientation orientation) {
  const int n = net.num_vertices();
  std::set<int> src(sources.begin(), sources.end());
  for (int t : sinks) {
    if (src.count(t)) throw InputError("source and sink sets overlap");
  }
  for (int v : sources) {
    if (v < 0 || v >= n) throw InputError("source vertex out of range");
  }
  for (int v : sinks) {
    if (v < 0 || v >= n) throw InputError("sink vertex out of range");
  }
  const int super_s = n, super_t = n + 1;
  Residual res(n + 2);
  std::vector<int> arc_of_edge;
  for (const auto& e : net.edges()) {
    Capacity back = orientation == Orientation::Undirected ? e.capacity : Capacity(0);
    arc_of_edge.push_back(res.add_pair(e.tail, e.head, e.capacity, back));
  }
  for (int v : src) res.add_pair(super_s, v, Capacity::unlimited(), Capacity(0));
  for (int v : std::set<int>(sinks.begin(), sinks.end())) {
    res.add_pair(v, super_t, Capacity::unlimited(), Capacity(0));
  }

  MaxFlowResult out;
  if (sinks.empty() || sources.empty()) {
    out.value = 0;
  } else {
    out.value = res.run(super_s, super_t);
  }
  auto seen = res.reachable_from(super_s);
  std::vector<int> side;
  for (int v = 0; v < n; ++v) {
    if (seen[v]) side.push_back(v);
  }
  // Sources are always in S even when they have no residual arcs.
  for (int v : src) side.push_back(v);
  out.cut = make_cut(net, side);
  for (int a : arc_of_edge) out.edge_flow.push_back(res.flow(a));
  return out;
}

std::vector<int> PathFlow::vertices(const Network& net) const {
  std::vector<int> vs{start};
  for (const auto& step : steps) {
    const auto& e = net.edges()[step.edge];
    vs.push_back(step.reversed ? e.tail : e.head);
  }
  return vs;
}

std::string describe_path(const Network& net, int start, const std::vector<PathStep>& steps) {
  std::string s = net.vertex_id(start);
  for (const auto& step : steps) {
    const auto& e = net.edges()[step.edge];
    s += step.reversed ? " <- " : " -> ";
    s += net.vertex_id(step.reversed ? e.tail : e.head);
  }
  return s;
}

std::optional<std::string> flow_violation(const Network& net, const CommodityFlow& flow) {
  const int k = net.num_pairs();
  if (static_cast<int>(flow.edge_flow.size()) != k || static_cast<int>(flow.rates.size()) != k) {
    return "flow has wrong number of commodities";
  }
  RationalVector usage(net.num_edges(), Rational(0));
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(flow.edge_flow[i].size()) != net.num_edges()) return "flow has wrong edge count";
    RationalVector excess(net.num_vertices(), Rational(0));
    for (int e = 0; e < net.num_edges(); ++e) {
      const Rational& f = flow.edge_flow[i][e];
      if (f < 0 && flow.orientation == Orientation::Directed) {
        return "negative flow on directed channel " + net.edges()[e].id;
      }
      excess[net.edges()[e].tail] -= f;
      excess[net.edges()[e].head] += f;
      usage[e] += abs(f);
    }
    const auto& p = net.pairs()[i];
    for (int v = 0; v < net.num_vertices(); ++v) {
      Rational expected = 0;
      if (v == p.sender) expected = -flow.rates[i];
      if (v == p.receiver) expected = flow.rates[i];
      if (excess[v] != expected) {
        return "conservation violated for pair " + std::to_string(i + 1) + " at " + net.vertex_id(v);
      }
    }
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    const auto& cap = net.edges()[e].capacity;
    if (!cap.is_unlimited() && usage[e] > cap.value()) {
      return "capacity exceeded on channel " + net.edges()[e].id;
    }
  }
  return std::nullopt;
}

std::vector<PathFlow> decompose_paths(const Network& net, const CommodityFlow& flow) {
  const int k = net.num_pairs();
  if (static_cast<int>(flow.edge_flow.size()) != k || static_cast<int>(flow.rates.size()) != k) {
    throw InputError("flow has wrong number of commodities");
  }
  std::vector<PathFlow> out;
  for (int i = 0; i < k; ++i) {
    const auto& p = net.pairs()[i];
    // Arc residue: (edge, reversed) -> remaining positive amount.
    std::vector<Rational> fwd(net.num_edges()), bwd(net.num_edges());
    RationalVector excess(net.num_vertices(), Rational(0));
    for (int e = 0; e < net.num_edges(); ++e) {
      const Rational& f = flow.edge_flow[i].at(e);
      if (f > 0) fwd[e] = f;
      if (f < 0) {
        if (flow.orientation == Orientation::Directed) throw InputError("non-conserved input flow: negative directed flow");
        bwd[e] = -f;
      }
      excess[net.edges()[e].tail] -= f;
      excess[net.edges()[e].head] += f;
    }
    for (int v = 0; v < net.num_vertices(); ++v) {
      Rational expected = v == p.sender ? Rational(-flow.rates[i]) : v == p.receiver ? flow.rates[i] : Rational(0);
      if (excess[v] != expected) throw InputError("non-conserved input flow at " + net.vertex_id(v));
    }

    auto next_arc = [&](int v) -> std::optional<PathStep> {
      for (int e : net.out_edges(v)) {
        if (fwd[e] > 0) return PathStep{e, false};
      }
      for (int e : net.in_edges(v)) {
        if (bwd[e] > 0) return PathStep{e, true};
      }
      return std::nullopt;
    };
    auto amount = [&](const PathStep& s) -> Rational& { return s.reversed ? bwd[s.edge] : fwd[s.edge]; };
    auto head_of = [&](const PathStep& s) {
      const auto& e = net.edges()[s.edge];
      return s.reversed ? e.tail : e.head;
    };

    Rational remaining = flow.rates[i];
    while (remaining > 0) {
      std::vector<PathStep> walk;
      std::vector<int> position(net.num_vertices(), -1);
      int v = p.sender;
      position[v] = 0;
      while (v != p.receiver) {
        auto step = next_arc(v);
        if (!step) throw InputError("non-conserved input flow: dead end at " + net.vertex_id(v));
        int w = head_of(*step);
        walk.push_back(*step);
        if (position[w] >= 0) {
          // Cancel the cycle closing at w and resume the walk from there.
          std::vector<PathStep> cycle(walk.begin() + position[w], walk.end());
          Rational m = amount(cycle.front());
          for (const auto& s : cycle) m = std::min(m, amount(s));
          for (const auto& s : cycle) amount(s) -= m;
          walk.resize(position[w]);
          for (int u = 0; u < net.num_vertices(); ++u) {
            if (position[u] > position[w]) position[u] = -1;
          }
          v = w;
          continue;
        }
        position[w] = static_cast<int>(walk.size());
        v = w;
      }
      Rational m = remaining;
      for (const auto& s : walk) m = std::min(m, amount(s));
      for (const auto& s : walk) amount(s) -= m;
      remaining -= m;
      out.push_back({i, p.sender, std::move(walk), m});
    }
  }
  return out;
}

CommodityFlow flow_from_paths(const Network& net, const std::vector<PathFlow>& paths,
                              Orientation orientation) {
  const int k = net.num_pairs();
  CommodityFlow flow{orientation, std::vector<RationalVector>(k, RationalVector(net.num_edges(), Rational(0))),
                     RationalVector(k, Rational(0))};
  for (const auto& path : paths) {
    flow.rates.at(path.pair) += path.amount;
    for (const auto& s : path.steps) {
      flow.edge_flow[path.pair][s.edge] += s.reversed ? Rational(-path.amount) : path.amount;
    }
  }
  return flow;
}

namespace {

struct EdgeLp {
  lp::Problem problem;
  // var index of commodity i on edge e in the tail-to-head (and reverse) direction
  std::vector<std::vector<int>> fwd, bwd;
};

/// Arc-flow multicommodity LP. When `rate_vars` is non-empty it receives the
/// rate variable of each pair; otherwise the given `rates` are imposed.
EdgeLp build_edge_lp(const Network& net, Orientation orientation, const RationalVector* fixed_rates,
                     std::vector<int>* rate_vars) {
  const int k = net.num_pairs();
  EdgeLp m;
  m.fwd.assign(k, std::vector<int>(net.num_edges(), -1));
  m.bwd.assign(k, std::vector<int>(net.num_edges(), -1));
  for (int i = 0; i < k; ++i) {
    for (int e = 0; e < net.num_edges(); ++e) {
      m.fwd[i][e] = m.problem.add_variable();
      if (orientation == Orientation::Undirected) m.bwd[i][e] = m.problem.add_variable();
    }
  }
  if (rate_vars) {
    rate_vars->clear();
    for (int i = 0; i < k; ++i) rate_vars->push_back(m.problem.add_variable());
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    const auto& cap = net.edges()[e].capacity;
    if (cap.is_unlimited()) continue;
    std::vector<lp::Term> terms;
    for (int i = 0; i < k; ++i) {
      terms.push_back({m.fwd[i][e], 1});
      if (m.bwd[i][e] >= 0) terms.push_back({m.bwd[i][e], 1});
    }
    m.problem.add_constraint(std::move(terms), lp::Sense::LessEqual, cap.value());
  }
  for (int i = 0; i < k; ++i) {
    const auto& p = net.pairs()[i];
    for (int v = 0; v < net.num_vertices(); ++v) {
      if (v == p.receiver) continue;  // implied by the others
      std::vector<lp::Term> terms;
      for (int e : net.out_edges(v)) {
        terms.push_back({m.fwd[i][e], 1});
        if (m.bwd[i][e] >= 0) terms.push_back({m.bwd[i][e], -1});
      }
      for (int e : net.in_edges(v)) {
        terms.push_back({m.fwd[i][e], -1});
        if (m.bwd[i][e] >= 0) terms.push_back({m.bwd[i][e], 1});
      }
      Rational rhs = 0;
      if (v == p.sender) {
        if (rate_vars) {
          terms.push_back({(*rate_vars)[i], -1});
        } else {
          rhs = (*fixed_rates)[i];
        }
      }
      m.problem.add_constraint(std::move(terms), lp::Sense::Equal, rhs);
    }
  }
  return m;
}

CommodityFlow extract_flow(const Network& net, const EdgeLp& m, const RationalVector& x,
                           Orientation orientation, RationalVector rates) {
  const int k = net.num_pairs();
  CommodityFlow flow{orientation, std::vector<RationalVector>(k, RationalVector(net.num_edges())),
                     std::move(rates)};
  for (int i = 0; i < k; ++i) {
    for (int e = 0; e < net.num_edges(); ++e) {
      Rational f = x[m.fwd[i][e]];
      if (m.bwd[i][e] >= 0) f -= x[m.bwd[i][e]];
      flow.edge_flow[i][e] = f;
    }
  }
  return flow;
}

}  // namespace

RoutingCheck routing_feasible(const Network& net, const RationalVector& rates, Orientation orientation) {
  if (static_cast<int>(rates.size()) != net.num_pairs()) throw InputError("rate vector has wrong dimension");
  for (const auto& r : rates) {
    if (r < 0) throw InputError("rates must be nonnegative");
  }
  EdgeLp m = build_edge_lp(net, orientation, &rates, nullptr);
  lp::Solution sol = lp::maximize(m.problem);
  RoutingCheck out;
  if (sol.status == lp::Status::Optimal) {
    out.feasible = true;
    out.witness = extract_flow(net, m, sol.values, orientation, rates);
    return out;
  }
  for (int i = 0; i < net.num_pairs(); ++i) {
    const auto& p = net.pairs()[i];
    auto mf = max_flow_min_cut(net, {p.sender}, {p.receiver}, orientation);
    if (mf.value < rates[i]) {
      out.violated_cut = std::make_pair(i, mf.cut);
      out.reason = "single-commodity cut for pair " + std::to_string(i + 1) + " has capacity " +
                   to_string(mf.value);
      return out;
    }
  }
  out.reason = "LP infeasible";
  return out;
}

WeightedRate max_weighted_rate(const Network& net, const RationalVector& weights, Orientation orientation) {
  if (static_cast<int>(weights.size()) != net.num_pairs()) throw InputError("weight vector has wrong dimension");
  bool any = false;
  for (const auto& w : weights) {
    if (w < 0) throw InputError("weights must be nonnegative");
    any = any || w > 0;
  }
  if (!any) throw InputError("all-zero weights");
  std::vector<int> rate_vars;
  EdgeLp m = build_edge_lp(net, orientation, nullptr, &rate_vars);
  for (int i = 0; i < net.num_pairs(); ++i) m.problem.objective[rate_vars[i]] = weights[i];
  lp::Solution sol = lp::maximize(m.problem);
  if (sol.status == lp::Status::Unbounded) throw Error("routing rate is unbounded (unlimited channels)");
  if (sol.status != lp::Status::Optimal) throw Error("routing LP unexpectedly infeasible");
  RationalVector rates;
  for (int v : rate_vars) rates.push_back(sol.values[v]);
  WeightedRate out{sol.objective, rates, extract_flow(net, m, sol.values, orientation, rates)};
  return out;
}

}  // namespace qnet
