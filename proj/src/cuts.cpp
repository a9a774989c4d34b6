#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>

#include "qnet/regions.hpp"

namespace qnet {

std::string describe_cut(const Network& net, const std::vector<int>& side) {
  std::vector<std::string> ids;
  for (int v : side) ids.push_back(net.vertex_id(v));
  std::sort(ids.begin(), ids.end());
  std::string s = "{";
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += ids[i];
  }
  return s + "}";
}

std::vector<std::vector<int>> all_pair_subsets(int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i) {
      if (mask & (1 << i)) s.push_back(i);
    }
    out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max();

/// Exhaustive bipartition scan. For every pair mask P it records the least
/// c->(S) over sides with P's senders in S and receivers outside (directed),
/// and the least c->(S) + c<-(S) over sides separating every pair in P.
struct Enumeration {
  Integer scale;
  std::vector<int64_t> best_dir, best_sep;
  std::vector<int64_t> fwd_of_edge;  // scaled capacity, kInf if unlimited

  explicit Enumeration(const Network& net) {
    const int n = net.num_vertices(), k = net.num_pairs();
    RationalVector finite;
    for (const auto& e : net.edges()) {
      if (!e.capacity.is_unlimited()) finite.push_back(e.capacity.value());
    }
    scale = lcm_of_denominators(finite);
    Integer total = 0;
    for (const auto& e : net.edges()) {
      if (e.capacity.is_unlimited()) {
        fwd_of_edge.push_back(kInf);
        continue;
      }
      Rational scaled = e.capacity.value() * Rational(scale);
      Integer v = numerator(scaled);
      total += v;
      if (total > Integer(int64_t{1} << 60)) throw Error("capacities too large for exhaustive cut enumeration");
      fwd_of_edge.push_back(static_cast<int64_t>(v));
    }
    best_dir.assign(size_t{1} << k, kInf);
    best_sep.assign(size_t{1} << k, kInf);
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
      int64_t fwd = 0, bwd = 0;
      side_values(net, mask, fwd, bwd);
      uint32_t dir = 0, sep = 0;
      for (int i = 0; i < k; ++i) {
        bool s = mask >> net.pairs()[i].sender & 1, r = mask >> net.pairs()[i].receiver & 1;
        if (s && !r) dir |= 1u << i;
        if (s != r) sep |= 1u << i;
      }
      best_dir[dir] = std::min(best_dir[dir], fwd);
      best_sep[sep] = std::min(best_sep[sep], add(fwd, bwd));
    }
    // Superset minimum: a bound for P holds for every subset of P.
    for (int i = 0; i < k; ++i) {
      for (size_t pm = 0; pm < best_dir.size(); ++pm) {
        if (pm & (size_t{1} << i)) continue;
        best_dir[pm] = std::min(best_dir[pm], best_dir[pm | (size_t{1} << i)]);
        best_sep[pm] = std::min(best_sep[pm], best_sep[pm | (size_t{1} << i)]);
      }
    }
  }

  static int64_t add(int64_t a, int64_t b) { return a == kInf || b == kInf ? kInf : a + b; }

  void side_values(const Network& net, uint32_t mask, int64_t& fwd, int64_t& bwd) const {
    fwd = bwd = 0;
    for (int e = 0; e < net.num_edges(); ++e) {
      bool t = mask >> net.edges()[e].tail & 1, h = mask >> net.edges()[e].head & 1;
      if (t && !h) fwd = add(fwd, fwd_of_edge[e]);
      if (!t && h) bwd = add(bwd, fwd_of_edge[e]);
    }
  }

  Capacity to_capacity(int64_t v) const {
    if (v == kInf) return Capacity::unlimited();
    return Capacity(Rational(v) / Rational(scale));
  }

  /// Minimizing sides for a subset under a rule, in (size, mask) order.
  std::vector<uint32_t> minimizers(const Network& net, uint32_t subset, bool directed, bool all) const {
    const int n = net.num_vertices(), k = net.num_pairs();
    int64_t target = directed ? best_dir[subset] : best_sep[subset];
    std::vector<uint32_t> found;
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
      // Separating sides are normalized to hold the first pair's sender.
      bool ok = true, first = true;
      for (int i = 0; i < k && ok; ++i) {
        if (!(subset >> i & 1)) continue;
        bool s = mask >> net.pairs()[i].sender & 1, r = mask >> net.pairs()[i].receiver & 1;
        ok = (directed || first) ? (s && !r) : s != r;
        first = false;
      }
      if (!ok) continue;
      int64_t fwd, bwd;
      side_values(net, mask, fwd, bwd);
      if ((directed ? fwd : add(fwd, bwd)) != target) continue;
      found.push_back(mask);
    }
    std::stable_sort(found.begin(), found.end(), [](uint32_t a, uint32_t b) {
      int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
      if (pa != pb) return pa < pb;
      return a < b;
    });
    if (!all && found.size() > 1) found.resize(1);
    return found;
  }
};

std::vector<int> side_of(uint32_t mask, int n) {
  std::vector<int> side;
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1) side.push_back(v);
  }
  return side;
}

}  // namespace

std::vector<CutBound> cut_outer_bounds(const Network& net, Scenario scenario,
                                       const std::vector<std::vector<int>>& subsets,
                                       const CutOptions& options) {
  const int n = net.num_vertices(), k = net.num_pairs();
  std::vector<uint32_t> masks;
  for (const auto& subset : subsets) {
    if (subset.empty()) throw InputError("empty pair subset");
    uint32_t m = 0;
    for (int i : subset) {
      if (i < 0 || i >= k) throw InputError("pair index out of range");
      m |= 1u << i;
    }
    masks.push_back(m);
  }
  const bool directed_too = scenario == Scenario::Unassisted;
  std::vector<CutBound> out;

  if (n <= kCutEnumerationCap) {
    Enumeration en(net);
    for (size_t s = 0; s < subsets.size(); ++s) {
      CutBound cb;
      for (int i = 0; i < k; ++i) {
        if (masks[s] >> i & 1) cb.subset.push_back(i);
      }
      bool use_dir = directed_too && en.best_dir[masks[s]] <= en.best_sep[masks[s]];
      int64_t value = use_dir ? en.best_dir[masks[s]] : en.best_sep[masks[s]];
      cb.bound = en.to_capacity(value);
      cb.rule = use_dir ? "directed" : "separating";
      auto mins = en.minimizers(net, masks[s], use_dir, options.collect_minimizers);
      if (options.collect_minimizers && directed_too && en.best_dir[masks[s]] == en.best_sep[masks[s]]) {
        auto more = en.minimizers(net, masks[s], false, true);
        mins.insert(mins.end(), more.begin(), more.end());
      }
      cb.witness = make_cut(net, side_of(mins.front(), n));
      if (options.collect_minimizers) {
        std::set<std::vector<int>> uniq;
        for (uint32_t m : mins) {
          auto side = side_of(m, n);
          if (uniq.insert(side).second) cb.minimizers.push_back(side);
        }
      }
      out.push_back(std::move(cb));
    }
    return out;
  }

  if (!options.allow_restricted && !directed_too) {
    throw InputError("more than " + std::to_string(kCutEnumerationCap) +
                     " vertices: exhaustive cut enumeration unavailable (enable the restricted bound)");
  }
  for (size_t s = 0; s < subsets.size(); ++s) {
    CutBound cb;
    std::vector<int> senders, receivers;
    for (int i = 0; i < k; ++i) {
      if (!(masks[s] >> i & 1)) continue;
      cb.subset.push_back(i);
      senders.push_back(net.pairs()[i].sender);
      receivers.push_back(net.pairs()[i].receiver);
    }
    if (directed_too) {
      auto mf = max_flow_min_cut(net, senders, receivers, Orientation::Directed);
      cb.bound = mf.cut.forward;
      cb.witness = mf.cut;
      cb.rule = "directed";
    }
    if (options.allow_restricted) {
      auto mf = max_flow_min_cut(net, senders, receivers, Orientation::Undirected);
      if (!directed_too || mf.cut.both() < cb.bound) {
        cb.bound = mf.cut.both();
        cb.witness = mf.cut;
        cb.rule = "separating";
        cb.exhaustive = false;
      }
    }
    if (options.collect_minimizers) cb.minimizers.push_back(cb.witness.side);
    out.push_back(std::move(cb));
  }
  return out;
}

RatePolytope outer_region(const Network& net, Scenario scenario, const CutOptions& options) {
  const int k = net.num_pairs();
  if (k == 0) throw InputError("network has no commodity pairs");
  std::vector<Halfspace> hs;
  for (const auto& cb : cut_outer_bounds(net, scenario, all_pair_subsets(k), options)) {
    if (cb.bound.is_unlimited()) continue;
    RationalVector a(k, Rational(0));
    for (int i : cb.subset) a[i] = 1;
    hs.push_back({a, cb.bound.value(), describe_cut(net, cb.witness.side)});
  }
  return RatePolytope(k, std::move(hs), Provenance::Outer);
}

}  // namespace qnet
