#include <algorithm>
#include <map>
#include <set>

#include "qnet/qsim.hpp"

namespace qnet {

ClassicalScheme butterfly_xor_scheme() {
  ClassicalScheme s;
  s.sources = {{"x1", "A1"}, {"x2", "A2"}};
  s.edge_forms = {
      {"A1->C1", {"x1"}},
      {"A1->B2", {"x1"}},
      {"A2->C1", {"x2"}},
      {"A2->B1", {"x2"}},
      {"C1->C2", {"A1->C1", "A2->C1"}},
      {"C2->B1", {"C1->C2"}},
      {"C2->B2", {"C1->C2"}},
  };
  s.decoders = {
      {"B1", "x1", {"C2->B1", "A2->B1"}},
      {"B2", "x2", {"C2->B2", "A1->B2"}},
  };
  return s;
}

ClassicalResult run_classical_linear_protocol(const Network& net, const ClassicalScheme& scheme) {
  std::map<std::string, int> source_vertex;
  std::vector<std::string> bits;
  for (const auto& [bit, vertex] : scheme.sources) {
    if (source_vertex.count(bit)) throw InputError("duplicate source bit '" + bit + "'");
    source_vertex[bit] = net.vertex_index(vertex);
    bits.push_back(bit);
  }
  if (bits.size() > 20) throw InputError("too many source bits for exhaustive evaluation");
  std::map<std::string, LinearForm> forms;
  for (const auto& [edge, form] : scheme.edge_forms) {
    net.edge_index(edge);
    if (!forms.emplace(edge, form).second) throw InputError("edge '" + edge + "' has two forms");
  }

  // Symbols available at a vertex: its own source bits and its in-edges.
  auto available = [&](const std::string& symbol, int vertex) {
    if (auto it = source_vertex.find(symbol); it != source_vertex.end()) return it->second == vertex;
    if (auto e = net.find_edge(symbol)) return net.edges()[*e].head == vertex && forms.count(symbol) > 0;
    throw InputError("unknown symbol '" + symbol + "'");
  };
  for (const auto& [edge, form] : forms) {
    int tail = net.edges()[net.edge_index(edge)].tail;
    for (const auto& sym : form) {
      if (!available(sym, tail)) {
        throw InputError("causality violation: '" + edge + "' uses '" + sym + "' not available at " + net.vertex_id(tail));
      }
    }
  }
  for (const auto& d : scheme.decoders) {
    int v = net.vertex_index(d.receiver);
    for (const auto& sym : d.form) {
      if (!available(sym, v)) {
        throw InputError("causality violation: decoder at " + d.receiver + " uses '" + sym + "'");
      }
    }
  }

  // Topological order of edge symbols.
  std::vector<std::string> order;
  std::map<std::string, int> state;  // 0 new, 1 active, 2 done
  auto visit = [&](auto&& self, const std::string& edge) -> void {
    if (state[edge] == 2) return;
    if (state[edge] == 1) throw InputError("cyclic dependency through '" + edge + "'");
    state[edge] = 1;
    for (const auto& sym : forms.at(edge)) {
      if (!source_vertex.count(sym)) self(self, sym);
    }
    state[edge] = 2;
    order.push_back(edge);
  };
  for (const auto& [edge, form] : forms) visit(visit, edge);

  ClassicalResult out;
  out.inputs = 1 << bits.size();
  for (const auto& d : scheme.decoders) out.decoders.push_back({d.receiver, d.bit, true, 0});
  for (int x = 0; x < out.inputs; ++x) {
    std::map<std::string, int> value;
    for (size_t i = 0; i < bits.size(); ++i) value[bits[i]] = (x >> i) & 1;
    auto eval = [&](const LinearForm& f) {
      int v = 0;
      for (const auto& sym : f) v ^= value.at(sym);
      return v;
    };
    for (const auto& edge : order) value[edge] = eval(forms.at(edge));
    for (size_t i = 0; i < scheme.decoders.size(); ++i) {
      const auto& d = scheme.decoders[i];
      if (!source_vertex.count(d.bit)) throw InputError("decoder targets unknown bit '" + d.bit + "'");
      if (eval(d.form) != value.at(d.bit)) {
        out.decoders[i].correct = false;
        ++out.decoders[i].failures;
      }
    }
  }
  out.all_correct = std::all_of(out.decoders.begin(), out.decoders.end(), [](const DecodeResult& r) { return r.correct; });
  return out;
}

}  // namespace qnet
