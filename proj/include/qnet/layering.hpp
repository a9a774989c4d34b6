#pragma once

#include <string>
#include <vector>

#include "qnet/netmodel.hpp"

namespace qnet {

enum class Layer : int { A = 0, C1 = 1, C2 = 2, B = 3 };
std::string to_string(Layer layer);

/// Raised when no 3-hop layered normal form exists (a relevant directed
/// cycle, a receiver that forwards, or a sender-to-receiver path longer than
/// three channels).
class NonLayerableError : public Error {
 public:
  using Error::Error;
};

/// Layered normal form: senders in the A layer, receivers in the B layer, and
/// helpers (or duplicated senders) in the two intermediate layers. A vertex
/// that must act in several layers is duplicated; consecutive copies are
/// joined by unlimited-capacity channels.
struct LayeredNetwork {
  struct Copy {
    int original = -1;
    Layer layer = Layer::A;
  };

  Network original;
  Network layered;
  /// Indexed by layered vertex.
  std::vector<Copy> copies;
  /// Indexed by original vertex; layered copies ordered by layer (empty for
  /// vertices on no sender-to-receiver route).
  std::vector<std::vector<int>> duplicates;
  /// Indexed by layered edge; the original edge, or -1 for a duplication edge.
  std::vector<int> edge_origin;
  /// Original edges lying on no sender-to-receiver route, left out.
  std::vector<int> pruned_edges;

  Layer layer_of(int layered_vertex) const { return copies[layered_vertex].layer; }
  /// Copy of an original vertex in a given layer, or -1.
  int copy_in(int original_vertex, Layer layer) const;
};

LayeredNetwork normalize_layers(const Network& net);

}  // namespace qnet
