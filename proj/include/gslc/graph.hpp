#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <vector>

namespace gslc {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::int64_t;

struct Edge {
  NodeId u;
  NodeId v;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One adjacency entry: the neighbor and the canonical edge that reaches it.
struct Incidence {
  NodeId node;
  EdgeId edge;
};

/// Simple undirected weighted graph with dense node ids.
///
/// Edges are stored canonically (u < v, sorted by (u, v)); an EdgeId is the
/// position in that list. Adjacency is kept in CSR form with neighbors sorted
/// ascending. Instances are immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Normalizes an arbitrary edge list: orients u < v, drops self-loops and
  /// merges duplicate pairs keeping the maximum weight. Throws
  /// ValidationError on an out-of-range endpoint or a negative/non-finite
  /// weight.
  static Graph from_edges(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Incidence> neighbors(NodeId i) const {
    return {incidence_.data() + offsets_[i], incidence_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  double weighted_degree(NodeId i) const;

  /// Edge id joining i and j, or -1 when they are not adjacent.
  std::int64_t find_edge(NodeId i, NodeId j) const;

  /// True when every edge weight equals 1.
  bool unit_weights() const noexcept { return unit_weights_; }

  /// Same structure with the weights replaced, indexed by EdgeId.
  Graph reweighted(std::span<const double> weights) const;

 private:
  void build_adjacency();

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
  bool unit_weights_ = true;
};

/// N[i]: the neighbors of i together with i, sorted ascending.
std::vector<NodeId> closed_neighborhood(const Graph& g, NodeId i);

/// Graph whose nodes are the edges of a base graph. Two base edges are linked
/// when they share an endpoint; the link weight is 1/deg(shared endpoint)
/// with the structural degree of the base graph.
struct LineGraph {
  Graph graph;
  /// Shared base endpoint of each link, indexed by the link's EdgeId in graph.
  std::vector<NodeId> shared;

  /// The two non-shared base endpoints (i, k) of a link.
  std::pair<NodeId, NodeId> outer_endpoints(const Graph& base, EdgeId link) const;
};

LineGraph build_line_graph(const Graph& g);

/// A graph read from a text edge list together with the original labels.
struct LabeledGraph {
  Graph graph;
  /// labels[id] is the original label of dense node id.
  std::vector<Label> labels;

  /// Dense id of an original label, or -1 when unknown.
  std::int64_t id_of(Label label) const;
};

/// Parses "u v" / "u v w" lines ('#' starts a comment). Labels are remapped
/// to dense ids in ascending label order.
LabeledGraph load_edge_list(std::istream& in);

}  // namespace gslc
