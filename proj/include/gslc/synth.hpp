#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <vector>

#include "gslc/graph.hpp"

namespace gslc {

/// Planted-partition benchmark with outliers and overlapping memberships.
struct PlantedConfig {
  std::size_t n = 1000;
  /// Community sizes follow a discrete power law s^-size_exponent on
  /// [min_size, max_size] unless community_sizes is given.
  double size_exponent = 1.5;
  std::size_t min_size = 20;
  std::size_t max_size = 200;
  std::vector<std::size_t> community_sizes;
  double mu = 0.2;                ///< fraction of edges wired outside the community
  double outlier_fraction = 0.0;  ///< nodes without a community
  double overlap_fraction = 0.0;  ///< share of community nodes with several memberships
  int memberships = 2;            ///< communities per overlapping node
  double mean_degree = 15.0;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  std::vector<std::vector<NodeId>> labels;
  std::vector<NodeId> outliers;
};

struct Benchmark {
  Graph graph;
  GroundTruth truth;
};

/// Throws ValidationError describing the first infeasible setting.
void validate(const PlantedConfig& cfg);

/// Deterministic for a fixed config. Node ids double as labels.
Benchmark generate(const PlantedConfig& cfg);

/// Fraction of edges whose endpoints share a community.
double intra_edge_fraction(const Graph& g, const GroundTruth& truth);

/// One community per line of space-separated original labels. Nodes of the
/// graph missing from every line are outliers. Throws ValidationError naming
/// any label that is not in the graph.
GroundTruth read_ground_truth(std::istream& in, const LabeledGraph& graph);

}  // namespace gslc
