#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gslc/node2vec.hpp"
#include "gslc/node_similarity.hpp"

namespace gslc {

/// Node similarity measures; each also runs on a line graph.
enum class NodeMethod { ShortCycles, RandomWalk, Node2Vec, Rnbrw, SimRank, Ecg };

enum class Method {
  ShortCycles,
  RandomWalk,
  Node2Vec,
  Rnbrw,
  SimRank,
  Ecg,
  LinkCommunities,
  LineGraphTransition,
  LineShortCycles,
  LineNode2Vec,
  LineEcg,
  LineRnbrw,
  LineRandomWalk,
  LineSimRank,
  EdgeEcg,
};

/// Parameters for every measure; each method reads only its own fields.
struct MethodParams {
  int iterations = 3;  ///< short cycles and random-walk rounds, SimRank depth t
  int ell = 3;         ///< random-walk length
  int ensemble = 16;   ///< Louvain runs for ECG / EECG
  std::size_t samples = 0;  ///< RNBRW walks; 0 means one per edge
  /// node2vec sampling; unset means 40 x 80 on graphs, 10 x 20 on line graphs.
  std::optional<int> walks_per_node;
  std::optional<int> walk_length;
  double p = 1.0;
  double q = 1.0;
  SgnsParams sgns;
  std::size_t simrank_pair_budget = kDefaultSimRankPairBudget;
};

/// Method ids as used on the command line: sc, rww, n2v, rnbrw, simrank, ecg,
/// lc, lgtp, lg-sc, lg-n2v, lg-ecg, lg-rnbrw, lg-rww, lg-simrank, eecg.
std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
std::span<const Method> all_methods();

/// True for methods that score pairs of adjacent edges.
bool is_edge_method(Method m);

/// The node measure behind a node method or an lg-* method.
std::optional<NodeMethod> inner_node_method(Method m);

/// node2vec sampling settings after applying the overrides in `params`.
WalkParams walk_params(const MethodParams& params, bool on_line_graph = false);

/// Runs a node measure. `on_line_graph` selects the reduced node2vec
/// sampling defaults.
NodeSimilarity node_similarity(const Graph& g, NodeMethod method, const MethodParams& params,
                               std::uint64_t seed, bool on_line_graph = false);

}  // namespace gslc
