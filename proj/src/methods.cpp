#include "gslc/methods.hpp"

#include <array>
#include <utility>

namespace gslc {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 15> kNames{{
    {Method::ShortCycles, "sc"},
    {Method::RandomWalk, "rww"},
    {Method::Node2Vec, "n2v"},
    {Method::Rnbrw, "rnbrw"},
    {Method::SimRank, "simrank"},
    {Method::Ecg, "ecg"},
    {Method::LinkCommunities, "lc"},
    {Method::LineGraphTransition, "lgtp"},
    {Method::LineShortCycles, "lg-sc"},
    {Method::LineNode2Vec, "lg-n2v"},
    {Method::LineEcg, "lg-ecg"},
    {Method::LineRnbrw, "lg-rnbrw"},
    {Method::LineRandomWalk, "lg-rww"},
    {Method::LineSimRank, "lg-simrank"},
    {Method::EdgeEcg, "eecg"},
}};

constexpr std::array<Method, 15> kAll = [] {
  std::array<Method, 15> out{};
  for (std::size_t k = 0; k < kNames.size(); ++k) out[k] = kNames[k].first;
  return out;
}();

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kNames) {
    if (method == m) return name;
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [method, id] : kNames) {
    if (id == name) return method;
  }
  return std::nullopt;
}

std::span<const Method> all_methods() { return kAll; }

bool is_edge_method(Method m) {
  switch (m) {
    case Method::ShortCycles:
    case Method::RandomWalk:
    case Method::Node2Vec:
    case Method::Rnbrw:
    case Method::SimRank:
    case Method::Ecg:
      return false;
    default:
      return true;
  }
}

std::optional<NodeMethod> inner_node_method(Method m) {
  switch (m) {
    case Method::ShortCycles:
    case Method::LineShortCycles:
      return NodeMethod::ShortCycles;
    case Method::RandomWalk:
    case Method::LineRandomWalk:
      return NodeMethod::RandomWalk;
    case Method::Node2Vec:
    case Method::LineNode2Vec:
      return NodeMethod::Node2Vec;
    case Method::Rnbrw:
    case Method::LineRnbrw:
      return NodeMethod::Rnbrw;
    case Method::SimRank:
    case Method::LineSimRank:
      return NodeMethod::SimRank;
    case Method::Ecg:
    case Method::LineEcg:
      return NodeMethod::Ecg;
    default:
      return std::nullopt;
  }
}

WalkParams walk_params(const MethodParams& params, bool on_line_graph) {
  WalkParams walks = on_line_graph ? line_graph_walk_params() : WalkParams{};
  walks.p = params.p;
  walks.q = params.q;
  if (params.walks_per_node) walks.walks_per_node = *params.walks_per_node;
  if (params.walk_length) walks.walk_length = *params.walk_length;
  return walks;
}

NodeSimilarity node_similarity(const Graph& g, NodeMethod method, const MethodParams& params,
                               std::uint64_t seed, bool on_line_graph) {
  switch (method) {
    case NodeMethod::ShortCycles:
      return short_cycle_weights(g, params.iterations);
    case NodeMethod::RandomWalk:
      return rww_weights(g, params.ell, params.iterations);
    case NodeMethod::SimRank:
      return simrank_weights(g, params.iterations, params.simrank_pair_budget);
    case NodeMethod::Rnbrw:
      return rnbrw_weights(g, seed, params.samples);
    case NodeMethod::Ecg:
      return ecg_weights(g, params.ensemble, seed);
    case NodeMethod::Node2Vec:
      return node2vec_weights(g, walk_params(params, on_line_graph), params.sgns, seed);
  }
  return {};
}

}  // namespace gslc
