#include "gslc/edge_similarity.hpp"

#include <algorithm>

#include "gslc/error.hpp"
#include "gslc/parallel.hpp"

namespace gslc {

namespace {

std::size_t intersection_size(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::size_t common = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return common;
}

}  // namespace

EdgeSimilarity link_communities(const Graph& g) {
  EdgeSimilarity out{build_line_graph(g), {}};
  std::vector<std::vector<NodeId>> closed(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) closed[i] = closed_neighborhood(g, i);

  const std::size_t links = out.line.graph.edge_count();
  out.scores.assign(links, 0.0);
  parallel_for(links, [&](std::size_t l) {
    const auto [i, k] = out.line.outer_endpoints(g, static_cast<EdgeId>(l));
    const std::size_t common = intersection_size(closed[i], closed[k]);
    const std::size_t together = closed[i].size() + closed[k].size() - common;
    out.scores[l] = static_cast<double>(common) / static_cast<double>(together);
  });
  return out;
}

EdgeSimilarity lgtp(const Graph& g) {
  if (g.edge_count() == 0) throw ValidationError("lgtp: graph has no edges");
  EdgeSimilarity out{build_line_graph(g), {}};
  out.scores.reserve(out.line.graph.edge_count());
  for (const Edge& link : out.line.graph.edges()) out.scores.push_back(link.w);
  return out;
}

EdgeSimilarity lg_apply(const Graph& g, NodeMethod method, const MethodParams& params,
                        std::uint64_t seed) {
  if (g.edge_count() == 0) throw ValidationError("line graph method: graph has no edges");
  EdgeSimilarity out{build_line_graph(g), {}};
  out.scores = node_similarity(out.line.graph, method, params, seed, true).scores;
  return out;
}

EdgeSimilarity eecg_from_runs(const Graph& g, const std::vector<Partition>& runs) {
  if (runs.empty()) throw ValidationError("ensemble is empty");
  EdgeSimilarity out{build_line_graph(g), {}};
  const std::size_t links = out.line.graph.edge_count();
  out.scores.assign(links, 0.0);
  parallel_for(links, [&](std::size_t l) {
    const auto [i, k] = out.line.outer_endpoints(g, static_cast<EdgeId>(l));
    const NodeId j = out.line.shared[l];
    std::size_t together = 0;
    for (const Partition& p : runs) {
      together += p.labels[i] == p.labels[j] && p.labels[j] == p.labels[k] ? 1 : 0;
    }
    out.scores[l] = static_cast<double>(together) / static_cast<double>(runs.size());
  });
  return out;
}

EdgeSimilarity eecg(const Graph& g, int ensemble, std::uint64_t seed) {
  return eecg_from_runs(g, louvain_ensemble(g, ensemble, seed));
}

}  // namespace gslc
