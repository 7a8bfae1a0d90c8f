#include "gslc/pipeline.hpp"

#include "gslc/edge_similarity.hpp"
#include "gslc/error.hpp"

namespace gslc {

SimilarityGraph score(const Graph& g, Method method, const MethodParams& params, std::uint64_t seed) {
  if (!is_edge_method(method)) {
    return similarity_graph(g, node_similarity(g, *inner_node_method(method), params, seed));
  }
  if (g.edge_count() == 0) return SimilarityGraph(0, {});
  switch (method) {
    case Method::LinkCommunities:
      return similarity_graph(link_communities(g));
    case Method::LineGraphTransition:
      return similarity_graph(lgtp(g));
    case Method::EdgeEcg:
      return similarity_graph(eecg(g, params.ensemble, seed));
    default:
      return similarity_graph(lg_apply(g, *inner_node_method(method), params, seed));
  }
}

ClusterResult cluster_similarity(SimilarityGraph similarity, std::size_t min_cluster_size,
                                 bool allow_roots) {
  ClusterResult r;
  r.similarity = std::move(similarity);
  r.tree = condense(build_merge_forest(r.similarity), min_cluster_size);
  r.persistence = persistence(r.tree);
  r.selection = select_clusters(r.tree, r.persistence, allow_roots);
  r.items = cluster_members(r.tree, r.selection);
  r.nodes = r.items;
  return r;
}

ClusterResult cluster(const Graph& g, const ClusterOptions& options) {
  if (options.min_cluster_size < 2) throw ValidationError("minimum cluster size must be >= 2");
  ClusterResult r = cluster_similarity(score(g, options.method, options.params, options.seed),
                                       options.min_cluster_size, options.allow_roots);
  r.edge_items = is_edge_method(options.method);
  if (r.edge_items) r.nodes = project_edge_clusters(r.items, g);
  return r;
}

}  // namespace gslc
