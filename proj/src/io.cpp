#include "gslc/io.hpp"

#include <charconv>
#include <sstream>

#include "gslc/synth.hpp"

namespace gslc {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const Label> labels) {
  const bool weighted = !g.unit_weights();
  for (const Edge& e : g.edges()) {
    out << labels[e.u] << ' ' << labels[e.v];
    if (weighted) out << ' ' << format_double(e.w);
    out << '\n';
  }
}

void write_label_map(std::ostream& out, std::span<const Label> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ' ' << labels[i] << '\n';
}

void write_clusters(std::ostream& out, const ItemSets& clusters, std::span<const Label> labels) {
  for (const auto& c : clusters) {
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << labels[c[k]];
    out << '\n';
  }
}

ItemSets read_clusters(std::istream& in, const LabeledGraph& graph) {
  return read_ground_truth(in, graph).labels;
}

void write_condensed_tree(std::ostream& out, const CondensedTree& tree, std::span<const double> sigma) {
  out << "cluster_id,parent_id,lambda_min,lambda_end,size_at_birth,persistence\n";
  for (const CondensedCluster& c : tree.clusters) {
    out << c.id << ',' << c.parent << ',' << format_double(c.lambda_min) << ','
        << format_double(c.lambda_end) << ',' << c.size_at_birth << ',' << format_double(sigma[c.id])
        << '\n';
  }
}

void write_node_scores(std::ostream& out, const SimilarityGraph& s, std::span<const Label> labels) {
  for (const Link& l : s.links()) {
    out << labels[l.a] << ' ' << labels[l.b] << ' ' << format_double(l.s) << '\n';
  }
}

void write_edge_scores(std::ostream& out, const Graph& g, const SimilarityGraph& s,
                       std::span<const Label> labels) {
  for (const Link& l : s.links()) {
    const Edge& a = g.edge(l.a);
    const Edge& b = g.edge(l.b);
    out << labels[a.u] << ' ' << labels[a.v] << ' ' << labels[b.u] << ' ' << labels[b.v] << ' '
        << format_double(l.s) << '\n';
  }
}

void write_embedding(std::ostream& out, const Embedding& emb, std::span<const Label> labels) {
  for (NodeId v = 0; v < emb.node_count(); ++v) {
    if (!emb.present[v]) continue;
    out << labels[v];
    for (float x : emb.vector(v)) out << ' ' << format_double(static_cast<double>(x));
    out << '\n';
  }
}

}  // namespace gslc
