#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>

#include "gslc/evaluation.hpp"
#include "gslc/graph.hpp"
#include "gslc/hslc.hpp"
#include "gslc/node2vec.hpp"
#include "gslc/synth.hpp"

namespace gslc {

/// Text formats. Every writer prints original labels, never internal ids.

/// "u v" lines, or "u v w" when some weight differs from 1.
void write_edge_list(std::ostream& out, const Graph& g, std::span<const Label> labels);

/// "internal_id original_label" per node.
void write_label_map(std::ostream& out, std::span<const Label> labels);

/// One cluster per line, space-separated labels.
void write_clusters(std::ostream& out, const ItemSets& clusters, std::span<const Label> labels);

/// Reads the cluster-per-line format against a graph's labels.
ItemSets read_clusters(std::istream& in, const LabeledGraph& graph);

/// cluster_id,parent_id,lambda_min,lambda_end,size_at_birth,persistence
void write_condensed_tree(std::ostream& out, const CondensedTree& tree, std::span<const double> sigma);

/// "u v score" for node similarities; "u1 v1 u2 v2 score" for edge pairs.
void write_node_scores(std::ostream& out, const SimilarityGraph& s, std::span<const Label> labels);
void write_edge_scores(std::ostream& out, const Graph& g, const SimilarityGraph& s,
                       std::span<const Label> labels);

/// "label v1 ... vd" per embedded node.
void write_embedding(std::ostream& out, const Embedding& emb, std::span<const Label> labels);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace gslc
