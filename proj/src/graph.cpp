#include "gslc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "gslc/error.hpp"

namespace gslc {

Graph Graph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
  Graph g;
  g.node_count_ = node_count;
  for (Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw ValidationError("edge endpoint out of range");
    }
    if (!std::isfinite(e.w) || e.w < 0.0) {
      throw ValidationError("edge weight must be finite and non-negative");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w > b.w;
  });
  // The heaviest copy of each pair sorts first.
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  offsets_.assign(node_count_ + 1, 0);
  unit_weights_ = true;
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
    if (e.w != 1.0) unit_weights_ = false;
  }
  for (std::size_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
  incidence_.resize(offsets_[node_count_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    incidence_[cursor[e.u]++] = {e.v, id};
    incidence_[cursor[e.v]++] = {e.u, id};
  }
  // Sort each list by neighbor.
  for (std::size_t i = 0; i < node_count_; ++i) {
    std::sort(incidence_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              incidence_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Incidence& a, const Incidence& b) { return a.node < b.node; });
  }
}

double Graph::weighted_degree(NodeId i) const {
  double total = 0.0;
  for (const Incidence& inc : neighbors(i)) total += edges_[inc.edge].w;
  return total;
}

std::int64_t Graph::find_edge(NodeId i, NodeId j) const {
  if (i >= node_count_ || j >= node_count_) return -1;
  auto adj = neighbors(i);
  auto it = std::lower_bound(adj.begin(), adj.end(), j,
                             [](const Incidence& a, NodeId x) { return a.node < x; });
  if (it == adj.end() || it->node != j) return -1;
  return it->edge;
}

Graph Graph::reweighted(std::span<const double> weights) const {
  if (weights.size() != edges_.size()) {
    throw ValidationError("weight vector size does not match edge count");
  }
  Graph g = *this;
  g.unit_weights_ = true;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!std::isfinite(weights[e]) || weights[e] < 0.0) {
      throw ValidationError("edge weight must be finite and non-negative");
    }
    g.edges_[e].w = weights[e];
    if (weights[e] != 1.0) g.unit_weights_ = false;
  }
  return g;
}

std::vector<NodeId> closed_neighborhood(const Graph& g, NodeId i) {
  std::vector<NodeId> out;
  out.reserve(g.degree(i) + 1);
  bool placed = false;
  for (const Incidence& inc : g.neighbors(i)) {
    if (!placed && inc.node > i) {
      out.push_back(i);
      placed = true;
    }
    out.push_back(inc.node);
  }
  if (!placed) out.push_back(i);
  return out;
}

std::pair<NodeId, NodeId> LineGraph::outer_endpoints(const Graph& base, EdgeId link) const {
  const Edge& l = graph.edge(link);
  const Edge& a = base.edge(l.u);
  const Edge& b = base.edge(l.v);
  const NodeId j = shared[link];
  return {a.u == j ? a.v : a.u, b.u == j ? b.v : b.u};
}

LineGraph build_line_graph(const Graph& g) {
  struct Link {
    EdgeId a, b;
    NodeId shared;
    double w;
  };
  std::vector<Link> links;
  std::size_t total = 0;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    const std::size_t d = g.degree(j);
    total += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  links.reserve(total);
  for (NodeId j = 0; j < g.node_count(); ++j) {
    auto adj = g.neighbors(j);
    const double w = adj.empty() ? 0.0 : 1.0 / static_cast<double>(adj.size());
    for (std::size_t x = 0; x < adj.size(); ++x) {
      for (std::size_t y = x + 1; y < adj.size(); ++y) {
        EdgeId a = adj[x].edge, b = adj[y].edge;
        if (a > b) std::swap(a, b);
        links.push_back({a, b, j, w});
      }
    }
  }
  std::sort(links.begin(), links.end(), [](const Link& l, const Link& r) {
    return l.a != r.a ? l.a < r.a : l.b < r.b;
  });

  LineGraph lg;
  std::vector<Edge> edges;
  edges.reserve(links.size());
  lg.shared.reserve(links.size());
  for (const Link& l : links) {
    edges.push_back({l.a, l.b, l.w});
    lg.shared.push_back(l.shared);
  }
  // Links are canonical and unique, so from_edges keeps the order of `shared`.
  lg.graph = Graph::from_edges(g.edge_count(), std::move(edges));
  return lg;
}

std::int64_t LabeledGraph::id_of(Label label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) return -1;
  return it - labels.begin();
}

namespace {

Label parse_label(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid node label '" + token + "'", line);
  }
  if (used != token.size()) throw ParseError("invalid node label '" + token + "'", line);
  if (value < 0) throw ParseError("node labels must be non-negative", line);
  return value;
}

}  // namespace

LabeledGraph load_edge_list(std::istream& in) {
  struct Raw {
    Label u, v;
    double w;
  };
  std::vector<Raw> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError("expected 'u v' or 'u v w'", line_no);
    }
    Raw r{parse_label(tokens[0], line_no), parse_label(tokens[1], line_no), 1.0};
    if (tokens.size() == 3) {
      std::size_t used = 0;
      try {
        r.w = std::stod(tokens[2], &used);
      } catch (const std::exception&) {
        throw ParseError("invalid weight '" + tokens[2] + "'", line_no);
      }
      if (used != tokens[2].size()) throw ParseError("invalid weight '" + tokens[2] + "'", line_no);
      if (!std::isfinite(r.w)) throw ValidationError("line " + std::to_string(line_no) + ": weight must be finite");
      if (r.w < 0.0) throw ValidationError("line " + std::to_string(line_no) + ": negative weight");
    }
    raw.push_back(r);
  }

  LabeledGraph out;
  out.labels.reserve(raw.size() * 2);
  for (const Raw& r : raw) {
    out.labels.push_back(r.u);
    out.labels.push_back(r.v);
  }
  std::sort(out.labels.begin(), out.labels.end());
  out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const Raw& r : raw) {
    edges.push_back({static_cast<NodeId>(out.id_of(r.u)), static_cast<NodeId>(out.id_of(r.v)), r.w});
  }
  out.graph = Graph::from_edges(out.labels.size(), std::move(edges));
  return out;
}

}  // namespace gslc
