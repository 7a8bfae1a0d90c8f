#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <tuple>

#include "gslc/error.hpp"
#include "gslc/evaluation.hpp"
#include "gslc/graph.hpp"
#include "gslc/methods.hpp"
#include "gslc/pipeline.hpp"
#include "gslc/synth.hpp"

namespace py = pybind11;
using namespace gslc;

namespace {

using EdgeTuple = std::tuple<NodeId, NodeId, double>;

Graph graph_from(std::size_t n, const std::vector<EdgeTuple>& edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v, w] : edges) list.push_back({u, v, w});
  return Graph::from_edges(n, std::move(list));
}

std::vector<EdgeTuple> edge_tuples(const Graph& g) {
  std::vector<EdgeTuple> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
  return out;
}

Method method_from(const std::string& name) {
  if (auto m = parse_method(name)) return *m;
  throw ValidationError("unknown method '" + name + "'");
}

MethodParams params_from(const py::kwargs& kw) {
  MethodParams p;
  for (const auto& [key, value] : kw) {
    const auto k = key.cast<std::string>();
    if (k == "iterations") p.iterations = value.cast<int>();
    else if (k == "ell") p.ell = value.cast<int>();
    else if (k == "ensemble") p.ensemble = value.cast<int>();
    else if (k == "samples") p.samples = value.cast<std::size_t>();
    else if (k == "walks") p.walks_per_node = value.cast<int>();
    else if (k == "walk_len") p.walk_length = value.cast<int>();
    else if (k == "dim") p.sgns.dim = value.cast<int>();
    else if (k == "epochs") p.sgns.epochs = value.cast<int>();
    else if (k == "p") p.p = value.cast<double>();
    else if (k == "q") p.q = value.cast<double>();
    else throw ValidationError("unknown method parameter '" + k + "'");
  }
  return p;
}

py::dict report_dict(const EvaluationReport& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f1"] = r.f1;
  d["coverage"] = r.coverage;
  d["clusters"] = r.clusters;
  d["max_cluster"] = r.max_cluster;
  d["empty_prediction"] = r.empty_prediction;
  return d;
}

py::dict result_dict(const ClusterResult& r) {
  py::dict d;
  d["clusters"] = r.nodes.clusters;
  d["item_clusters"] = r.items.clusters;
  d["edge_items"] = r.edge_items;
  d["persistence"] = r.persistence;
  d["selected"] = r.selection.clusters;
  py::list tree;
  for (const auto& c : r.tree.clusters) {
    tree.append(py::make_tuple(c.id, c.parent, c.lambda_min, c.lambda_end, c.size_at_birth));
  }
  d["tree"] = tree;
  return d;
}

}  // namespace

PYBIND11_MODULE(gslc, m) {
  m.doc() = "Graph similarity measures and hierarchical single-linkage clustering";

  auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", error.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", error.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from), py::arg("n"), py::arg("edges"),
           "Simple undirected graph from (u, v, w) tuples; self-loops are dropped, duplicates keep the max weight.")
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges", &edge_tuples)
      .def("degree", &Graph::degree);

  m.def(
      "read_edge_list",
      [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open " + path);
        LabeledGraph lg = load_edge_list(in);
        return py::make_tuple(std::move(lg.graph), lg.labels);
      },
      py::arg("path"), "Returns (graph, labels): labels[i] is the original label of node i.");

  m.def(
      "methods",
      [] {
        std::vector<std::string> out;
        for (Method x : all_methods()) out.emplace_back(method_name(x));
        return out;
      },
      "Method ids accepted by score() and cluster().");

  m.def(
      "score",
      [](const Graph& g, const std::string& method, std::uint64_t seed, const py::kwargs& kw) {
        const SimilarityGraph s = score(g, method_from(method), params_from(kw), seed);
        std::vector<std::tuple<ItemId, ItemId, double>> out;
        for (const Link& l : s.links()) out.emplace_back(l.a, l.b, l.s);
        return out;
      },
      py::arg("graph"), py::arg("method"), py::arg("seed") = 0,
      "Similarity links (a, b, s). Items are nodes, or edge indices for edge methods.");

  m.def(
      "cluster",
      [](const Graph& g, const std::string& method, std::size_t ms, std::uint64_t seed, bool allow_roots,
         const py::kwargs& kw) {
        ClusterOptions opt;
        opt.method = method_from(method);
        opt.params = params_from(kw);
        opt.min_cluster_size = ms;
        opt.seed = seed;
        opt.allow_roots = allow_roots;
        ClusterResult r;
        {
          py::gil_scoped_release release;
          r = cluster(g, opt);
        }
        return result_dict(r);
      },
      py::arg("graph"), py::arg("method") = "ecg", py::arg("ms") = 15, py::arg("seed") = 0,
      py::arg("allow_roots") = false);

  m.def(
      "cluster_links",
      [](std::size_t items, const std::vector<std::tuple<ItemId, ItemId, double>>& links, std::size_t ms,
         bool allow_roots) {
        std::vector<Link> list;
        for (const auto& [a, b, s] : links) list.push_back({a, b, s});
        return result_dict(cluster_similarity(SimilarityGraph(items, std::move(list)), ms, allow_roots));
      },
      py::arg("items"), py::arg("links"), py::arg("ms"), py::arg("allow_roots") = false,
      "Hierarchical single-linkage clustering of an arbitrary similarity graph.");

  m.def(
      "evaluate",
      [](const ItemSets& clusters, const ItemSets& labels, std::size_t n) {
        return report_dict(weighted_scores(clusters, labels, n));
      },
      py::arg("clusters"), py::arg("labels"), py::arg("n"));

  m.def(
      "generate",
      [](std::size_t n, double mu, double outliers, double overlap, int memberships, double degree,
         std::size_t min_size, std::size_t max_size, double exponent, std::vector<std::size_t> sizes,
         std::uint64_t seed) {
        PlantedConfig cfg;
        cfg.n = n;
        cfg.mu = mu;
        cfg.outlier_fraction = outliers;
        cfg.overlap_fraction = overlap;
        cfg.memberships = memberships;
        cfg.mean_degree = degree;
        cfg.min_size = min_size;
        cfg.max_size = max_size;
        cfg.size_exponent = exponent;
        cfg.community_sizes = std::move(sizes);
        cfg.seed = seed;
        Benchmark b = generate(cfg);
        return py::make_tuple(std::move(b.graph), b.truth.labels, b.truth.outliers);
      },
      py::arg("n") = 1000, py::arg("mu") = 0.2, py::arg("outliers") = 0.0, py::arg("overlap") = 0.0,
      py::arg("memberships") = 2, py::arg("degree") = 15.0, py::arg("min_size") = 20, py::arg("max_size") = 200,
      py::arg("exponent") = 1.5, py::arg("sizes") = std::vector<std::size_t>{}, py::arg("seed") = 0,
      "Planted-partition benchmark: returns (graph, communities, outliers).");
}
