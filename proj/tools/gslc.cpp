#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gslc/error.hpp"
#include "gslc/evaluation.hpp"
#include "gslc/io.hpp"
#include "gslc/methods.hpp"
#include "gslc/node2vec.hpp"
#include "gslc/pipeline.hpp"
#include "gslc/synth.hpp"

namespace fs = std::filesystem;
using namespace gslc;

namespace {

// Minimum cluster sizes used for the public datasets: {node methods, edge methods}.
const std::map<std::string, std::pair<std::size_t, std::size_t>> kPresets{
    {"football", {5, 10}},
    {"mnist", {500, 2000}},
    {"dblp", {10, 15}},
    {"amazon", {10, 15}},
};

/// Method flags shared by cluster and sweep.
struct MethodFlags {
  int iterations = 3;
  int ell = 3;
  int ensemble = 16;
  std::size_t samples = 0;
  int walks = 0;
  int walk_len = 0;
  int dim = 16;
  int epochs = 5;
  double p = 1.0;
  double q = 1.0;

  void add_to(CLI::App& app) {
    app.add_option("--iterations", iterations, "SC/RWW rounds and SimRank depth")->capture_default_str();
    app.add_option("--ell", ell, "RWW walk length")->capture_default_str();
    app.add_option("--ensemble", ensemble, "Louvain runs for ECG and EECG")->capture_default_str();
    app.add_option("--samples", samples, "RNBRW walks (0: one per edge)")->capture_default_str();
    app.add_option("--walks", walks, "node2vec walks per node (0: method default)");
    app.add_option("--walk-len", walk_len, "node2vec steps per walk (0: method default)");
    app.add_option("--dim", dim, "embedding dimension")->capture_default_str();
    app.add_option("--epochs", epochs, "skip-gram epochs")->capture_default_str();
    app.add_option("--p", p, "node2vec return parameter")->capture_default_str();
    app.add_option("--q", q, "node2vec in-out parameter")->capture_default_str();
  }

  MethodParams params() const {
    MethodParams m;
    m.iterations = iterations;
    m.ell = ell;
    m.ensemble = ensemble;
    m.samples = samples;
    if (walks > 0) m.walks_per_node = walks;
    if (walk_len > 0) m.walk_length = walk_len;
    m.sgns.dim = dim;
    m.sgns.epochs = epochs;
    m.p = p;
    m.q = q;
    return m;
  }
};

Method method_from(const std::string& name) {
  if (auto m = parse_method(name)) return *m;
  std::string known;
  for (Method m : all_methods()) known += (known.empty() ? "" : ", ") + std::string(method_name(m));
  throw ValidationError("unknown method '" + name + "' (expected one of: " + known + ")");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

/// Runs `fn`, prefixing parse and validation messages with the file name.
template <typename Fn>
auto with_file(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw Error(path + ": " + e.what());
  }
}

LabeledGraph read_graph(const std::string& path) {
  auto in = open_in(path);
  return with_file(path, [&] { return load_edge_list(in); });
}

ItemSets read_sets(const std::string& path, const LabeledGraph& graph) {
  auto in = open_in(path);
  return with_file(path, [&] { return read_clusters(in, graph); });
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t chosen = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed=" << chosen << '\n';
  return chosen;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// ---------------------------------------------------------------- cluster

struct ClusterCmd {
  std::string graph;
  std::string method = "ecg";
  std::optional<std::size_t> ms;
  std::string preset;
  std::optional<std::uint64_t> seed;
  bool allow_roots = false;
  bool scores = false;
  bool embedding = false;
  std::string output_dir = ".";
  MethodFlags flags;

  int run() const {
    const Method m = method_from(method);
    std::size_t min_size = 15;
    if (!preset.empty()) {
      const auto it = kPresets.find(preset);
      if (it == kPresets.end()) throw ValidationError("unknown preset '" + preset + "'");
      min_size = is_edge_method(m) ? it->second.second : it->second.first;
    }
    if (ms) min_size = *ms;
    if (min_size < 2) throw ValidationError("--ms must be >= 2");
    if (embedding && m != Method::Node2Vec) throw ValidationError("--embedding requires --method n2v");
    const std::uint64_t s = resolve_seed(seed);

    const LabeledGraph lg = read_graph(graph);
    const MethodParams params = flags.params();
    ClusterResult r;
    std::optional<Embedding> emb;
    if (embedding) {
      emb = node2vec_embedding(lg.graph, walk_params(params), params.sgns, s);
      r = cluster_similarity(similarity_graph(lg.graph, n2v_edge_weights(lg.graph, *emb)), min_size, allow_roots);
    } else {
      ClusterOptions opt;
      opt.method = m;
      opt.params = params;
      opt.min_cluster_size = min_size;
      opt.seed = s;
      opt.allow_roots = allow_roots;
      r = cluster(lg.graph, opt);
    }

    const fs::path dir(output_dir);
    fs::create_directories(dir);
    {
      auto out = open_out(dir / "clusters.txt");
      write_clusters(out, r.nodes.clusters, lg.labels);
    }
    {
      auto out = open_out(dir / "condensed_tree.csv");
      write_condensed_tree(out, r.tree, r.persistence);
    }
    {
      auto out = open_out(dir / "label_map.txt");
      write_label_map(out, lg.labels);
    }
    if (scores) {
      auto out = open_out(dir / "scores.txt");
      if (r.edge_items) {
        write_edge_scores(out, lg.graph, r.similarity, lg.labels);
      } else {
        write_node_scores(out, r.similarity, lg.labels);
      }
    }
    if (emb) {
      auto out = open_out(dir / "embedding.txt");
      write_embedding(out, *emb, lg.labels);
    }

    std::size_t max_size = 0;
    for (const auto& c : r.nodes.clusters) max_size = std::max(max_size, c.size());
    std::ostringstream summary;
    summary << "method=" << method_name(m) << '\n'
            << "ms=" << min_size << '\n'
            << "seed=" << s << '\n'
            << "nodes=" << lg.graph.node_count() << '\n'
            << "edges=" << lg.graph.edge_count() << '\n'
            << "clusters=" << r.nodes.clusters.size() << '\n'
            << "max_cluster=" << max_size << '\n'
            << "coverage=" << fixed6(coverage(r.nodes.clusters, lg.graph.node_count())) << '\n';
    {
      auto out = open_out(dir / "summary.txt");
      out << summary.str();
    }
    std::cout << summary.str();
    return 0;
  }
};

// ---------------------------------------------------------------- evaluate

struct EvaluateCmd {
  std::string pred;
  std::string truth;
  std::string graph;
  std::string csv;

  int run() const {
    const LabeledGraph lg = read_graph(graph);
    const ItemSets clusters = read_sets(pred, lg);
    const ItemSets labels = read_sets(truth, lg);
    const EvaluationReport report = weighted_scores(clusters, labels, lg.graph.node_count());
    std::cout << to_key_value(report);
    if (!csv.empty()) {
      auto out = open_out(csv);
      out << report_csv_header() << '\n' << to_csv_row(report) << '\n';
    }
    return 0;
  }
};

// ---------------------------------------------------------------- generate

struct SynthFlags {
  std::size_t n = 1000;
  double mu = 0.2;
  double outliers = 0.0;
  double overlap = 0.0;
  int memberships = 2;
  double degree = 15.0;
  std::size_t min_size = 20;
  std::size_t max_size = 200;
  double exponent = 1.5;
  std::vector<std::size_t> sizes;

  void add_to(CLI::App& app, bool with_mu_overlap) {
    app.add_option("--n", n, "node count")->capture_default_str();
    if (with_mu_overlap) {
      app.add_option("--mu", mu, "mixing: share of edges leaving the community")->capture_default_str();
      app.add_option("--overlap", overlap, "share of community nodes with several memberships")
          ->capture_default_str();
    }
    app.add_option("--outliers", outliers, "share of nodes without a community")->capture_default_str();
    app.add_option("--memberships", memberships, "communities per overlapping node")->capture_default_str();
    app.add_option("--degree", degree, "target mean degree")->capture_default_str();
    app.add_option("--min-size", min_size, "smallest community")->capture_default_str();
    app.add_option("--max-size", max_size, "largest community")->capture_default_str();
    app.add_option("--exponent", exponent, "power-law exponent of community sizes")->capture_default_str();
    app.add_option("--sizes", sizes, "explicit community sizes")->delimiter(',');
  }

  PlantedConfig config(double mu_value, double overlap_value, std::uint64_t seed) const {
    PlantedConfig cfg;
    cfg.n = n;
    cfg.mu = mu_value;
    cfg.outlier_fraction = outliers;
    cfg.overlap_fraction = overlap_value;
    cfg.memberships = memberships;
    cfg.mean_degree = degree;
    cfg.min_size = min_size;
    cfg.max_size = max_size;
    cfg.size_exponent = exponent;
    cfg.community_sizes = sizes;
    cfg.seed = seed;
    return cfg;
  }
};

std::vector<Label> identity_labels(std::size_t n) {
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i);
  return labels;
}

struct GenerateCmd {
  SynthFlags synth;
  std::optional<std::uint64_t> seed;
  std::string output_dir = ".";
  bool verify = false;

  int run() const {
    const std::uint64_t s = resolve_seed(seed);
    const PlantedConfig cfg = synth.config(synth.mu, synth.overlap, s);
    const Benchmark b = generate(cfg);
    const auto labels = identity_labels(cfg.n);

    const fs::path dir(output_dir);
    fs::create_directories(dir);
    {
      auto out = open_out(dir / "graph.txt");
      write_edge_list(out, b.graph, labels);
    }
    {
      auto out = open_out(dir / "communities.txt");
      write_clusters(out, b.truth.labels, labels);
    }
    std::cout << "nodes=" << cfg.n << '\n'
              << "edges=" << b.graph.edge_count() << '\n'
              << "communities=" << b.truth.labels.size() << '\n'
              << "outliers=" << b.truth.outliers.size() << '\n';
    if (verify) {
      // Uniform stubs land inside the community by chance too, so 1 - mu is a floor.
      const double intra = intra_edge_fraction(b.graph, b.truth);
      std::cout << "intra_edge_fraction=" << fixed6(intra) << '\n';
      const double floor = (1.0 - cfg.mu) * (1.0 - cfg.outlier_fraction) - 0.05;
      if (intra < floor) {
        std::cerr << "verify failed: intra-community edge fraction " << fixed6(intra) << " below "
                  << fixed6(floor) << '\n';
        return 3;
      }
    }
    return 0;
  }
};

// ---------------------------------------------------------------- sweep

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

struct SweepCmd {
  std::vector<std::string> methods{"ecg"};
  std::vector<double> mus{0.2};
  std::vector<double> overlaps{0.0};
  std::size_t reps = 1;
  std::size_t ms = 15;
  std::optional<std::uint64_t> seed;
  bool allow_roots = false;
  unsigned jobs = 1;
  std::string output;
  SynthFlags synth;
  MethodFlags flags;

  struct Cell {
    std::string method;
    double mu;
    double overlap;
    std::string row;
  };

  std::string run_cell(const std::string& name, double mu, double overlap, std::uint64_t base) const {
    double p = 0, r = 0, f = 0, c = 0, clusters = 0, max_cluster = 0;
    std::string prefix = csv_field(name) + "," + std::to_string(ms) + "," + fixed6(mu) + "," + fixed6(overlap) +
                         "," + std::to_string(reps) + ",";
    try {
      const Method m = method_from(name);
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const Benchmark b = generate(synth.config(mu, overlap, base + rep));
        ClusterOptions opt;
        opt.method = m;
        opt.params = flags.params();
        opt.min_cluster_size = ms;
        opt.seed = base + rep;
        opt.allow_roots = allow_roots;
        const ClusterResult res = cluster(b.graph, opt);
        const EvaluationReport e = weighted_scores(res.nodes.clusters, b.truth.labels, b.graph.node_count());
        p += e.precision;
        r += e.recall;
        f += e.f1;
        c += e.coverage;
        clusters += static_cast<double>(e.clusters);
        max_cluster += static_cast<double>(e.max_cluster);
      }
    } catch (const std::exception& ex) {
      return prefix + "nan,nan,nan,nan,nan,nan," + csv_field(ex.what());
    }
    const double k = static_cast<double>(reps);
    return prefix + fixed6(p / k) + "," + fixed6(r / k) + "," + fixed6(f / k) + "," + fixed6(c / k) + "," +
           fixed6(clusters / k) + "," + fixed6(max_cluster / k) + ",";
  }

  int run() const {
    if (reps < 1) throw ValidationError("--reps must be >= 1");
    if (ms < 2) throw ValidationError("--ms must be >= 2");
    for (const auto& name : methods) method_from(name);
    const std::uint64_t base = resolve_seed(seed);

    std::vector<Cell> cells;
    for (const auto& name : methods)
      for (double mu : mus)
        for (double ov : overlaps) cells.push_back({name, mu, ov, {}});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k; (k = next.fetch_add(1)) < cells.size();) {
        cells[k].row = run_cell(cells[k].method, cells[k].mu, cells[k].overlap, base);
      }
    };
    std::vector<std::thread> pool;
    const unsigned count = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "method,ms,mu,overlap,seed_count,precision,recall,f1,coverage,clusters,max_cluster,error\n";
    for (const Cell& cell : cells) csv << cell.row << '\n';
    if (output.empty()) {
      std::cout << csv.str();
    } else {
      auto out = open_out(output);
      out << csv.str();
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph similarity measures and hierarchical single-linkage clustering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gslc 0.1.0");

  ClusterCmd cl;
  auto* c = app.add_subcommand("cluster", "cluster a graph and write clusters.txt, condensed_tree.csv, summary.txt");
  c->add_option("graph", cl.graph, "edge list: 'u v' or 'u v w' per line")->required();
  c->add_option("--method", cl.method, "similarity measure")->capture_default_str();
  c->add_option("--ms", cl.ms, "minimum cluster size (default 15)");
  c->add_option("--preset", cl.preset, "dataset preset for --ms: football, mnist, dblp, amazon");
  c->add_option("--seed", cl.seed, "random seed (default: drawn and printed)");
  c->add_flag("--allow-roots", cl.allow_roots, "let a whole connected component be selected");
  c->add_flag("--scores", cl.scores, "also write scores.txt");
  c->add_flag("--embedding", cl.embedding, "also write embedding.txt (n2v)");
  c->add_option("--output-dir", cl.output_dir, "output directory")->capture_default_str();
  cl.flags.add_to(*c);

  EvaluateCmd ev;
  auto* e = app.add_subcommand("evaluate", "score predicted clusters against ground truth");
  e->add_option("--pred", ev.pred, "predicted clusters, one per line")->required();
  e->add_option("--truth", ev.truth, "ground-truth communities, one per line")->required();
  e->add_option("--graph", ev.graph, "edge list defining the node universe")->required();
  e->add_option("--csv", ev.csv, "also write a CSV report here");

  GenerateCmd gen;
  auto* g = app.add_subcommand("generate", "write a planted-partition benchmark (graph.txt, communities.txt)");
  gen.synth.add_to(*g, true);
  g->add_option("--seed", gen.seed, "random seed (default: drawn and printed)");
  g->add_option("--output-dir", gen.output_dir, "output directory")->capture_default_str();
  g->add_flag("--verify", gen.verify, "report the intra-community edge fraction and check it");

  SweepCmd sw;
  auto* s = app.add_subcommand("sweep", "average scores over generated benchmarks as CSV");
  s->add_option("--methods", sw.methods, "comma-separated method ids")->delimiter(',')->capture_default_str();
  s->add_option("--mu", sw.mus, "comma-separated mixing values")->delimiter(',')->capture_default_str();
  s->add_option("--overlap", sw.overlaps, "comma-separated overlap fractions")->delimiter(',')->capture_default_str();
  s->add_option("--reps", sw.reps, "benchmarks per grid point")->capture_default_str();
  s->add_option("--ms", sw.ms, "minimum cluster size")->capture_default_str();
  s->add_option("--seed", sw.seed, "base seed (default: drawn and printed)");
  s->add_flag("--allow-roots", sw.allow_roots, "let a whole connected component be selected");
  s->add_option("--jobs", sw.jobs, "grid cells run in parallel")->capture_default_str();
  s->add_option("--output", sw.output, "CSV file (default: stdout)");
  sw.synth.add_to(*s, false);
  sw.flags.add_to(*s);

  CLI11_PARSE(app, argc, argv);
  try {
    if (c->parsed()) return cl.run();
    if (e->parsed()) return ev.run();
    if (g->parsed()) return gen.run();
    if (s->parsed()) return sw.run();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
