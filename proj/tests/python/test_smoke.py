import gslc
import pytest


def two_cliques(k=5):
    edges = []
    for base in (0, k):
        for a in range(k):
            for b in range(a + 1, k):
                edges.append((base + a, base + b, 1.0))
    return gslc.Graph(2 * k, edges)


def test_graph_basics():
    g = gslc.Graph(3, [(0, 1, 1.0), (1, 0, 2.0), (2, 2, 1.0)])
    assert g.node_count == 3
    assert g.edges() == [(0, 1, 2.0)]


def test_methods_roster():
    assert "ecg" in gslc.methods()
    assert "lg-simrank" in gslc.methods()
    assert len(gslc.methods()) == 15


def test_cluster_two_cliques():
    result = gslc.cluster(two_cliques(), method="ecg", ms=3, seed=1)
    assert sorted(result["clusters"]) == [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]]


def test_edge_method_projects_onto_nodes():
    bowtie = gslc.Graph(5, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (0, 3, 1), (0, 4, 1), (3, 4, 1)])
    result = gslc.cluster(bowtie, method="lc", ms=3)
    assert result["edge_items"]
    assert sorted(result["clusters"]) == [[0, 1, 2], [0, 3, 4]]


def test_scores_are_reproducible():
    g = two_cliques()
    assert gslc.score(g, "rnbrw", seed=3) == gslc.score(g, "rnbrw", seed=3)
    assert all(0.0 <= s <= 1.0 for _, _, s in gslc.score(g, "sc"))


def test_evaluate_worked_example():
    report = gslc.evaluate([[1, 2, 3]], [[1, 2], [3, 4]], 5)
    assert report["precision"] == pytest.approx(2 / 3)
    assert report["f1"] == pytest.approx(0.8)


def test_generate_and_recover():
    g, truth, outliers = gslc.generate(n=300, mu=0.1, degree=15, seed=4)
    assert not outliers
    result = gslc.cluster(g, method="ecg", ms=10, seed=4)
    assert gslc.evaluate(result["clusters"], truth, g.node_count)["f1"] > 0.8


def test_cluster_links_generic_items():
    result = gslc.cluster_links(6, [(0, 1, 0.9), (1, 2, 0.9), (3, 4, 0.8), (4, 5, 0.8), (2, 3, 0.1)], ms=3)
    assert sorted(result["clusters"]) == [[0, 1, 2], [3, 4, 5]]


def test_errors_are_typed():
    with pytest.raises(gslc.ValidationError):
        gslc.cluster(two_cliques(), method="nope")
    with pytest.raises(gslc.ValidationError):
        gslc.generate(mu=1.5)
    with pytest.raises(gslc.Error):
        gslc.read_edge_list("/nonexistent/graph.txt")
