"""Turn the college football GML file into gslc inputs.

Writes football.txt (one "u v" line per game) and football_communities.txt
(one conference per line). Teams of the outlier conferences are left out of
the communities file, so gslc treats them as outliers.
"""

import argparse
import collections
import pathlib
import re

import networkx as nx


def load(path):
    text = pathlib.Path(path).read_text()
    # Some copies list a few games twice; read them as a multigraph.
    if "multigraph" not in text:
        text = re.sub(r"graph\s*\[", "graph [\n  multigraph 1", text, count=1)
    return nx.Graph(nx.parse_gml(text, label="id"))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("gml", help="football.gml with a 'value' conference attribute per team")
    ap.add_argument("--output-dir", default="data/football")
    ap.add_argument("--outlier-values", type=int, nargs="*", default=[5],
                    help="conference values treated as outliers (5 is Independents)")
    args = ap.parse_args()

    g = load(args.gml)
    out = pathlib.Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "football.txt", "w") as f:
        for u, v in sorted(tuple(sorted(e)) for e in g.edges()):
            f.write(f"{u} {v}\n")
    conferences = collections.defaultdict(list)
    for node, data in g.nodes(data=True):
        if data["value"] not in args.outlier_values:
            conferences[data["value"]].append(node)
    with open(out / "football_communities.txt", "w") as f:
        for value in sorted(conferences):
            f.write(" ".join(str(v) for v in sorted(conferences[value])) + "\n")
    print(f"{g.number_of_nodes()} teams, {g.number_of_edges()} games, {len(conferences)} conferences")


if __name__ == "__main__":
    main()
