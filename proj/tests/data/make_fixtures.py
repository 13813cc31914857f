"""Writes the DIMACS clique-form fixtures used by the spot-check tests.

Each graph is rebuilt from its combinatorial definition:
  johnson8-2-4  2-subsets of {1..8}, adjacent when disjoint
  hamming6-2    6-bit words, adjacent when Hamming distance >= 2
  MANN_a9       complement of the Steiner triple graph of AG(2,3): one
                triangle per line (a vertex per point on the line) plus one
                vertex per point joined to its four line copies
"""

import itertools
import pathlib


def write(path, n, edges, comment):
    edges = sorted({(min(u, v), max(u, v)) for u, v in edges})
    with open(path, "w") as f:
        f.write(f"c {comment}\n")
        f.write(f"p edge {n} {len(edges)}\n")
        for u, v in edges:
            f.write(f"e {u + 1} {v + 1}\n")


def johnson():
    verts = list(itertools.combinations(range(8), 2))
    edges = [(a, b) for a, b in itertools.combinations(range(len(verts)), 2)
             if not set(verts[a]) & set(verts[b])]
    return len(verts), edges


def hamming():
    edges = [(a, b) for a, b in itertools.combinations(range(64), 2)
             if bin(a ^ b).count("1") >= 2]
    return 64, edges


def mann_a9():
    points = [(x, y) for x in range(3) for y in range(3)]
    lines = set()
    for p, q in itertools.combinations(points, 2):
        r = ((-p[0] - q[0]) % 3, (-p[1] - q[1]) % 3)
        lines.add(tuple(sorted((points.index(p), points.index(q), points.index(r)))))
    lines = sorted(lines)
    assert len(lines) == 12
    copies = [(li, e) for li, line in enumerate(lines) for e in line]
    n = len(copies) + 9
    comp = set()
    for a, b in itertools.combinations(range(len(copies)), 2):
        if copies[a][0] == copies[b][0]:
            comp.add((a, b))
    for a, (li, e) in enumerate(copies):
        comp.add((a, len(copies) + e))
    edges = [(a, b) for a, b in itertools.combinations(range(n), 2) if (a, b) not in comp]
    return n, edges


if __name__ == "__main__":
    here = pathlib.Path(__file__).parent
    write(here / "johnson8-2-4.clq", *johnson(), "johnson8-2-4: Kneser graph K(8,2)")
    write(here / "hamming6-2.clq", *hamming(), "hamming6-2: words at distance >= 2")
    write(here / "MANN_a9.clq", *mann_a9(), "MANN_a9: Steiner triple system of AG(2,3)")
