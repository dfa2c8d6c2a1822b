"""Spectral verification of the level-graph families.

A_n and B_n are the level graphs of the datum automaton and its dual on
reduced words of length n.  For the quaternionic datums every one of them
is a connected, non-bipartite, (q+1)-regular Ramanujan graph: all
nontrivial eigenvalues have modulus at most 2 sqrt(q).  The dart
(non-backtracking) spectrum then sits on {+-1} and the circle of radius
sqrt(q), which the quadratic transfer of the adjacency spectrum predicts
exactly.
"""

from math import sqrt

from ramshift import build_quaternionic_datum, make_field, ramanujan_check
from ramshift.graphs import level_graph, structure_predicates
from ramshift.spectral import nb_transfer_report

for q in (3, 5):
    datum = build_quaternionic_datum(make_field(q, 1), 1, 2)
    bound = 2 * sqrt(q)
    print(f"q = {q}: bound 2 sqrt(q) = {bound:.6f}")
    for n in range(1, 7 if q == 3 else 5):
        for side in ("A", "B"):
            graph = level_graph(datum, side, n)
            shape = structure_predicates(graph)
            verdict = ramanujan_check(graph)
            print(
                f"  {side}_{n}: {graph.n_vertices():>4} vertices, "
                f"connected={shape.connected}, bipartite={shape.bipartite}, "
                f"max nontrivial |l| = {verdict.second_modulus:.6f}, "
                f"margin = {verdict.margin:.6f}, ramanujan = {verdict.ramanujan}"
            )
    print()

print("Dart spectra vs the quadratic transfer (q = 3):")
datum = build_quaternionic_datum(make_field(3, 1), 1, 2)
for n in (1, 2, 3):
    report = nb_transfer_report(level_graph(datum, "A", n))
    print(
        f"  A_{n}: {report.n_darts:>3} darts, set distance "
        f"{max(report.max_dist_direct_to_transfer, report.max_dist_transfer_to_direct):.2e}, "
        f"nontrivial moduli off {{1, sqrt(3)}} by {report.max_modulus_defect:.2e}"
    )
