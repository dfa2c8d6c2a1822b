"""Beyond the plane: diagonal actions on products of trees.

With three places S0 = {1, 2, 3} over F_5 the same generators act on a
product of two 6-regular trees at once.  A generator threads through the
two automata in sequence (the end state of the first transduction starts
the second), and the resulting multi-level graphs are again connected,
non-bipartite Ramanujan graphs: the degree-regular shift exists in
dimension |S0| = 3 < q.
"""

from ramshift import build_quaternionic_datum, make_field, ramanujan_check
from ramshift.graphs import product_level_graph, structure_predicates
from ramshift.mealy import product_act

spec = make_field(5, 1)

d2 = build_quaternionic_datum(spec, 1, 2)
d3 = build_quaternionic_datum(spec, 1, 3)
words = ((2, 4), (1,))
outputs, end = product_act([d2, d3], 0, words)
print(f"generator {d2.V[0]} acting diagonally on word pair {words}:")
print(f"  outputs {outputs}, end state {d2.V[end]}")

print("\nMulti-level graphs (q = 5, S0 = {1,2,3}, tau = 1):")
for levels in ((1, 1), (2, 1), (1, 2), (2, 2)):
    graph = product_level_graph(spec, [1, 2, 3], 1, levels)
    shape = structure_predicates(graph)
    verdict = ramanujan_check(graph)
    print(
        f"  levels {levels}: {graph.n_vertices():>4} vertices, "
        f"{shape.regular_degree}-regular, connected={shape.connected}, "
        f"bipartite={shape.bipartite}, max nontrivial |l| = "
        f"{verdict.second_modulus:.6f} <= {verdict.bound:.6f}: {verdict.ramanujan}"
    )
