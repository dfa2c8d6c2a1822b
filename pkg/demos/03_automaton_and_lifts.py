"""The datum automaton, its dual, and deterministic lifts.

Each relation square (a, b, c, d) reads as a transition a --b/c--> d of a
Mealy automaton with states V and alphabet H.  The automaton is
bireversible, so it carries a lifting system: a single fixed set of rules
that turns the level-n graph into the level-(n+1) graph.  Iterating the
rules from the one-vertex rose rebuilds every action graph.
"""

from pathlib import Path

from ramshift import build_quaternionic_datum, make_field
from ramshift.graphs import covering_check
from ramshift.mealy import (
    act,
    action_graph,
    apply_lift,
    dual,
    from_datum,
    is_bireversible,
    lift_system,
    mealy_to_dot,
    rose,
    word_label,
)

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

datum = build_quaternionic_datum(make_field(3, 1), 1, 2)
m = from_datum(datum)
print(m, "bireversible:", is_bireversible(m))

state = datum.V.index("1")
word = tuple(datum.H.index(x) for x in ("1+Z", "2+Z", "1+Z"))
output, end = act(m, state, word)
print(f"acting from state 1 on {word_label(word, m.alphabet)}:")
print(f"  output {word_label(output, m.alphabet)}, end state {m.states[end]}")

print("\nThe dual automaton swaps states and letters:")
print(dual(m))

rules = lift_system(m)
print(f"\n{rules}; for example the rules lifting an edge labeled '1':")
a = datum.V.index("1")
for x in range(4):
    b, y = rules.rules[(a, x)]
    print(f"  prepend {m.alphabet[x]:>4}: v --1--> u lifts to "
          f"[{m.alphabet[x]}]v --{m.states[b]}--> [{m.alphabet[y]}]u")

graph = rose(m)
for n in range(1, 5):
    graph = apply_lift(rules, graph, reduced=True)
    reference = action_graph(m, n, reduced=True)
    same = sorted(
        (graph.vertices[s], graph.vertices[t], st) for s, t, st in graph.edges
    ) == sorted(
        (reference.vertices[s], reference.vertices[t], st) for s, t, st in reference.edges
    )
    print(f"level {n}: {graph.n_vertices():>3} vertices, equals the action graph: {same}")

big, small = action_graph(m, 4, reduced=True), action_graph(m, 3, reduced=True)
print("drop-last covering:", covering_check(big, small, "drop-last"))
print("drop-first covering:", covering_check(big, small, "drop-first"))

(out / "automaton_q3.dot").write_text(mealy_to_dot(m))
print(f"\nwrote {out / 'automaton_q3.dot'}")
