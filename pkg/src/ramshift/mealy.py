"""Mealy automata (letter-to-letter transducers) and their action graphs.

An automaton built from a VH-datum has states V, alphabet H, and one
transition a --b/c--> d per relation tuple (a, b, c, d).  Such automata are
bireversible and respect the involutions: a --b/c--> d iff
d --b^-1/c^-1--> a, which is what lets action graphs be glued into
undirected level graphs.

Words over the alphabet are tuples of letter indices.  A word is *reduced*
when no letter is followed by its inverse.  For datum automata the action of
any state maps reduced words to reduced words bijectively; `action_graph`
relies on this in reduced mode and drops any edge whose endpoint leaves the
reduced set (spanned-subgraph semantics).

The lifting system of a reversible automaton turns each state-labeled edge
of a level graph into its |alphabet| lifted copies one level up:
R_{a,x} sends v --a--> u to xv --b--> yu where delta(b, x) = a and
y = lambda(b, x).  Iterating from the one-vertex rose reproduces the action
graphs level by level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .vhdatum import VHDatum, validate_datum

Word = tuple[int, ...]


@dataclass
class Mealy:
    states: list[str]
    alphabet: list[str]
    delta: list[list[int]]  # delta[state][letter] -> next state
    out: list[list[int]]    # out[state][letter] -> output letter
    inv_states: list[int] | None = None
    inv_alphabet: list[int] | None = None

    def n_states(self) -> int:
        return len(self.states)

    def n_letters(self) -> int:
        return len(self.alphabet)

    def __repr__(self) -> str:
        return f"Mealy({self.n_states()} states, {self.n_letters()} letters)"


@dataclass
class LabeledDigraph:
    """Directed multigraph with state-labeled edges and hashable vertex ids
    (word tuples for action graphs)."""

    vertices: list
    edges: list[tuple[int, int, int]]  # (src index, dst index, state index)
    state_labels: list[str]
    inv_state: list[int] | None = None
    vindex: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.vindex is None:
            self.vindex = {v: i for i, v in enumerate(self.vertices)}

    def n_vertices(self) -> int:
        return len(self.vertices)

    def out_edges(self) -> list[list[tuple[int, int]]]:
        star: list[list[tuple[int, int]]] = [[] for _ in self.vertices]
        for src, dst, st in self.edges:
            star[src].append((dst, st))
        return star

    def in_edges(self) -> list[list[tuple[int, int]]]:
        star: list[list[tuple[int, int]]] = [[] for _ in self.vertices]
        for src, dst, st in self.edges:
            star[dst].append((src, st))
        return star

    def __repr__(self) -> str:
        return f"LabeledDigraph({self.n_vertices()} vertices, {len(self.edges)} edges)"


# ---------------------------------------------------------------------------
# construction


def from_datum(datum: VHDatum) -> Mealy:
    """States V, alphabet H; tuple (a, b, c, d) reads as delta(a,b) = d,
    out(a,b) = c.  Property (3) makes both maps total."""
    report = validate_datum(datum)
    if not report.ok:
        raise ValueError(f"invalid datum: {report.violations[0]}")
    nv, nh = len(datum.V), len(datum.H)
    delta = [[-1] * nh for _ in range(nv)]
    out = [[-1] * nh for _ in range(nv)]
    for a, b, c, d in datum.R:
        delta[a][b] = d
        out[a][b] = c
    return Mealy(
        states=list(datum.V),
        alphabet=list(datum.H),
        delta=delta,
        out=out,
        inv_states=list(datum.inv_V),
        inv_alphabet=list(datum.inv_H),
    )


def dual(m: Mealy) -> Mealy:
    """Swap the roles of states and letters:
    delta*(x, a) = out(a, x), out*(x, a) = delta(a, x)."""
    ns, nl = m.n_states(), m.n_letters()
    delta = [[m.out[a][x] for a in range(ns)] for x in range(nl)]
    out = [[m.delta[a][x] for a in range(ns)] for x in range(nl)]
    return Mealy(
        states=list(m.alphabet),
        alphabet=list(m.states),
        delta=delta,
        out=out,
        inv_states=list(m.inv_alphabet) if m.inv_alphabet else None,
        inv_alphabet=list(m.inv_states) if m.inv_states else None,
    )


def compose(m1: Mealy, m2: Mealy) -> Mealy:
    """Serial composition: input goes through m2 first, its output through m1.

    States are pairs (a1, a2) with
        delta((a1,a2), x) = (delta1(a1, out2(a2,x)), delta2(a2, x)),
        out((a1,a2), x)   = out1(a1, out2(a2,x)).
    Acting from (a1, a2) equals acting with a2 then a1.
    """
    if m1.alphabet != m2.alphabet:
        raise ValueError("composition needs identical alphabets")
    n2 = m2.n_states()
    states = [f"({s1},{s2})" for s1 in m1.states for s2 in m2.states]
    delta, out = [], []
    for a1 in range(m1.n_states()):
        for a2 in range(n2):
            drow, orow = [], []
            for x in range(m1.n_letters()):
                y = m2.out[a2][x]
                drow.append(m1.delta[a1][y] * n2 + m2.delta[a2][x])
                orow.append(m1.out[a1][y])
            delta.append(drow)
            out.append(orow)
    inv_states = None
    if m1.states == m2.states and m1.inv_states and m2.inv_states:
        # the inverse of "a2 then a1" is "a1^-1 then a2^-1"
        inv_states = [
            m1.inv_states[a2] * n2 + m2.inv_states[a1]
            for a1 in range(m1.n_states())
            for a2 in range(n2)
        ]
    return Mealy(
        states=states,
        alphabet=list(m1.alphabet),
        delta=delta,
        out=out,
        inv_states=inv_states,
        inv_alphabet=list(m1.inv_alphabet) if m1.inv_alphabet else None,
    )


def iterate(m: Mealy, n: int) -> Mealy:
    """n-fold composition of m with itself (n >= 1)."""
    if n < 1:
        raise ValueError("need n >= 1")
    result = m
    for _ in range(n - 1):
        result = compose(result, m)
    return result


# ---------------------------------------------------------------------------
# reversibility


def is_reversible(m: Mealy) -> bool:
    """Each delta_x: state -> state is a bijection."""
    ns = m.n_states()
    for x in range(m.n_letters()):
        if len({m.delta[a][x] for a in range(ns)}) != ns:
            return False
    return True


def is_dual_reversible(m: Mealy) -> bool:
    """Each lambda_a: letter -> letter is a bijection."""
    nl = m.n_letters()
    return all(len(set(m.out[a])) == nl for a in range(m.n_states()))


def is_bireversible(m: Mealy) -> bool:
    return is_reversible(m) and is_dual_reversible(m) and is_reversible(dual(m)) and is_dual_reversible(dual(m))


# ---------------------------------------------------------------------------
# word actions


def act(m: Mealy, state: int, word: Word) -> tuple[Word, int]:
    """Left-to-right transduction; returns (output word, end state)."""
    if not 0 <= state < m.n_states():
        raise ValueError(f"state index {state} out of range")
    output = []
    for letter in word:
        if not 0 <= letter < m.n_letters():
            raise ValueError(f"letter index {letter} not in the alphabet")
        output.append(m.out[state][letter])
        state = m.delta[state][letter]
    return tuple(output), state


def is_reduced(word: Word, inv: list[int]) -> bool:
    return all(word[i + 1] != inv[word[i]] for i in range(len(word) - 1))


def reduced_words(n: int, size: int, inv: list[int]) -> list[Word]:
    """All reduced words of length n over an alphabet of `size` letters, in
    lexicographic order; count is size * (size-1)^(n-1)."""
    if n == 0:
        return [()]
    words = [(x,) for x in range(size)]
    for _ in range(n - 1):
        words = [w + (x,) for w in words for x in range(size) if x != inv[w[-1]]]
    return words


def action_graph(m: Mealy, n: int, reduced: bool = False) -> LabeledDigraph:
    """The action graph G_n: one vertex per word of length n, one edge
    v -> M_a(v) per state a.

    In reduced mode the vertex set is the reduced words and the graph is the
    subgraph spanned by them (edges into non-reduced words are dropped; for
    datum automata nothing is dropped).  n = 0 gives a single vertex with a
    loop per state.
    """
    if n < 0:
        raise ValueError("word length must be >= 0")
    if reduced:
        if m.inv_alphabet is None:
            raise ValueError("reduced mode needs an alphabet involution")
        vertices = reduced_words(n, m.n_letters(), m.inv_alphabet)
    else:
        vertices = [tuple(w) for w in itertools.product(range(m.n_letters()), repeat=n)]
    vindex = {v: i for i, v in enumerate(vertices)}
    edges = []
    for i, v in enumerate(vertices):
        for a in range(m.n_states()):
            out_word, _ = act(m, a, v)
            j = vindex.get(out_word)
            if j is None:
                continue  # image left the reduced set; edge not spanned
            edges.append((i, j, a))
    return LabeledDigraph(
        vertices=vertices,
        edges=edges,
        state_labels=list(m.states),
        inv_state=list(m.inv_states) if m.inv_states else None,
        vindex=vindex,
    )


# ---------------------------------------------------------------------------
# lifting system


@dataclass
class LiftSystem:
    """Rules R_{a,x}: (v --a--> u) -> (xv --b--> yu) with delta(b,x) = a and
    y = out(b,x); well-defined exactly when the automaton is reversible."""

    automaton: Mealy
    rules: dict[tuple[int, int], tuple[int, int]]

    def __repr__(self) -> str:
        return f"LiftSystem({len(self.rules)} rules)"


def lift_system(m: Mealy) -> LiftSystem:
    if not is_reversible(m):
        raise ValueError("lifting system requires a reversible automaton")
    rules = {}
    for b in range(m.n_states()):
        for x in range(m.n_letters()):
            a = m.delta[b][x]
            rules[(a, x)] = (b, m.out[b][x])
    return LiftSystem(m, rules)


def apply_lift(ls: LiftSystem, graph: LabeledDigraph, reduced: bool = False) -> LabeledDigraph:
    """One lifting step: vertex set alphabet x V(graph) (words grown on the
    left), every edge lifted once per letter.

    Reduced mode keeps only vertices that are still reduced words and drops
    edges incident to discarded vertices; the automaton's reduced-word
    bijectivity means a kept edge never touches a dropped vertex, which is
    asserted.
    """
    m = ls.automaton
    inv = m.inv_alphabet
    if reduced and inv is None:
        raise ValueError("reduced mode needs an alphabet involution")

    def keep(word: Word) -> bool:
        return not reduced or len(word) < 2 or word[1] != inv[word[0]]

    vertices = []
    for x in range(m.n_letters()):
        for v in graph.vertices:
            w = (x,) + v
            if keep(w):
                vertices.append(w)
    vindex = {v: i for i, v in enumerate(vertices)}

    edges = []
    for src, dst, a in graph.edges:
        v, u = graph.vertices[src], graph.vertices[dst]
        for x in range(m.n_letters()):
            b, y = ls.rules[(a, x)]
            wsrc, wdst = (x,) + v, (y,) + u
            i, j = vindex.get(wsrc), vindex.get(wdst)
            if (i is None) != (j is None):
                raise RuntimeError("lift dropped one endpoint of an edge")  # broken automaton
            if i is not None:
                edges.append((i, j, b))
    return LabeledDigraph(
        vertices=vertices,
        edges=edges,
        state_labels=list(m.states),
        inv_state=list(m.inv_states) if m.inv_states else None,
        vindex=vindex,
    )


def rose(m: Mealy) -> LabeledDigraph:
    """The level-0 graph: one vertex (the empty word), a loop per state."""
    return LabeledDigraph(
        vertices=[()],
        edges=[(0, 0, a) for a in range(m.n_states())],
        state_labels=list(m.states),
        inv_state=list(m.inv_states) if m.inv_states else None,
    )


def dual_negation_check(d_ts: VHDatum, d_st: VHDatum) -> bool:
    """Does xi -> -xi define an automaton isomorphism from the dual of
    M(d_ts) onto M(d_st)?

    For quaternionic datums this holds with d_st built from the swapped
    places (sigma, tau): inverting each square relation (1+a F)(1+b F) =
    (1+c F)(1+d F) yields (1-b F)(1-a F) = (1-d F)(1-c F), and uniqueness of
    normal forms identifies the negated tuple inside the swapped datum.
    Only this explicit map is checked; no isomorphism search is performed.
    """
    if not (d_ts.is_arithmetic() and d_st.is_arithmetic()):
        raise ValueError("negation check needs arithmetic datums")
    dm = dual(from_datum(d_ts))
    m2 = from_datum(d_st)
    try:
        v_index = {x: i for i, x in enumerate(d_st.V_elems)}
        h_index = {x: i for i, x in enumerate(d_st.H_elems)}
        phi_states = [v_index[-x] for x in d_ts.H_elems]
        phi_letters = [h_index[-x] for x in d_ts.V_elems]
    except KeyError:
        return False  # fibers do not match up
    return all(
        m2.delta[phi_states[x]][phi_letters[a]] == phi_states[dm.delta[x][a]]
        and m2.out[phi_states[x]][phi_letters[a]] == phi_letters[dm.out[x][a]]
        for x in range(dm.n_states())
        for a in range(dm.n_letters())
    )


# ---------------------------------------------------------------------------
# product (diagonal) actions


def product_act(datums: list[VHDatum], state: int, words: tuple[Word, ...]) -> tuple[tuple[Word, ...], int]:
    """Act by one V-generator on a tuple of words, one word per datum.

    All datums must share the V side (same tau, same fiber).  The state is
    threaded through the automata in order: the end state of each
    transduction starts the next one; outputs are collected component-wise.
    This realizes the diagonal action in level coordinates: pushing a
    generator through the normal form w1 * w2 * ... rewrites each factor in
    turn, the carried state being the remainder so far.
    """
    if len(words) != len(datums):
        raise ValueError("need exactly one word per datum")
    if not datums:
        return (), state
    first = datums[0]
    for d in datums[1:]:
        if d.V != first.V or d.inv_V != first.inv_V or (d.is_arithmetic() and first.is_arithmetic() and d.tau != first.tau):
            raise ValueError("datums must share the V side (same tau)")
    outputs = []
    for datum, word in zip(datums, words):
        out_word, state = act(from_datum(datum), state, word)
        outputs.append(out_word)
    return tuple(outputs), state


# ---------------------------------------------------------------------------
# export


def mealy_to_dot(m: Mealy, name: str = "automaton", header: str | None = None) -> str:
    lines = [f"digraph {name} {{"]
    if header:
        lines.insert(0, f"// {header}")
    lines.append("  rankdir=LR;")
    for s in m.states:
        lines.append(f'  "{s}";')
    for a in range(m.n_states()):
        for x in range(m.n_letters()):
            lines.append(
                f'  "{m.states[a]}" -> "{m.states[m.delta[a][x]]}"'
                f' [label="{m.alphabet[x]} / {m.alphabet[m.out[a][x]]}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def word_label(word: Word, alphabet: list[str]) -> str:
    return ".".join(alphabet[x] for x in word) if word else "e"


def digraph_to_json_dict(g: LabeledDigraph, alphabet: list[str] | None = None) -> dict:
    def vlabel(v):
        return word_label(v, alphabet) if alphabet is not None else str(v)

    return {
        "vertices": [vlabel(v) for v in g.vertices],
        "edges": [[src, dst, g.state_labels[st]] for src, dst, st in g.edges],
    }


def digraph_to_dot(g: LabeledDigraph, alphabet: list[str] | None = None, name: str = "action_graph", header: str | None = None) -> str:
    lines = [f"digraph {name} {{"]
    if header:
        lines.insert(0, f"// {header}")
    for v in g.vertices:
        label = word_label(v, alphabet) if alphabet is not None else str(v)
        lines.append(f'  "{label}";')
    for src, dst, st in g.edges:
        lsrc = word_label(g.vertices[src], alphabet) if alphabet is not None else str(g.vertices[src])
        ldst = word_label(g.vertices[dst], alphabet) if alphabet is not None else str(g.vertices[dst])
        lines.append(f'  "{lsrc}" -> "{ldst}" [label="{g.state_labels[st]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
