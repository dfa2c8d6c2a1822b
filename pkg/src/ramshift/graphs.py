"""Undirected multigraphs with formal edge inverses (darts), level graphs of
a VH-datum, their multi-dimensional product versions, non-backtracking dart
graphs, covering-map verification, and structural predicates.

A dart is a directed half of an undirected edge; dart inversion is a
fixed-point-free involution pairing (v --g--> u) with (u --g^-1--> v).
A loop contributes two mutually inverse darts at the same vertex and hence
two to the degree.  Multi-edges and loops are kept with multiplicities
everywhere; nothing is simplified.

Level graphs: A_n is the action graph of the datum automaton on reduced
words of length n over H (one dart per V-state), glued into an undirected
graph via the state involution; B_n is the same for the dual automaton on
reduced words over V.  Vertices carry canonical integer ids coming from the
lexicographic enumeration of reduced words, so adjacency matrices are
reproducible across runs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .ffield import FieldSpec
from .mealy import (
    LabeledDigraph,
    act,
    action_graph,
    dual,
    from_datum,
    reduced_words,
    word_label,
)
from .vhdatum import VHDatum, build_quaternionic_datum, atomic_write


@dataclass
class UGraph:
    """Undirected multigraph as a list of darts with an inversion pairing."""

    vertex_labels: list[str]
    darts: list[tuple[int, int, str]]  # (origin, terminus, label)
    inv: list[int]                     # dart index -> inverse dart index

    def __post_init__(self):
        for e, (o, t, _) in enumerate(self.darts):
            j = self.inv[e]
            if j == e or self.inv[j] != e:
                raise ValueError("dart inversion must be a fixed-point-free involution")
            jo, jt, _ = self.darts[j]
            if (jo, jt) != (t, o):
                raise ValueError("inverse dart must reverse origin and terminus")

    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    def n_darts(self) -> int:
        return len(self.darts)

    def adjacency(self) -> np.ndarray:
        """Symmetric integer adjacency; each dart adds one, so a loop
        contributes two to its diagonal entry."""
        n = self.n_vertices()
        a = np.zeros((n, n), dtype=np.int64)
        for o, t, _ in self.darts:
            a[o, t] += 1
        return a

    def regular_degree(self) -> int | None:
        a = self.adjacency()
        degrees = a.sum(axis=1)
        d = int(degrees[0])
        return d if bool((degrees == d).all()) else None

    @staticmethod
    def from_action_graph(g: LabeledDigraph, label_fn=None) -> "UGraph":
        """Glue a state-labeled action graph into an undirected graph: the
        edge v --a--> u pairs with u --a^-1--> v.  Requires the state
        involution and the full pairing to exist."""
        if g.inv_state is None:
            raise ValueError("gluing needs the state involution")
        if label_fn is None:
            label_fn = str
        position = {}
        for e, (src, dst, st) in enumerate(g.edges):
            key = (src, dst, st)
            if key in position:
                raise ValueError(f"duplicate labeled edge {key}")
            position[key] = e
        inv = []
        for src, dst, st in g.edges:
            j = position.get((dst, src, g.inv_state[st]))
            if j is None:
                raise ValueError(f"edge ({src}, {dst}, state {st}) has no inverse edge")
            inv.append(j)
        darts = [(src, dst, g.state_labels[st]) for src, dst, st in g.edges]
        return UGraph([label_fn(v) for v in g.vertices], darts, inv)

    @staticmethod
    def from_edges(n_vertices: int, edges: list[tuple[int, int]], labels: list[str] | None = None) -> "UGraph":
        """Build from an undirected edge list (loops allowed)."""
        if labels is None:
            labels = [str(i) for i in range(n_vertices)]
        darts, inv = [], []
        for u, v in edges:
            e = len(darts)
            darts.append((u, v, f"e{e // 2}"))
            darts.append((v, u, f"e{e // 2}'"))
            inv += [e + 1, e]
        return UGraph(labels, darts, inv)

    def __repr__(self) -> str:
        return f"UGraph({self.n_vertices()} vertices, {self.n_darts() // 2} edges)"


@dataclass
class DartGraph:
    """The non-backtracking dart graph of an undirected regular graph:
    H[e, f] = 1 iff t(e) = o(f) and f != e^-1."""

    base: UGraph
    adjacency: np.ndarray
    degree: int  # = d, one less than the base regularity

    def n_darts(self) -> int:
        return self.adjacency.shape[0]

    def __repr__(self) -> str:
        return f"DartGraph({self.n_darts()} darts, {self.degree}-regular)"


def nb_matrix(graph: UGraph) -> DartGraph:
    """Non-backtracking (Bass-Hashimoto) matrix on the darts of a regular
    graph; rows and columns each sum to d for a (d+1)-regular base."""
    deg = graph.regular_degree()
    if deg is None:
        raise ValueError("non-backtracking matrix needs a regular graph")
    n = graph.n_darts()
    h = np.zeros((n, n), dtype=np.int64)
    by_origin: list[list[int]] = [[] for _ in range(graph.n_vertices())]
    for f, (o, _, _) in enumerate(graph.darts):
        by_origin[o].append(f)
    for e, (_, t, _) in enumerate(graph.darts):
        for f in by_origin[t]:
            if f != graph.inv[e]:
                h[e, f] = 1
    d = deg - 1
    if not ((h.sum(axis=0) == d).all() and (h.sum(axis=1) == d).all()):
        raise RuntimeError("dart graph is not d-regular")  # cannot happen for valid darts
    return DartGraph(graph, h, d)


# ---------------------------------------------------------------------------
# level graphs


def level_digraph(datum: VHDatum, side: str, n: int) -> LabeledDigraph:
    """Directed labeled level graph: side "A" acts with the datum automaton
    on reduced H-words, side "B" with the dual automaton on reduced V-words."""
    if n < 1:
        raise ValueError("levels start at n = 1; the rose is handled by lifting")
    m = from_datum(datum)
    if side in ("A", "V-action"):
        auto = m
    elif side in ("B", "H-action"):
        auto = dual(m)
    else:
        raise ValueError("side must be 'A' (V-action) or 'B' (H-action)")
    return action_graph(auto, n, reduced=True)


def level_graph(datum: VHDatum, side: str, n: int) -> UGraph:
    """The undirected level graph A_n or B_n; (q+1)-regular with
    (q+1) q^(n-1) vertices for a quaternionic datum."""
    g = level_digraph(datum, side, n)
    labels = datum.H if side in ("A", "V-action") else datum.V
    graph = UGraph.from_action_graph(g, label_fn=lambda w: word_label(w, labels))
    expected = len(g.state_labels)
    if graph.regular_degree() != expected:
        raise RuntimeError("level graph lost regularity; automaton is not bireversible")
    return graph


def product_level_digraph(
    spec: FieldSpec, s0: list, tau, levels: tuple[int, ...]
) -> tuple[LabeledDigraph, list[VHDatum]]:
    """Directed labeled level graph for the diagonal action: vertices are
    tuples of reduced words (one per sigma in s0 minus tau, lengths given by
    `levels`), edges thread each V-generator through the automata in order."""
    tau = spec.elem(tau)
    s0_elems = [spec.elem(s) for s in s0]
    if len({x.encoding() for x in s0_elems}) != len(s0_elems):
        raise ValueError("s0 entries must be pairwise distinct")
    if any(x.is_zero() for x in s0_elems):
        raise ValueError("s0 entries must be nonzero")
    if tau not in s0_elems:
        raise ValueError("tau must belong to s0")
    if len(s0_elems) < 2:
        raise ValueError("need at least two places in s0")
    sigmas = [x for x in s0_elems if x != tau]
    if len(levels) != len(sigmas):
        raise ValueError(f"need one level per sigma ({len(sigmas)}), got {len(levels)}")
    if any(lv < 0 for lv in levels):
        raise ValueError("levels must be nonnegative")

    datums = [build_quaternionic_datum(spec, tau, sigma) for sigma in sigmas]
    automata = [from_datum(d) for d in datums]
    n_states = automata[0].n_states()
    word_sets = [
        reduced_words(lv, a.n_letters(), a.inv_alphabet)
        for lv, a in zip(levels, automata)
    ]
    vertices = [tuple(ws) for ws in itertools.product(*word_sets)]
    vindex = {v: i for i, v in enumerate(vertices)}
    edges = []
    for i, vtuple in enumerate(vertices):
        for a in range(n_states):
            state = a
            outs = []
            for auto, w in zip(automata, vtuple):
                out_word, state = act(auto, state, w)
                outs.append(out_word)
            edges.append((i, vindex[tuple(outs)], a))
    g = LabeledDigraph(
        vertices=vertices,
        edges=edges,
        state_labels=list(automata[0].states),
        inv_state=list(automata[0].inv_states),
        vindex=vindex,
    )
    return g, datums


def product_level_graph(spec: FieldSpec, s0: list, tau, levels: tuple[int, ...]) -> UGraph:
    """Undirected multi-dimensional level graph; (q+1)-regular."""
    g, datums = product_level_digraph(spec, s0, tau, levels)

    def label(vtuple):
        return "|".join(word_label(w, d.H) for w, d in zip(vtuple, datums))

    graph = UGraph.from_action_graph(g, label_fn=label)
    if graph.regular_degree() != spec.q + 1:
        raise RuntimeError("product level graph lost regularity")
    return graph


# ---------------------------------------------------------------------------
# covering checks


def covering_check(big: LabeledDigraph, small: LabeledDigraph, projection: str) -> bool:
    """Is the word projection a covering map big -> small?

    `projection` is "drop-last" (remove the rightmost letter) or
    "drop-first".  The map must send vertices onto vertices, edges to edges,
    and restrict to a bijection on the out-star and the in-star of every
    vertex (labels are not required to be preserved: dropping the first
    letter conjugates the acting state).
    """
    if projection == "drop-last":
        proj = lambda w: w[:-1]
    elif projection == "drop-first":
        proj = lambda w: w[1:]
    else:
        raise ValueError("projection must be 'drop-last' or 'drop-first'")

    try:
        pmap = [small.vindex[proj(w)] for w in big.vertices]
    except (KeyError, TypeError):
        return False

    small_out = [sorted(dst for dst, _ in star) for star in small.out_edges()]
    small_in = [sorted(src for src, _ in star) for star in small.in_edges()]
    big_out: list[list[int]] = [[] for _ in big.vertices]
    big_in: list[list[int]] = [[] for _ in big.vertices]
    for src, dst, _ in big.edges:
        big_out[src].append(pmap[dst])
        big_in[dst].append(pmap[src])
    for v in range(len(big.vertices)):
        if sorted(big_out[v]) != small_out[pmap[v]]:
            return False
        if sorted(big_in[v]) != small_in[pmap[v]]:
            return False
    return True


# ---------------------------------------------------------------------------
# structure predicates


@dataclass
class StructureReport:
    connected: bool
    n_components: int
    bipartite: bool
    aperiodic: bool
    regular_degree: int | None


def structure_predicates(graph: UGraph) -> StructureReport:
    """Connectivity by BFS, bipartiteness by 2-coloring (a loop or any odd
    closed walk breaks it).  As a shift, a connected undirected graph has
    period 2 when bipartite and 1 otherwise, so aperiodic = connected and
    non-bipartite."""
    n = graph.n_vertices()
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for o, t, _ in graph.darts:
        neighbors[o].append(t)
    color = [-1] * n
    components = 0
    bipartite = True
    for start in range(n):
        if color[start] != -1:
            continue
        components += 1
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in neighbors[v]:
                if color[u] == -1:
                    color[u] = color[v] ^ 1
                    queue.append(u)
                elif color[u] == color[v]:
                    bipartite = False
    connected = components == 1
    return StructureReport(
        connected=connected,
        n_components=components,
        bipartite=bipartite,
        aperiodic=connected and not bipartite,
        regular_degree=graph.regular_degree(),
    )


def digraph_period(adjacency: np.ndarray) -> tuple[bool, int]:
    """(strongly_connected, period) for a directed 0/1 graph; the period is
    the gcd of closed-walk length differences, computed from BFS depths."""
    a = np.asarray(adjacency)
    n = a.shape[0]
    out_lists = [np.nonzero(a[v])[0] for v in range(n)]
    in_lists = [np.nonzero(a[:, v])[0] for v in range(n)]

    def bfs(adj_lists):
        depth = [-1] * n
        depth[0] = 0
        queue = [0]
        while queue:
            v = queue.pop()
            for u in adj_lists[v]:
                if depth[u] == -1:
                    depth[u] = depth[v] + 1
                    queue.append(int(u))
        return depth

    fwd = bfs(out_lists)
    bwd = bfs(in_lists)
    strongly = all(d >= 0 for d in fwd) and all(d >= 0 for d in bwd)
    if not strongly:
        return False, 0
    period = 0
    for v in range(n):
        for u in out_lists[v]:
            period = gcd(period, fwd[v] + 1 - fwd[u])
    return True, abs(period)


# ---------------------------------------------------------------------------
# export


def ugraph_to_dot(graph: UGraph, name: str = "level_graph", header: str | None = None) -> str:
    """Undirected DOT; each dart pair collapses to one edge labeled g/g^-1."""
    lines = [f"graph {name} {{"]
    if header:
        lines.insert(0, f"// {header}")
    for label in graph.vertex_labels:
        lines.append(f'  "{label}";')
    for e, (o, t, label) in enumerate(graph.darts):
        if e < graph.inv[e]:
            other = graph.darts[graph.inv[e]][2]
            lines.append(f'  "{graph.vertex_labels[o]}" -- "{graph.vertex_labels[t]}" [label="{label}/{other}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def ugraph_to_json_dict(graph: UGraph) -> dict:
    a = graph.adjacency()
    coo = [[int(i), int(j), int(a[i, j])] for i, j in zip(*np.nonzero(a))]
    return {
        "vertices": list(graph.vertex_labels),
        "darts": [[o, t, label] for o, t, label in graph.darts],
        "inv": list(graph.inv),
        "adjacency_coo": coo,
    }


def ugraph_to_json(graph: UGraph) -> str:
    return json.dumps(ugraph_to_json_dict(graph), sort_keys=True, indent=1) + "\n"


def ugraph_from_json(text: str) -> UGraph:
    try:
        data = json.loads(text)
        darts = [(int(o), int(t), str(lab)) for o, t, lab in data["darts"]]
        graph = UGraph(list(map(str, data["vertices"])), darts, [int(i) for i in data["inv"]])
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ValueError(f"malformed graph file: {exc!r}") from exc
    return graph


def write_ugraph(graph: UGraph, path: str, fmt: str = "json", header: str | None = None) -> None:
    if fmt == "json":
        atomic_write(path, ugraph_to_json(graph))
    elif fmt == "dot":
        atomic_write(path, ugraph_to_dot(graph, header=header))
    else:
        raise ValueError("format must be 'json' or 'dot'")
