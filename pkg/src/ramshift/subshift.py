"""Matrix subshifts in one and two dimensions: regularity and consistency
checks, unique extendability, transition graphs, pattern enumeration, the
nearest-neighbor shift of a VH-datum, exact cylinder measures, and
correlation-decay tables.

Pattern conventions
-------------------
A pattern of shape (m, n) is stored column-major: a tuple of m columns, each
column a tuple of n symbol indices read bottom to top.  The anchor is the
lower-left cell; the horizontal shift moves content toward negative x, so
"D at offset n" means D's support starts n cells to the right of C's anchor.
A pattern is admissible when every horizontal nearest-neighbor pair (s, s')
has A[s, s'] = 1 and every vertical pair (stacked upward) has B[s, s'] = 1.

The shift of a datum
--------------------
For a datum D the alphabet is the relation set R (one symbol per tile) and

    A[t, t'] = 1  iff  d = a' and c' != c^-1   (t' to the right of t)
    B[t, t'] = 1  iff  b = c' and a' != a^-1   (t' above t)

which forbids consecutive mutually inverse side colors.  For a (d,d)-datum
this shift is (2d-1)-regular and uniquely extendable.  Dropping the two
non-backtracking clauses gives the full Wang shift of the tileset.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from .spectral import (
    SizeCapExceeded,
    EXACT_POWER_LIMIT,
    deviation_table,
    matrix_power_int,
    second_modulus_directed,
)
from .vhdatum import VHDatum, validate_datum

Pattern = tuple[tuple[int, ...], ...]  # columns, bottom-to-top within a column


@dataclass
class MatrixSubshift:
    """A pair of 0/1 transition matrices over a common alphabet; A rules
    horizontal transitions, B vertical ones.  B may be None for a
    one-dimensional shift."""

    symbols: list[str]
    A: np.ndarray
    B: np.ndarray | None = None

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=np.int64)
        mats = [("A", self.A)]
        if self.B is not None:
            self.B = np.asarray(self.B, dtype=np.int64)
            mats.append(("B", self.B))
        s = len(self.symbols)
        for name, mat in mats:
            if mat.shape != (s, s):
                raise ValueError(f"{name} must be {s}x{s}")
            if not ((mat == 0) | (mat == 1)).all():
                raise ValueError(f"{name} must be a 0/1 matrix")
            if (mat.sum(axis=1) == 0).any() or (mat.sum(axis=0) == 0).any():
                raise ValueError(f"{name} has a zero row or column")

    @property
    def s(self) -> int:
        return len(self.symbols)

    def transposed(self) -> "MatrixSubshift":
        """Swap the two directions (used to get vertical correlations from
        the horizontal machinery)."""
        if self.B is None:
            raise ValueError("one-dimensional shift has no transpose")
        return MatrixSubshift(list(self.symbols), self.B, self.A)

    def __repr__(self) -> str:
        dims = "Z^2" if self.B is not None else "Z"
        return f"MatrixSubshift({self.s} symbols, {dims})"


def tile_label(datum: VHDatum, t: tuple[int, int, int, int]) -> str:
    a, b, c, d = t
    return f"({datum.V[a]}|{datum.H[b]}|{datum.H[c]}|{datum.V[d]})"


def build_xd(datum: VHDatum) -> MatrixSubshift:
    """The nearest-neighbor shift of a datum over the tile alphabet R,
    with backtracking (consecutive inverse colors) forbidden."""
    report = validate_datum(datum)
    if not report.ok:
        raise ValueError(f"invalid datum: {report.violations[0]}")
    r = datum.R
    s = len(r)
    a_mat = np.zeros((s, s), dtype=np.int64)
    b_mat = np.zeros((s, s), dtype=np.int64)
    ih, iv = datum.inv_H, datum.inv_V
    for i, (a, b, c, d) in enumerate(r):
        for j, (a2, b2, c2, d2) in enumerate(r):
            if d == a2 and c2 != ih[c]:
                a_mat[i, j] = 1
            if b == c2 and a2 != iv[a]:
                b_mat[i, j] = 1
    return MatrixSubshift([tile_label(datum, t) for t in r], a_mat, b_mat)


def build_wang_shift(datum: VHDatum) -> MatrixSubshift:
    """The full tiling shift of the datum's Wang tileset (colors must match,
    backtracking allowed)."""
    report = validate_datum(datum)
    if not report.ok:
        raise ValueError(f"invalid datum: {report.violations[0]}")
    r = datum.R
    s = len(r)
    a_mat = np.zeros((s, s), dtype=np.int64)
    b_mat = np.zeros((s, s), dtype=np.int64)
    for i, (a, b, c, d) in enumerate(r):
        for j, (a2, b2, c2, d2) in enumerate(r):
            if d == a2:
                a_mat[i, j] = 1
            if b == c2:
                b_mat[i, j] = 1
    return MatrixSubshift([tile_label(datum, t) for t in r], a_mat, b_mat)


# ---------------------------------------------------------------------------
# regularity / consistency / extendability


@dataclass
class RegularityReport:
    n_symbols: int
    degree: int | None          # common row/column sum of A and B, if any
    consistent: bool            # supp(AB) = supp(BA) and supp(AB^T) = supp(B^T A)
    products_01: bool           # AB and AB^T have entries in {0, 1}
    commute_exactly: bool       # AB = BA and AB^T = B^T A as matrices
    uniquely_extendable: bool

    def __repr__(self) -> str:
        return (
            f"RegularityReport(degree={self.degree}, consistent={self.consistent}, "
            f"uniquely_extendable={self.uniquely_extendable})"
        )


def regularity_report(shift: MatrixSubshift) -> RegularityReport:
    """Row/column regularity plus the consistency and unique-extendability
    matrix criteria.  Consistency (positive commutation with B and B^T) is
    equivalent to extendability of the shift; 0/1 products pin it down to
    unique extendability, in which case the products commute exactly."""
    if shift.B is None:
        raise ValueError("regularity report needs a two-dimensional shift")
    a, b = shift.A, shift.B
    degree = None
    sums = [a.sum(axis=1), a.sum(axis=0), b.sum(axis=1), b.sum(axis=0)]
    if all((s == sums[0][0]).all() for s in sums):
        degree = int(sums[0][0])
    ab, ba = a @ b, b @ a
    abt, bta = a @ b.T, b.T @ a
    consistent = bool(((ab > 0) == (ba > 0)).all() and ((abt > 0) == (bta > 0)).all())
    products_01 = bool((ab <= 1).all() and (abt <= 1).all())
    commute = bool((ab == ba).all() and (abt == bta).all())
    return RegularityReport(
        n_symbols=shift.s,
        degree=degree,
        consistent=consistent,
        products_01=products_01,
        commute_exactly=commute,
        uniquely_extendable=consistent and products_01 and commute,
    )


# ---------------------------------------------------------------------------
# chains, patterns, transition graphs


def chains(mat: np.ndarray, k: int) -> list[tuple[int, ...]]:
    """Admissible words of length k for one transition matrix, in
    lexicographic order."""
    if k < 1:
        raise ValueError("need k >= 1")
    s = mat.shape[0]
    succ = [np.nonzero(mat[i])[0].tolist() for i in range(s)]
    words = [(i,) for i in range(s)]
    for _ in range(k - 1):
        words = [w + (j,) for w in words for j in succ[w[-1]]]
    return words


@dataclass
class TransitionGraph:
    """Directed transition graph on strip patterns: for direction
    "horizontal" the vertices are height-k columns and an edge means the
    right neighbor is admissible; for "vertical" the vertices are width-k
    rows and an edge means the upper neighbor is admissible."""

    direction: str
    k: int
    patterns: list[tuple[int, ...]]
    adjacency: np.ndarray

    def index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.patterns)}

    def __repr__(self) -> str:
        return f"TransitionGraph({self.direction}, k={self.k}, {len(self.patterns)} vertices)"


def transition_graph(shift: MatrixSubshift, direction: str, k: int) -> TransitionGraph:
    """Strip transition graph of a uniquely extendable shift.

    For non-extendable shifts locally admissible strips need not occur in
    any configuration, so k >= 2 is rejected there; k = 1 is always the
    symbol graph (A or B itself)."""
    if shift.B is None:
        raise ValueError("transition graphs need a two-dimensional shift")
    if direction == "horizontal":
        along, across = shift.A, shift.B
    elif direction == "vertical":
        along, across = shift.B, shift.A
    else:
        raise ValueError("direction must be 'horizontal' or 'vertical'")
    if k >= 2 and not regularity_report(shift).uniquely_extendable:
        raise ValueError("strip transition graphs beyond k = 1 need unique extendability")
    patterns = chains(across, k)
    n = len(patterns)
    adj = np.zeros((n, n), dtype=np.int64)
    index = {p: i for i, p in enumerate(patterns)}
    # an edge needs along[p[r], p'[r]] = 1 on every row r
    succ = [np.nonzero(along[i])[0].tolist() for i in range(shift.s)]
    for i, p in enumerate(patterns):
        candidates = [q for q in _extend_strip(p, succ) if q in index]
        for q in candidates:
            adj[i, index[q]] = 1
    return TransitionGraph(direction, k, patterns, adj)


def _extend_strip(p: tuple[int, ...], succ: list[list[int]]):
    """All symbol tuples q with along[p[r], q[r]] = 1 for every r."""
    options = [succ[sym] for sym in p]
    out = [()]
    for opts in options:
        out = [q + (j,) for q in out for j in opts]
    return out


def admissible_patterns(shift: MatrixSubshift, m: int, n: int) -> list[Pattern]:
    """Explicitly enumerate all admissible (m, n) patterns (m columns of
    height n).  Exhaustive; capped at m*n <= 12 cells."""
    if shift.B is None:
        raise ValueError("pattern enumeration needs a two-dimensional shift")
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    if m * n > 12:
        raise SizeCapExceeded("exhaustive pattern enumeration capped at 12 cells")
    columns = chains(shift.B, n)
    succ = [np.nonzero(shift.A[i])[0].tolist() for i in range(shift.s)]
    column_set = set(columns)
    patterns: list[Pattern] = [(c,) for c in columns]
    for _ in range(m - 1):
        grown = []
        for pat in patterns:
            for q in _extend_strip(pat[-1], succ):
                if q in column_set:
                    grown.append(pat + (q,))
        patterns = grown
    return patterns


def pattern_count(shift: MatrixSubshift, m: int, n: int) -> int:
    """Number of admissible (m, n) patterns by explicit enumeration; equals
    s * d^(m-1) * d^(n-1) for regular uniquely extendable shifts."""
    return len(admissible_patterns(shift, m, n))


def is_admissible(shift: MatrixSubshift, pattern: Pattern) -> bool:
    cols = len(pattern)
    if cols == 0:
        return False
    height = len(pattern[0])
    if any(len(col) != height for col in pattern):
        return False
    for col in pattern:
        for j in range(height - 1):
            if not shift.B[col[j], col[j + 1]]:
                return False
    for i in range(cols - 1):
        for j in range(height):
            if not shift.A[pattern[i][j], pattern[i + 1][j]]:
                return False
    return True


# ---------------------------------------------------------------------------
# unique reconstruction from traces


def fill_rectangle(shift: MatrixSubshift, h_trace: tuple[int, ...], v_trace: tuple[int, ...]) -> Pattern:
    """The unique admissible rectangle with the given bottom row (h_trace,
    an A-chain) and left column (v_trace, a B-chain) sharing the corner
    symbol.  Completion proceeds corner by corner; every step is forced for
    a uniquely extendable shift, and any ambiguity is reported as an
    internal inconsistency."""
    if shift.B is None:
        raise ValueError("fill_rectangle needs a two-dimensional shift")
    if not regularity_report(shift).uniquely_extendable:
        raise ValueError("fill_rectangle needs a uniquely extendable shift")
    if not h_trace or not v_trace:
        raise ValueError("traces must be nonempty")
    if h_trace[0] != v_trace[0]:
        raise ValueError("traces must share the corner symbol")
    for i in range(len(h_trace) - 1):
        if not shift.A[h_trace[i], h_trace[i + 1]]:
            raise ValueError("h_trace is not an admissible horizontal word")
    for j in range(len(v_trace) - 1):
        if not shift.B[v_trace[j], v_trace[j + 1]]:
            raise ValueError("v_trace is not an admissible vertical word")

    m, n = len(h_trace), len(v_trace)
    grid = [[-1] * n for _ in range(m)]
    grid[0] = list(v_trace)
    for i in range(m):
        grid[i][0] = h_trace[i]
    for i in range(1, m):
        for j in range(1, n):
            left, below = grid[i - 1][j], grid[i][j - 1]
            cands = [
                t
                for t in range(shift.s)
                if shift.A[left, t] and shift.B[below, t]
            ]
            if len(cands) != 1:
                raise RuntimeError(
                    f"internal inconsistency: corner ({i},{j}) has {len(cands)} completions"
                )
            grid[i][j] = cands[0]
    pattern = tuple(tuple(col) for col in grid)
    if not is_admissible(shift, pattern):
        raise RuntimeError("internal inconsistency: completed rectangle is inadmissible")
    return pattern


# ---------------------------------------------------------------------------
# measures and correlations


@dataclass(frozen=True)
class CylinderSpec:
    """A rectangular cylinder: the pattern (column-major) pinned with its
    lower-left cell at `anchor`."""

    pattern: Pattern
    anchor: tuple[int, int] = (0, 0)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.pattern), len(self.pattern[0]))


def _regular_degree(shift: MatrixSubshift) -> int:
    report = regularity_report(shift)
    if report.degree is None:
        raise ValueError("measure machinery needs a d-regular shift")
    return report.degree


def cylinder_measure(shift: MatrixSubshift, cyl: CylinderSpec | Pattern) -> Fraction:
    """mu of an (m, n) cylinder: 1 / (s d^(m-1) d^(n-1)) when the pattern is
    admissible, 0 (with a warning) otherwise.  Under mu all admissible
    one-step extensions of a rectangle are equally likely."""
    pattern = cyl.pattern if isinstance(cyl, CylinderSpec) else cyl
    d = _regular_degree(shift)
    m, n = len(pattern), len(pattern[0])
    if not is_admissible(shift, pattern):
        warnings.warn("inadmissible pattern has measure zero")
        return Fraction(0)
    return Fraction(1, shift.s * d ** (m - 1) * d ** (n - 1))


def correlation(
    shift: MatrixSubshift, c1: CylinderSpec | Pattern, c2: CylinderSpec | Pattern, n: int
) -> Fraction:
    """Exact deviation | mu(C1 and shifted C2) - mu(C1) mu(C2) | for a
    horizontal offset n (C2's support starts n cells right of C1's anchor).

    Both patterns must have the same height k, and n must exceed the width
    of C1 so the supports do not touch.  The joint measure is computed from
    first principles: completions of the gap are counted as paths in the
    height-k strip graph by an exact big-integer matrix power, and each full
    (n + m2, k) rectangle carries 1 / (s d^(W-1) d^(k-1)).  Vertical offsets
    go through `MatrixSubshift.transposed`.
    """
    p1 = c1.pattern if isinstance(c1, CylinderSpec) else c1
    p2 = c2.pattern if isinstance(c2, CylinderSpec) else c2
    d = _regular_degree(shift)
    k = len(p1[0])
    if len(p2[0]) != k:
        raise ValueError("patterns must be padded to a common vertical extent")
    m1, m2 = len(p1), len(p2)
    if n <= m1:
        raise ValueError(f"offset {n} overlaps the first pattern (width {m1})")
    mu1 = cylinder_measure(shift, p1)
    mu2 = cylinder_measure(shift, p2)
    if mu1 == 0 or mu2 == 0:
        return Fraction(0)
    graph = transition_graph(shift, "horizontal", k)
    index = graph.index()
    v = index[tuple(p1[-1])]
    u = index[tuple(p2[0])]
    gap = n - m1
    power = matrix_power_int(graph.adjacency, gap + 1)
    n_paths = power[v][u]
    width = n + m2
    joint = Fraction(n_paths, shift.s * d ** (width - 1) * d ** (k - 1))
    return abs(joint - mu1 * mu2)


# ---------------------------------------------------------------------------
# mixing tables


@dataclass
class MixingRow:
    n: int
    deviation: Fraction
    deviation_float: float
    envelope_float: float
    ok: bool


@dataclass
class CorrelationTable:
    """Deviation norms of a strip transition matrix against the envelope
    C * n * (1/sqrt(d))^n with C fitted at the first tabulated n.  All
    comparisons are exact (squared rational inequalities); the floats are
    for display only."""

    rows: list[MixingRow]
    d: int
    k: int
    dimension: int
    direction: str
    theta: float
    c_float: float
    fitted_r: int
    second_modulus: float

    @property
    def all_ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def __repr__(self) -> str:
        state = "ok" if self.all_ok else "VIOLATED"
        return (
            f"CorrelationTable({self.direction} k={self.k}, d={self.d}, "
            f"n<=({self.rows[-1].n}), envelope {state})"
        )


def _envelope_ok(dev: Fraction, n: int, dev0: Fraction, n0: int, d: int, r: int) -> bool:
    # dev(n) <= C n^r theta^n with theta = 1/sqrt(d) and C = dev0 / (n0^r theta^n0),
    # compared exactly via squares: dev^2 n0^(2r) d^n <= dev0^2 d^(n0) n^(2r).
    lhs = dev * dev * n0 ** (2 * r) * d**n
    rhs = dev0 * dev0 * d**n0 * n ** (2 * r)
    return lhs <= rhs


def mixing_table(
    datum_or_shift, k: int, n_max: int, direction: str = "horizontal"
) -> CorrelationTable:
    """Tabulate exact deviation norms of the height-k strip transition
    matrix for n = 1..n_max and check the n * (1/sqrt(d))^n envelope.

    Accepts a datum (its nearest-neighbor shift is built) or a
    MatrixSubshift.  Also reports whether even the r = 0 envelope holds
    over the table (`fitted_r`), and the second-largest modulus of the
    transition matrix.
    """
    if isinstance(datum_or_shift, MatrixSubshift):
        shift = datum_or_shift
    else:
        shift = build_xd(datum_or_shift)
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    graph = transition_graph(shift, direction, k)
    adj = graph.adjacency
    if adj.shape[0] > EXACT_POWER_LIMIT:
        raise SizeCapExceeded(f"exact matrix powers capped at dimension {EXACT_POWER_LIMIT}")
    d = int(adj.sum(axis=1)[0])
    devs = deviation_table(adj, n_max)
    theta = 1.0 / sqrt(d)
    dev0, n0 = devs[0], 1
    c_float = float(dev0) / (n0 * theta**n0)
    rows = []
    r0_holds = True
    for n, dev in enumerate(devs, start=1):
        ok = _envelope_ok(dev, n, dev0, n0, d, r=1)
        r0_holds = r0_holds and _envelope_ok(dev, n, dev0, n0, d, r=0)
        rows.append(
            MixingRow(
                n=n,
                deviation=dev,
                deviation_float=float(dev),
                envelope_float=c_float * n * theta**n,
                ok=ok,
            )
        )
    return CorrelationTable(
        rows=rows,
        d=d,
        k=k,
        dimension=adj.shape[0],
        direction=direction,
        theta=theta,
        c_float=c_float,
        fitted_r=0 if r0_holds else 1,
        second_modulus=second_modulus_directed(adj),
    )


def mixing_table_to_csv(table: CorrelationTable, header: str | None = None) -> str:
    lines = []
    if header:
        lines.append(f"# {header}")
    lines.append("n,deviation_num,deviation_den,deviation_float,envelope_float,ok")
    for row in table.rows:
        lines.append(
            f"{row.n},{row.deviation.numerator},{row.deviation.denominator},"
            f"{row.deviation_float!r},{row.envelope_float!r},{'ok' if row.ok else 'VIOLATION'}"
        )
    return "\n".join(lines) + "\n"


def shift_to_json_dict(shift: MatrixSubshift) -> dict:
    def coo(mat):
        return [[int(i), int(j), 1] for i, j in zip(*np.nonzero(mat))]

    report = regularity_report(shift)
    return {
        "s": shift.s,
        "d": report.degree,
        "A": coo(shift.A),
        "B": coo(shift.B),
    }
