"""Eigenvalue computation and spectral verdicts: Ramanujan checks, the
Bass-Ihara transfer to non-backtracking spectra, second-largest modulus for
directed regular graphs, and exact deviation norms for mixing tables.

Tolerance policy: eigenvalue comparisons on integer matrices use an absolute
tolerance (default 1e-8); every Ramanujan verdict also reports the margin
2 sqrt(d) - max|lambda_nontrivial| so borderline cases stay visible.  The
deviation norm is computed in exact big-integer arithmetic and returned as a
rational, so the mixing claims carry no floating error.  All solvers are
dense and deterministic; resource caps reject instances beyond desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from .graphs import DartGraph, UGraph, nb_matrix, structure_predicates


class SizeCapExceeded(RuntimeError):
    """Raised when an instance is larger than the configured dense limit."""


DENSE_EIG_LIMIT = 2000
EXACT_POWER_LIMIT = 500


# ---------------------------------------------------------------------------
# symmetric spectra


def eig_symmetric(a: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Full spectrum of a symmetric integer matrix, sorted descending.

    Every (lambda, v) pair is recomputed against A v = lambda v and must
    satisfy the residual bound tol * ||A||_inf * dim; the trace identity is
    checked as well.  Ordering is deterministic.
    """
    a = np.asarray(a)
    if a.shape[0] != a.shape[1] or not (a == a.T).all():
        raise ValueError("eig_symmetric needs a symmetric matrix")
    dense = a.astype(np.float64)
    eigs, vecs = np.linalg.eigh(dense)
    scale = max(1.0, float(np.abs(a).max()) * a.shape[0])
    residual = np.abs(dense @ vecs - vecs * eigs).max()
    if residual > tol * scale:
        raise RuntimeError(f"eigensolver residual {residual:.3e} above bound")
    if abs(eigs.sum() - np.trace(a)) > tol * scale:
        raise RuntimeError("eigensolver failed the trace identity")
    return eigs[::-1]


@dataclass
class SpectralReport:
    degree: int                 # d + 1 for undirected reports
    n_vertices: int
    eigenvalues: np.ndarray     # sorted descending
    trivial: list[float]        # the Perron value, and -(d+1) when bipartite
    second_modulus: float       # max |lambda| over the nontrivial spectrum
    bound: float                # 2 sqrt(d)
    margin: float               # bound - second_modulus
    ramanujan: bool
    bipartite: bool
    tol: float

    def __repr__(self) -> str:
        verdict = "ramanujan" if self.ramanujan else "NOT ramanujan"
        return (
            f"SpectralReport({self.degree}-regular, {self.n_vertices} vertices, "
            f"max nontrivial |l| = {self.second_modulus:.6f} vs {self.bound:.6f}, {verdict})"
        )


def ramanujan_check(graph: UGraph | np.ndarray, tol: float = 1e-8) -> SpectralReport:
    """Is a connected (d+1)-regular graph Ramanujan: every eigenvalue either
    +-(d+1) or of modulus at most 2 sqrt(d) (within tol)?

    The Perron eigenvalue d+1 must be simple (connectivity is rejected
    otherwise); -(d+1) is flagged as the bipartite eigenvalue.
    """
    if isinstance(graph, UGraph):
        report = structure_predicates(graph)
        if not report.connected:
            raise ValueError(f"graph is disconnected ({report.n_components} components)")
        a = graph.adjacency()
    else:
        a = np.asarray(graph)
    if a.shape[0] > DENSE_EIG_LIMIT:
        raise SizeCapExceeded(f"dense eigensolve capped at {DENSE_EIG_LIMIT} vertices")
    degrees = a.sum(axis=1)
    if not (degrees == degrees[0]).all():
        raise ValueError("ramanujan_check needs a regular graph")
    k = int(degrees[0])  # k = d + 1
    d = k - 1
    eigs = eig_symmetric(a)
    top = [x for x in eigs if abs(x - k) <= tol]
    if len(top) != 1:
        raise ValueError("Perron eigenvalue is not simple; graph must be connected")
    bottom = [x for x in eigs if abs(x + k) <= tol]
    bipartite = bool(bottom)
    nontrivial = [x for x in eigs if abs(x - k) > tol and abs(x + k) > tol]
    second = max((abs(x) for x in nontrivial), default=0.0)
    bound = 2.0 * sqrt(d)
    return SpectralReport(
        degree=k,
        n_vertices=a.shape[0],
        eigenvalues=eigs,
        trivial=[float(k)] + ([-float(k)] if bipartite else []),
        second_modulus=second,
        bound=bound,
        margin=bound - second,
        ramanujan=second <= bound + tol,
        bipartite=bipartite,
        tol=tol,
    )


# ---------------------------------------------------------------------------
# Bass-Ihara transfer


def bass_ihara_pairs(spectrum, d: int) -> list[tuple[complex, float | None]]:
    """Transfer a base spectrum to the non-backtracking spectrum: each
    lambda contributes both roots of x^2 - lambda x + d, tagged with their
    source eigenvalue; the trailing +-1 carry source None.  This is a set
    description; multiplicities are not tracked."""
    if d < 1:
        raise ValueError("need d >= 1")
    pairs: list[tuple[complex, float | None]] = []
    for lam in spectrum:
        lam = complex(lam).real
        root = np.sqrt(complex(lam * lam - 4 * d))
        pairs.append(((lam + root) / 2, lam))
        pairs.append(((lam - root) / 2, lam))
    pairs.append((1.0 + 0j, None))
    pairs.append((-1.0 + 0j, None))
    return pairs


def bass_ihara(spectrum, d: int) -> list[complex]:
    """The transferred non-backtracking spectrum as a plain value list."""
    return [value for value, _ in bass_ihara_pairs(spectrum, d)]


def nb_spectrum_direct(h: DartGraph | np.ndarray, dense_limit: int = DENSE_EIG_LIMIT) -> np.ndarray:
    """Dense nonsymmetric eigensolve of a dart adjacency; eigenvalues may be
    complex.  Only for small instances; beyond the cap use bass_ihara."""
    a = h.adjacency if isinstance(h, DartGraph) else np.asarray(h)
    if a.shape[0] > dense_limit:
        raise SizeCapExceeded(
            f"direct dart spectrum capped at {dense_limit}; use bass_ihara instead"
        )
    return np.linalg.eigvals(a.astype(np.float64))


@dataclass
class TransferReport:
    n_darts: int
    d: int
    max_dist_direct_to_transfer: float
    max_dist_transfer_to_direct: float
    max_modulus_defect: float  # nontrivial moduli vs {1, sqrt(d)}

    def agrees(self, tol: float = 1e-6) -> bool:
        return (
            self.max_dist_direct_to_transfer <= tol
            and self.max_dist_transfer_to_direct <= tol
        )


def nb_transfer_report(graph: UGraph) -> TransferReport:
    """Compare the directly computed dart spectrum of a regular graph with
    the Bass-Ihara transfer of its adjacency spectrum (set inclusion both
    ways), and measure how far nontrivial dart moduli sit from {1, sqrt(d)}."""
    dart = nb_matrix(graph)
    d = dart.degree
    direct = nb_spectrum_direct(dart)
    transfer = np.array(bass_ihara(eig_symmetric(graph.adjacency()), d))

    def max_min_dist(xs, ys):
        return max(float(np.abs(ys - x).min()) for x in xs)

    defect = 0.0
    for x in direct:
        mod = abs(x)
        if abs(mod - d) <= 1e-6:
            continue  # Perron value d (and -d for bipartite graphs)
        defect = max(defect, min(abs(mod - 1.0), abs(mod - sqrt(d))))
    return TransferReport(
        n_darts=dart.n_darts(),
        d=d,
        max_dist_direct_to_transfer=max_min_dist(direct, transfer),
        max_dist_transfer_to_direct=max_min_dist(transfer, direct),
        max_modulus_defect=defect,
    )


# ---------------------------------------------------------------------------
# directed spectra


def second_modulus_directed(a: np.ndarray) -> float:
    """lambda(A) for a d-regular directed 0/1 matrix: the spectral radius of
    A - (d/m) J.  The directed Ramanujan criterion is lambda(A) <= sqrt(d)."""
    a = np.asarray(a)
    m = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    if m > DENSE_EIG_LIMIT:
        raise SizeCapExceeded(f"dense eigensolve capped at {DENSE_EIG_LIMIT}")
    rows = a.sum(axis=1)
    cols = a.sum(axis=0)
    d = int(rows[0])
    if not ((rows == d).all() and (cols == d).all()):
        raise ValueError("matrix must be d-regular (equal row and column sums)")
    centered = a.astype(np.float64) - (d / m) * np.ones((m, m))
    return float(np.abs(np.linalg.eigvals(centered)).max())


# ---------------------------------------------------------------------------
# exact deviation norms


def _int_matrix(a) -> list[list[int]]:
    mat = [[int(x) for x in row] for row in np.asarray(a).tolist()]
    return mat


def _mat_mul_int(x: list[list[int]], y: list[list[int]]) -> list[list[int]]:
    n = len(x)
    cols = list(zip(*y))
    return [[sum(map(lambda p, q: p * q, row, col)) for col in cols] for row in x]


def matrix_power_int(a, n: int) -> list[list[int]]:
    """A^n over the integers (exact)."""
    mat = _int_matrix(a)
    size = len(mat)
    result = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    base = mat
    while n:
        if n & 1:
            result = _mat_mul_int(result, base)
        base = _mat_mul_int(base, base)
        n >>= 1
    return result


def deviation_norm(a, n: int, exact_limit: int = EXACT_POWER_LIMIT) -> Fraction:
    """max_ij | A^n_ij / d^n - 1/m | as an exact rational, for a d-regular
    0/1 matrix A of dimension m.

    This is the sup-norm distance between the n-step normalized transition
    matrix and the flat matrix J/m, the quantity controlling correlation
    decay of the associated vertex shift."""
    mat = np.asarray(a)
    m = mat.shape[0]
    if m > exact_limit:
        raise SizeCapExceeded(f"exact matrix powers capped at dimension {exact_limit}")
    rows = mat.sum(axis=1)
    cols = mat.sum(axis=0)
    d = int(rows[0])
    if not ((rows == d).all() and (cols == d).all()):
        raise ValueError("deviation norm needs a d-regular matrix")
    if n < 0:
        raise ValueError("need n >= 0")
    power = matrix_power_int(mat, n)
    dn = d**n
    # |a/d^n - 1/m| = |a m - d^n| / (m d^n)
    worst = max(abs(entry * m - dn) for row in power for entry in row)
    return Fraction(worst, m * dn)


def deviation_table(a, n_max: int) -> list[Fraction]:
    """deviation_norm for n = 1..n_max, sharing the iterated powers."""
    mat = _int_matrix(a)
    m = len(mat)
    rows = [sum(r) for r in mat]
    d = rows[0]
    if any(r != d for r in rows) or any(sum(col) != d for col in zip(*mat)):
        raise ValueError("deviation table needs a d-regular matrix")
    if m > EXACT_POWER_LIMIT:
        raise SizeCapExceeded(f"exact matrix powers capped at dimension {EXACT_POWER_LIMIT}")
    out = []
    power = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    dn = 1
    for _ in range(1, n_max + 1):
        power = _mat_mul_int(power, mat)
        dn *= d
        worst = max(abs(entry * m - dn) for row in power for entry in row)
        out.append(Fraction(worst, m * dn))
    return out


# ---------------------------------------------------------------------------
# report formatting


def spectral_report_to_csv(report: SpectralReport) -> str:
    """CSV spectrum dump: index, re, im, modulus, classification."""
    lines = ["index,re,im,modulus,classification"]
    for i, lam in enumerate(report.eigenvalues):
        lam = float(lam)
        cls = "trivial" if any(abs(lam - t) <= report.tol for t in report.trivial) else "nontrivial"
        lines.append(f"{i},{lam!r},0.0,{abs(lam)!r},{cls}")
    return "\n".join(lines) + "\n"


def spectral_report_to_dict(report: SpectralReport) -> dict:
    return {
        "degree": report.degree,
        "n_vertices": report.n_vertices,
        "second_modulus": report.second_modulus,
        "bound": report.bound,
        "margin": report.margin,
        "ramanujan": report.ramanujan,
        "bipartite": report.bipartite,
    }
