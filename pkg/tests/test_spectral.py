"""Spectral verdicts: closed-form spectra as oracles, the Ramanujan check,
the Bass-Ihara transfer, and exact deviation norms."""

from fractions import Fraction
from math import cos, pi, sqrt

import numpy as np
import pytest

from ramshift.graphs import UGraph, level_graph, nb_matrix
from ramshift.spectral import (
    SizeCapExceeded,
    bass_ihara,
    deviation_norm,
    deviation_table,
    eig_symmetric,
    matrix_power_int,
    nb_spectrum_direct,
    nb_transfer_report,
    ramanujan_check,
    second_modulus_directed,
)
from test_graphs import complete_bipartite, cycle, petersen


def test_eig_symmetric_c5():
    eigs = eig_symmetric(cycle(5).adjacency())
    expected = sorted(
        [2.0] + [2 * cos(2 * pi / 5)] * 2 + [2 * cos(4 * pi / 5)] * 2, reverse=True
    )
    assert np.allclose(eigs, expected, atol=1e-10)


def test_eig_symmetric_all_ones():
    m = 6
    eigs = eig_symmetric(np.ones((m, m), dtype=int))
    assert np.allclose(eigs, [m] + [0.0] * (m - 1), atol=1e-10)


def test_eig_symmetric_petersen_against_char_poly():
    a = petersen().adjacency()
    eigs = eig_symmetric(a)
    # oracle: the characteristic polynomial (x-3)(x-1)^5(x+2)^4, checked by
    # exact integer determinants of xI - A at sample points
    def det_int(mat):
        mat = [[Fraction(x) for x in row] for row in mat.tolist()]
        n = len(mat)
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                mat[col], mat[piv] = mat[piv], mat[col]
                det = -det
            det *= mat[col][col]
            for r in range(col + 1, n):
                factor = mat[r][col] / mat[col][col]
                mat[r] = [mat[r][k] - factor * mat[col][k] for k in range(n)]
        return det

    for x in (-3, 0, 2, 5):
        char = det_int(x * np.eye(10, dtype=int) - a)
        assert char == (x - 3) * (x - 1) ** 5 * (x + 2) ** 4
    assert np.allclose(eigs, [3.0] + [1.0] * 5 + [-2.0] * 4, atol=1e-10)


def test_eig_symmetric_rejects_nonsymmetric():
    with pytest.raises(ValueError, match="symmetric"):
        eig_symmetric(np.array([[0, 1], [0, 0]]))


def test_trace_identities(d12_q3):
    a = level_graph(d12_q3, "A", 3).adjacency()
    eigs = eig_symmetric(a)
    assert abs(eigs.sum() - np.trace(a)) < 1e-8 * max(1, abs(np.trace(a)))
    assert abs((eigs**2).sum() - np.trace(a @ a)) < 1e-8 * np.trace(a @ a)


def test_ramanujan_check_c4():
    report = ramanujan_check(cycle(4))
    assert report.bipartite and report.ramanujan
    assert np.allclose(report.eigenvalues, [2, 0, 0, -2], atol=1e-10)


def test_ramanujan_check_k33():
    report = ramanujan_check(complete_bipartite(3, 3))
    assert report.bipartite and report.ramanujan
    assert report.second_modulus <= 1e-10
    assert report.bound == pytest.approx(2 * sqrt(2))


def test_ramanujan_check_level_graph(d12_q3):
    report = ramanujan_check(level_graph(d12_q3, "A", 2))
    assert report.ramanujan and not report.bipartite
    assert report.degree == 4 and report.n_vertices == 12
    assert report.margin > 0


def test_ramanujan_check_rejects_disconnected():
    two_triangles = UGraph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    )
    with pytest.raises(ValueError, match="disconnected"):
        ramanujan_check(two_triangles)


def test_bass_ihara_provenance():
    from ramshift.spectral import bass_ihara_pairs

    pairs = bass_ihara_pairs([4.0, 0.0], 3)
    assert [src for _, src in pairs] == [4.0, 4.0, 0.0, 0.0, None, None]
    assert {v for v, src in pairs if src == 4.0} == {3.0, 1.0}


def test_bass_ihara_values():
    got = bass_ihara([4.0], 3)
    assert {round(x.real, 9) for x in got if abs(x.imag) < 1e-12} == {3.0, 1.0, -1.0}
    got0 = bass_ihara([0.0], 3)
    roots = [x for x in got0 if abs(x.imag) > 1e-9]
    assert sorted(x.imag for x in roots) == pytest.approx([-sqrt(3), sqrt(3)])
    # conjugate roots multiply to d, so inside the Ramanujan window the
    # modulus is exactly sqrt(d)
    for lam in np.linspace(-2 * sqrt(3), 2 * sqrt(3), 7):
        pair = bass_ihara([lam], 3)[:2]
        for root in pair:
            assert abs(root) == pytest.approx(sqrt(3), abs=1e-9)


def test_nb_spectrum_direct_counts_and_cap(d12_q3):
    dart = nb_matrix(level_graph(d12_q3, "A", 1))
    eigs = nb_spectrum_direct(dart)
    assert len(eigs) == 16
    with pytest.raises(SizeCapExceeded, match="bass_ihara"):
        nb_spectrum_direct(dart, dense_limit=4)


def test_nb_spectrum_c5_on_unit_circle():
    eigs = nb_spectrum_direct(nb_matrix(cycle(5)))
    assert np.allclose(np.abs(eigs), 1.0, atol=1e-10)


def test_transfer_report(d12_q3):
    for side in ("A", "B"):
        for n in (1, 2):
            report = nb_transfer_report(level_graph(d12_q3, side, n))
            assert report.agrees(1e-6)
            assert report.max_modulus_defect <= 1e-6


def test_second_modulus_directed():
    # all-ones d x d: A - (d/m) J = 0
    assert second_modulus_directed(np.ones((4, 4), dtype=int)) == 0.0
    # a directed cycle is a permutation matrix: nontrivial spectrum on the
    # unit circle, so the second modulus is exactly 1
    shift = np.roll(np.eye(5, dtype=int), 1, axis=1)
    assert second_modulus_directed(shift) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError, match="regular"):
        second_modulus_directed(np.array([[1, 1], [1, 0]]))


def test_product_level_dart_graph_is_directed_ramanujan(f5):
    # the dart graph of a multi-level graph is the transition graph of the
    # three-place shift in that direction; it must meet lambda <= sqrt(q)
    from ramshift.graphs import product_level_graph

    graph = product_level_graph(f5, [1, 2, 3], 1, (1, 1))
    dart = nb_matrix(graph)
    lam = second_modulus_directed(dart.adjacency)
    assert lam == pytest.approx(sqrt(5), abs=1e-6)


def test_matrix_power_int():
    a = [[0, 1], [1, 1]]
    p10 = matrix_power_int(a, 10)
    assert p10 == [[34, 55], [55, 89]]  # Fibonacci


def test_deviation_norm_basics():
    j3 = np.ones((3, 3), dtype=int)
    # n = 0: identity, deviation 1 - 1/m
    assert deviation_norm(j3, 0) == Fraction(2, 3)
    # complete-with-loops: J^n / d^n equals J / m exactly
    for n in (1, 2, 5):
        assert deviation_norm(j3, n) == 0


def test_deviation_norm_envelope(d12_q3):
    from ramshift.subshift import build_xd, transition_graph

    h1 = transition_graph(build_xd(d12_q3), "horizontal", 1).adjacency
    dev1 = deviation_norm(h1, 1)
    dev10 = deviation_norm(h1, 10)
    # exact comparison of dev(10) <= C * 10 * (1/sqrt(3))^10 with C fitted at
    # n=1: squared form dev10^2 * 3^10 <= dev1^2 * 3 * 100
    assert dev10**2 * 3**10 <= dev1**2 * 3 * 100
    table = deviation_table(h1, 10)
    assert table[0] == dev1 and table[9] == dev10


def test_deviation_norm_caps_and_validation():
    with pytest.raises(SizeCapExceeded):
        deviation_norm(np.ones((4, 4), dtype=int), 2, exact_limit=3)
    with pytest.raises(ValueError, match="regular"):
        deviation_norm(np.array([[1, 1], [1, 0]]), 2)
