"""Matrix subshifts: the datum shift, the two classical examples, pattern
counting against brute force, exact measures, correlations, and mixing
tables."""

import itertools
import warnings
from fractions import Fraction

import numpy as np
import pytest

from ramshift.graphs import level_digraph, level_graph, nb_matrix
from ramshift.spectral import SizeCapExceeded
from ramshift.subshift import (
    CylinderSpec,
    MatrixSubshift,
    admissible_patterns,
    build_wang_shift,
    build_xd,
    chains,
    correlation,
    cylinder_measure,
    fill_rectangle,
    is_admissible,
    mixing_table,
    mixing_table_to_csv,
    pattern_count,
    regularity_report,
    transition_graph,
)
from ramshift.vhdatum import direct_product_datum

# the 2-regular but non-extendable pair of transition matrices
A4 = np.array([[1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0]])
B4 = np.array([[0, 1, 0, 1], [0, 1, 0, 1], [1, 0, 1, 0], [1, 0, 1, 0]])


def test_xd_q3_regularity(xd_q3):
    report = regularity_report(xd_q3)
    assert xd_q3.s == 16
    assert report.degree == 3  # 2d - 1 with d = 2
    assert report.consistent and report.products_01 and report.commute_exactly
    assert report.uniquely_extendable
    ab = xd_q3.A @ xd_q3.B
    abt = xd_q3.A @ xd_q3.B.T
    assert set(np.unique(ab)) <= {0, 1} and set(np.unique(abt)) <= {0, 1}
    assert (ab == xd_q3.B @ xd_q3.A).all()
    assert (abt == xd_q3.B.T @ xd_q3.A).all()


def test_non_extendable_example():
    shift = MatrixSubshift([str(i) for i in range(4)], A4, B4)
    report = regularity_report(shift)
    assert report.degree == 2
    assert not report.consistent
    assert not report.uniquely_extendable
    assert set(np.unique(A4 @ B4)) == {0, 2}
    assert (B4 @ A4 == 1).all()
    assert (A4 @ B4.T == 1).all()


def test_non_extendable_witness_is_a_corner_not_a_rectangle():
    # local rectangle counts alone do not detect the failure: they agree
    # with s d^(m-1) d^(n-1) here; the obstruction is an admissible
    # up-then-right corner configuration with no lower-right completion
    shift = MatrixSubshift([str(i) for i in range(4)], A4, B4)
    assert pattern_count(shift, 2, 2) == 4 * 2 * 2
    ab, ba = A4 @ B4, B4 @ A4
    stuck = [
        (i, l)
        for i in range(4)
        for l in range(4)
        if ba[i, l] > 0 and ab[i, l] == 0
    ]
    assert stuck  # extendability genuinely fails


def test_non_extendable_strip_graphs_are_primitive():
    from ramshift.graphs import digraph_period

    shift = MatrixSubshift([str(i) for i in range(4)], A4, B4)
    for mat in (shift.A, shift.B):
        assert digraph_period(mat) == (True, 1)


def test_f2xf2_shifts():
    datum = direct_product_datum(2, 2)
    full = build_wang_shift(datum)
    rep_full = regularity_report(full)
    assert rep_full.degree == 4 and rep_full.uniquely_extendable
    sub = build_xd(datum)
    rep = regularity_report(sub)
    assert sub.s == 16 and rep.degree == 3 and rep.uniquely_extendable


def test_permutation_matrices_are_consistent():
    perm = np.roll(np.eye(4, dtype=int), 1, axis=1)
    shift = MatrixSubshift(list("abcd"), perm, perm)
    report = regularity_report(shift)
    assert report.degree == 1 and report.consistent and report.uniquely_extendable


def test_zero_line_rejected():
    bad = np.array([[1, 1], [0, 0]])
    with pytest.raises(ValueError, match="zero row"):
        MatrixSubshift(["a", "b"], bad, np.eye(2, dtype=int))


def test_transition_graph_k1(xd_q3):
    h1 = transition_graph(xd_q3, "horizontal", 1)
    assert len(h1.patterns) == 16
    assert (h1.adjacency == xd_q3.A).all()
    v1 = transition_graph(xd_q3, "vertical", 1)
    assert (v1.adjacency == xd_q3.B).all()


def test_transition_graph_counts(xd_q3):
    for k in (1, 2, 3):
        for direction in ("horizontal", "vertical"):
            g = transition_graph(xd_q3, direction, k)
            assert len(g.patterns) == 16 * 3 ** (k - 1)  # s d^(k-1)
            assert (g.adjacency.sum(axis=1) == 3).all()
            assert (g.adjacency.sum(axis=0) == 3).all()


def test_transition_graph_rejects_non_extendable_beyond_k1():
    shift = MatrixSubshift([str(i) for i in range(4)], A4, B4)
    assert transition_graph(shift, "horizontal", 1).adjacency.shape == (4, 4)
    with pytest.raises(ValueError, match="unique extendability"):
        transition_graph(shift, "horizontal", 2)


def _strip_to_dart_maps(datum, shift, k):
    """The canonical bijections: a height-k column of the datum shift is a
    dart of B_k (left colors top-to-bottom, state = top color); a width-k
    row is a dart of A_k (bottom colors, state = inverse of the left
    color)."""
    gb = level_digraph(datum, "B", k)
    b_darts = {(gb.vertices[s], st): e for e, (s, _, st) in enumerate(gb.edges)}
    ga = level_digraph(datum, "A", k)
    a_darts = {(ga.vertices[s], st): e for e, (s, _, st) in enumerate(ga.edges)}

    def column_to_b_dart(col):
        tiles = [datum.R[s] for s in col]
        word = tuple(t[0] for t in reversed(tiles))
        return b_darts[(word, tiles[-1][1])]

    def row_to_a_dart(row):
        tiles = [datum.R[s] for s in row]
        word = tuple(t[2] for t in tiles)
        return a_darts[(word, datum.inv_V[tiles[0][0]])]

    return column_to_b_dart, row_to_a_dart


@pytest.mark.parametrize("k", [1, 2, 3])
def test_strip_graphs_are_nonbacktracking_dart_graphs(d12_q3, xd_q3, k):
    col_map, row_map = _strip_to_dart_maps(d12_q3, xd_q3, k)
    hk = transition_graph(xd_q3, "horizontal", k)
    perm = np.array([col_map(p) for p in hk.patterns])
    nb_b = nb_matrix(level_graph(d12_q3, "B", k)).adjacency
    assert (hk.adjacency == nb_b[np.ix_(perm, perm)]).all()
    vk = transition_graph(xd_q3, "vertical", k)
    perm = np.array([row_map(p) for p in vk.patterns])
    nb_a = nb_matrix(level_graph(d12_q3, "A", k)).adjacency
    assert (vk.adjacency == nb_a[np.ix_(perm, perm)]).all()


@pytest.mark.parametrize("fixture", ["xd_q3", "d12_q5"])
def test_three_way_extendability_agreement(fixture, request):
    # matrix criterion (0/1 products), exact commutation, and exhaustive
    # corner uniqueness must all agree
    obj = request.getfixturevalue(fixture)
    shift = obj if isinstance(obj, MatrixSubshift) else build_xd(obj)
    rep = regularity_report(shift)
    assert rep.products_01 and rep.commute_exactly and rep.uniquely_extendable
    for t00 in range(shift.s):
        for t10 in np.nonzero(shift.A[t00])[0]:
            for t01 in np.nonzero(shift.B[t00])[0]:
                count = int((shift.A[t01] & shift.B[t10]).sum())
                assert count == 1


def test_transition_graphs_form_covering_families(xd_q3):
    # dropping the outermost strip symbol is a covering H_(k+1) -> H_k
    from ramshift.graphs import covering_check
    from ramshift.mealy import LabeledDigraph

    def as_digraph(tg):
        edges = [
            (i, j, 0)
            for i in range(len(tg.patterns))
            for j in np.nonzero(tg.adjacency[i])[0]
        ]
        return LabeledDigraph(vertices=list(tg.patterns), edges=edges, state_labels=["-"])

    for direction in ("horizontal", "vertical"):
        big = as_digraph(transition_graph(xd_q3, direction, 3))
        small = as_digraph(transition_graph(xd_q3, direction, 2))
        assert covering_check(big, small, "drop-last")
        assert covering_check(big, small, "drop-first")


def brute_force_pattern_count_2x2(shift):
    count = 0
    s = shift.s
    for t00, t01, t10, t11 in itertools.product(range(s), repeat=4):
        # columns (t00, t01) and (t10, t11), bottom-to-top
        if (
            shift.B[t00, t01]
            and shift.B[t10, t11]
            and shift.A[t00, t10]
            and shift.A[t01, t11]
        ):
            count += 1
    return count


def test_pattern_counts_match_formula(xd_q3):
    for m, n in [(1, 1), (2, 2), (2, 3), (3, 2)]:
        assert pattern_count(xd_q3, m, n) == 16 * 3 ** (m - 1) * 3 ** (n - 1)


def test_pattern_count_2x2_against_brute_force(xd_q3):
    assert pattern_count(xd_q3, 2, 2) == brute_force_pattern_count_2x2(xd_q3) == 144


def test_pattern_count_cap(xd_q3):
    with pytest.raises(SizeCapExceeded):
        pattern_count(xd_q3, 4, 4)


def test_zero_entropy_signature(xd_q3):
    import math

    rates = [
        math.log(pattern_count(xd_q3, n, n)) / n**2 for n in (1, 2, 3)
    ]
    assert rates[0] > rates[1] > rates[2]


def test_fill_rectangle_traces_of_length_one(xd_q3):
    assert fill_rectangle(xd_q3, (5,), (5,)) == ((5,),)


def test_fill_rectangle_3x3(xd_q3):
    h = (0,) + tuple()
    # pick one admissible pair of traces and check the completion
    h_chain = chains(xd_q3.A, 3)[0]
    v_chain = next(c for c in chains(xd_q3.B, 3) if c[0] == h_chain[0])
    pat = fill_rectangle(xd_q3, h_chain, v_chain)
    assert is_admissible(xd_q3, pat)
    assert tuple(col[0] for col in pat) == h_chain
    assert pat[0] == v_chain


def test_fill_rectangle_validations(xd_q3):
    with pytest.raises(ValueError, match="corner"):
        fill_rectangle(xd_q3, (0, 1), (1,))
    bad_h = next(
        (i, j) for i in range(16) for j in range(16) if not xd_q3.A[i, j]
    )
    with pytest.raises(ValueError, match="admissible horizontal"):
        fill_rectangle(xd_q3, bad_h, (bad_h[0],))


def test_every_corner_pair_has_exactly_one_completion(xd_q3):
    # 2x2: for every A-edge (t00, t10) and B-edge (t00, t01) there is exactly
    # one admissible fourth tile
    count = 0
    for t00 in range(16):
        for t10 in np.nonzero(xd_q3.A[t00])[0]:
            for t01 in np.nonzero(xd_q3.B[t00])[0]:
                cands = [
                    t11
                    for t11 in range(16)
                    if xd_q3.A[t01, t11] and xd_q3.B[t10, t11]
                ]
                assert len(cands) == 1
                count += 1
    assert count == 144


def test_cylinder_measures(xd_q3):
    pat = ((3,),)
    assert cylinder_measure(xd_q3, CylinderSpec(pat)) == Fraction(1, 16)
    two_by_three = admissible_patterns(xd_q3, 2, 3)[0]
    assert cylinder_measure(xd_q3, two_by_three) == Fraction(1, 16 * 3 * 9)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bad = ((0,), (0,)) if not xd_q3.A[0, 0] else ((0,), (1,))
        mu = cylinder_measure(xd_q3, bad if not is_admissible(xd_q3, bad) else ((0, 0),))
    assert mu == 0
    assert any("measure zero" in str(w.message) for w in caught)


def test_measures_sum_to_one(xd_q3):
    total = sum(
        cylinder_measure(xd_q3, p) for p in admissible_patterns(xd_q3, 2, 2)
    )
    assert total == 1


def test_extension_measure_consistency(xd_q3):
    # every admissible pattern splits its mass equally over its d one-step
    # extensions to the right
    for pat in admissible_patterns(xd_q3, 2, 1):
        mu = cylinder_measure(xd_q3, pat)
        exts = [
            pat + ((t,),)
            for t in range(16)
            if xd_q3.A[pat[-1][0], t]
        ]
        assert len(exts) == 3
        assert sum(cylinder_measure(xd_q3, e) for e in exts) == mu


def test_correlation_decays_within_envelope(xd_q3):
    theta2 = Fraction(1, 3)  # theta^2 for theta = 1/sqrt(3)
    tiles = [((t,),) for t in range(16)]
    devs = {}
    for n in range(2, 13):
        worst = max(
            correlation(xd_q3, c1, c2, n) for c1 in tiles for c2 in tiles
        )
        devs[n] = worst
    c_sq = devs[2] ** 2 / (4 * theta2**2)  # C fitted at n = 2
    for n, dev in devs.items():
        assert dev**2 <= c_sq * n**2 * theta2**n
    assert devs[12] < devs[2]


def test_correlation_against_full_enumeration(xd_q3):
    # independent oracle: the joint measure of two pinned columns is the sum
    # of cylinder measures over every admissible full-width pattern that
    # carries both, enumerated exhaustively
    for k in (1, 2):
        cols = chains(xd_q3.B, k)
        picks = [cols[0], cols[5], cols[11]]
        for n in (2, 3):
            width = n + 1
            everything = admissible_patterns(xd_q3, width, k)
            for c1 in picks:
                for c2 in picks:
                    joint = sum(
                        cylinder_measure(xd_q3, p)
                        for p in everything
                        if p[0] == c1 and p[n] == c2
                    )
                    product = cylinder_measure(xd_q3, (c1,)) * cylinder_measure(xd_q3, (c2,))
                    assert correlation(xd_q3, (c1,), (c2,), n) == abs(joint - product)


def test_correlation_zero_for_flat_transitions():
    # all-ones transitions: paths distribute perfectly, deviations vanish
    j3 = np.ones((3, 3), dtype=int)
    shift = MatrixSubshift(list("abc"), j3, j3)
    one_tile = ((0,),)
    for n in (2, 3, 5):
        assert correlation(shift, one_tile, one_tile, n) == 0


def test_correlation_validations(xd_q3):
    tile = ((0,),)
    with pytest.raises(ValueError, match="overlap"):
        correlation(xd_q3, tile, tile, 1)
    tall = ((0, 0),) if is_admissible(xd_q3, ((0, 0),)) else None
    with pytest.raises(ValueError, match="vertical extent"):
        correlation(xd_q3, tile, ((0, xd_q3.B[0].argmax()),), 3)


def test_mixing_tables_q3(d12_q3):
    for k in (1, 2):
        table = mixing_table(d12_q3, k, 20)
        assert table.d == 3
        assert table.all_ok
        assert table.second_modulus == pytest.approx(3**0.5, abs=1e-6)
        assert table.dimension == 16 * 3 ** (k - 1)
    vertical = mixing_table(d12_q3, 1, 10, direction="vertical")
    assert vertical.all_ok


def test_mixing_table_q5(d12_q5):
    table = mixing_table(d12_q5, 1, 15)
    assert table.d == 5 and table.all_ok
    assert table.theta == pytest.approx(5**-0.5)
    assert table.second_modulus == pytest.approx(5**0.5, abs=1e-6)


def test_mixing_table_needs_r1(d12_q3):
    # the linear factor genuinely matters: the r = 0 envelope fails somewhere
    table = mixing_table(d12_q3, 1, 20)
    assert table.fitted_r == 1


def test_mixing_csv_format(d12_q3):
    table = mixing_table(d12_q3, 1, 6)
    csv = mixing_table_to_csv(table, header="demo")
    lines = csv.strip().splitlines()
    assert lines[0] == "# demo"
    assert lines[1] == "n,deviation_num,deviation_den,deviation_float,envelope_float,ok"
    assert len(lines) == 8
    assert all(line.endswith(",ok") for line in lines[2:])


def test_mixing_table_cap(d12_q3):
    with pytest.raises(SizeCapExceeded):
        mixing_table(d12_q3, 5, 3)  # 16 * 81 = 1296 > 500
