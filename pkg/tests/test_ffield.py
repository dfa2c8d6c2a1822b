"""Field arithmetic: construction determinism, the quadratic extension,
conjugation, norms, and norm fibers.  Expected values are frozen from
brute-force oracles computed inside the tests."""

import pytest

from ramshift.ffield import make_field, norm_fiber


def brute_nonresidue(p):
    squares = {(x * x) % p for x in range(1, p)}
    return min(x for x in range(1, p) if x not in squares)


def test_make_field_q3():
    spec = make_field(3, 1)
    assert spec.q == 3
    assert spec.c == (brute_nonresidue(3),) == (2,)
    assert spec.modulus == (0, 1)


def test_make_field_q5_and_q7():
    assert make_field(5, 1).c == (brute_nonresidue(5),) == (2,)
    assert make_field(7, 1).c == (brute_nonresidue(7),) == (3,)


@pytest.mark.parametrize("p", [2, 4, 9, 15, 1])
def test_make_field_rejects_non_odd_primes(p):
    with pytest.raises(ValueError, match="odd prime"):
        make_field(p, 1)


def test_make_field_q9_modulus_is_irreducible(f9):
    # oracle: no root in Z_3 and degree 2 means irreducible
    m = f9.modulus
    assert len(m) == 3 and m[2] == 1
    for x in range(3):
        assert (m[0] + m[1] * x + m[2] * x * x) % 3 != 0
    # c really is a non-square: exhaustive square set
    squares = {(a * a).encoding() for a in f9.elements()}
    assert f9.c_elem().encoding() not in squares
    # non-square certificate
    assert f9.c_elem() ** ((f9.q - 1) // 2) == -f9.one()


def test_canonical_order_is_the_integer_encoding(f9):
    encs = [a.encoding() for a in f9.elements()]
    assert encs == list(range(9))
    # the prime subfield comes first
    assert [a.coeffs for a in f9.elements()[:3]] == [(0, 0), (1, 0), (2, 0)]


def test_fq2_norm_example(f3):
    assert (f3.ext(1, 1)).norm() == f3.elem(2)  # N(1+Z) = 2


def test_fq2_inverse_by_exhaustive_search(f3):
    one = f3.ext(1, 0)
    alpha = f3.ext(1, 1)
    # oracle: scan all 9 elements for the product = 1
    inverses = [x for x in f3.ext_elements() if (alpha * x) == one]
    assert len(inverses) == 1
    assert inverses[0] == f3.ext(2, 1)  # 2+Z
    assert alpha.inverse() == inverses[0]


def test_inversion_of_zero_rejected(f3):
    with pytest.raises(ZeroDivisionError):
        f3.ext(0, 0).inverse()
    with pytest.raises(ZeroDivisionError):
        f3.zero().inverse()


@pytest.mark.parametrize("fixture", ["f3", "f9"])
def test_conj_is_an_order_two_ring_hom(fixture, request):
    spec = request.getfixturevalue(fixture)
    elems = spec.ext_elements()
    for x in elems:
        assert x.conj().conj() == x
        if x.v.is_zero():
            assert x.conj() == x  # fixes F_q pointwise
    z = spec.ext(0, 1)
    assert z.conj() == -z
    for x in elems:
        for y in elems[:: max(1, len(elems) // 12)]:
            assert (x + y).conj() == x.conj() + y.conj()
            assert (x * y).conj() == x.conj() * y.conj()


@pytest.mark.parametrize("fixture", ["f3", "f5", "f9"])
def test_norm_multiplicative_exhaustive(fixture, request):
    spec = request.getfixturevalue(fixture)
    elems = spec.ext_elements()
    for x in elems:
        for y in elems:
            assert (x * y).norm() == x.norm() * y.norm()


def test_norm_fiber_q3(f3):
    v = norm_fiber(f3, f3.elem(1))
    assert [str(x) for x in v] == ["1", "2", "Z", "2Z"]
    h = norm_fiber(f3, f3.elem(2))
    assert {str(x) for x in h} == {"1+Z", "2+Z", "1+2Z", "2+2Z"}


def test_norm_fiber_q5_by_exhaustive_enumeration(f5):
    # independent oracle: recompute norms element by element
    c = f5.c_elem()
    expected = {
        x for x in f5.ext_elements()
        if (x.u * x.u - c * (x.v * x.v)) == f5.one()
    }
    fiber = norm_fiber(f5, f5.elem(1))
    assert set(fiber) == expected
    assert len(fiber) == 6


def test_norm_fiber_rejects_zero_target(f3):
    with pytest.raises(ValueError, match="nonzero"):
        norm_fiber(f3, f3.elem(0))


@pytest.mark.parametrize("fixture", ["f3", "f5", "f9"])
def test_fibers_partition_the_units(fixture, request):
    spec = request.getfixturevalue(fixture)
    seen = set()
    for target in spec.elements():
        if target.is_zero():
            continue
        fiber = norm_fiber(spec, target)
        assert len(fiber) == spec.q + 1
        assert all(-x in fiber for x in fiber)  # closed under negation
        assert seen.isdisjoint(fiber)
        seen.update(fiber)
    assert len(seen) == spec.q * spec.q - 1
