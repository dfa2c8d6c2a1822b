"""Quaternion oracle: the multiplication law, reduced norms, and projective
proportionality.  Frozen products were expanded by hand from F^2 = t and
F a = conj(a) F."""

import random

import pytest

from ramshift.quaternion import QuatElem, proportional, reduced_norm


def gen(spec, alpha):
    return QuatElem.one_plus_alpha_f(spec, alpha)


def test_one_plus_f_times_one_minus_f(f3):
    one = f3.ext(1, 0)
    g = gen(f3, one) * gen(f3, -one)
    # 1 - t: scalar with coefficients (1, -1)
    assert g.x == ()
    assert g.u == (f3.ext(1, 0), f3.ext(2, 0))


def test_hand_expanded_product(f3):
    # (1+F)(1+(1+Z)F) = (1 + (1+2Z)t) + (2+Z)F
    g = gen(f3, f3.ext(1, 0)) * gen(f3, f3.ext(1, 1))
    assert g.u == (f3.ext(1, 0), f3.ext(1, 2))
    assert g.x == (f3.ext(2, 1),)
    assert str(g) == "1 + (1+2Z)t + (2+Z)*F"


def test_identity_is_neutral(f3):
    one = QuatElem.one(f3)
    for alpha in [f3.ext(1, 1), f3.ext(0, 2), f3.ext(2, 0)]:
        g = gen(f3, alpha)
        assert g * one == g
        assert one * g == g


def test_mismatched_fields_rejected(f3, f5):
    with pytest.raises(ValueError, match="different fields"):
        QuatElem.one(f3) * QuatElem.one(f5)


def _random_quat(spec, rng, max_deg=2):
    def poly():
        coeffs = tuple(
            spec.ext(rng.randrange(spec.q), rng.randrange(spec.q))
            for _ in range(rng.randint(1, max_deg + 1))
        )
        return coeffs
    g = QuatElem(spec, poly(), poly())
    # normalize through a multiplication by one to trim
    return g * QuatElem.one(spec)


@pytest.mark.parametrize("p", [3, 7])
def test_associativity_on_random_triples(p, request):
    from ramshift.ffield import make_field

    spec = make_field(p, 1)
    rng = random.Random(20240811 + p)
    for _ in range(25):
        a, b, c = (_random_quat(spec, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_reduced_norm_of_generators(f3, f5):
    from ramshift.ffield import norm_fiber

    for spec in (f3, f5):
        for target in spec.elements():
            if target.is_zero():
                continue
            for alpha in norm_fiber(spec, target):
                nrd = reduced_norm(gen(spec, alpha))
                # 1 - N(alpha) t
                assert nrd == (spec.one(), -alpha.norm())


def test_reduced_norm_of_one(f3):
    assert reduced_norm(QuatElem.one(f3)) == (f3.one(),)


def test_reduced_norm_multiplicative_on_random_pairs(f3):
    rng = random.Random(17)
    from ramshift.quaternion import p_mul

    done = 0
    while done < 10:
        g1, g2 = _random_quat(f3, rng), _random_quat(f3, rng)
        lhs = reduced_norm(g1 * g2)
        # independent side: polynomial product of the two norms over F_q
        n1, n2 = reduced_norm(g1), reduced_norm(g2)
        lift = lambda poly: tuple(f3.ext(c.coeffs, 0) for c in poly)
        rhs = tuple(c.u for c in p_mul(lift(n1), lift(n2)))
        assert lhs == rhs
        done += 1


def test_proportional_scalar_multiple(f3):
    g = gen(f3, f3.ext(1, 1))
    two = QuatElem.scalar(f3, f3.ext(2, 0))
    assert proportional(g, two * g)


def test_proportional_corrected_row(f3):
    # (1+F)(1+(1+Z)F) is proportional to (1+(2+2Z)F)(1+2Z F) ...
    lhs = gen(f3, f3.ext(1, 0)) * gen(f3, f3.ext(1, 1))
    rhs = gen(f3, f3.ext(2, 2)) * gen(f3, f3.ext(0, 2))
    assert proportional(lhs, rhs)
    # ... but not to (1+(2+2Z)F)(1+2F): the scalar parts differ in the
    # t-coefficient
    bad = gen(f3, f3.ext(2, 2)) * gen(f3, f3.ext(2, 0))
    assert not proportional(lhs, bad)


def test_proportional_rejects_zero(f3):
    zero = QuatElem(f3, (), ())
    with pytest.raises(ValueError, match="nonzero"):
        proportional(zero, QuatElem.one(f3))


def test_inverse_relation_is_scalar(f3):
    from ramshift.ffield import norm_fiber

    for target in (f3.elem(1), f3.elem(2)):
        for alpha in norm_fiber(f3, target):
            prod = gen(f3, alpha) * gen(f3, -alpha)
            assert prod.is_scalar()
            # and the scalar is 1 - N(alpha) t, projectively trivial
            expected = QuatElem(f3, (f3.ext(1, 0), f3.ext((-alpha.norm()).coeffs, 0)), ())
            assert proportional(prod, QuatElem.one(f3))
            assert prod == expected
