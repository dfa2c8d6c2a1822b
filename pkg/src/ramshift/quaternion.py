"""Symbolic arithmetic for quaternions of the form u(t) + x(t)F.

The ambient algebra over F_q(t) has relations Z^2 = c, F^2 = t and
ZF = -FZ, so F a = conj(a) F for a in F_q[Z] and

    (u1 + x1 F)(u2 + x2 F) = (u1 u2 + t x1 conj(x2)) + (u1 x2 + x1 conj(u2)) F.

Elements with both components polynomial in t are closed under this product,
which is all the lattice relations ever need, so only that two-component
form is implemented.  Arithmetic is exact; t is never evaluated.

Polynomials are tuples of Fq2Elem coefficients, low degree first, with
trailing zeros trimmed (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import FieldSpec, Fq2Elem, FqElem, fq2_label


Poly = tuple[Fq2Elem, ...]


def _trim(coeffs: list[Fq2Elem]) -> Poly:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, bi in enumerate(b):
        out[i] = out[i] + bi
    return _trim(out)


def p_neg(a: Poly) -> Poly:
    return tuple(-ai for ai in a)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    spec = a[0].spec
    zero = spec.ext(0, 0)
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return _trim(out)


def p_shift(a: Poly) -> Poly:
    """Multiply by t."""
    if not a:
        return ()
    return (a[0].spec.ext(0, 0),) + a


def p_conj(a: Poly) -> Poly:
    """Coefficient-wise Frobenius conjugation."""
    return tuple(ai.conj() for ai in a)


def p_label(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        coeff = fq2_label(ai)
        if "+" in coeff and i > 0:
            coeff = f"({coeff})"
        if i == 0:
            parts.append(coeff)
        elif i == 1:
            parts.append("t" if coeff == "1" else f"{coeff}t")
        else:
            parts.append(f"t^{i}" if coeff == "1" else f"{coeff}t^{i}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class QuatElem:
    """u(t) + x(t)F with Fq2Elem polynomial components."""

    spec: FieldSpec
    u: Poly
    x: Poly

    @staticmethod
    def scalar(spec: FieldSpec, value: Fq2Elem) -> "QuatElem":
        return QuatElem(spec, _trim([value]), ())

    @staticmethod
    def one(spec: FieldSpec) -> "QuatElem":
        return QuatElem.scalar(spec, spec.ext(1, 0))

    @staticmethod
    def one_plus_alpha_f(spec: FieldSpec, alpha: Fq2Elem) -> "QuatElem":
        """The group generator 1 + alpha*F."""
        return QuatElem(spec, (spec.ext(1, 0),), _trim([alpha]))

    def __mul__(self, other: "QuatElem") -> "QuatElem":
        if self.spec != other.spec:
            raise ValueError("quaternion operands live over different fields")
        u = p_add(p_mul(self.u, other.u), p_shift(p_mul(self.x, p_conj(other.x))))
        x = p_add(p_mul(self.u, other.x), p_mul(self.x, p_conj(other.u)))
        return QuatElem(self.spec, u, x)

    def is_zero(self) -> bool:
        return not self.u and not self.x

    def is_scalar(self) -> bool:
        """True when the F-component vanishes (value in F_q[Z][t])."""
        return not self.x

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        if not self.x:
            return p_label(self.u)
        xl = p_label(self.x)
        if " + " in xl or "+" in xl:
            xl = f"({xl})"
        if not self.u:
            return f"{xl}*F"
        return f"{p_label(self.u)} + {xl}*F"

    def __repr__(self) -> str:
        return f"Quat({self})"


def reduced_norm(g: QuatElem) -> tuple[FqElem, ...]:
    """Nrd(u + xF) = N(u) - t N(x) as a polynomial in t over F_q.

    N is the F_q[Z] norm pushed through the polynomial arithmetic, i.e.
    N(u)(t) = u(t) * conj(u)(t).  The result always has zero Z-part, which
    is asserted, and the F_q coefficients are returned.
    """
    nu = p_mul(g.u, p_conj(g.u))
    nx = p_mul(g.x, p_conj(g.x))
    nrd = p_add(nu, p_neg(p_shift(nx)))
    for coeff in nrd:
        if not coeff.v.is_zero():
            raise RuntimeError("reduced norm left the base field")  # impossible
    return tuple(coeff.u for coeff in nrd)


def proportional(g1: QuatElem, g2: QuatElem) -> bool:
    """Projective equality: is g2 a nonzero F_q(t)-scalar multiple of g1?

    Decided exactly by the polynomial cross product u1*x2 = u2*x1 together
    with agreement of which components vanish.  Zero arguments are rejected.
    """
    if g1.is_zero() or g2.is_zero():
        raise ValueError("proportionality is only defined for nonzero elements")
    if (not g1.u) != (not g2.u) or (not g1.x) != (not g2.x):
        return False
    return p_mul(g1.u, g2.x) == p_mul(g2.u, g1.x)
