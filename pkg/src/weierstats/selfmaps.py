"""Rational self-maps f = [F : G] of P^1 of degree n under conjugation.

The fixed-point divisor Y*F - X*G has degree n + 1, the critical divisor
(the Wronskian of F and G) has degree 2n - 2, and both are equivariant for
conjugation.  A map has a tame finite stabilizer whenever the product
divisor Fix * Crit carries at least three geometric points of multiplicity
prime to the characteristic; since a critical point enters Fix with
multiplicity at most 1, multiplicities in the product just add.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .binforms import BinForm, Moebius, all_moebius, factor, resultant
from .ffield import Field
from .homstack import FatPointClass, fat_point_stabilizer_class


class SelfMapError(ValueError):
    pass


class IdentityMapError(SelfMapError):
    """Raised where the identity map degenerates (empty fixed divisor)."""


class WildRamificationError(SelfMapError):
    """Identically-zero Wronskian: inseparable regime (char <= n)."""


class Tameness(Enum):
    TAME_FINITE = "TAME_FINITE"
    NOT_GUARANTEED = "NOT_GUARANTEED"
    OUT_OF_REGIME = "OUT_OF_REGIME"


@dataclass(frozen=True)
class RationalSelfMap:
    n: int
    F: BinForm
    G: BinForm

    def __post_init__(self):
        if self.n < 1:
            raise SelfMapError("degree must be >= 1")
        if self.F.owner != self.G.owner:
            raise SelfMapError("F and G over different fields")
        if self.F.degree != self.n or self.G.degree != self.n:
            raise SelfMapError("F and G must both have the declared degree")
        if self.F.is_zero and self.G.is_zero:
            raise SelfMapError("(0, 0) does not define a point")

    @property
    def owner(self) -> Field:
        return self.F.owner

    @property
    def is_morphism(self) -> bool:
        return bool(resultant(self.F, self.G))

    @property
    def is_identity(self) -> bool:
        return self.n == 1 and fix_divisor_raw(self).is_zero


def fix_divisor_raw(m: RationalSelfMap) -> BinForm:
    """Y*F - X*G without the identity-map check."""
    y = BinForm.variable_y(m.owner)
    x = BinForm.variable_x(m.owner)
    return y * m.F - x * m.G


def fix_divisor(m: RationalSelfMap) -> BinForm:
    """The fixed-point divisor, an effective divisor of degree n + 1."""
    d = fix_divisor_raw(m)
    if d.is_zero:
        raise IdentityMapError("the identity map fixes all of P^1")
    return d


def critical_divisor(m: RationalSelfMap) -> BinForm:
    """Monic Wronskian dF/dX * dG/dY - dF/dY * dG/dX of degree 2n - 2."""
    w = m.F.partial_x() * m.G.partial_y() - m.F.partial_y() * m.G.partial_x()
    if w.is_zero:
        raise WildRamificationError(
            "Wronskian vanishes identically (wild ramification, char <= n)"
        )
    return w.monic()


def conjugate(m: RationalSelfMap, g: Moebius) -> RationalSelfMap:
    """g . f = g o f o g^(-1); the morphism property is preserved."""
    ginv = g.inverse()
    f1 = m.F.substitute(ginv)
    g1 = m.G.substitute(ginv)
    return RationalSelfMap(
        m.n,
        f1.scale(g.a) + g1.scale(g.b),
        f1.scale(g.c) + g1.scale(g.d),
    )


def tameness(m: RationalSelfMap) -> Tameness:
    """Tame-finite-stabilizer certificate via the fat-point criterion on
    Fix * Crit.  Only decided for char = 0 or char > n."""
    char_p = m.owner.p
    if char_p != 0 and char_p <= m.n:
        return Tameness.OUT_OF_REGIME
    if not m.is_morphism:
        raise SelfMapError("tameness is defined for morphisms only")
    if m.is_identity:
        return Tameness.NOT_GUARANTEED
    product = fix_divisor(m) * critical_divisor(m)
    verdict = fat_point_stabilizer_class(factor(product), char_p)
    return (
        Tameness.TAME_FINITE
        if verdict == FatPointClass.FINITE_REDUCED
        else Tameness.NOT_GUARANTEED
    )


def selfmap_stabilizer(m: RationalSelfMap, field: Field | None = None) -> list[Moebius]:
    """All g in PGL_2(F_q) with g o m o g^(-1) = m up to a common scalar on
    (F, G).  Brute-force oracle; always contains the identity."""
    if field is None:
        field = m.owner
    if field != m.owner:
        raise SelfMapError("stabilizer field must be the owner field")
    out = []
    for g in all_moebius(field):
        c = conjugate(m, g)
        if m.F.is_zero:
            ok = c.F.is_zero and c.G.is_proportional_to(m.G) is not None
        elif m.G.is_zero:
            ok = c.G.is_zero and c.F.is_proportional_to(m.F) is not None
        else:
            r1 = c.F.is_proportional_to(m.F)
            r2 = c.G.is_proportional_to(m.G)
            ok = r1 is not None and r2 is not None and r1 == r2
        if ok:
            out.append(g)
    return out
