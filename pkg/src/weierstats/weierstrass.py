"""Weierstrass data (A, B) of degrees (4n, 6n) over F_q, char >= 5.

The discriminant here is Delta = 4A^3 + 27B^2.  The more common elliptic
surface normalization -16(4A^3 + 27B^2) differs by a unit away from
characteristic 2, so the strata, vanishing orders and fiber types computed
below are unaffected by the choice.

Strata of the coefficient stack, as nested open conditions:

  SF            no geometric common zero of A and B
  MIN_NOT_SF    minimal but not stable: Delta != 0 and no geometric point
                with ord(A) >= 4 and ord(B) >= 6, yet A, B share a zero
  DELTA_ONLY    Delta != 0 but a removable (>= 4, >= 6) point exists
  DISCRIMINANT_ZERO   Delta vanishes identically

Singular fibers are classified by Tate's algorithm, which for char >= 5
is the lookup on (ord A, ord B, ord Delta) implemented in kodaira_type().
Characteristics 2 and 3 are rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .binforms import (
    BinForm,
    BinFormError,
    INFINITY,
    ProjPoint,
    factor,
    gcd,
    radical_min_mult,
)
from .ffield import Field


class WeierstrassError(ValueError):
    pass


class Stratum(Enum):
    DISCRIMINANT_ZERO = "DISCRIMINANT_ZERO"
    DELTA_ONLY = "DELTA_ONLY"
    MIN_NOT_SF = "MIN_NOT_SF"
    SF = "SF"


@dataclass(frozen=True)
class KodairaFiber:
    """A Kodaira-Neron fiber type; I_m and I_m* carry the index m."""

    symbol: str  # one of I0 Im II III IV I0* Im* IV* III* II* NON_MINIMAL
    m: int = 0

    def __str__(self):
        if self.symbol == "Im":
            return f"I{self.m}"
        if self.symbol == "Im*":
            return f"I{self.m}*"
        return self.symbol

    @property
    def is_multiplicative(self) -> bool:
        return self.symbol in ("I0", "Im")

    @property
    def is_additive(self) -> bool:
        return self.symbol in ("II", "III", "IV", "I0*", "Im*", "IV*", "III*", "II*")

    def delta_order(self) -> int | None:
        """Vanishing order of the discriminant forced by the type
        (None for NON_MINIMAL, where only >= 12 is known)."""
        fixed = {"I0": 0, "II": 2, "III": 3, "IV": 4, "I0*": 6, "IV*": 8, "III*": 9, "II*": 10}
        if self.symbol in fixed:
            return fixed[self.symbol]
        if self.symbol == "Im":
            return self.m
        if self.symbol == "Im*":
            return 6 + self.m
        return None


def discriminant(A: BinForm, B: BinForm) -> BinForm:
    """4A^3 + 27B^2 for degrees (4n, 6n)."""
    if A.owner != B.owner:
        raise WeierstrassError("A and B over different fields")
    if A.owner.p in (2, 3):
        raise WeierstrassError("characteristic 2 and 3 are not supported")
    if A.degree % 4 or B.degree % 6 or A.degree // 4 != B.degree // 6:
        raise WeierstrassError("degrees must be (4n, 6n) for a common n")
    field = A.owner
    return (A * A * A).scale(field.element(4)) + (B * B).scale(field.element(27))


@dataclass(frozen=True)
class WeierstrassDatum:
    n: int
    A: BinForm
    B: BinForm

    def __post_init__(self):
        if self.n < 1:
            raise WeierstrassError("n must be >= 1")
        if self.A.owner != self.B.owner:
            raise WeierstrassError("A and B over different fields")
        if self.A.owner.p in (2, 3):
            raise WeierstrassError("characteristic 2 and 3 are not supported")
        if self.A.degree != 4 * self.n or self.B.degree != 6 * self.n:
            raise WeierstrassError(
                f"degrees must be ({4 * self.n}, {6 * self.n}), "
                f"got ({self.A.degree}, {self.B.degree})"
            )
        if self.A.is_zero and self.B.is_zero:
            raise WeierstrassError("(0, 0) is not Weierstrass data")
        object.__setattr__(self, "_delta", discriminant(self.A, self.B))

    @property
    def owner(self) -> Field:
        return self.A.owner

    @property
    def delta(self) -> BinForm:
        return self._delta  # type: ignore[attr-defined]


def classify_stratum(w: WeierstrassDatum) -> Stratum:
    if w.delta.is_zero:
        return Stratum.DISCRIMINANT_ZERO
    if w.A.is_zero or w.B.is_zero:
        sf = False  # the nonzero one has zeros; all of them are common
    else:
        sf = gcd(w.A, w.B).is_constant
    if sf:
        return Stratum.SF
    # minimality: no common point of the mult->=4 part of A and mult->=6 of B
    if w.A.is_zero:
        locus = radical_min_mult(w.B, 6)
    elif w.B.is_zero:
        locus = radical_min_mult(w.A, 4)
    else:
        locus = gcd(radical_min_mult(w.A, 4), radical_min_mult(w.B, 6))
    return Stratum.MIN_NOT_SF if locus.is_constant else Stratum.DELTA_ONLY


def minimalize(w: WeierstrassDatum) -> tuple[WeierstrassDatum, BinForm]:
    """Remove all (>= 4, >= 6) common zeros: returns (w', U) with
    A = U^4 A', B = U^6 B' and U maximal; n' = n - deg U.

    Raises NON_FIBRATION (as WeierstrassError) when the removal would force
    n' = 0, i.e. the datum is not a fibration of any positive degree.
    """
    if w.delta.is_zero:
        raise WeierstrassError("minimalization needs Delta != 0")
    field = w.owner
    u = BinForm.one(field)
    if w.A.is_zero:
        drops = [(g, m // 6) for g, m in factor(w.B).factors]
    elif w.B.is_zero:
        drops = [(g, m // 4) for g, m in factor(w.A).factors]
    else:
        orders_b = {g: m for g, m in factor(w.B).factors}
        drops = [
            (g, min(m // 4, orders_b.get(g, 0) // 6))
            for g, m in factor(w.A).factors
        ]
    for g, e in drops:
        if e > 0:
            u = u * g**e
    if u.degree == 0:
        return w, BinForm.one(field)
    n_prime = w.n - u.degree
    if n_prime < 1:
        raise WeierstrassError(
            "NON_FIBRATION: minimalization would need degree n' = 0"
        )
    u4, u6 = u**4, u**6
    a_prime = _exact_form_quotient(w.A, u4, 4 * n_prime)
    b_prime = _exact_form_quotient(w.B, u6, 6 * n_prime)
    return WeierstrassDatum(n_prime, a_prime, b_prime), u


def _exact_form_quotient(f: BinForm, d: BinForm, out_degree: int) -> BinForm:
    """f / d as binary forms, exact by construction."""
    field = f.owner
    if f.is_zero:
        return BinForm.zero(field, out_degree)
    from .binforms import _udivmod  # exact univariate division

    q, r = _udivmod(f.x_poly(), d.x_poly(), field)
    if r:
        raise BinFormError("non-exact form division")  # pragma: no cover
    return BinForm.from_x_poly(field, q, out_degree)


def kodaira_type(a, b, delta) -> KodairaFiber:
    """Tate's algorithm in char >= 5: lookup on the local orders of A, B
    and Delta at a point (INFINITY allowed for zero forms)."""
    if delta == 0:
        return KodairaFiber("I0")
    if a == 0:
        return KodairaFiber("Im", int(delta))
    if a >= 4 and b >= 6:
        return KodairaFiber("NON_MINIMAL")
    if a >= 1 and b == 1 and delta == 2:
        return KodairaFiber("II")
    if a == 1 and b >= 2 and delta == 3:
        return KodairaFiber("III")
    if a >= 2 and b == 2 and delta == 4:
        return KodairaFiber("IV")
    if a >= 2 and b >= 3 and delta == 6:
        return KodairaFiber("I0*")
    if a == 2 and b == 3 and delta > 6:
        return KodairaFiber("Im*", int(delta) - 6)
    if a >= 3 and b == 4 and delta == 8:
        return KodairaFiber("IV*")
    if a == 3 and b >= 5 and delta == 9:
        return KodairaFiber("III*")
    if a >= 4 and b == 5 and delta == 10:
        return KodairaFiber("II*")
    raise WeierstrassError(
        f"orders (A, B, Delta) = ({a}, {b}, {delta}) do not occur"
    )  # pragma: no cover


def kodaira_type_at(w: WeierstrassDatum, pt: ProjPoint) -> KodairaFiber:
    if w.delta.is_zero:
        raise WeierstrassError("fiber types need Delta != 0")
    if w.owner.p < 5:
        raise WeierstrassError("fiber classification needs characteristic >= 5")
    return kodaira_type(w.A.order_at(pt), w.B.order_at(pt), w.delta.order_at(pt))


def fiber_survey(w: WeierstrassDatum) -> list[tuple[int, KodairaFiber]]:
    """One (closed-point degree, fiber type) entry per irreducible factor of
    Delta, with orders read off factor multiplicities.  The entries satisfy
    sum(degree * ord(Delta)) = 12n."""
    if w.delta.is_zero:
        raise WeierstrassError("fiber survey needs Delta != 0")
    if w.owner.p < 5:
        raise WeierstrassError("fiber classification needs characteristic >= 5")
    a_orders = {} if w.A.is_zero else {g: m for g, m in factor(w.A).factors}
    b_orders = {} if w.B.is_zero else {g: m for g, m in factor(w.B).factors}
    out = []
    for g, dm in factor(w.delta).factors:
        a = INFINITY if w.A.is_zero else a_orders.get(g, 0)
        b = INFINITY if w.B.is_zero else b_orders.get(g, 0)
        out.append((g.degree, kodaira_type(a, b, dm)))
    return out
