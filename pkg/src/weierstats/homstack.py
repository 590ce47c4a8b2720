"""Points of Hom_n(P^1, P(lambda)) inside the ambient weighted projective stack.

A point is a tuple of binary forms (u_0, ..., u_N) of degrees n*lambda_i, not
all zero, up to weighted scaling.  This module decides, by exact
factor-multiplicity algebra over F_q (never by extension enumeration):

  * base-point freeness (the tuple defines a morphism),
  * whether the underlying rational map is constant, with an explicit
    witness u_i = a_i * U^(lambda_i/ell),
  * GIT (semi)stability of the corresponding point of the coarse weighted
    projective space under PGL_2, via order-of-vanishing thresholds,
  * finite/reduced/tame-ness of the PGL_2 stabilizer in the characteristic
    regime char = 0 or char > max lcm(lambda_i, lambda_j) * n,
  * the fat-point stabilizer criterion for zero-dimensional subschemes of
    P^1 (at least three points of multiplicity prime to the characteristic).

A brute-force PGL_2(F_q) stabilizer enumeration is included as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .binforms import (
    BinForm,
    BinFormError,
    Factorization,
    Moebius,
    all_moebius,
    factor,
    gcd,
    radical_min_mult,
    squarefree_decomposition,
)
from .ffield import Field, FieldElement


class GitClass(Enum):
    UNSTABLE = "UNSTABLE"
    STRICTLY_SEMISTABLE = "STRICTLY_SEMISTABLE"
    STABLE = "STABLE"


class StabilizerVerdict(Enum):
    FINITE_REDUCED_TAME = "FINITE_REDUCED_TAME"
    NOT_FINITE_REDUCED_TAME = "NOT_FINITE_REDUCED_TAME"
    OUT_OF_REGIME = "OUT_OF_REGIME"


class FatPointClass(Enum):
    FINITE_REDUCED = "FINITE_REDUCED"
    NOT_FINITE_REDUCED = "NOT_FINITE_REDUCED"


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) < 2:
            raise ValueError("need at least two weights (N >= 1)")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def of(cls, *weights: int) -> "WeightVector":
        return cls(tuple(weights))

    @property
    def n_coords(self) -> int:
        return len(self.weights)

    @property
    def codim(self) -> int:
        """N, the dimension of the target stack."""
        return len(self.weights) - 1

    @property
    def total(self) -> int:
        return sum(self.weights)

    def ambient_dim(self, n: int) -> int:
        """Coefficient-space dimension sum(n*lambda_i + 1)."""
        return sum(n * w + 1 for w in self.weights)

    def char_regime_bound(self, n: int) -> int:
        """Largest degree of a map onto its image: max lcm(l_i, l_j) * n."""
        ws = self.weights
        best = 0
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                best = max(best, math.lcm(ws[i], ws[j]))
        return best * n

    def __iter__(self):
        return iter(self.weights)


@dataclass(frozen=True)
class HomTuple:
    lam: WeightVector
    n: int
    forms: tuple[BinForm, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree n must be >= 1")
        if len(self.forms) != self.lam.n_coords:
            raise ValueError("one form per weight required")
        owner = self.forms[0].owner
        for u, w in zip(self.forms, self.lam):
            if u.owner != owner:
                raise ValueError("all forms must share one field")
            if u.degree != self.n * w:
                raise ValueError(
                    f"form of degree {u.degree} where {self.n * w} expected"
                )
        if all(u.is_zero for u in self.forms):
            raise ValueError("the zero tuple is not a point of P(Lambda)")

    @property
    def owner(self) -> Field:
        return self.forms[0].owner

    def translate(self, g: Moebius) -> "HomTuple":
        return HomTuple(self.lam, self.n, tuple(u.substitute(g) for u in self.forms))


@dataclass(frozen=True)
class ConstancyWitness:
    """Exact data for a constant rational map: u_i = a_i * U^(lambda_i/ell)."""

    ell: int
    base: BinForm  # U, monic of degree ell * n
    scalars: tuple[FieldElement, ...]
    degenerate_support: int  # number of distinct geometric roots of U


def common_zero_divisor(t: HomTuple) -> BinForm:
    """Monic form cutting the common zeros of the nonzero coordinates."""
    acc = None
    for u in t.forms:
        if u.is_zero:
            continue
        acc = u.monic() if acc is None else gcd(acc, u)
        if acc.is_constant:
            break
    return acc


def base_point_free(t: HomTuple) -> bool:
    """True iff the tuple defines a morphism point of Hom_n (no common zero
    on P^1, the point at infinity included)."""
    return common_zero_divisor(t).is_constant


def constancy_witness(t: HomTuple) -> ConstancyWitness | None:
    """Witness that the underlying rational map is not finite, or None.

    The candidate U is read off the squarefree decomposition of a nonzero
    coordinate with the smallest exponent lambda_i/ell; every other
    coordinate is then verified exactly.
    """
    field = t.owner
    support = [i for i, u in enumerate(t.forms) if not u.is_zero]
    ell = math.gcd(*(t.lam.weights[i] for i in support))
    i0 = min(support, key=lambda i: t.lam.weights[i] // ell)
    e0 = t.lam.weights[i0] // ell
    u0 = t.forms[i0]
    if e0 == 1:
        base = u0.monic()
    else:
        decomp = squarefree_decomposition(u0)
        base = BinForm.one(field)
        for g, m in decomp.factors:
            if m % e0:
                return None
            base = base * g ** (m // e0)
        base = base.monic()
    scalars = []
    for i, u in enumerate(t.forms):
        if u.is_zero:
            scalars.append(field.zero)
            continue
        c = u.is_proportional_to(base ** (t.lam.weights[i] // ell))
        if c is None:
            return None
        scalars.append(c)
    support_count = sum(g.degree for g, _ in squarefree_decomposition(base).factors)
    return ConstancyWitness(ell, base, tuple(scalars), support_count)


def classify_stabilizer(t: HomTuple, char_p: int) -> StabilizerVerdict:
    """Finite/reduced/tame-ness of the PGL_2 stabilizer of [u].

    Only decided in the regime char_p = 0 or char_p > max lcm(l_i, l_j) * n;
    outside it the criterion is not proven and OUT_OF_REGIME is returned.
    The stabilizer fails to be finite, reduced and tame exactly when the map
    is constant with base form supported on at most two geometric points.
    """
    if char_p != 0 and char_p <= t.lam.char_regime_bound(t.n):
        return StabilizerVerdict.OUT_OF_REGIME
    witness = constancy_witness(t)
    if witness is not None and witness.degenerate_support <= 2:
        return StabilizerVerdict.NOT_FINITE_REDUCED_TAME
    return StabilizerVerdict.FINITE_REDUCED_TAME


def _threshold_locus(t: HomTuple, strict: bool) -> BinForm | None:
    """Common locus where ord_p(u_i) exceeds (strict) or reaches (not strict)
    n*lambda_i/2 for every i; None when that locus is all of P^1."""
    acc = None
    for u, w in zip(t.forms, t.lam):
        half = t.n * w / 2
        m = math.floor(half) + 1 if strict else math.ceil(half)
        if u.is_zero:
            continue  # ord infinite everywhere: no constraint from u
        r = radical_min_mult(u, m)
        acc = r if acc is None else gcd(acc, r)
        if acc.is_constant:
            return acc
    return acc


def git_classify(t: HomTuple) -> GitClass:
    """Hilbert-Mumford classification of [u] for the PGL_2 action.

    Semistability fails iff some geometric point has ord_p(u_i) > n*l_i/2
    for all i; stability fails iff some point reaches n*l_i/2 for all i.
    Decided via multiplicity radicals, without point enumeration; zero
    coordinates count as infinite order at every point.
    """
    ss_locus = _threshold_locus(t, strict=True)
    if ss_locus is None or not ss_locus.is_constant:
        return GitClass.UNSTABLE
    s_locus = _threshold_locus(t, strict=False)
    if s_locus is None or not s_locus.is_constant:
        return GitClass.STRICTLY_SEMISTABLE
    return GitClass.STABLE


def pgl2_stabilizer(t: HomTuple, field: Field | None = None) -> list[Moebius]:
    """All g in PGL_2(F_q) with substitute(u_i, g) = mu^(lambda_i) * u_i for
    a single scalar mu (found by enumerating F_q^*).  Brute-force oracle;
    always contains the identity."""
    if field is None:
        field = t.owner
    if field != t.owner:
        raise ValueError("stabilizer field must be the owner field")
    weights = t.lam.weights
    units = list(field.units())
    out = []
    for g in all_moebius(field):
        constraints = []
        ok = True
        for u, w in zip(t.forms, weights):
            if u.is_zero:
                continue  # substitution keeps it zero: no constraint on mu
            c = u.substitute(g).is_proportional_to(u)
            if c is None:
                ok = False
                break
            constraints.append((w, c))
        if not ok:
            continue
        for mu in units:
            if all(mu**w == c for w, c in constraints):
                out.append(g)
                break
    return out


def fat_point_stabilizer_class(fact: Factorization, char_p: int) -> FatPointClass:
    """Stabilizer of a fat-point subscheme V(F) of P^1 under PGL_2.

    Counts geometric points whose multiplicity is prime to char_p (all of
    them when char_p = 0); the stabilizer is finite and reduced iff that
    count is at least three.
    """
    count = 0
    for g, mult in fact.factors:
        if char_p == 0 or mult % char_p:
            count += g.degree
    return (
        FatPointClass.FINITE_REDUCED
        if count >= 3
        else FatPointClass.NOT_FINITE_REDUCED
    )


def fat_point_class_of_form(f: BinForm, char_p: int | None = None) -> FatPointClass:
    if f.is_zero:
        raise BinFormError("fat-point criterion needs a nonzero form")
    if char_p is None:
        char_p = f.owner.p
    return fat_point_stabilizer_class(factor(f), char_p)
