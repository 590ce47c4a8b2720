"""Classes in the Grothendieck ring of stacks as reduced fractions in L.

L is the class of the affine line.  An expression is a pair of
integer-coefficient polynomials num/den, reduced so that the representation
is unique: polynomial gcd 1, coprime contents, positive leading denominator
coefficient.  Specializing L -> q gives weighted point counts over F_q as
exact rationals.

Only the localization of Z[L] needed for the implemented identities is
modeled (classes of GL_d, SL_2, PGL_2, G_m, Hom stacks to weighted
projective stacks, their PGL_2 quotients, and the ambient quotient class);
no further relations of the full ring are encoded.

The quotient-by-PGL_2 formulas carry parity hypotheses: odd map degree for
the weighted-target moduli, even degree for self-map moduli.  Outside the
hypothesis the formula value is only a conjecture and must be requested
explicitly with empirical=True.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .homstack import WeightVector

IntPoly = tuple[int, ...]  # little-endian, trimmed; () is the zero polynomial


class MotiveError(ValueError):
    pass


class ParityError(MotiveError):
    """Formula requested outside its degree-parity hypothesis."""


# -- integer / rational polynomial helpers ----------------------------------

def _trim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _pdivmod_q(a, b):
    """Division with remainder over Q."""
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = Fraction(1, 1) / Fraction(b[-1])
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        shift = len(a) - len(b)
        f = a[-1] * inv
        q[shift] = f
        for i in range(len(b)):
            a[shift + i] -= f * Fraction(b[i])
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def _content(a) -> int:
    c = 0
    for x in a:
        c = int_gcd(c, abs(x))
    return c or 1


def _pgcd(a, b) -> IntPoly:
    """Primitive integer gcd with positive leading coefficient."""
    if not a:
        g = b
    elif not b:
        g = a
    else:
        x, y = list(a), list(b)
        while y:
            _, r = _pdivmod_q(x, y)
            x, y = y, r
        # clear denominators, take primitive part
        den = 1
        for c in x:
            den = den * Fraction(c).denominator // int_gcd(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in x]
        g = tuple(ints)
    if not g:
        return ()
    cont = _content(g)
    g = tuple(x // cont for x in g)
    if g[-1] < 0:
        g = tuple(-x for x in g)
    return g


def _pdiv_exact(a, b) -> IntPoly:
    q, r = _pdivmod_q(a, b)
    if r:
        raise MotiveError("non-exact polynomial division")  # pragma: no cover
    out = []
    for c in q:
        if Fraction(c).denominator != 1:
            raise MotiveError("non-integer exact quotient")  # pragma: no cover
        out.append(int(c))
    return _trim(out)


def _peval(a, q: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * q + c
    return acc


def _pstr(a) -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            lpow = "L" if i == 1 else f"L^{i}"
            body = lpow if abs(c) == 1 else f"{abs(c)}*{lpow}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms)


@dataclass(frozen=True)
class MotiveExpr:
    num: IntPoly
    den: IntPoly = (1,)

    def __post_init__(self):
        if not self.den:
            raise MotiveError("zero denominator")
        num, den = _trim(list(self.num)), _trim(list(self.den))
        if num:
            g = _pgcd(num, den)
            if len(g) > 1 or g != (1,):
                num, den = _pdiv_exact(num, g), _pdiv_exact(den, g)
            cn, cd = _content(num), _content(den)
            c = int_gcd(cn, cd)
            if c > 1:
                num = tuple(x // c for x in num)
                den = tuple(x // c for x in den)
            if den[-1] < 0:
                num = tuple(-x for x in num)
                den = tuple(-x for x in den)
        else:
            den = (1,)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", tuple(den))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, c: int) -> "MotiveExpr":
        return cls((c,) if c else ())

    @classmethod
    def lefschetz(cls, power: int = 1) -> "MotiveExpr":
        return cls((0,) * power + (1,))

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def __str__(self):
        if self.is_polynomial:
            return _pstr(self.num)
        return f"({_pstr(self.num)}) / ({_pstr(self.den)})"

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "MotiveExpr") -> "MotiveExpr":
        return MotiveExpr(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other: "MotiveExpr") -> "MotiveExpr":
        return MotiveExpr(
            _psub(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __mul__(self, other: "MotiveExpr") -> "MotiveExpr":
        return MotiveExpr(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other: "MotiveExpr") -> "MotiveExpr":
        if other.is_zero:
            raise MotiveError("division by the zero class")
        return MotiveExpr(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def specialize(self, q: int) -> Fraction:
        """The weighted point count specialization L -> q, exact."""
        dv = _peval(self.den, q)
        if dv == 0:
            raise MotiveError(f"pole at q = {q}")
        return Fraction(_peval(self.num, q), dv)


L = MotiveExpr.lefschetz()
ONE = MotiveExpr.from_int(1)


def arith(a: MotiveExpr, b: MotiveExpr, op: str) -> MotiveExpr:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise MotiveError(f"unknown operation {op!r}")


def group_class(name: str) -> MotiveExpr:
    """{GL_d} = prod_i (L^d - L^i); {SL_2} = {PGL_2} = L(L^2 - 1); {G_m} = L - 1."""
    name = name.strip()
    if name in ("SL2", "PGL2"):
        return L * (L * L - ONE)
    if name == "Gm":
        return L - ONE
    if name.startswith("GL(") and name.endswith(")"):
        d = int(name[3:-1])
        if d < 1:
            raise MotiveError("GL(d) needs d >= 1")
        acc = ONE
        ld = MotiveExpr.lefschetz(d)
        for i in range(d):
            acc = acc * (ld - MotiveExpr.lefschetz(i))
        return acc
    raise MotiveError(f"unknown group {name!r}")


def gl2_class() -> MotiveExpr:
    return group_class("GL(2)")


def hom_class(lam: WeightVector, n: int) -> MotiveExpr:
    """{Hom_n(P^1, P(lambda))} = (sum_{i<=N} L^i) * (L^(|lambda|n) - L^(|lambda|n - N))."""
    if n < 1:
        raise MotiveError("degree n must be >= 1")
    big_n = lam.codim
    s = lam.total * n
    geom = MotiveExpr(tuple([1] * (big_n + 1)))
    return geom * (MotiveExpr.lefschetz(s) - MotiveExpr.lefschetz(s - big_n))


def _moduli_closed_form(lam: WeightVector, n: int) -> MotiveExpr:
    big_n = lam.codim
    s = lam.total * n
    lead = MotiveExpr.lefschetz(s - big_n - 1)
    if big_n % 2 == 1:
        evens = [0] * big_n
        for i in range(0, big_n, 2):
            evens[i] = 1
        first = MotiveExpr(tuple(evens))
        second = MotiveExpr(tuple([1] * big_n))
    else:
        first = MotiveExpr(tuple([1] * (big_n + 1)))
        evens = [0] * (big_n - 1)
        for i in range(0, big_n - 1, 2):
            evens[i] = 1
        second = MotiveExpr(tuple(evens))
    return lead * first * second


def moduli_class(lam: WeightVector, n: int, empirical: bool = False) -> MotiveExpr:
    """{Hom_n / PGL_2} = {Hom_n} / {PGL_2}, proven for odd n.

    For even n the same value is returned only with empirical=True; whether
    it equals the honest quotient class is open.  The division result is
    checked against the closed form at construction.
    """
    if n % 2 == 0 and not empirical:
        raise ParityError("moduli class is proven for odd degree n only")
    quotient = hom_class(lam, n) / group_class("PGL2")
    closed = _moduli_closed_form(lam, n)
    if quotient != closed:
        raise MotiveError("division and closed form disagree")  # pragma: no cover
    return quotient


def selfmap_moduli_class(n: int, empirical: bool = False) -> MotiveExpr:
    """{Hom_n(P^1,P^1) / PGL_2 (conjugation)} = L^(2n-2), proven for even n."""
    if n < 1:
        raise MotiveError("degree n must be >= 1")
    if n % 2 == 1 and not empirical:
        raise ParityError("self-map moduli class is proven for even degree n only")
    return MotiveExpr.lefschetz(2 * n - 2)


def ambient_class(lam: WeightVector, n: int) -> MotiveExpr:
    """{[P(Lambda)/PGL_2]} = (L^(|lambda|n + N + 1) - 1) / (L(L-1)(L^2-1))."""
    if n < 1:
        raise MotiveError("degree n must be >= 1")
    top = lam.total * n + lam.codim + 1
    num = MotiveExpr.lefschetz(top) - ONE
    den = L * (L - ONE) * (L * L - ONE)
    return num / den
