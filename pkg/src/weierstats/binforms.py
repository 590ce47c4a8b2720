"""Homogeneous binary forms over a finite field.

A form of declared degree d is stored as the coefficient tuple (c_0, ..., c_d)
of sum_i c_i X^i Y^(d-i); the declared degree makes the zero form and
degree-dropping substitutions well-typed.  The divisor of a nonzero form
always has total degree d: the point at infinity [1:0] enters as an explicit
factor Y with multiplicity d - deg_x of the dehomogenization.

Monic normalization scales the highest nonzero X-power coefficient to 1,
which gives canonical gcd and factorization output.  Equal-degree splitting
uses a seeded search (see DEFAULT_FACTOR_SEED) so factorizations are
byte-reproducible; the resulting factor list is canonical either way.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .ffield import Field, FieldElement, FieldError

INFINITY = math.inf
DEFAULT_FACTOR_SEED = 2310


class BinFormError(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate helpers on lists of FieldElement (low -> high, trimmed)
# ---------------------------------------------------------------------------

def _utrim(c: list[FieldElement]) -> list[FieldElement]:
    while c and not c[-1]:
        c.pop()
    return c


def _uadd(a, b):
    F = None
    out = []
    for i in range(max(len(a), len(b))):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(b[i])
    return _utrim(out)


def _usub(a, b, field: Field):
    out = []
    for i in range(max(len(a), len(b))):
        ai = a[i] if i < len(a) else field.zero
        bi = b[i] if i < len(b) else field.zero
        out.append(ai - bi)
    return _utrim(out)


def _umul(a, b, field: Field):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return _utrim(out)


def _udivmod(a, b, field: Field):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    r = list(a)
    if len(a) < len(b):
        return [], _utrim(r)
    q = [field.zero] * (len(a) - len(b) + 1)
    inv = b[-1].inverse()
    for shift in range(len(a) - len(b), -1, -1):
        lead = r[len(b) - 1 + shift]
        if lead:
            f = lead * inv
            q[shift] = f
            for i in range(len(b)):
                r[shift + i] = r[shift + i] - f * b[i]
    del r[len(b) - 1 :]
    return _utrim(q), _utrim(r)


def _umonic(a, field: Field):
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _ugcd(a, b, field: Field):
    a, b = list(a), list(b)
    while b:
        _, r = _udivmod(a, b, field)
        a, b = b, r
    return _umonic(a, field)


def _upowmod(a, e: int, m, field: Field):
    result = [field.one]
    base = _udivmod(a, m, field)[1]
    while e:
        if e & 1:
            result = _udivmod(_umul(result, base, field), m, field)[1]
        base = _udivmod(_umul(base, base, field), m, field)[1]
        e >>= 1
    return result


def _uderiv(a, field: Field):
    out = []
    for i in range(1, len(a)):
        out.append(field.element(i) * a[i])
    return _utrim(out)


def _upth_root(a, field: Field):
    """Inverse of v -> v(x^p) with p-th-rooted coefficients (F_q is perfect)."""
    p = field.p
    out = []
    for i in range(0, len(a), p):
        out.append(a[i].pth_root())
    return _utrim(out)


# ---------------------------------------------------------------------------
# projective points and Moebius transformations
# ---------------------------------------------------------------------------

class ProjPoint:
    """A point of P^1 in the unique normalized form [x:1] or [1:0]."""

    __slots__ = ("owner", "x", "y")

    def __init__(self, x: FieldElement, y: FieldElement):
        if x.owner != y.owner:
            raise FieldError("coordinates from different fields")
        self.owner = x.owner
        if y:
            inv = y.inverse()
            self.x, self.y = x * inv, self.owner.one
        elif x:
            self.x, self.y = self.owner.one, self.owner.zero
        else:
            raise BinFormError("[0:0] is not a point of P^1")

    @property
    def at_infinity(self) -> bool:
        return not self.y

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.owner == other.owner
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self):
        return hash((self.owner.p, self.owner.k, self.x.code, self.y.code))

    def __repr__(self):
        return f"[{self.x}:{self.y}]"


def all_points(field: Field) -> list[ProjPoint]:
    """The q + 1 points of P^1(F_q) in canonical order, infinity last."""
    pts = [ProjPoint(x, field.one) for x in field.elements()]
    pts.append(ProjPoint(field.one, field.zero))
    return pts


class Moebius:
    """An element of PGL_2 stored as the coset representative with its first
    nonzero entry (scanning a, b, c, d) scaled to 1, so equality is
    representation equality."""

    __slots__ = ("owner", "a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        owner = a.owner
        det = a * d - b * c
        if not det:
            raise BinFormError("singular matrix does not define a Moebius map")
        for pivot in (a, b, c, d):
            if pivot:
                inv = pivot.inverse()
                break
        self.owner = owner
        self.a, self.b, self.c, self.d = a * inv, b * inv, c * inv, d * inv

    @classmethod
    def identity(cls, field: Field) -> "Moebius":
        return cls(field.one, field.zero, field.zero, field.one)

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return Moebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, pt: ProjPoint) -> ProjPoint:
        return ProjPoint(
            self.a * pt.x + self.b * pt.y, self.c * pt.x + self.d * pt.y
        )

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return (
            isinstance(other, Moebius)
            and self.owner == other.owner
            and self.entries() == other.entries()
        )

    def __hash__(self):
        return hash(tuple(e.code for e in self.entries()))

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def all_moebius(field: Field) -> list[Moebius]:
    """All q^3 - q elements of PGL_2(F_q), in canonical order."""
    out = []
    one, zero = field.one, field.zero
    els = list(field.elements())
    for b in els:
        for c in els:
            for d in els:
                if d != b * c:
                    out.append(Moebius(one, b, c, d))
    for c in els:
        if c:
            for d in els:
                out.append(Moebius(zero, one, c, d))
    return out


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

class BinForm:
    __slots__ = ("owner", "degree", "coeffs")

    def __init__(self, owner: Field, degree: int, coeffs):
        if degree < 0:
            raise BinFormError("negative degree")
        coeffs = tuple(owner.element(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise BinFormError(
                f"degree-{degree} form needs {degree + 1} coefficients, got {len(coeffs)}"
            )
        self.owner = owner
        self.degree = degree
        self.coeffs = coeffs

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field: Field, degree: int) -> "BinForm":
        return cls(field, degree, (0,) * (degree + 1))

    @classmethod
    def one(cls, field: Field) -> "BinForm":
        return cls(field, 0, (1,))

    @classmethod
    def variable_x(cls, field: Field) -> "BinForm":
        return cls(field, 1, (0, 1))

    @classmethod
    def variable_y(cls, field: Field) -> "BinForm":
        return cls(field, 1, (1, 0))

    @classmethod
    def from_x_poly(cls, field: Field, xcoeffs, degree: int) -> "BinForm":
        """Homogenize a univariate polynomial to declared degree `degree`."""
        xcoeffs = list(xcoeffs)
        if len(xcoeffs) - 1 > degree:
            raise BinFormError("univariate degree exceeds declared degree")
        pad = [field.zero] * (degree + 1 - len(xcoeffs))
        return cls(field, degree, tuple(xcoeffs) + tuple(pad))

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_constant(self) -> bool:
        """True when the divisor is empty (degree-0 form or zero form aside)."""
        return self.degree == 0

    def x_poly(self) -> list[FieldElement]:
        """Dehomogenization f(x, 1), trimmed, low -> high."""
        return _utrim(list(self.coeffs))

    @property
    def y_multiplicity(self) -> int:
        if self.is_zero:
            raise BinFormError("zero form has no y-multiplicity")
        return self.degree - (len(self.x_poly()) - 1)

    def unit(self) -> FieldElement:
        """Highest nonzero X-power coefficient (the monic scaling unit)."""
        if self.is_zero:
            raise BinFormError("zero form has no unit")
        return self.x_poly()[-1]

    def monic(self) -> "BinForm":
        if self.is_zero:
            return self
        inv = self.unit().inverse()
        return BinForm(self.owner, self.degree, tuple(c * inv for c in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, BinForm)
            and self.owner == other.owner
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree,) + tuple(c.code for c in self.coeffs))

    def is_proportional_to(self, other: "BinForm"):
        """Return the scalar c with self == c * other, or None."""
        if self.degree != other.degree or self.owner != other.owner:
            return None
        if other.is_zero:
            return self.owner.one if self.is_zero else None
        if self.is_zero:
            return None
        c = self.unit() / other.unit()
        return c if self == other.scale(c) else None

    def __repr__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            xpart = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            j = self.degree - i
            ypart = "" if j == 0 else ("Y" if j == 1 else f"Y^{j}")
            mono = (xpart + ypart) or "1"
            terms.append(mono if (c == self.owner.one and mono != "1") else f"{c}*{mono}")
        return " + ".join(terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "BinForm"):
        if self.owner != other.owner:
            raise FieldError("field mismatch between forms")

    def __add__(self, other: "BinForm") -> "BinForm":
        self._check(other)
        if self.degree != other.degree:
            raise BinFormError("cannot add forms of different declared degree")
        return BinForm(
            self.owner,
            self.degree,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "BinForm") -> "BinForm":
        self._check(other)
        if self.degree != other.degree:
            raise BinFormError("cannot subtract forms of different declared degree")
        return BinForm(
            self.owner,
            self.degree,
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __mul__(self, other: "BinForm") -> "BinForm":
        self._check(other)
        d = self.degree + other.degree
        out = [self.owner.zero] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return BinForm(self.owner, d, tuple(out))

    def scale(self, c: FieldElement) -> "BinForm":
        return BinForm(self.owner, self.degree, tuple(c * a for a in self.coeffs))

    def __pow__(self, e: int) -> "BinForm":
        result = BinForm.one(self.owner)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- evaluation, derivatives, substitution ------------------------------

    def evaluate(self, pt: ProjPoint) -> FieldElement:
        if pt.owner != self.owner:
            raise FieldError("point and form over different fields")
        if pt.at_infinity:
            return self.coeffs[self.degree]
        acc = self.owner.zero
        for c in reversed(self.coeffs):
            acc = acc * pt.x + c
        return acc

    def partial_x(self) -> "BinForm":
        if self.degree == 0:
            return BinForm.zero(self.owner, 0)
        out = [
            self.owner.element(i + 1) * self.coeffs[i + 1]
            for i in range(self.degree)
        ]
        return BinForm(self.owner, self.degree - 1, tuple(out))

    def partial_y(self) -> "BinForm":
        if self.degree == 0:
            return BinForm.zero(self.owner, 0)
        out = [
            self.owner.element(self.degree - i) * self.coeffs[i]
            for i in range(self.degree)
        ]
        return BinForm(self.owner, self.degree - 1, tuple(out))

    def substitute(self, m: Moebius) -> "BinForm":
        """f(aX + bY, cX + dY); degree preserved, roots move by m^(-1)."""
        if m.owner != self.owner:
            raise FieldError("Moebius map over a different field")
        return self.linear_substitute(m.a, m.b, m.c, m.d)

    def linear_substitute(self, a, b, c, d) -> "BinForm":
        """f(aX + bY, cX + dY) for an arbitrary (not PGL_2-normalized)
        coefficient matrix; used by the GL_2 orbit machinery."""
        F = self.owner
        deg = self.degree
        u = BinForm(F, 1, (b, a))
        v = BinForm(F, 1, (d, c))
        vpow = [BinForm.one(F)]
        for _ in range(deg):
            vpow.append(vpow[-1] * v)
        acc = BinForm(F, 0, (self.coeffs[deg],))
        for i in range(deg - 1, -1, -1):
            acc = acc * u + vpow[deg - i].scale(self.coeffs[i])
        return acc

    def order_at(self, pt: ProjPoint):
        """Multiplicity of pt as a root; INFINITY exactly for the zero form."""
        if self.is_zero:
            return INFINITY
        if pt.at_infinity:
            return self.y_multiplicity
        u = self.x_poly()
        F = self.owner
        ord_ = 0
        while u:
            # synthetic division by (x - x0)
            acc = F.zero
            rem = F.zero
            q = [F.zero] * (len(u) - 1)
            for i in range(len(u) - 1, -1, -1):
                acc = acc * pt.x + u[i]
                if i > 0:
                    q[i - 1] = acc
                else:
                    rem = acc
            if rem:
                break
            ord_ += 1
            u = _utrim(q)
        return ord_


def parse_form(text: str, field: Field) -> BinForm:
    """Parse 'c_0,c_1,...,c_d' (X-ascending) into a form of degree d."""
    parts = [p.strip() for p in text.split(",")]
    return BinForm(field, len(parts) - 1, tuple(int(p) for p in parts))


# ---------------------------------------------------------------------------
# gcd / resultant
# ---------------------------------------------------------------------------

def gcd(f: BinForm, g: BinForm) -> BinForm:
    """Monic gcd as a divisor on P^1, including the factor at infinity.

    The declared degree of the output is its actual divisor degree;
    gcd(0, g) is the normalized g.
    """
    if f.owner != g.owner:
        raise FieldError("field mismatch in gcd")
    if f.is_zero and g.is_zero:
        raise BinFormError("gcd(0, 0) is undefined")
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    field = f.owner
    ymult = min(f.y_multiplicity, g.y_multiplicity)
    u = _ugcd(f.x_poly(), g.x_poly(), field)
    core = BinForm.from_x_poly(field, u, len(u) - 1)
    if ymult:
        core = core * BinForm.variable_y(field) ** ymult
    return core.monic()


def resultant(f: BinForm, g: BinForm) -> FieldElement:
    """Sylvester determinant on the declared degrees (d_f, d_g >= 1)."""
    if f.owner != g.owner:
        raise FieldError("field mismatch in resultant")
    if f.degree < 1 or g.degree < 1:
        raise BinFormError("resultant needs declared degrees >= 1")
    field = f.owner
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    frow = [f.coeffs[m - i] for i in range(m + 1)]
    grow = [g.coeffs[n - i] for i in range(n + 1)]
    for s in range(n):
        rows.append([field.zero] * s + frow + [field.zero] * (n - 1 - s))
    for s in range(m):
        rows.append([field.zero] * s + grow + [field.zero] * (m - 1 - s))
    # Gaussian elimination, tracking the determinant
    det = field.one
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            return field.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                for c in range(col, size):
                    rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


# ---------------------------------------------------------------------------
# squarefree decomposition / factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """unit * prod(form^mult); factors are monic, pairwise distinct."""

    unit: FieldElement
    factors: tuple  # of (BinForm, int)

    def expand(self, degree: int | None = None) -> BinForm:
        field = self.unit.owner
        acc = BinForm.one(field).scale(self.unit)
        for g, m in self.factors:
            acc = acc * g**m
        if degree is not None and acc.degree < degree:
            raise BinFormError("factorization does not reach declared degree")
        return acc

    def total_degree(self) -> int:
        return sum(g.degree * m for g, m in self.factors)


def _usquarefree(u, field: Field) -> dict[int, list]:
    """mult -> monic squarefree part, for monic univariate u (deg >= 1)."""
    out: dict[int, list] = {}
    if len(u) == 1:
        return out
    der = _uderiv(u, field)
    if not der:
        for m, g in _usquarefree(_upth_root(u, field), field).items():
            out[m * field.p] = g
        return out
    t = _ugcd(u, der, field)
    v = _udivmod(u, t, field)[0]
    k = 0
    while len(v) > 1:
        k += 1
        w = _ugcd(t, v, field)
        a = _udivmod(v, w, field)[0]
        if len(a) > 1:
            out[k] = a
        v = w
        t = _udivmod(t, w, field)[0]
    if len(t) > 1:
        # residual t is a p-th power: all its factors have p | multiplicity
        for m, g in _usquarefree(_upth_root(t, field), field).items():
            mp = m * field.p
            out[mp] = _umul(out[mp], g, field) if mp in out else g
    return out


def squarefree_decomposition(f: BinForm) -> Factorization:
    """f = unit * prod g_j^(m_j) with the g_j squarefree, pairwise coprime,
    grouped by multiplicity (the factor Y joins the group of its own
    multiplicity).  Exact in characteristic p via p-th roots of coefficients.
    """
    if f.is_zero:
        raise BinFormError("zero form has no squarefree decomposition")
    field = f.owner
    unit = f.unit()
    groups = {
        m: BinForm.from_x_poly(field, g, len(g) - 1)
        for m, g in _usquarefree(_umonic(f.x_poly(), field), field).items()
    }
    ym = f.y_multiplicity
    if ym:
        y = BinForm.variable_y(field)
        groups[ym] = (groups[ym] * y).monic() if ym in groups else y
    factors = tuple(sorted(groups.items()))
    return Factorization(unit, tuple((g, m) for m, g in factors))


def _udistinct_degree(u, field: Field):
    """(monic squarefree u) -> list of (product of irreducibles, degree)."""
    q = field.order
    out = []
    f = list(u)
    x = [field.zero, field.one]
    h = list(x)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _upowmod(h, q, f, field)
        g = _ugcd(_usub(h, x, field), f, field)
        if len(g) > 1:
            out.append((g, d))
            f = _udivmod(f, g, field)[0]
            h = _udivmod(h, f, field)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _uequal_degree(g, d: int, field: Field, rng: random.Random):
    """Split a product of distinct irreducibles of degree d (Cantor-Zassenhaus)."""
    if len(g) - 1 == d:
        return [g]
    q = field.order
    while True:
        h = [field.from_code(rng.randrange(q)) for _ in range(len(g) - 1)]
        h = _utrim(h)
        if len(h) <= 1:
            continue
        if field.p == 2:
            t = [field.zero]
            acc = _udivmod(h, g, field)[1]
            for _ in range(d * field.k):
                t = _uadd(t, acc)
                acc = _udivmod(_umul(acc, acc, field), g, field)[1]
            s = _ugcd(t, g, field)
        else:
            t = _upowmod(h, (q**d - 1) // 2, g, field)
            t = _usub(t, [field.one], field)
            s = _ugcd(t, g, field)
        if 0 < len(s) - 1 < len(g) - 1:
            rest = _udivmod(g, s, field)[0]
            return _uequal_degree(s, d, field, rng) + _uequal_degree(rest, d, field, rng)


def factor(f: BinForm, seed: int = DEFAULT_FACTOR_SEED) -> Factorization:
    """Complete factorization into monic irreducibles over the owner field."""
    if f.is_zero:
        raise BinFormError("zero form has no factorization")
    field = f.owner
    rng = random.Random(seed)
    sqfree = _usquarefree(_umonic(f.x_poly(), field), field)
    irreducibles: dict = {}
    for mult, part in sqfree.items():
        for prod_, d in _udistinct_degree(part, field):
            for irr in _uequal_degree(prod_, d, field, rng):
                key = BinForm.from_x_poly(field, irr, len(irr) - 1)
                irreducibles[key] = irreducibles.get(key, 0) + mult
    ym = f.y_multiplicity
    if ym:
        irreducibles[BinForm.variable_y(field)] = ym
    ordered = sorted(
        irreducibles.items(),
        key=lambda kv: (kv[0].degree, tuple(c.code for c in kv[0].coeffs)),
    )
    return Factorization(f.unit(), tuple(ordered))


def distinct_factor_degrees(f: BinForm, min_mult: int = 1) -> list[int]:
    """Degrees of the distinct irreducible divisors of f with multiplicity
    >= min_mult (Y included), via distinct-degree factorization of the
    radical; no equal-degree splitting is needed."""
    if f.is_zero:
        raise BinFormError("zero form has no factor degrees")
    field = f.owner
    rad = [field.one]
    for m, g in _usquarefree(_umonic(f.x_poly(), field), field).items():
        if m >= min_mult:
            rad = _umul(rad, g, field)
    out = []
    if len(rad) > 1:
        for prod_, d in _udistinct_degree(rad, field):
            out.extend([d] * ((len(prod_) - 1) // d))
    if f.y_multiplicity >= min_mult:
        out.append(1)
    return sorted(out)


def radical_min_mult(f: BinForm, m: int) -> BinForm:
    """Squarefree product of the irreducible factors of f with multiplicity
    >= m (the constant form 1 when there are none)."""
    if f.is_zero:
        raise BinFormError("zero form: every point qualifies (handle in caller)")
    if m < 1:
        raise BinFormError("multiplicity threshold must be >= 1")
    acc = BinForm.one(f.owner)
    for g, mult in squarefree_decomposition(f).factors:
        if mult >= m:
            acc = acc * g
    return acc.monic()
