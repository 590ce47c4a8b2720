"""Exact arithmetic in F_p and F_{p^k} with deterministic construction.

Fields are constructed from (p, k) alone: for k > 1 the modulus is the monic
irreducible polynomial of degree k over F_p whose non-leading coefficient
vector (c_0, ..., c_{k-1}) has the smallest integer code sum(c_i * p^i).
This makes extension-field reports reproducible across runs and machines.

Elements are immutable.  The canonical enumeration order is by the same
integer code, so it always starts 0, 1, ... and is identical on every run.
Equality is representation equality; every element is stored fully reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

ENUMERATION_BOUND = 2**28  # guard against accidentally enumerating huge fields


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % d == 0:
            return n == d
    # deterministic Miller-Rabin, valid for n < 3.3 * 10^24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- modular polynomial helpers on little-endian int tuples ------------------

def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    # m monic
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1] % p
        if lead:
            shift = len(r) - 1 - dm
            for i in range(dm):
                r[shift + i] = (r[shift + i] - lead * m[i]) % p
        r.pop()
    return _poly_trim(r)


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a, b = tuple(x % p for x in a), tuple(x % p for x in b)
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        monic_b = tuple(x * inv % p for x in b)
        a, b = b, _poly_mod(a, monic_b, p)
    return a


def _poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % p
    return _poly_trim(out)


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """Rabin test for a monic polynomial of degree >= 1 over F_p."""
    k = len(m) - 1
    x = (0, 1)
    xq = _poly_powmod(x, p**k, m, p)
    if _poly_sub(xq, x, p):
        return False
    for ell in _prime_divisors(k):
        xr = _poly_powmod(x, p ** (k // ell), m, p)
        g = _poly_gcd(_poly_sub(xr, x, p), m, p)
        if len(g) - 1 != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over F_p with smallest coefficient code.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are scanned in increasing
    order of the integer code sum(c_i p^i).
    """
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        c, tmp = [], code
        for _ in range(k):
            tmp, r = divmod(tmp, p)
            c.append(r)
        m = tuple(c) + (1,)
        if _is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


@dataclass(frozen=True)
class Field:
    """The finite field F_{p^k}, with a deterministic modulus for k > 1."""

    p: int
    k: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.k < 1:
            raise FieldError("extension degree must be >= 1")
        object.__setattr__(self, "_modulus", smallest_irreducible(self.p, self.k))

    @property
    def modulus(self) -> tuple[int, ...]:
        """Little-endian coefficients of the monic modulus (x for k = 1)."""
        return self._modulus  # type: ignore[attr-defined]

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def char(self) -> int:
        return self.p

    def __repr__(self):
        return f"F_{self.p}" if self.k == 1 else f"F_{self.p}^{self.k}"

    # -- element construction -------------------------------------------

    def element(self, value) -> "FieldElement":
        """Coerce an integer (its image under Z -> F_q) or a coefficient
        sequence; use from_code for the enumeration index instead."""
        if isinstance(value, FieldElement):
            if value.owner != self:
                raise FieldError(f"element of {value.owner} used in {self}")
            return value
        if isinstance(value, int):
            if self.k == 1:
                return FieldElement(self, value % self.p)
            return self.from_code(value % self.p)
        coeffs = tuple(int(v) % self.p for v in value)
        if len(coeffs) > self.k:
            raise FieldError("coefficient vector longer than extension degree")
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return FieldElement(self, coeffs if self.k > 1 else coeffs[0])

    def from_code(self, code: int) -> "FieldElement":
        """Element with canonical index `code` in the enumeration order."""
        if not 0 <= code < self.order:
            raise FieldError("element code out of range")
        if self.k == 1:
            return FieldElement(self, code)
        c, tmp = [], code
        for _ in range(self.k):
            tmp, r = divmod(tmp, self.p)
            c.append(r)
        return FieldElement(self, tuple(c))

    @property
    def zero(self) -> "FieldElement":
        return self.from_code(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_code(1)

    def elements(self) -> Iterator["FieldElement"]:
        """All p^k elements in canonical order, starting 0, 1."""
        if self.order > ENUMERATION_BOUND:
            raise FieldError(
                f"field of order {self.order} exceeds the enumeration bound"
            )
        for code in range(self.order):
            yield self.from_code(code)

    def units(self) -> Iterator["FieldElement"]:
        els = self.elements()
        next(els)
        return els


class FieldElement:
    """An element of a Field; prime fields store an int, extensions a tuple."""

    __slots__ = ("owner", "rep")

    def __init__(self, owner: Field, rep):
        self.owner = owner
        self.rep = rep

    @property
    def code(self) -> int:
        if self.owner.k == 1:
            return self.rep
        s = 0
        for c in reversed(self.rep):
            s = s * self.owner.p + c
        return s

    def __repr__(self):
        return f"{self.rep}"

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.owner == other.owner
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.owner.p, self.owner.k, self.rep))

    def __bool__(self):
        return self.rep != 0 if self.owner.k == 1 else any(self.rep)

    def __add__(self, other):
        self._check(other)
        F = self.owner
        if F.k == 1:
            return FieldElement(F, (self.rep + other.rep) % F.p)
        return FieldElement(
            F, tuple((a + b) % F.p for a, b in zip(self.rep, other.rep))
        )

    def __neg__(self):
        F = self.owner
        if F.k == 1:
            return FieldElement(F, -self.rep % F.p)
        return FieldElement(F, tuple(-a % F.p for a in self.rep))

    def __sub__(self, other):
        self._check(other)
        F = self.owner
        if F.k == 1:
            return FieldElement(F, (self.rep - other.rep) % F.p)
        return FieldElement(
            F, tuple((a - b) % F.p for a, b in zip(self.rep, other.rep))
        )

    def __mul__(self, other):
        self._check(other)
        F = self.owner
        if F.k == 1:
            return FieldElement(F, self.rep * other.rep % F.p)
        prod = _poly_mod(_poly_mul(self.rep, other.rep, F.p), F.modulus, F.p)
        return FieldElement(F, prod + (0,) * (F.k - len(prod)))

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.owner.order - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        F = self.owner
        if e < 0:
            return self.inverse() ** (-e)
        if F.k == 1:
            return FieldElement(F, pow(self.rep, e, F.p))
        r = _poly_powmod(self.rep, e, F.modulus, F.p) if e else (1,)
        return FieldElement(F, r + (0,) * (F.k - len(r)))

    def frobenius(self) -> "FieldElement":
        return self**self.owner.p

    def pth_root(self) -> "FieldElement":
        """The unique p-th root (F_q is perfect): x^(p^(k-1))."""
        return self ** (self.owner.p ** (self.owner.k - 1))

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.owner != self.owner:
            raise FieldError("field mismatch in element arithmetic")


def parse_field(text: str) -> Field:
    """Parse 'p' or 'p^k' into a Field (used by the CLI form syntax)."""
    text = text.strip()
    if "^" in text:
        ps, ks = text.split("^", 1)
        return Field(int(ps), int(ks))
    return Field(int(text))
