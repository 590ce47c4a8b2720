"""Direct point-enumeration oracles over P^1(F_{q^k}).

The library decides geometric conditions (common zeros, vanishing-order
thresholds) by factor-multiplicity algebra over F_q.  These oracles decide
the same conditions the slow honest way, by enumerating the points of
P^1(F_{q^k}) for k up to a caller-supplied bound, and exist purely to
cross-check the algebraic route in the verification suite.

Restricted to prime base fields; elements of F_{p^k} are integer-coded
(base-p digit vectors) and form evaluation is vectorized with numpy through
discrete-log tables.  The modulus of F_{p^k} is the same deterministic
choice as in ffield, so codes agree with Field.from_code.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .binforms import BinForm
from .ffield import smallest_irreducible
from .homstack import HomTuple


def _prime_factors(n: int) -> list[int]:
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


class ExtField:
    """Integer-coded F_{p^k} with numpy-friendly arithmetic tables."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.q = p**k
        self.modulus = smallest_irreducible(p, k)
        codes = np.arange(self.q, dtype=np.int64)
        digits = np.empty((self.q, k), dtype=np.int64)
        tmp = codes.copy()
        for i in range(k):
            digits[:, i] = tmp % p
            tmp //= p
        self.digits = digits
        self.powers = p ** np.arange(k, dtype=np.int64)
        self._build_log_tables()

    # -- scalar arithmetic on integer codes --------------------------------

    def _decode(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def _encode(self, coeffs) -> int:
        s = 0
        for c in reversed(coeffs):
            s = s * self.p + c
        return s

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p, k = self.p, self.k
        da, db = self._decode(a), self._decode(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce against the monic modulus
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * self.modulus[j]) % p
        return self._encode(prod[:k])

    def add(self, a: int, b: int) -> int:
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def _build_log_tables(self):
        order = self.q - 1
        primes = _prime_factors(order)
        gen = None
        for cand in range(2, self.q):
            if all(self.pow(cand, order // ell) != 1 for ell in primes):
                gen = cand
                break
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        acc = 1
        for i in range(order):
            exp[i] = acc
            log[acc] = i
            acc = self.mul(acc, gen)
        self.exp_table = exp
        self.log_table = log

    # -- vectorized arithmetic ---------------------------------------------

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        nz = (a != 0) & (b != 0)
        out = np.zeros_like(a)
        idx = (self.log_table[a[nz]] + self.log_table[b[nz]]) % (self.q - 1)
        out[nz] = self.exp_table[idx]
        return out

    def add_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (self.digits[a] + self.digits[b]) % self.p @ self.powers

    def eval_poly_all(self, coeffs: list[int]) -> np.ndarray:
        """Values of sum c_i x^i at every x in F_{p^k} (c_i in F_p)."""
        xs = np.arange(self.q, dtype=np.int64)
        vals = np.full(self.q, coeffs[-1], dtype=np.int64)
        for c in reversed(coeffs[:-1]):
            vals = self.add_vec(
                self.mul_vec(vals, xs), np.full(self.q, c, dtype=np.int64)
            )
        return vals

    def order_at_root(self, coeffs: list[int], x0: int) -> int:
        """Multiplicity of x0 as a root, by repeated synthetic division."""
        cur = [c % self.q for c in coeffs]
        while cur and cur[-1] == 0:
            cur.pop()
        mult = 0
        while cur:
            acc = 0
            quot = [0] * (len(cur) - 1)
            for i in range(len(cur) - 1, -1, -1):
                acc = self.add(self.mul(acc, x0), cur[i])
                if i > 0:
                    quot[i - 1] = acc
            if acc != 0:
                break
            mult += 1
            cur = quot
            while cur and cur[-1] == 0:
                cur.pop()
        return mult


@lru_cache(maxsize=32)
def ext_field(p: int, k: int) -> ExtField:
    return ExtField(p, k)


def _int_coeffs(f: BinForm) -> list[int]:
    if f.owner.k != 1:
        raise ValueError("enumeration oracles support prime base fields only")
    return [c.rep for c in f.coeffs]


def common_zero_by_enumeration(f: BinForm, g: BinForm, kmax: int) -> bool:
    """True iff f and g share a root in P^1(F_{q^k}) for some k <= kmax."""
    cf, cg = _int_coeffs(f), _int_coeffs(g)
    if f.is_zero or g.is_zero:
        other = cg if f.is_zero else cf
        if not any(other):
            raise ValueError("common zeros of (0, 0) are everything")
        # zeros of the nonzero form: any root in range, or infinity
        if other[-1] == 0:
            return True
        p = f.owner.p
        for k in range(1, kmax + 1):
            if bool((ext_field(p, k).eval_poly_all(other) == 0).any()):
                return True
        return False
    if cf[-1] == 0 and cg[-1] == 0:
        return True  # common zero at [1:0]
    p = f.owner.p
    for k in range(1, kmax + 1):
        ef = ext_field(p, k)
        fv = ef.eval_poly_all(cf)
        gv = ef.eval_poly_all(cg)
        if bool(((fv == 0) & (gv == 0)).any()):
            return True
    return False


def threshold_point_exists(
    forms: list[BinForm], thresholds: list[int], kmax: int
) -> bool:
    """True iff some point of P^1(F_{q^k}), k <= kmax, has
    ord(forms[i]) >= thresholds[i] for every i (zero forms pass anywhere)."""
    live = [
        (_int_coeffs(f), m) for f, m in zip(forms, thresholds) if not f.is_zero
    ]
    if not live:
        return True
    p = forms[0].owner.p
    d_declared = [f.degree for f in forms if not f.is_zero]
    # point at infinity: ord = declared degree - x-degree
    if all(
        (deg - (len_trimmed(c) - 1)) >= m
        for (c, m), deg in zip(live, d_declared)
    ):
        return True
    for k in range(1, kmax + 1):
        ef = ext_field(p, k)
        vanish = None
        for c, _ in live:
            v = ef.eval_poly_all(c) == 0
            vanish = v if vanish is None else (vanish & v)
            if not vanish.any():
                break
        if vanish is None or not vanish.any():
            continue
        for x0 in np.nonzero(vanish)[0]:
            if all(ef.order_at_root(c, int(x0)) >= m for c, m in live):
                return True
    return False


def len_trimmed(coeffs: list[int]) -> int:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return max(n, 1)


def git_failure_by_enumeration(t: HomTuple, strict: bool) -> bool:
    """Direct-search version of the (semi)stability failure locus:
    a point with ord(u_i) > n*l_i/2 (strict) or >= n*l_i/2 for all i."""
    thresholds = []
    for w in t.lam:
        half = t.n * w / 2
        thresholds.append(int(half) + 1 if strict else -(-t.n * w // 2))
    kmax = t.n * max(t.lam.weights)
    return threshold_point_exists(list(t.forms), thresholds, kmax)
