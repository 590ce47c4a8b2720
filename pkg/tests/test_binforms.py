import math
import random

import pytest

from weierstats.binforms import (
    BinForm,
    BinFormError,
    INFINITY,
    Moebius,
    ProjPoint,
    all_moebius,
    all_points,
    distinct_factor_degrees,
    factor,
    gcd,
    parse_form,
    radical_min_mult,
    resultant,
    squarefree_decomposition,
)
from weierstats.ffield import Field
from weierstats.oracles import common_zero_by_enumeration

F5 = Field(5)
F7 = Field(7)
F25 = Field(5, 2)

X = BinForm.variable_x
Y = BinForm.variable_y


def rand_form(rng, field, degree):
    return BinForm(
        field,
        degree,
        tuple(field.from_code(rng.randrange(field.order)) for _ in range(degree + 1)),
    )


def rand_moebius(rng, field):
    while True:
        a, b, c, d = (field.from_code(rng.randrange(field.order)) for _ in range(4))
        if a * d != b * c:
            return Moebius(a, b, c, d)


# -- evaluation ---------------------------------------------------------------

def test_eval_examples():
    f = X(F5) ** 2 + Y(F5) ** 2
    assert not f.evaluate(ProjPoint(F5.element(1), F5.element(2)))
    assert not X(F5).evaluate(ProjPoint(F5.zero, F5.one))
    assert not (Y(F5) ** 3).evaluate(ProjPoint(F5.one, F5.zero))


def test_substitute_examples():
    swap = Moebius(F5.zero, F5.one, F5.one, F5.zero)
    assert X(F5).substitute(swap) == Y(F5)
    f = parse_form("1,2,0,3", F5)
    ident = Moebius.identity(F5)
    assert f.substitute(ident) == f
    lam = F5.element(3)
    diag = Moebius(lam, F5.zero, F5.zero, F5.one)
    xy = X(F5) * Y(F5)
    assert xy.substitute(diag).is_proportional_to(xy) is not None


def test_substitute_moves_roots_by_inverse():
    rng = random.Random(5)
    for _ in range(100):
        f = rand_form(rng, F5, 4)
        if f.is_zero:
            continue
        g = rand_moebius(rng, F5)
        fg = f.substitute(g)
        for pt in all_points(F5):
            assert bool(fg.evaluate(pt)) == bool(f.evaluate(g.apply(pt)))


# -- gcd / resultant -----------------------------------------------------------

def test_gcd_examples():
    assert gcd(X(F5) ** 2 * Y(F5), X(F5) * Y(F5) ** 2) == X(F5) * Y(F5)
    assert gcd(X(F5) ** 4, Y(F5) ** 6).is_constant
    f = X(F5) * Y(F5) ** 5
    assert gcd(BinForm.zero(F5, 6), f) == f.monic()
    with pytest.raises(BinFormError):
        gcd(BinForm.zero(F5, 2), BinForm.zero(F5, 3))


def test_resultant_examples():
    assert resultant(X(F5), Y(F5)) == F5.one
    assert not resultant(X(F5), X(F5))
    # 2x2 coefficient determinant for two linear forms
    f = parse_form("2,3", F7)  # 3X + 2Y
    g = parse_form("1,4", F7)  # 4X + 1Y
    det = F7.element(3 * 1 - 2 * 4)
    assert resultant(f, g) == det


def test_resultant_iff_gcd_nonconstant_1000_random_pairs():
    for field in (F5, F7):
        rng = random.Random(field.p)
        for _ in range(1000):
            f = rand_form(rng, field, rng.choice((1, 2, 3, 4)))
            g = rand_form(rng, field, rng.choice((1, 2, 3, 4, 5, 6)))
            if f.is_zero or g.is_zero:
                continue
            assert bool(resultant(f, g)) == gcd(f, g).is_constant


def test_degree_drop_shares_infinity():
    # both forms divisible by Y: resultant on declared degrees vanishes
    f = BinForm(F5, 2, (1, 2, 0))
    g = BinForm(F5, 3, (3, 1, 0, 0))
    assert f.y_multiplicity >= 1 and g.y_multiplicity >= 1
    assert not resultant(f, g)


def test_gcd_substitution_equivariance():
    rng = random.Random(11)
    for _ in range(300):
        f, g = rand_form(rng, F5, 4), rand_form(rng, F5, 6)
        if f.is_zero or g.is_zero:
            continue
        h = rand_moebius(rng, F5)
        lhs = gcd(f.substitute(h), g.substitute(h))
        rhs = gcd(f, g).substitute(h).monic()
        assert lhs == rhs


def test_common_zero_oracle_equivalence_small():
    rng = random.Random(23)
    for field in (F5, F7):
        for _ in range(150):
            df, dg = rng.randrange(1, 7), rng.randrange(1, 7)
            f, g = rand_form(rng, field, df), rand_form(rng, field, dg)
            if f.is_zero or g.is_zero:
                continue
            algebraic = not gcd(f, g).is_constant
            assert algebraic == common_zero_by_enumeration(f, g, max(df, dg))


# -- orders ---------------------------------------------------------------

def test_ord_examples():
    f = X(F5) ** 2 * Y(F5) ** 3
    assert f.order_at(ProjPoint(F5.zero, F5.one)) == 2
    assert f.order_at(ProjPoint(F5.one, F5.zero)) == 3
    assert BinForm.zero(F5, 4).order_at(ProjPoint(F5.one, F5.one)) == INFINITY


def test_ord_matches_factor_multiplicity():
    rng = random.Random(2)
    for _ in range(80):
        f = rand_form(rng, F5, 6)
        if f.is_zero:
            continue
        fact = factor(f)
        for pt in all_points(F5):
            # the monic linear form vanishing at pt
            if pt.at_infinity:
                lin = Y(F5)
            else:
                lin = BinForm(F5, 1, (-pt.x, F5.one))
            mult = dict(fact.factors).get(lin.monic(), 0)
            assert f.order_at(pt) == mult


# -- squarefree / factorization -------------------------------------------

def test_squarefree_frobenius_power():
    f = (X(F5) - Y(F5)) ** 5
    fact = squarefree_decomposition(f)
    assert [(g, m) for g, m in fact.factors] == [((X(F5) - Y(F5)).monic(), 5)]


def test_squarefree_grouping():
    f = X(F5) ** 2 * Y(F5) ** 3 * (X(F5) - Y(F5))
    groups = dict((m, g) for g, m in squarefree_decomposition(f).factors)
    assert groups[2] == X(F5)
    assert groups[3] == Y(F5)
    assert groups[1] == (X(F5) - Y(F5)).monic()


def test_squarefree_of_squarefree():
    f = X(F5) * (X(F5) - Y(F5)) * (X(F5) + Y(F5))
    fact = squarefree_decomposition(f)
    assert fact.factors == ((f.monic(), 1),)


def test_factor_x6_minus_y6():
    f = X(F5) ** 6 - Y(F5) ** 6
    fact = factor(f)
    degrees = sorted(g.degree for g, m in fact.factors)
    assert degrees == [1, 1, 2, 2]
    assert all(m == 1 for _, m in fact.factors)
    assert fact.expand() == f
    # verify by brute division over F_25 root check: the quadratics have
    # no rational roots but split over F_25
    for g, _ in fact.factors:
        if g.degree == 2:
            assert all(g.evaluate(pt) for pt in all_points(F5))
            roots25 = [
                pt
                for pt in all_points(F25)
                if not BinForm(F25, 2, tuple(F25.element(c.code) for c in g.coeffs)).evaluate(pt)
            ]
            assert len(roots25) == 2


def test_factor_trivials():
    f = X(F7) ** 4
    fact = factor(f)
    assert fact.factors == ((X(F7), 4),)
    g = parse_form("2,0,1", F5)  # x^2 + 2, irreducible over F_5
    fact = factor(g)
    assert len(fact.factors) == 1 and fact.factors[0][1] == 1
    assert fact.factors[0][0] == g.monic()


def test_factor_reconstructs_and_degree_sum():
    rng = random.Random(31)
    for field in (F5, F7, F25):
        for _ in range(60):
            f = rand_form(rng, field, rng.randrange(1, 9))
            if f.is_zero:
                continue
            fact = factor(f)
            assert fact.expand() == f
            assert fact.total_degree() == f.degree
            assert sorted(distinct_factor_degrees(f)) == sorted(
                g.degree for g, _ in fact.factors
            )


def test_factor_seed_determinism():
    f = X(F7) ** 6 - Y(F7) ** 6
    assert factor(f, seed=1) == factor(f, seed=999) == factor(f)


def test_radical_examples():
    f = X(F5) ** 4 * Y(F5) ** 6 * (X(F5) - Y(F5))
    assert radical_min_mult(f, 4) == X(F5) * Y(F5)
    g = X(F5) ** 3 * Y(F5)
    assert radical_min_mult(g, 4).is_constant
    h = (X(F5) - Y(F5)) ** 5
    assert radical_min_mult(h, 5) == (X(F5) - Y(F5)).monic()


def test_partials():
    assert (X(F5) ** 2).partial_x() == X(F5).scale(F5.element(2))
    assert (X(F5) ** 5).partial_x().is_zero
    assert (X(F5) * Y(F5)).partial_y() == X(F5)


def test_zero_form_errors():
    z = BinForm.zero(F5, 3)
    with pytest.raises(BinFormError):
        squarefree_decomposition(z)
    with pytest.raises(BinFormError):
        factor(z)
    with pytest.raises(BinFormError):
        radical_min_mult(z, 2)


def test_moebius_group_structure():
    els = all_moebius(F5)
    assert len(els) == 5**3 - 5
    g = els[17]
    assert g @ g.inverse() == Moebius.identity(F5)


def test_parse_form_round_trip():
    f = parse_form("1,2,3", F5)
    assert f.degree == 2 and f.coeffs[2] == F5.element(3)
