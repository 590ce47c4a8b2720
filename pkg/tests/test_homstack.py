import math
import random

import pytest

from weierstats.binforms import BinForm, Moebius, factor
from weierstats.ffield import Field
from weierstats.homstack import (
    FatPointClass,
    GitClass,
    HomTuple,
    StabilizerVerdict,
    WeightVector,
    base_point_free,
    classify_stabilizer,
    constancy_witness,
    fat_point_class_of_form,
    git_classify,
    pgl2_stabilizer,
)
from weierstats.oracles import git_failure_by_enumeration

F5 = Field(5)
F7 = Field(7)
F13 = Field(13)
LAM46 = WeightVector.of(4, 6)

X = BinForm.variable_x
Y = BinForm.variable_y


def tuple46(field, a, b, n=1):
    return HomTuple(LAM46, n, (a, b))


def rand_tuple(rng, field, lam, n):
    while True:
        forms = tuple(
            BinForm(
                field,
                n * w,
                tuple(field.from_code(rng.randrange(field.order)) for _ in range(n * w + 1)),
            )
            for w in lam
        )
        if not all(f.is_zero for f in forms):
            return HomTuple(lam, n, forms)


def rand_moebius(rng, field):
    while True:
        a, b, c, d = (field.from_code(rng.randrange(field.order)) for _ in range(4))
        if a * d != b * c:
            return Moebius(a, b, c, d)


# -- base points ---------------------------------------------------------------

def test_base_point_free_examples():
    assert base_point_free(tuple46(F5, X(F5) ** 4, Y(F5) ** 6))
    assert not base_point_free(tuple46(F5, X(F5) ** 4, X(F5) ** 6))
    assert not base_point_free(
        tuple46(F5, BinForm.zero(F5, 4), X(F5) * Y(F5) ** 5)
    )


def test_weight_vector_validation():
    with pytest.raises(ValueError):
        WeightVector.of(4)
    with pytest.raises(ValueError):
        WeightVector.of(0, 6)
    assert LAM46.char_regime_bound(1) == 12
    assert WeightVector.of(1, 3).char_regime_bound(2) == 6


def test_hom_tuple_validation():
    with pytest.raises(ValueError):
        HomTuple(LAM46, 1, (BinForm.zero(F5, 4), BinForm.zero(F5, 6)))
    with pytest.raises(ValueError):
        HomTuple(LAM46, 1, (X(F5) ** 3, Y(F5) ** 6))  # degree 3 != 4


# -- constancy witnesses ---------------------------------------------------------

def test_constancy_witness_power_tuple():
    t = HomTuple(LAM46, 2, (X(F5) ** 8, X(F5) ** 12))
    w = constancy_witness(t)
    assert w is not None
    assert w.ell == 2
    assert w.base == X(F5) ** 4
    assert w.scalars == (F5.one, F5.one)
    assert w.degenerate_support == 1
    # exactness: u_i = a_i U^(lambda_i / ell)
    for u, a, lam in zip(t.forms, w.scalars, LAM46):
        assert u == (w.base ** (lam // w.ell)).scale(a)


def test_constancy_witness_none_for_finite_map():
    assert constancy_witness(tuple46(F5, X(F5) ** 4, Y(F5) ** 6)) is None


def test_constancy_witness_single_coordinate():
    t = tuple46(F5, BinForm.zero(F5, 4), X(F5) * Y(F5) ** 5)
    w = constancy_witness(t)
    assert w is not None and w.ell == 6
    assert w.base == X(F5) * Y(F5) ** 5
    assert w.scalars[0] == F5.zero and w.scalars[1] == F5.one
    assert w.degenerate_support == 2


# -- stabilizer verdicts ----------------------------------------------------------

def test_stabilizer_verdict_examples():
    assert (
        classify_stabilizer(tuple46(F13, X(F13) ** 4, Y(F13) ** 6), 13)
        == StabilizerVerdict.FINITE_REDUCED_TAME
    )
    assert (
        classify_stabilizer(
            tuple46(F13, BinForm.zero(F13, 4), X(F13) * Y(F13) ** 5), 13
        )
        == StabilizerVerdict.NOT_FINITE_REDUCED_TAME
    )
    a = X(F13) ** 2 * Y(F13) ** 2
    b = (X(F13) ** 3 * Y(F13) ** 3).scale(F13.element(2))
    assert (
        classify_stabilizer(tuple46(F13, a, b), 13)
        == StabilizerVerdict.NOT_FINITE_REDUCED_TAME
    )


def test_stabilizer_verdict_out_of_regime():
    # char 5 <= lcm(4,6) * 1 = 12
    t = tuple46(F5, X(F5) ** 4, Y(F5) ** 6)
    assert classify_stabilizer(t, 5) == StabilizerVerdict.OUT_OF_REGIME
    assert classify_stabilizer(t, 0) == StabilizerVerdict.FINITE_REDUCED_TAME


# -- Hilbert-Mumford classification ---------------------------------------------

def test_git_classify_examples():
    a = X(F13) ** 2 * Y(F13) ** 2
    b = X(F13) ** 3 * Y(F13) ** 3
    assert git_classify(tuple46(F13, a, b)) == GitClass.STRICTLY_SEMISTABLE
    assert git_classify(tuple46(F13, X(F13) ** 4, Y(F13) ** 6)) == GitClass.STABLE
    assert (
        git_classify(tuple46(F13, BinForm.zero(F13, 4), X(F13) * Y(F13) ** 5))
        == GitClass.UNSTABLE
    )


def test_git_invariance_and_implications_random():
    rng = random.Random(4242)
    for lam, n, field in ((LAM46, 1, F5), (WeightVector.of(1, 3), 1, F7)):
        for _ in range(500):
            t = rand_tuple(rng, field, lam, n)
            g = rand_moebius(rng, field)
            tg = t.translate(g)
            assert git_classify(t) == git_classify(tg)
            assert base_point_free(t) == base_point_free(tg)
            assert classify_stabilizer(t, field.p) == classify_stabilizer(
                tg, field.p
            )
            if base_point_free(t):
                assert git_classify(t) == GitClass.STABLE


def test_odd_odd_has_no_strictly_semistable():
    rng = random.Random(7)
    lam = WeightVector.of(1, 3)
    for _ in range(2000):
        t = rand_tuple(rng, F5, lam, 1)
        assert git_classify(t) != GitClass.STRICTLY_SEMISTABLE


def test_git_cross_oracle_enumeration():
    rng = random.Random(99)
    for field in (F5, F7):
        for _ in range(60):
            t = rand_tuple(rng, field, LAM46, 1)
            cls = git_classify(t)
            ss_fail = git_failure_by_enumeration(t, strict=True)
            s_fail = git_failure_by_enumeration(t, strict=False)
            if cls == GitClass.UNSTABLE:
                assert ss_fail
            elif cls == GitClass.STRICTLY_SEMISTABLE:
                assert not ss_fail and s_fail
            else:
                assert not ss_fail and not s_fail


# -- brute-force PGL_2 stabilizers -------------------------------------------------

def test_pgl2_stabilizer_diagonal_fixture():
    t = tuple46(F5, X(F5) ** 4, Y(F5) ** 6)
    stab = pgl2_stabilizer(t)
    assert len(stab) >= math.gcd(12, 4)
    diag = [g for g in stab if not g.b and not g.c]
    assert len(diag) == 4  # every diagonal class fixes the pair
    ident = Moebius.identity(F5)
    assert ident in stab


def test_pgl2_stabilizer_is_subgroup():
    lam11 = WeightVector.of(1, 1)
    t = HomTuple(lam11, 1, (X(F5), Y(F5)))
    stab = pgl2_stabilizer(t)
    assert Moebius.identity(F5) in stab
    sset = set(stab)
    for g in stab:
        assert g.inverse() in sset
        for h in stab:
            assert (g @ h) in sset
    assert len(stab) % 1 == 0 and (5**3 - 5) % len(stab) == 0


# -- fat points ----------------------------------------------------------------

def test_fat_point_examples():
    x, y = X(F5), Y(F5)
    assert (
        fat_point_class_of_form(x * (x - y) ** 5 * y)
        == FatPointClass.NOT_FINITE_REDUCED
    )
    assert fat_point_class_of_form(x * y * (x - y)) == FatPointClass.FINITE_REDUCED
    квадрат = x * (x * x + y * y)
    assert fat_point_class_of_form(квадрат) == FatPointClass.FINITE_REDUCED


def test_fat_point_char_zero_counts_all():
    x, y = X(F5), Y(F5)
    f = x * (x - y) ** 5 * y
    assert fat_point_class_of_form(f, char_p=0) == FatPointClass.FINITE_REDUCED
