"""Finite dimensional Lie superalgebra data: sl2 and osp(1|2)."""
from fractions import Fraction

import pytest

from vertexzhu.liealg import LieSuperData, LieError, sl2, osp12, with_x

HALF = Fraction(1, 2)


def test_sl2_brackets_and_form():
    g = sl2()
    e, h, f = (g.index[n] for n in "ehf")
    assert g.brk(e, f) == {h: Fraction(1)}
    assert g.brk(h, e) == {e: Fraction(2)}
    assert g.brk(h, f) == {f: Fraction(-2)}
    assert g.pair(e, f) == 1 and g.pair(h, h) == 2
    assert g.pair(e, e) == 0
    assert g.dual_coxeter == 2


def test_osp12_odd_part():
    g = osp12()
    xp, xm = g.index["xp"], g.index["xm"]
    e, h, f = (g.index[n] for n in "ehf")
    assert g.parities[xp] == 1 and g.parities[xm] == 1
    assert g.brk(xp, xp) == {e: Fraction(-2)}
    assert g.brk(xm, xm) == {f: Fraction(2)}
    assert g.brk(xp, xm) == {h: Fraction(1)}
    assert g.pair(xp, xm) == 2
    assert g.dual_coxeter == Fraction(3, 2)


def test_killing_form_proportional_to_pairing():
    # For a simple algebra the Killing form is 2 h^vee times the normalized
    # invariant form.
    for g in (sl2(), osp12()):
        kappa = g.killing(range(g.dim))
        for a in range(g.dim):
            for b in range(g.dim):
                assert kappa.get((a, b), 0) == 2 * g.dual_coxeter * g.pair(a, b)


def test_grading_from_x():
    g = with_x(sl2(), {"h": HALF})
    js = g.grading()
    assert js[g.index["e"]] == 1
    assert js[g.index["h"]] == 0
    assert js[g.index["f"]] == -1
    go = with_x(osp12(), {"h": HALF})
    js = go.grading()
    assert js[go.index["xp"]] == HALF
    assert js[go.index["xm"]] == -HALF


def test_good_pair_accepts_principal():
    g = with_x(sl2(), {"h": HALF})
    assert g.check_good_pair() is True


def test_validation_rejects_broken_jacobi():
    with pytest.raises(LieError):
        LieSuperData(names=["a", "b", "c"], parities=[0, 0, 0],
                     brackets={(1, 0): {0: 2},
                               (1, 2): {2: -2},
                               (0, 2): {0: 1}},
                     form={})


def test_validation_rejects_noninvariant_form():
    with pytest.raises(LieError):
        LieSuperData(names=["e", "h", "f"], parities=[0, 0, 0],
                     brackets={(1, 0): {0: 2},
                               (1, 2): {2: -2},
                               (0, 2): {1: 1}},
                     form={(0, 2): 1, (1, 1): 3})
