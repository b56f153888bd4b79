"""Preset algebra constructions and the BRST complex."""
from fractions import Fraction

import pytest

from vertexzhu.scalars import Scalar, S_K
from vertexzhu.elements import (el_mono, el_zero, el_add_into, el_eq, lp_eq,
                                lp_trim, el_is_zero)
from vertexzhu.liealg import sl2, osp12, with_x
from vertexzhu.presets import (affine, virasoro, free_fermion,
                               neutral_fermions, charged_fermions,
                               BrstComplex, preset_sl2, preset_osp12,
                               theta_phases, inner_phases,
                               AutomorphismSpec, validate_automorphism)

HALF = Fraction(1, 2)


def test_affine_weights_follow_grading():
    data = with_x(sl2(), {"h": HALF})
    va = affine(data)
    weights = {g.name: g.weight for g in va.generators}
    assert weights == {"e": 0, "h": 1, "f": 2}


def test_automorphism_validation():
    data = with_x(sl2(), {"h": HALF})
    good = AutomorphismSpec(inner_phases(data, Fraction(1, 4)))
    # the inner twist moves f, so it is only valid without the good-pair
    # requirement on f
    rep = validate_automorphism(data, good, check_f=False)
    assert rep["pass"]
    rep = validate_automorphism(data, good)
    assert not rep["pass"] and ("f", "f") in rep["violations"]
    bad = AutomorphismSpec([Fraction(1, 3), Fraction(0), Fraction(0)])
    rep = validate_automorphism(data, bad, check_f=False)
    assert not rep["pass"]


def test_charged_fermion_pairing():
    data = with_x(sl2(), {"h": HALF})
    va = charged_fermions(data)
    names = [g.name for g in va.generators]
    # each pair ph_a, phd_a with dual delta pairing
    i = names.index("ph_e")
    j = names.index("phd_e")
    lo, hi = min(i, j), max(i, j)
    poly = va.table.get((lo, hi))
    assert poly is not None and el_eq(poly[0], el_mono(()))


def test_neutral_fermion_pairing_osp12():
    data = with_x(osp12(), {"h": HALF})
    va = neutral_fermions(data)
    # only the degree 1/2 part enters; for osp(1|2) that is xp alone
    assert [g.name for g in va.generators] == ["Phi_xp"]
    poly = va.table[(0, 0)]
    assert poly and not el_is_zero(poly[0])


@pytest.mark.parametrize("make,xc", [(preset_sl2, "h/2"),
                                     (preset_osp12, "h/2")])
def test_brst_charge_squares_to_zero(make, xc):
    brst = BrstComplex(make(xc))
    poly = brst.algebra.lambda_bracket(brst.Q, brst.Q)
    assert lp_eq(lp_trim(poly), [])


@pytest.mark.parametrize("make,xc", [(preset_sl2, "h/2"),
                                     (preset_osp12, "h/2")])
def test_differential_squares_to_zero_on_generators(make, xc):
    brst = BrstComplex(make(xc))
    va = brst.algebra
    for g in va.generators:
        d2 = brst.differential(brst.differential(va.gen(g.name)))
        assert el_is_zero(d2)


@pytest.mark.parametrize("make,xc,hv", [(preset_sl2, "h/2", 2),
                                        (preset_osp12, "h/2", Fraction(3, 2))])
def test_shifted_level_pairing(make, xc, hv):
    # nu(h, h) = 2(k + h^vee): the affine form shifted by the difference of
    # Killing forms of g and g_0.
    brst = BrstComplex(make(xc))
    h = brst.data.index["h"]
    nu = brst.nu(h, h)
    want = (S_K + Scalar.of(hv)) * Scalar.of(2)
    assert nu == want


def test_j_field_bracket_reproduces_shifted_affine_ope():
    # [J_a lambda J_b] = J_[a,b] + lambda nu(a, b) for a, b of nonpositive
    # degree.
    brst = BrstComplex(preset_sl2("h/2"))
    va = brst.algebra
    for a in brst.nonpos:
        for b in brst.nonpos:
            poly = va.lambda_bracket(brst.j_field(a), brst.j_field(b))
            want0 = el_zero()
            for l, c in brst.data.brk(a, b).items():
                if l in brst.nonpos:
                    el_add_into(want0, brst.j_field(l), Scalar.of(c))
            want = lp_trim([want0, el_mono((), brst.nu(a, b))])
            assert lp_eq(poly, want), (brst.data.names[a],
                                       brst.data.names[b])


def test_theta_and_inner_phases():
    ws = [Fraction(0), Fraction(1), Fraction(3, 2)]
    ph = theta_phases(ws)
    for w, p in zip(ws, ph):
        assert (p - w) % 1 == 0 or (p - w) % 1 == Fraction(0)
    data = with_x(sl2(), {"h": HALF})
    ph = inner_phases(data, Fraction(1, 4))
    by_name = dict(zip(data.names, ph))
    assert by_name["h"] == 0
    assert by_name["e"] == Fraction(1, 2) and by_name["f"] == Fraction(1, 2)
