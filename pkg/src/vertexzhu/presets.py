"""Builders for the preset generator tables.

Affine vertex superalgebras, the Virasoro algebra, neutral and charged
fermion systems, and the BRST complex C^k(g, f, x) assembled from them.
Automorphisms act diagonally on the declared basis and are tracked through
rational phases.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, S_K, phase_mod1
from .elements import el_add_into, el_mono, el_scale, el_zero
from .algebra import Generator, VertexAlgebra
from .liealg import LieSuperData, LieError, sl2, osp12, with_x

HALF = Fraction(1, 2)


class AutomorphismSpec:
    """Diagonal automorphism given by a phase per Lie algebra basis element."""

    def __init__(self, phases):
        self.phases = [phase_mod1(p) for p in phases]


def validate_automorphism(data, spec, check_f=True):
    """Check g(x) = x, g(f) = f, form invariance and bracket equivariance."""
    report = {"x_fixed": True, "f_fixed": True, "form_invariant": True,
              "bracket_equivariant": True, "violations": []}
    ph = spec.phases
    if len(ph) != data.dim:
        raise ValueError("phase list length does not match basis")
    if data.x is not None:
        for l, c in enumerate(data.x):
            if c != 0 and ph[l] != 0:
                report["x_fixed"] = False
                report["violations"].append(("x", data.names[l]))
    if check_f and data.f is not None:
        for l, c in enumerate(data.f):
            if c != 0 and ph[l] != 0:
                report["f_fixed"] = False
                report["violations"].append(("f", data.names[l]))
    for (i, j), c in data.form.items():
        if c != 0 and phase_mod1(ph[i] + ph[j]) != 0:
            report["form_invariant"] = False
            report["violations"].append(("form", data.names[i], data.names[j]))
    for (i, j), entry in data.bracket.items():
        for l, c in entry.items():
            if c != 0 and phase_mod1(ph[i] + ph[j]) != ph[l]:
                report["bracket_equivariant"] = False
                report["violations"].append(
                    ("bracket", data.names[i], data.names[j], data.names[l]))
    report["pass"] = (report["x_fixed"] and report["f_fixed"]
                      and report["form_invariant"]
                      and report["bracket_equivariant"])
    return report


def theta_phases(weights):
    """Phases of theta_H = e^{2 pi i H}: the weight mod 1 per generator."""
    return [phase_mod1(w) for w in weights]


# ---------------------------------------------------------------------------
# affine vertex superalgebras

def affine(data, level=None, phases=None):
    """V^k(g): one generator per basis element, [a_L b] = [a,b] + k(a|b) L.

    The grading element data.x (possibly None) fixes Delta_a = 1 - j(a).
    """
    if level is None:
        level = S_K
    js = data.grading()
    if phases is None:
        phases = [Fraction(0)] * data.dim
    gens = [Generator(data.names[a], data.parities[a], 1 - js[a],
                      phases[a], 1)
            for a in range(data.dim)]
    brackets = {}
    for i in range(data.dim):
        for j in range(i, data.dim):
            const = el_zero()
            for l, c in data.brk(i, j).items():
                el_add_into(const, el_mono(((l, 0),), Scalar.of(c)))
            poly = [const]
            pairing = data.pair(i, j)
            if pairing != 0:
                poly.append(el_mono((), level * Scalar.of(pairing)))
            if any(poly):
                brackets[(i, j)] = poly
    return VertexAlgebra(gens, brackets)


def virasoro(central_charge):
    """One even generator L of weight 2: [L_L L] = dL + 2 lambda L + c/12 L^3."""
    if not isinstance(central_charge, Scalar):
        central_charge = Scalar.of(central_charge)
    gens = [Generator("L", 0, 2, 0, 1)]
    poly = [el_mono(((0, 1),)), el_mono(((0, 0),), Scalar.of(2))]
    if not central_charge.is_zero():
        poly += [el_zero(), el_mono((), central_charge / Scalar.of(12))]
    return VertexAlgebra(gens, {(0, 0): poly})


# ---------------------------------------------------------------------------
# fermions

def free_fermion(phase=0):
    """A single neutral free fermion: odd, Delta = 1/2, [Psi_L Psi] = 1."""
    gens = [Generator("Psi", 1, HALF, phase, HALF)]
    return VertexAlgebra(gens, {(0, 0): [el_mono(())]})


def neutral_fermions(data, phases=None):
    """Phi(g_{1/2}): [Phi_a L Phi_b] = (f|[e_a, e_b])."""
    if data.f is None or data.x is None:
        raise LieError("neutral fermions need x and f")
    js = data.grading()
    if phases is None:
        phases = [Fraction(0)] * data.dim
    half_idx = [a for a in range(data.dim) if js[a] == HALF]
    gens = [Generator("Phi_" + data.names[a], data.parities[a], HALF,
                      phases[a], HALF)
            for a in half_idx]
    brackets = {}
    for i, a in enumerate(half_idx):
        for jj, b in enumerate(half_idx):
            if i > jj:
                continue
            pairing = data.pair_vec(data.f,
                                    [data.brk(a, b).get(l, Fraction(0))
                                     for l in range(data.dim)])
            if pairing != 0:
                brackets[(i, jj)] = [el_mono((), Scalar.of(pairing))]
    return VertexAlgebra(gens, brackets)


def charged_fermions(data, phases=None):
    """F(g_{>0}): dual pairs (ph_a, phd_a) of parity opposite to e_a."""
    if data.x is None:
        raise LieError("charged fermions need the grading element x")
    js = data.grading()
    if phases is None:
        phases = [Fraction(0)] * data.dim
    pos = [a for a in range(data.dim) if js[a] > 0]
    if not pos:
        raise LieError("g_{>0} is zero")
    gens = []
    for a in pos:
        gens.append(Generator("ph_" + data.names[a], 1 - data.parities[a],
                              1 - js[a], phases[a], HALF))
    for a in pos:
        gens.append(Generator("phd_" + data.names[a], 1 - data.parities[a],
                              js[a], -phases[a], HALF))
    brackets = {}
    for i, a in enumerate(pos):
        brackets[(i, len(pos) + i)] = [el_mono(())]
    return VertexAlgebra(gens, brackets)


# ---------------------------------------------------------------------------
# the BRST complex

class BrstComplex:
    """C^k(g, f, x) with its charge grading and the element Q."""

    def __init__(self, data, level=None, phases=None):
        if data.x is None or data.f is None:
            raise LieError("BRST complex needs a good pair (f, x)")
        data.check_good_pair()
        if level is None:
            level = S_K
        self.data = data
        self.level = level
        js = data.grading()
        self.js = js
        if phases is None:
            phases = [Fraction(0)] * data.dim
        self.phases = list(phases)
        dim = data.dim
        self.pos = [a for a in range(dim) if js[a] > 0]
        self.half = [a for a in range(dim) if js[a] == HALF]
        self.nonpos = [a for a in range(dim) if js[a] <= 0]

        gens = []
        charge = []
        for a in range(dim):
            gens.append(Generator(data.names[a], data.parities[a],
                                  1 - js[a], phases[a], 1))
            charge.append(0)
        self.phi_index = {}
        for a in self.half:
            self.phi_index[a] = len(gens)
            gens.append(Generator("Phi_" + data.names[a], data.parities[a],
                                  HALF, phases[a], HALF))
            charge.append(0)
        self.gh_index = {}
        for a in self.pos:
            self.gh_index[a] = len(gens)
            gens.append(Generator("ph_" + data.names[a],
                                  1 - data.parities[a], 1 - js[a],
                                  phases[a], HALF))
            charge.append(-1)
        self.ghd_index = {}
        for a in self.pos:
            self.ghd_index[a] = len(gens)
            gens.append(Generator("phd_" + data.names[a],
                                  1 - data.parities[a], js[a],
                                  -phases[a], HALF))
            charge.append(1)

        brackets = {}
        for i in range(dim):
            for j in range(i, dim):
                const = el_zero()
                for l, c in data.brk(i, j).items():
                    el_add_into(const, el_mono(((l, 0),), Scalar.of(c)))
                poly = [const]
                pairing = data.pair(i, j)
                if pairing != 0:
                    poly.append(el_mono((), level * Scalar.of(pairing)))
                if any(poly):
                    brackets[(i, j)] = poly
        for a in self.half:
            for b in self.half:
                ia, ib = self.phi_index[a], self.phi_index[b]
                if ia > ib:
                    continue
                pairing = data.pair_vec(
                    data.f, [data.brk(a, b).get(l, Fraction(0))
                             for l in range(dim)])
                if pairing != 0:
                    brackets[(ia, ib)] = [el_mono((), Scalar.of(pairing))]
        for a in self.pos:
            brackets[(self.gh_index[a], self.ghd_index[a])] = [el_mono(())]

        self.algebra = VertexAlgebra(gens, brackets)
        self.charge = tuple(charge)
        self.Q = self._build_q()

    def mono_charge(self, mono):
        return sum(self.charge[a] for a, _ in mono)

    def el_charge(self, el):
        vals = {self.mono_charge(m) for m in el}
        if len(vals) > 1:
            return None
        return vals.pop() if vals else 0

    def _build_q(self):
        va = self.algebra
        data = self.data
        q = el_zero()
        for a in self.pos:
            sign = -1 if data.parities[a] else 1
            term = va.normal_order(el_mono(((a, 0),)),
                                   el_mono(((self.ghd_index[a], 0),)))
            el_add_into(q, term, Scalar.of(sign))
        for a in self.pos:
            for b in self.pos:
                for l, c in data.brk(a, b).items():
                    if l not in self.gh_index:
                        continue
                    sign = -1 if (data.parities[a] and data.parities[l]) else 1
                    inner = va.normal_order(
                        el_mono(((self.ghd_index[a], 0),)),
                        el_mono(((self.ghd_index[b], 0),)))
                    term = va.normal_order(
                        el_mono(((self.gh_index[l], 0),)), inner)
                    el_add_into(q, term,
                                Scalar.of(Fraction(-sign * c, 2)))
        for a in self.half:
            term = va.normal_order(el_mono(((self.phi_index[a], 0),)),
                                   el_mono(((self.ghd_index[a], 0),)))
            el_add_into(q, term)
        for a in self.pos:
            pairing = data.pair_vec(data.f, data.basis_vector(a))
            if pairing != 0:
                el_add_into(q, el_mono(((self.ghd_index[a], 0),),
                                       Scalar.of(pairing)))
        return q

    def differential(self, el):
        return self.algebra.nth_product(self.Q, el, 0)

    def j_field(self, a):
        """J_a = a + sum (-1)^{p(gamma)} c_{a,beta}^gamma :ph_gamma phd_beta:."""
        va = self.algebra
        out = el_mono(((a, 0),))
        for b in self.pos:
            for l, c in self.data.brk(a, b).items():
                if l not in self.gh_index:
                    continue
                sign = -1 if self.data.parities[l] else 1
                term = va.normal_order(el_mono(((self.gh_index[l], 0),)),
                                       el_mono(((self.ghd_index[b], 0),)))
                el_add_into(out, term, Scalar.of(sign * c))
        return out

    def nu(self, a, b):
        """nu_k(a|b) = k(a|b) + (kappa_g(a|b) - kappa_{g0}(a|b))/2."""
        data = self.data
        kg = data.killing()
        zero = [i for i in range(data.dim) if self.js[i] == 0]
        kg0 = data.killing(zero)
        val = (self.level * Scalar.of(data.pair(a, b))
               + Scalar.of(Fraction(kg.get((a, b), Fraction(0)), 2))
               - Scalar.of(Fraction(kg0.get((a, b), Fraction(0)), 2)))
        return val


# ---------------------------------------------------------------------------
# named presets

def preset_sl2(x_choice="0"):
    base = sl2()
    if x_choice in ("0", 0, None):
        return with_x(base, {"h": 0})
    if x_choice in ("h/2",):
        return with_x(base, {"h": HALF})
    raise ValueError("unknown x choice %r" % (x_choice,))


def preset_osp12(x_choice="0"):
    base = osp12()
    if x_choice in ("0", 0, None):
        return with_x(base, {"h": 0})
    if x_choice in ("h/2",):
        return with_x(base, {"h": HALF})
    raise ValueError("unknown x choice %r" % (x_choice,))


def inner_phases(data, t):
    """Phases of e^{2 pi i t ad(h)} read off the h-eigenvalues."""
    h = data.index["h"]
    hvec = data.basis_vector(h)
    out = []
    for a in range(data.dim):
        res = data.brk_vec(hvec, data.basis_vector(a))
        q = res.get(a, Fraction(0))
        out.append(phase_mod1(Fraction(t) * q))
    return out
