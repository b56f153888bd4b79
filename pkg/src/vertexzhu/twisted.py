"""Twisted *_n-products and the identity suite they satisfy.

For a bigrade-homogeneous a with twisted conformal weight gamma_a,

    a *_n b = sum_{j >= 0} binom(gamma_a, j) a_(j+n) b,
    [a_* b] = sum_{j >= 0} binom(gamma_a - 1, j) a_(j) b,
    a * b   = a *_{-1} b,   a o b = a *_{-2} b.

Inhomogeneous inputs are split into bigrade-homogeneous pieces; the formulas
extend linearly.  All sums are truncated by certified vanishing: a_(m) b = 0
once m exceeds the lambda-degree of [a_lambda b], so every j-range below is
finite and provably exhaustive.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, gen_binom, epsilon, chi
from .elements import (el_zero, el_mono, el_add_into, el_add, el_sub, el_scale,
                       el_eq, el_is_zero, lp_degree)


def mono_gamma(va, mono):
    w = va.mono_weight(mono)
    return w + epsilon(va.mono_phase(mono), w)


def split_by_gamma(va, el):
    """Group the monomials of el by the twisted weight gamma."""
    out = {}
    for m, c in el.items():
        g = mono_gamma(va, m)
        out.setdefault(g, {})[m] = c
    return out


def el_gamma(va, el):
    """gamma of a bigrade-homogeneous element; None for 0 or mixed."""
    parts = split_by_gamma(va, el)
    if len(parts) != 1:
        return None
    return next(iter(parts))


def el_chi(va, a, b):
    """chi_{a,b} for bigrade-homogeneous a, b; 0 if either is zero."""
    ea, eb = va.el_epsilon(a), va.el_epsilon(b)
    if ea is None or eb is None:
        raise ValueError("chi needs bigrade-homogeneous elements")
    if el_is_zero(a) or el_is_zero(b):
        return 0
    return chi(ea, eb)


def star_upper(va, a, b):
    """A bound D with a *_t b = 0 for every t > D."""
    return lp_degree(va.lambda_bracket(a, b))


def h_twist(va, el):
    """H_g: multiply each monomial by its twisted weight gamma."""
    out = el_zero()
    for m, c in el.items():
        g = mono_gamma(va, m)
        if g:
            el_add_into(out, {m: c * Scalar.of(g)})
    return out


def h_weight(va, el):
    """H: multiply each monomial by its conformal weight Delta."""
    out = el_zero()
    for m, c in el.items():
        w = va.mono_weight(m)
        if w:
            el_add_into(out, {m: c * Scalar.of(w)})
    return out


def _star_cache(va):
    cache = getattr(va, "_c_star_tw", None)
    if cache is None:
        cache = {}
        va._c_star_tw = cache
    return cache


def _star_n_mono(va, ma, mb, n):
    """a *_n b on single monomials, memoized per algebra."""
    cache = _star_cache(va)
    key = (ma, mb, n)
    res = cache.get(key)
    if res is not None:
        return res
    g = mono_gamma(va, ma)
    deg = lp_degree(va.bracket_mono(ma, mb))
    jmax = max(deg - n, -n - 1)
    out = el_zero()
    for j in range(0, jmax + 1):
        coeff = gen_binom(g, j)
        if coeff == 0:
            continue
        el_add_into(out, va.nth_mono(ma, mb, j + n), Scalar.of(coeff))
    cache[key] = out
    return out


def star_n(va, a, b, n):
    """a *_n b, linear in both slots."""
    out = el_zero()
    for ma, ca in a.items():
        for mb, cb in b.items():
            el_add_into(out, _star_n_mono(va, ma, mb, n), ca * cb)
    return out


def star(va, a, b):
    return star_n(va, a, b, -1)


def circ(va, a, b):
    return star_n(va, a, b, -2)


def _star_bracket_mono(va, ma, mb):
    cache = _star_cache(va)
    key = (ma, mb, "br")
    res = cache.get(key)
    if res is not None:
        return res
    g = mono_gamma(va, ma)
    deg = lp_degree(va.bracket_mono(ma, mb))
    out = el_zero()
    for j in range(0, deg + 1):
        coeff = gen_binom(g - 1, j)
        if coeff == 0:
            continue
        el_add_into(out, va.nth_mono(ma, mb, j), Scalar.of(coeff))
    cache[key] = out
    return out


def star_bracket(va, a, b):
    """[a_* b] = sum_j binom(gamma_a - 1, j) a_(j) b."""
    out = el_zero()
    for ma, ca in a.items():
        for mb, cb in b.items():
            el_add_into(out, _star_bracket_mono(va, ma, mb), ca * cb)
    return out


# ---------------------------------------------------------------------------
# identity suite

def _id_trans_1a(va, a, b, n=0):
    """(da + (n+1+gamma_a) a) *_n b = -n a *_{n-1} b."""
    g = el_gamma(va, a)
    if g is None:
        if el_is_zero(a):
            return el_zero(), el_zero()
        raise ValueError("argument must be bigrade-homogeneous")
    left_arg = el_add(va.translate(a), el_scale(a, Fraction(n + 1) + g))
    lhs = star_n(va, left_arg, b, n)
    rhs = el_scale(star_n(va, a, b, n - 1), Fraction(-n))
    return lhs, rhs


def _id_trans_1b(va, a, b, n=0):
    """d(a *_n b) = sum_j (-1)^j (da) *_{n+j} b + a *_n db."""
    lhs = va.translate(star_n(va, a, b, n))
    da = va.translate(a)
    rhs = star_n(va, a, va.translate(b), n)
    jmax = max(star_upper(va, da, b) - n, 0)
    for j in range(0, jmax + 1):
        term = star_n(va, da, b, n + j)
        el_add_into(rhs, term, Scalar.of((-1) ** j))
    return lhs, rhs


def _id_neg_star_ind(va, a, b, k=1):
    """a *_{-k-1} b = sum_{j=0}^k binom(gamma_a, k-j) (d^(j) a) * b."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    g = el_gamma(va, a)
    if g is None:
        if el_is_zero(a):
            return el_zero(), el_zero()
        raise ValueError("argument must be bigrade-homogeneous")
    lhs = star_n(va, a, b, -k - 1)
    rhs = el_zero()
    for j in range(0, k + 1):
        coeff = gen_binom(g, k - j)
        if coeff == 0:
            continue
        dja = va.translate_n(a, j)
        el_add_into(rhs, star(va, dja, b), Scalar.of(coeff))
    return lhs, rhs


def _id_trans_circ(va, a, b):
    """a o b = ((d + H_g) a) * b."""
    lhs = circ(va, a, b)
    rhs = star(va, el_add(va.translate(a), h_twist(va, a)), b)
    return lhs, rhs


def _id_trans_null(va, a, b):
    """[((d + H_g) a)_* b] = 0."""
    lhs = star_bracket(va, el_add(va.translate(a), h_twist(va, a)), b)
    return lhs, el_zero()


def _id_trans_der(va, a, b):
    """(d + H_g - chi_{a,b}) [a_* b] = [a_* (d + H_g) b]."""
    x = el_chi(va, a, b)
    br = star_bracket(va, a, b)
    lhs = el_add(va.translate(br), h_twist(va, br))
    if x:
        lhs = el_sub(lhs, el_scale(br, Fraction(x)))
    rhs = star_bracket(va, a, el_add(va.translate(b), h_twist(va, b)))
    return lhs, rhs


def _sign(va, a, b):
    pa, pb = va.el_parity(a), va.el_parity(b)
    if pa is None or pb is None:
        raise ValueError("arguments must be parity-homogeneous")
    return -1 if (pa and pb) else 1


def _id_quasi_asso(va, a, b, c):
    """(a*b)*c - a*(b*c) = corrections of o-type products."""
    lhs = el_sub(star(va, star(va, a, b), c), star(va, a, star(va, b, c)))
    x = el_chi(va, a, b)
    sign = _sign(va, a, b)
    rhs = el_zero()
    jmax = max(star_upper(va, b, c), star_upper(va, a, c))
    for j in range(0, jmax + 1):
        bc = star_n(va, b, c, j)
        if bc:
            el_add_into(rhs, star_n(va, a, bc, -j - 2))
            if x:
                el_add_into(rhs, star_n(va, a, bc, -j - 1))
        ac = star_n(va, a, c, j)
        if ac:
            el_add_into(rhs, star_n(va, b, ac, -j - 2), Scalar.of(sign))
            if x:
                el_add_into(rhs, star_n(va, b, ac, -j - 1), Scalar.of(sign))
    return lhs, rhs


def _id_comm(va, a, b):
    """a*b - (-1)^{pq} b*a - (1 - chi)[a_*b] = derivative corrections."""
    x = el_chi(va, a, b)
    sign = _sign(va, a, b)
    lhs = el_sub(star(va, a, b), el_scale(star(va, b, a), Fraction(sign)))
    if x != 1:
        lhs = el_sub(lhs, el_scale(star_bracket(va, a, b), Fraction(1 - x)))
    ga, gb = el_gamma(va, a), el_gamma(va, b)
    if ga is None or gb is None:
        if el_is_zero(a) or el_is_zero(b):
            return lhs, el_zero() if el_is_zero(lhs) else lhs
        raise ValueError("arguments must be bigrade-homogeneous")
    rhs = el_zero()
    deg = star_upper(va, a, b)
    for n in range(1, deg + 2):
        anb = va.nth_product(a, b, n - 1)
        if not anb:
            continue
        gprod = ga + gb - n + x
        for ll in range(1, n + 1):
            coeff = gen_binom(gb, n - ll) * (-1) ** (n + 1)
            if coeff == 0:
                continue
            term = el_sub(va.translate_n(anb, ll),
                          el_scale(anb, gen_binom(-gprod, ll)))
            el_add_into(rhs, term, Scalar.of(coeff))
    return lhs, rhs


def _id_circ_star(va, a, b, c):
    """(a o b)*c - a o (b*c) = the derivative and gamma_a corrections."""
    lhs = el_sub(star(va, circ(va, a, b), c), circ(va, a, star(va, b, c)))
    ga = el_gamma(va, a)
    if ga is None:
        if el_is_zero(a):
            return lhs, el_zero()
        raise ValueError("argument must be bigrade-homogeneous")
    x = el_chi(va, a, b)
    sign = _sign(va, a, b)
    da = va.translate(a)
    rhs = el_zero()
    jmax = max(star_upper(va, b, c), star_upper(va, da, c),
               star_upper(va, a, c))
    for j in range(0, jmax + 1):
        bc = star_n(va, b, c, j)
        if bc:
            el_add_into(rhs, star_n(va, da, bc, -j - 2))
            el_add_into(rhs, star_n(va, a, bc, -j - 2), Scalar.of(ga))
            if x:
                el_add_into(rhs, star_n(va, da, bc, -j - 1))
                el_add_into(rhs, star_n(va, a, bc, -j - 1), Scalar.of(ga))
        dac = star_n(va, da, c, j)
        if dac:
            el_add_into(rhs, star_n(va, b, dac, -j - 2), Scalar.of(sign))
            if x:
                el_add_into(rhs, star_n(va, b, dac, -j - 1), Scalar.of(sign))
        ac = star_n(va, a, c, j)
        if ac:
            el_add_into(rhs, star_n(va, b, ac, -j - 2), Scalar.of(sign * ga))
            if x:
                el_add_into(rhs, star_n(va, b, ac, -j - 1),
                            Scalar.of(sign * ga))
    return lhs, rhs


def _id_bracket_star_n(va, a, b, c, n=0):
    """[a_*(b *_n c)] = [a_*b] *_n c + (-1)^{pq} b *_n [a_*c] + chi tail.

    The tail is chi * sum_{j>=1} (-1)^j [a_*b] *_{n+j} c: expanding the
    (1+w)^{-chi} factor in w gives increasing product indices, which is also
    what makes the sum terminate.
    """
    x = el_chi(va, a, b)
    sign = _sign(va, a, b)
    lhs = star_bracket(va, a, star_n(va, b, c, n))
    ab = star_bracket(va, a, b)
    rhs = star_n(va, ab, c, n)
    el_add_into(rhs, star_n(va, b, star_bracket(va, a, c), n),
                Scalar.of(sign))
    if x:
        jmax = max(star_upper(va, ab, c) - n, 0)
        for j in range(1, jmax + 1):
            el_add_into(rhs, star_n(va, ab, c, n + j), Scalar.of((-1) ** j))
    return lhs, rhs


def _id_star_property(va, a, b, k=1):
    """a *_{-k-1} b = sum_{j=1}^k binom(gamma_a, k-j)
    {(d^(j) a)*b - binom(-gamma_a, j) a*b} for k >= 1."""
    if k < 1:
        raise ValueError("k must be positive")
    g = el_gamma(va, a)
    if g is None:
        if el_is_zero(a):
            return el_zero(), el_zero()
        raise ValueError("argument must be bigrade-homogeneous")
    lhs = star_n(va, a, b, -k - 1)
    ab = star(va, a, b)
    rhs = el_zero()
    for j in range(1, k + 1):
        coeff = gen_binom(g, k - j)
        if coeff == 0:
            continue
        term = el_sub(star(va, va.translate_n(a, j), b),
                      el_scale(ab, gen_binom(-g, j)))
        el_add_into(rhs, term, Scalar.of(coeff))
    return lhs, rhs


def _id_borcherds(va, a, b, c, n=0, k=0):
    """(a *_n b) *_k c as a double sum of iterated products."""
    lhs = star_n(va, star_n(va, a, b, n), c, k)
    x = el_chi(va, a, b)
    sign = _sign(va, a, b)
    d_bc = star_upper(va, b, c)
    d_ac = star_upper(va, a, c)
    if n >= 0:
        jmax = n
    else:
        jmax = max(d_bc - k, d_ac, 0)
    e = -n - 1 + x
    rhs = el_zero()
    for j in range(0, jmax + 1):
        bj = gen_binom(Fraction(n), j) * (-1) ** j
        if bj == 0:
            continue
        ajc = star_n(va, a, c, j)
        if e >= 0:
            imax = e
        else:
            imax = max(d_bc - k - j,
                       (star_upper(va, b, ajc) - (k + n - j)) if ajc else -1,
                       0)
        for i in range(0, imax + 1):
            bi = gen_binom(Fraction(e), i)
            if bi == 0:
                continue
            coeff = bj * bi
            bkc = star_n(va, b, c, k + j + i)
            if bkc:
                el_add_into(rhs, star_n(va, a, bkc, n - j), Scalar.of(coeff))
            if ajc:
                el_add_into(rhs, star_n(va, b, ajc, k + n - j + i),
                            Scalar.of(-coeff * sign * (-1) ** (n % 2)))
    return lhs, rhs


def _id_borcherds_cor(va, a, b, c, m=0, n=0, k=0):
    """The three-index coefficient Borcherds identity."""
    x = el_chi(va, a, b)
    sign = _sign(va, a, b)
    d_bc = star_upper(va, b, c)
    d_ac = star_upper(va, a, c)
    d_ab = star_upper(va, a, b)
    e = -n - 1 + x
    lhs = el_zero()
    jmax = n if n >= 0 else max(d_bc - k, d_ac - m, 0)
    for j in range(0, jmax + 1):
        # the (-1)^j matches the generating-function expansion; it is what
        # the m = 0 specialization needs to agree with the single-index form
        bj = gen_binom(Fraction(n), j) * (-1) ** j
        if bj == 0:
            continue
        amjc = star_n(va, a, c, m + j)
        if e >= 0:
            imax = e
        else:
            imax = max(d_bc - k - j,
                       (star_upper(va, b, amjc) - (k + n - j)) if amjc else -1,
                       0)
        for i in range(0, imax + 1):
            bi = gen_binom(Fraction(e), i)
            if bi == 0:
                continue
            coeff = bj * bi
            bkc = star_n(va, b, c, k + j + i)
            if bkc:
                el_add_into(lhs, star_n(va, a, bkc, m + n - j),
                            Scalar.of(coeff))
            if amjc:
                el_add_into(lhs, star_n(va, b, amjc, k + n - j + i),
                            Scalar.of(-coeff * sign * (-1) ** (n % 2)))
    rhs = el_zero()
    jmax = m if m >= 0 else max(d_ab - n, 0)
    for j in range(0, jmax + 1):
        bj = gen_binom(Fraction(m), j)
        if bj == 0:
            continue
        anb = star_n(va, a, b, n + j)
        if not anb:
            continue
        for i in range(0, j + 1):
            bi = gen_binom(Fraction(j), i)
            el_add_into(rhs, star_n(va, anb, c, k + m - j + i),
                        Scalar.of(bj * bi))
    return lhs, rhs


IDENTITIES = {
    "trans-1a": (_id_trans_1a, 2, ("n",)),
    "trans-1b": (_id_trans_1b, 2, ("n",)),
    "a(-k-1)b-ind": (_id_neg_star_ind, 2, ("k",)),
    "trans-id-circ": (_id_trans_circ, 2, ()),
    "trans-id-null": (_id_trans_null, 2, ()),
    "trans-id-der": (_id_trans_der, 2, ()),
    "quasi-asso": (_id_quasi_asso, 3, ()),
    "A*Bcomm": (_id_comm, 2, ()),
    "AcircB*C": (_id_circ_star, 3, ()),
    "brA*B*nC": (_id_bracket_star_n, 3, ("n",)),
    "*-property": (_id_star_property, 2, ("k",)),
    "Borcherds-id": (_id_borcherds, 3, ("n", "k")),
    "cor-Borcherds-id": (_id_borcherds_cor, 3, ("m", "n", "k")),
}


def verify_identity_detail(name, va, elements, **params):
    """Evaluate both sides of a named identity; returns (ok, lhs, rhs)."""
    if name not in IDENTITIES:
        raise KeyError("unknown identity %r" % (name,))
    fn, arity, keys = IDENTITIES[name]
    if len(elements) != arity:
        raise ValueError("identity %r takes %d elements" % (name, arity))
    for key in params:
        if key not in keys:
            raise ValueError("identity %r takes no parameter %r" % (name, key))
    lhs, rhs = fn(va, *elements, **params)
    return el_eq(lhs, rhs), lhs, rhs


def verify_identity(name, va, elements, **params):
    return verify_identity_detail(name, va, elements, **params)[0]
