"""Sparse element containers shared by the engine modules.

A monomial is a tuple of factors ``(alpha, kk)`` meaning the normally ordered
product :D^(k1) e_{a1} ... D^(ks) e_{as}: with the right-nested convention,
where ``alpha`` is the generator index and ``kk`` the divided-power derivative
order.  Factor tuples compare in the PBW order (generator first, then
derivative order), so plain tuple comparison is the monomial order.

A VElement is a dict mapping monomials to nonzero Scalars.  A LambdaPoly is a
list of VElements indexed by the power of lambda, trailing zeros trimmed.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, format_scalar

VACUUM = ()


def el_zero():
    return {}


def el_mono(mono, coeff=None):
    if coeff is None:
        coeff = Scalar.of(1)
    elif not isinstance(coeff, Scalar):
        coeff = Scalar.of(coeff)
    if coeff.is_zero():
        return {}
    return {mono: coeff}


def el_add_into(acc, other, factor=None):
    """acc += factor * other, in place."""
    for m, c in other.items():
        if factor is not None:
            c = factor * c
        cur = acc.get(m)
        if cur is None:
            if not c.is_zero():
                acc[m] = c
        else:
            cur = cur + c
            if cur.is_zero():
                del acc[m]
            else:
                acc[m] = cur
    return acc


def el_add(a, b):
    return el_add_into(dict(a), b)


def el_sub(a, b):
    out = dict(a)
    return el_add_into(out, b, Scalar.of(-1))


def el_scale(a, factor):
    if not isinstance(factor, Scalar):
        factor = Scalar.of(factor)
    if factor.is_zero():
        return {}
    return {m: factor * c for m, c in a.items()}


def el_neg(a):
    return {m: -c for m, c in a.items()}


def el_eq(a, b):
    return a == b


def el_is_zero(a):
    return not a


# ---------------------------------------------------------------------------
# lambda polynomials

def lp_trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return coeffs[:n]


def lp_zero():
    return []


def lp_add(p, q):
    out = [dict(c) for c in p]
    while len(out) < len(q):
        out.append({})
    for i, c in enumerate(q):
        el_add_into(out[i], c)
    return lp_trim(out)


def lp_scale(p, factor):
    return lp_trim([el_scale(c, factor) for c in p])


def lp_coeff(p, n):
    if 0 <= n < len(p):
        return p[n]
    return {}


def lp_degree(p):
    return len(p) - 1


def lp_shift(p, n):
    """Multiply by lambda^n."""
    if not p:
        return []
    return [{} for _ in range(n)] + [dict(c) for c in p]


def lp_eq(p, q):
    return lp_trim([dict(c) for c in p]) == lp_trim([dict(c) for c in q])


# ---------------------------------------------------------------------------
# rendering

def format_factor(factor, names):
    alpha, kk = factor
    if kk == 0:
        return names[alpha]
    return "D%d(%s)" % (kk, names[alpha])


def format_monomial(mono, names):
    if not mono:
        return "vac"
    body = " ".join(format_factor(f, names) for f in mono)
    if len(mono) == 1:
        return body
    return ":%s:" % body


def format_element(el, names):
    if not el:
        return "0"
    parts = []
    for mono in sorted(el):
        c = el[mono]
        cs = format_scalar(c)
        ms = format_monomial(mono, names)
        if cs == "1":
            parts.append(ms)
        elif cs == "-1":
            parts.append("-%s" % ms)
        else:
            if ("+" in cs[1:]) or ("- " in cs) or ("/" in cs and "k" in cs):
                cs = "(%s)" % cs if not cs.startswith("(") else cs
            parts.append("%s %s" % (cs, ms))
    return " + ".join(parts).replace("+ -", "- ")


def format_lambda_poly(p, names):
    if not p:
        return "0"
    parts = []
    for n, c in enumerate(p):
        if not c:
            continue
        body = format_element(c, names)
        if n == 0:
            parts.append(body)
        else:
            lam = "L" if n == 1 else "L^%d" % n
            parts.append("%s (%s)" % (lam, body))
    return " + ".join(parts)
