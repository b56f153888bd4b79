"""Canonical JSON serialization for algebras, elements and reports.

Every emitter sorts keys and monomials, so emit -> load -> emit is the
identity on bytes; reports produced from the same inputs are byte identical.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .scalars import (Scalar, format_scalar, parse_scalar, format_rational,
                      parse_rational)
from .elements import el_zero, lp_trim
from .algebra import Generator, VertexAlgebra


def element_to_obj(el):
    """An element as a sorted list of [[alpha, k] factor list, scalar string]."""
    out = []
    for mono in sorted(el):
        out.append([[list(f) for f in mono], format_scalar(el[mono])])
    return out


def element_from_obj(obj):
    el = el_zero()
    for factors, coeff in obj:
        mono = tuple((int(a), int(kk)) for a, kk in factors)
        c = parse_scalar(coeff)
        if not c.is_zero():
            el[mono] = c
    return el


def lambda_poly_to_obj(poly):
    return [element_to_obj(c) for c in lp_trim(list(poly))]


def lambda_poly_from_obj(obj):
    return lp_trim([element_from_obj(c) for c in obj])


def algebra_to_obj(va):
    gens = []
    for g in va.generators:
        gens.append({
            "name": g.name,
            "parity": g.parity,
            "weight": format_rational(g.weight),
            "phase": format_rational(g.phase),
            "zeta": format_rational(g.zeta),
        })
    table = {}
    for (i, j), poly in va.table.items():
        table["%d,%d" % (i, j)] = lambda_poly_to_obj(poly)
    return {"generators": gens, "table": table}


def algebra_from_obj(obj, validate=True):
    gens = []
    for g in obj["generators"]:
        gens.append(Generator(g["name"], int(g["parity"]),
                              parse_rational(g["weight"]),
                              parse_rational(g["phase"]),
                              parse_rational(g["zeta"])))
    table = {}
    for key, poly in obj["table"].items():
        i, j = (int(t) for t in key.split(","))
        table[(i, j)] = lambda_poly_from_obj(poly)
    return VertexAlgebra(gens, table, validate=validate)


def zhu_element_to_obj(el):
    return [[list(w), format_scalar(c)] for w, c in sorted(el.items())]


def zhu_element_from_obj(obj):
    out = {}
    for word, coeff in obj:
        c = parse_scalar(coeff)
        if not c.is_zero():
            out[tuple(int(a) for a in word)] = c
    return out


def dumps(obj):
    """Canonical JSON text: sorted keys, no trailing whitespace."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text):
    return json.loads(text)


def save_algebra(va, path):
    with open(path, "w") as fh:
        fh.write(dumps(algebra_to_obj(va)))


def load_algebra(path, validate=True):
    with open(path) as fh:
        return algebra_from_obj(json.load(fh), validate=validate)
