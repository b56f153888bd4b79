"""Seeded random elements for identity testing.

Samples are small sums of bigrade-homogeneous monomials: fixing a seed fixes
the sample stream, so reports built from them are reproducible.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .scalars import Scalar
from .elements import el_mono, el_add_into


def random_monomial(rng, va, max_factors=2, max_derivative=1, max_weight=4):
    """A single admissible monomial of weight at most max_weight, or None."""
    for _ in range(30):
        nfac = rng.randint(1, max_factors)
        factors = []
        for _ in range(nfac):
            alpha = rng.randrange(len(va.generators))
            kk = rng.randint(0, max_derivative)
            factors.append((alpha, kk))
        factors.sort()
        ok = True
        for i in range(len(factors) - 1):
            if factors[i] == factors[i + 1] and va.generators[factors[i][0]].parity:
                ok = False
                break
        mono = tuple(factors)
        if ok and va.mono_weight(mono) <= max_weight:
            return mono
    return None


def random_homogeneous(rng, va, max_terms=2, max_factors=2, max_derivative=1,
                       max_weight=4):
    """A bigrade-homogeneous element: monomials sharing weight, phase, parity."""
    first = None
    while first is None:
        first = random_monomial(rng, va, max_factors, max_derivative, max_weight)
    key = (va.mono_weight(first), va.mono_phase(first), va.mono_parity(first))
    out = el_mono(first, Scalar.of(Fraction(rng.randint(-3, 3) or 1)))
    extra = rng.randint(0, max_terms - 1)
    for _ in range(extra):
        m = random_monomial(rng, va, max_factors, max_derivative, max_weight)
        if m is None:
            continue
        if (va.mono_weight(m), va.mono_phase(m), va.mono_parity(m)) != key:
            continue
        el_add_into(out, el_mono(m, Scalar.of(Fraction(rng.randint(-3, 3) or 1))))
    return out


def sample_stream(seed, va, count, **kw):
    rng = random.Random(seed)
    return [random_homogeneous(rng, va, **kw) for _ in range(count)]
