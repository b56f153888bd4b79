"""The twisted Zhu algebra of a freely generated pregraded vertex superalgebra.

Letters of the Zhu algebra are the fixed generators (those with epsilon = 0);
elements are sparse maps from PBW-ordered words of letter indices to Scalars.
The projection tau rewrites a vertex element into the *-monomial basis by
recursion on the pregrade, deletes *-monomials containing a non-fixed letter,
collapses derivative factors d^(k) e to binom(-Delta, k) e, and straightens
products with the commutation rule

    [tau(a), tau(b)] = sum_j binom(Delta_a - 1, j) tau(a_(j) b).
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, gen_binom, epsilon
from .elements import (el_zero, el_mono, el_add_into, el_sub, el_scale,
                       el_is_zero)
from . import twisted as tw


def z_zero():
    return {}


def z_word(word, coeff=None):
    if coeff is None:
        coeff = Scalar.of(1)
    elif not isinstance(coeff, Scalar):
        coeff = Scalar.of(coeff)
    if coeff.is_zero():
        return {}
    return {tuple(word): coeff}


def z_one(coeff=None):
    return z_word((), coeff)


def z_add_into(acc, other, factor=None):
    for w, c in other.items():
        if factor is not None:
            c = factor * c
        cur = acc.get(w)
        if cur is None:
            if not c.is_zero():
                acc[w] = c
        else:
            cur = cur + c
            if cur.is_zero():
                del acc[w]
            else:
                acc[w] = cur
    return acc


def z_scale(x, factor):
    if not isinstance(factor, Scalar):
        factor = Scalar.of(factor)
    if factor.is_zero():
        return {}
    return {w: factor * c for w, c in x.items()}


def z_sub(x, y):
    out = dict(x)
    return z_add_into(out, y, Scalar.of(-1))


def z_eq(x, y):
    return x == y


class ZhuAlgebra:
    """Zhu algebra attached to a VertexAlgebra with declared phases."""

    def __init__(self, va):
        self.va = va
        self.letters = []
        for i, g in enumerate(va.generators):
            if epsilon(g.phase, g.weight) == 0:
                self.letters.append(i)
        self.letter_set = set(self.letters)
        self._tau_memo = {}
        self._mul_memo = {}

    # -- grading helpers ----------------------------------------------------

    def word_parity(self, word):
        p = 0
        for a in word:
            p ^= self.va.generators[a].parity
        return p

    def word_weight(self, word):
        return sum((self.va.generators[a].weight for a in word), Fraction(0))

    def word_zeta(self, word):
        return sum((self.va.generators[a].zeta for a in word), Fraction(0))

    def el_parity(self, x):
        par = None
        for w in x:
            p = self.word_parity(w)
            if par is None:
                par = p
            elif par != p:
                return None
        return 0 if par is None else par

    def word_admissible(self, word):
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                return False
            if word[i] == word[i + 1] and self.va.generators[word[i]].parity:
                return False
        return True

    # -- the projection tau -------------------------------------------------

    def is_fixed(self, el):
        """True iff every monomial has epsilon = 0."""
        for m in el:
            w = self.va.mono_weight(m)
            if epsilon(self.va.mono_phase(m), w) != 0:
                return False
        return True

    def tau(self, el):
        if not self.is_fixed(el):
            raise ValueError("tau is defined on the fixed-point subspace only")
        out = z_zero()
        for m, c in el.items():
            z_add_into(out, self._tau_mono(m), c)
        return out

    def _tau_mono(self, mono):
        memo = self._tau_memo
        res = memo.get(mono)
        if res is not None:
            return res
        va = self.va
        if not mono:
            res = z_one()
        elif len(mono) == 1:
            alpha, kk = mono[0]
            if alpha not in self.letter_set:
                res = z_zero()
            else:
                coeff = gen_binom(-va.generators[alpha].weight, kk)
                res = z_word((alpha,), coeff)
        else:
            # rewrite through the right-to-left *-product of the factors;
            # the discrepancy has strictly lower pregrade
            chain = el_mono((mono[-1],))
            for factor in reversed(mono[:-1]):
                chain = tw.star(va, el_mono((factor,)), chain)
            diff = el_sub(chain, el_mono(mono))
            zm = va.mono_zeta(mono)
            for m2 in diff:
                if va.mono_zeta(m2) >= zm:
                    raise AssertionError("pregrade did not decrease")
            star_part = z_one()
            for factor in mono:
                star_part = self.mul(star_part, self._tau_mono((factor,)))
            res = z_sub(star_part, self.tau(diff))
        memo[mono] = res
        return res

    def j_contains(self, el):
        """True iff el lies in the defining ideal, i.e. tau(el) = 0."""
        return not self.tau(el)

    # -- multiplication -----------------------------------------------------

    def _letter_bracket(self, a, b):
        """[tau(e_a), tau(e_b)] = sum_j binom(Delta_a - 1, j) tau(e_a (j) e_b)."""
        va = self.va
        poly = va.lambda_bracket(el_mono(((a, 0),)), el_mono(((b, 0),)))
        out = z_zero()
        for j, coeff_el in enumerate(poly):
            coeff = gen_binom(va.generators[a].weight - 1, j)
            if coeff == 0 or not coeff_el:
                continue
            term = el_scale(coeff_el, Fraction(1))
            fact = 1
            for i in range(1, j + 1):
                fact *= i
            z_add_into(out, self.tau(term), Scalar.of(coeff * fact))
        return out

    def _word_mul(self, u, v):
        key = (u, v)
        memo = self._mul_memo
        res = memo.get(key)
        if res is not None:
            return res
        word = u + v
        res = self._straighten(word)
        memo[key] = res
        return res

    def _straighten(self, word):
        va = self.va
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            if x < y:
                continue
            prefix, suffix = word[:i], word[i + 2:]
            if x == y:
                if not va.generators[x].parity:
                    continue
                # odd square: tau(x)^2 = (1/2){tau(x), tau(x)}
                mid = z_scale(self._letter_bracket(x, x), Fraction(1, 2))
                res = self._sandwich(prefix, mid, suffix)
                return res
            sign = -1 if (va.generators[x].parity and
                          va.generators[y].parity) else 1
            swapped = self._straighten(prefix + (y, x) + suffix)
            res = z_scale(swapped, Fraction(sign))
            mid = self._letter_bracket(x, y)
            z_add_into(res, self._sandwich(prefix, mid, suffix))
            return res
        return z_word(word)

    def _sandwich(self, prefix, mid, suffix):
        out = z_zero()
        for w, c in mid.items():
            left = self._word_mul(prefix, w)
            for w2, c2 in left.items():
                z_add_into(out, self._word_mul(w2, suffix), c * c2)
        return out

    def mul(self, x, y):
        out = z_zero()
        for u, cu in x.items():
            for v, cv in y.items():
                z_add_into(out, self._word_mul(u, v), cu * cv)
        return out

    def bracket(self, x, y):
        px, py = self.el_parity(x), self.el_parity(y)
        if px is None or py is None:
            raise ValueError("bracket needs parity-homogeneous elements")
        sign = -1 if (px and py) else 1
        out = self.mul(x, y)
        z_add_into(out, self.mul(y, x), Scalar.of(-sign))
        return out

    def letter(self, alpha):
        if alpha not in self.letter_set:
            raise ValueError("generator %d is not fixed" % alpha)
        return z_word((alpha,))

    def show(self, x):
        if not x:
            return "0"
        from .scalars import format_scalar
        names = [g.name for g in self.va.generators]
        parts = []
        for w in sorted(x):
            cs = format_scalar(x[w])
            ws = " ".join(names[a] for a in w) if w else "1"
            if cs == "1" and w:
                parts.append(ws)
            elif cs == "-1" and w:
                parts.append("-%s" % ws)
            else:
                if "+" in cs[1:] or "- " in cs:
                    cs = "(%s)" % cs
                parts.append("%s %s" % (cs, ws) if w else cs)
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# census and graded-dimension comparisons

def iter_words(zhu, zeta_max=None, weight_max=None):
    """All admissible ZhuWords within the given zeta / weight cutoffs."""
    va = zhu.va
    letters = zhu.letters

    def rec(start, word, zeta, weight):
        yield tuple(word)
        for i in range(start, len(letters)):
            a = letters[i]
            g = va.generators[a]
            if word and word[-1] == a and g.parity:
                continue
            z2 = zeta + g.zeta
            w2 = weight + g.weight
            if zeta_max is not None and z2 > zeta_max:
                continue
            if weight_max is not None and w2 > weight_max:
                continue
            word.append(a)
            yield from rec(i, word, z2, w2)
            word.pop()

    yield from rec(0, [], Fraction(0), Fraction(0))


def iter_pbw_monomials(va, factors, zeta_max=None, weight_max=None):
    """Admissible vertex PBW monomials built from the given factor list."""
    factors = sorted(factors)

    def rec(start, mono, zeta, weight):
        yield tuple(mono)
        for i in range(start, len(factors)):
            f = factors[i]
            if mono and mono[-1] == f and va.generators[f[0]].parity:
                continue
            z2 = zeta + va.generators[f[0]].zeta
            w2 = weight + va.factor_weight(f)
            if zeta_max is not None and z2 > zeta_max:
                continue
            if weight_max is not None and w2 > weight_max:
                continue
            mono.append(f)
            yield from rec(i, mono, z2, w2)
            mono.pop()

    yield from rec(0, [], Fraction(0), Fraction(0))


def _image_rank(zhu, monos):
    """Rank of the tau-images of the monomials, in word coordinates."""
    from .linalg import rank
    images = [zhu.tau({m: Scalar.of(1)}) for m in monos]
    cols = sorted({w for img in images for w in img})
    col_index = {w: i for i, w in enumerate(cols)}
    rows = []
    for img in images:
        if not img:
            continue
        row = [Scalar.of(0)] * len(cols)
        for w, c in img.items():
            row[col_index[w]] = c
        rows.append(row)
    return rank(rows)


def pbw_census(zhu, zeta_max):
    """Filtration dimensions of the Zhu algebra, with a spanning-rank check.

    Returns a list of rows {zeta, words, rank}: the number of admissible
    words of total pregrade <= zeta, and the rank of the tau-images of the
    derivative-free vertex monomials within the same cutoff.  Theorem-level
    expectation: both equal the free PBW word count.
    """
    va = zhu.va
    step_vals = [g.zeta for g in va.generators]
    cuts = _grid(step_vals, zeta_max)
    words = list(iter_words(zhu, zeta_max=zeta_max))
    factors = [(a, 0) for a in zhu.letters]
    monos = [m for m in iter_pbw_monomials(va, factors, zeta_max=zeta_max)]
    rows = []
    for cut in cuts:
        wcount = sum(1 for w in words if zhu.word_zeta(w) <= cut)
        sub = [m for m in monos if va.mono_zeta(m) <= cut]
        rows.append({"zeta": cut, "words": wcount,
                     "rank": _image_rank(zhu, sub)})
    return rows


def _grid(step_vals, top):
    """Sorted lattice points 0..top generated by the given increments."""
    pts = {Fraction(0)}
    frontier = [Fraction(0)]
    while frontier:
        nxt = []
        for p in frontier:
            for s in step_vals:
                q = p + s
                if q <= top and q not in pts:
                    pts.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(pts)


def free_word_count(gens, bound, key):
    """Number of admissible words with sum(key) <= bound over (key, parity)
    pairs, computed by direct enumeration with memoized recursion."""
    gens = sorted(gens)

    def rec(start, used):
        total = 1
        for i in range(start, len(gens)):
            k, parity = gens[i]
            if used + k > bound:
                continue
            if parity:
                total += rec(i + 1, used + k)
            else:
                total += rec(i, used + k)
        return total

    return rec(0, Fraction(0))


def theorem_e_dims(zhu, delta_max, zeta_cap=None):
    """Graded dimensions of gr Zhu versus the free supercommutative count.

    The left side is obtained by straightening: ranks of tau-images of
    derivative-free vertex monomials, graded by the weight filtration.  When
    a fixed generator has weight 0 each graded piece is infinite-dimensional,
    so both sides are capped by the same pregrade bound zeta_cap.
    """
    va = zhu.va
    if zeta_cap is None:
        zeta_cap = Fraction(delta_max) + 2
    weights = sorted({w for w in
                      _grid([va.generators[a].weight for a in zhu.letters
                             if va.generators[a].weight > 0], Fraction(delta_max))})
    factors = [(a, 0) for a in zhu.letters]
    monos = list(iter_pbw_monomials(va, factors, zeta_max=zeta_cap,
                                    weight_max=Fraction(delta_max)))
    words = list(iter_words(zhu, zeta_max=zeta_cap,
                            weight_max=Fraction(delta_max)))
    gr = []
    free = []
    prev = 0
    for d in weights:
        sub = [m for m in monos if va.mono_weight(m) <= d]
        r = _image_rank(zhu, sub)
        gr.append({"weight": d, "dim": r - prev})
        prev = r
        free.append({"weight": d,
                     "dim": sum(1 for w in words if zhu.word_weight(w) == d)})
    return gr, free


def cor_zhur_check(zhu, kmax=6):
    """d^(k) e - binom(-Delta, k) e spans the kernel of tau on the span of
    the derivative tower of each fixed generator."""
    from .linalg import rank
    va = zhu.va
    for alpha in zhu.letters:
        delta = va.generators[alpha].weight
        for k in range(0, kmax + 1):
            v = el_mono(((alpha, k),))
            el_add_into(v, el_mono(((alpha, 0),)),
                        Scalar.of(-gen_binom(-delta, k)))
            if not zhu.j_contains(v):
                return False
        # tower has dimension kmax + 1; tau image is one-dimensional,
        # so the differences must have rank exactly kmax
        rows = []
        for k in range(1, kmax + 1):
            row = [Scalar.of(0)] * (kmax + 1)
            row[k] = Scalar.of(1)
            row[0] = Scalar.of(-gen_binom(-delta, k))
            rows.append(row)
        if rank(rows) != kmax:
            return False
    return True


def theorem_c_check(data, phases=None, level=None):
    """Zhu of an affine vertex superalgebra versus the fixed-point Lie algebra.

    In the shifted letters a~ = tau(a) - k(x|a) the Zhu bracket must reproduce
    the Lie bracket of the fixed-point subalgebra: equivalently

        [tau(a), tau(b)] = sum_c C_{ab}^c tau(e_c) - k (x|[a,b]) 1

    exactly in Q(k).  Returns a report with one row per fixed pair.
    """
    from .presets import affine
    from .scalars import S_K
    if level is None:
        level = S_K
    va = affine(data, level=level, phases=phases)
    zh = ZhuAlgebra(va)
    xvec = data.x or [Fraction(0)] * data.dim
    rows = []
    ok = True
    for a in zh.letters:
        for b in zh.letters:
            got = zh.bracket(zh.letter(a), zh.letter(b))
            want = z_zero()
            br = data.brk(a, b)
            for l, c in br.items():
                z_add_into(want, z_word((l,), c))
            pairing = data.pair_vec(xvec, [br.get(l, Fraction(0))
                                           for l in range(data.dim)])
            if pairing != 0:
                z_add_into(want, z_one(level * Scalar.of(-pairing)))
            match = z_eq(got, want)
            ok = ok and match
            rows.append({"a": data.names[a], "b": data.names[b],
                         "match": match, "got": zh.show(got),
                         "want": zh.show(want)})
    return {"pass": ok, "letters": [data.names[a] for a in zh.letters],
            "rows": rows}
