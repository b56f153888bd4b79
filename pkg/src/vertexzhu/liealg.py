"""Finite-dimensional Lie superalgebra data for the preset constructions.

Structure constants are stored sparsely: bracket[(i, j)] maps a basis index l
to the rational coefficient of basis[l] in [b_i, b_j], for every ordered pair
(i, j).  The bracket is the supercommutator, so bracket[(i, i)] for odd b_i
holds the anticommutator {b_i, b_i}.
"""
from __future__ import annotations

from fractions import Fraction


class LieError(ValueError):
    pass


class LieSuperData:
    def __init__(self, names, parities, brackets, form, x=None, f=None,
                 dual_coxeter=None, validate=True):
        self.names = list(names)
        self.parities = [int(p) & 1 for p in parities]
        self.dim = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        # complete the table by antisupersymmetry
        self.bracket = {}
        for (i, j), entry in brackets.items():
            self.bracket[(i, j)] = {l: Fraction(c) for l, c in entry.items()
                                    if c != 0}
        for (i, j) in list(self.bracket):
            if (j, i) not in self.bracket and i != j:
                sign = -1 if not (self.parities[i] and self.parities[j]) else 1
                self.bracket[(j, i)] = {l: sign * c
                                        for l, c in self.bracket[(i, j)].items()}
        self.form = {}
        for (i, j), c in form.items():
            c = Fraction(c)
            if c != 0:
                self.form[(i, j)] = c
                if (j, i) not in form:
                    sign = -1 if (self.parities[i] and self.parities[j]) else 1
                    self.form[(j, i)] = sign * c
        self.x = self._as_vector(x)
        self.f = self._as_vector(f)
        self.dual_coxeter = None if dual_coxeter is None else Fraction(dual_coxeter)
        if validate:
            self._validate()

    def _as_vector(self, v):
        if v is None:
            return None
        out = [Fraction(0)] * self.dim
        for name, c in v.items():
            out[self.index[name]] = Fraction(c)
        return out

    # -- basic algebra ------------------------------------------------------

    def brk(self, i, j):
        return self.bracket.get((i, j), {})

    def brk_vec(self, u, v):
        """Supercommutator of two coefficient vectors."""
        out = {}
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                for l, c in self.brk(i, j).items():
                    out[l] = out.get(l, Fraction(0)) + ci * cj * c
        return {l: c for l, c in out.items() if c != 0}

    def pair(self, i, j):
        return self.form.get((i, j), Fraction(0))

    def pair_vec(self, u, v):
        acc = Fraction(0)
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj:
                    acc += ci * cj * self.pair(i, j)
        return acc

    def basis_vector(self, i):
        out = [Fraction(0)] * self.dim
        out[i] = Fraction(1)
        return out

    def ad_matrix(self, vec):
        """Matrix of ad(vec) in the declared basis, columns indexed by input."""
        cols = []
        for j in range(self.dim):
            res = self.brk_vec(vec, self.basis_vector(j))
            cols.append([res.get(l, Fraction(0)) for l in range(self.dim)])
        return [[cols[j][l] for j in range(self.dim)] for l in range(self.dim)]

    def grading(self):
        """ad x eigenvalue per basis element; requires ad x diagonal."""
        if self.x is None:
            return [Fraction(0)] * self.dim
        js = []
        for a in range(self.dim):
            res = self.brk_vec(self.x, self.basis_vector(a))
            offdiag = {l: c for l, c in res.items() if l != a}
            if offdiag:
                raise LieError("ad x is not diagonal on basis element %s"
                               % self.names[a])
            js.append(res.get(a, Fraction(0)))
        return js

    def killing(self, indices=None):
        """Supertrace form str(ad a . ad b), optionally within a subalgebra."""
        if indices is None:
            indices = list(range(self.dim))
        idx = list(indices)
        table = {}
        for i in idx:
            for j in idx:
                acc = Fraction(0)
                for l in idx:
                    # coefficient of b_l in [b_i, [b_j, b_l]]
                    inner = self.brk(j, l)
                    c = Fraction(0)
                    for m, cm in inner.items():
                        if m in idx:
                            c += cm * self.brk(i, m).get(l, Fraction(0))
                    sign = -1 if self.parities[l] else 1
                    acc += sign * c
                if acc != 0:
                    table[(i, j)] = acc
        return table

    # -- validation ---------------------------------------------------------

    def _validate(self):
        dim = self.dim
        # antisupersymmetry
        for i in range(dim):
            for j in range(dim):
                sign = -1 if not (self.parities[i] and self.parities[j]) else 1
                lhs = self.brk(i, j)
                rhs = self.brk(j, i)
                for l in set(lhs) | set(rhs):
                    if lhs.get(l, 0) != sign * rhs.get(l, 0):
                        raise LieError("bracket not antisupersymmetric on (%s, %s)"
                                       % (self.names[i], self.names[j]))
                # parity homogeneity
                want = self.parities[i] ^ self.parities[j]
                for l in lhs:
                    if self.parities[l] != want:
                        raise LieError("bracket parity violation on (%s, %s)"
                                       % (self.names[i], self.names[j]))
        # super Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)}[b,[a,c]]
        for a in range(dim):
            for b in range(dim):
                sign = -1 if (self.parities[a] and self.parities[b]) else 1
                for c in range(dim):
                    acc = {}
                    for m, cm in self.brk(b, c).items():
                        for l, cl in self.brk(a, m).items():
                            acc[l] = acc.get(l, Fraction(0)) + cm * cl
                    for m, cm in self.brk(a, b).items():
                        for l, cl in self.brk(m, c).items():
                            acc[l] = acc.get(l, Fraction(0)) - cm * cl
                    for m, cm in self.brk(a, c).items():
                        for l, cl in self.brk(b, m).items():
                            acc[l] = acc.get(l, Fraction(0)) - sign * cm * cl
                    if any(v != 0 for v in acc.values()):
                        raise LieError("Jacobi fails on (%s, %s, %s)"
                                       % (self.names[a], self.names[b],
                                          self.names[c]))
        # form: even, supersymmetric, invariant
        for (i, j), c in self.form.items():
            if self.parities[i] != self.parities[j]:
                raise LieError("form pairs opposite parities (%s, %s)"
                               % (self.names[i], self.names[j]))
            sign = -1 if (self.parities[i] and self.parities[j]) else 1
            if self.form.get((j, i), Fraction(0)) != sign * c:
                raise LieError("form not supersymmetric on (%s, %s)"
                               % (self.names[i], self.names[j]))
        for a in range(dim):
            for b in range(dim):
                for c in range(dim):
                    lhs = sum((cl * self.pair(l, c)
                               for l, cl in self.brk(a, b).items()),
                              Fraction(0))
                    rhs = sum((cl * self.pair(a, l)
                               for l, cl in self.brk(b, c).items()),
                              Fraction(0))
                    if lhs != rhs:
                        raise LieError("form not invariant on (%s, %s, %s)"
                                       % (self.names[a], self.names[b],
                                          self.names[c]))

    def check_good_pair(self):
        """(f, x): f in g_{-1}, ad f injective on g_j for j >= 1/2 and
        surjective g_j -> g_{j-1} for j <= -1/2; checked blockwise as rank
        conditions on the graded pieces."""
        if self.f is None or self.x is None:
            raise LieError("good-pair check needs both f and x")
        js = self.grading()
        fres = self.brk_vec(self.x, self.f)
        for l, c in fres.items():
            if c != -self.f[l]:
                raise LieError("f is not of ad x degree -1")
        for l in range(self.dim):
            if self.f[l] != 0 and js[l] != -1:
                raise LieError("f is not of ad x degree -1")
        from .linalg import frac_rank
        grades = sorted(set(js))
        for j in grades:
            src = [a for a in range(self.dim) if js[a] == j]
            tgt = [a for a in range(self.dim) if js[a] == j - 1]
            rows = []
            for a in src:
                res = self.brk_vec(self.f, self.basis_vector(a))
                rows.append([res.get(t, Fraction(0)) for t in tgt])
            if j >= Fraction(1, 2) and src:
                if frac_rank(rows) != len(src):
                    raise LieError("ad f not injective on degree %s" % j)
            if j - 1 <= Fraction(-1, 2) and tgt:
                if frac_rank(rows) != len(tgt):
                    raise LieError("ad f not surjective onto degree %s" % (j - 1))
        return True


def sl2():
    """sl(2) with the trace form of the fundamental rep: (e|f)=1, (h|h)=2."""
    names = ["e", "h", "f"]
    brackets = {
        (1, 0): {0: 2},        # [h, e] = 2e
        (1, 2): {2: -2},       # [h, f] = -2f
        (0, 2): {1: 1},        # [e, f] = h
    }
    form = {(0, 2): 1, (1, 1): 2}
    return LieSuperData(names, [0, 0, 0], brackets, form,
                        x=None, f={"f": 1}, dual_coxeter=2)


def osp12():
    """osp(1|2): sl(2) plus odd root vectors xp, xm; (theta|theta) = 2."""
    names = ["e", "h", "f", "xp", "xm"]
    parities = [0, 0, 0, 1, 1]
    brackets = {
        (1, 0): {0: 2},
        (1, 2): {2: -2},
        (0, 2): {1: 1},
        (1, 3): {3: 1},        # [h, xp] = xp
        (1, 4): {4: -1},       # [h, xm] = -xm
        (0, 4): {3: 1},        # [e, xm] = xp
        (2, 3): {4: 1},        # [f, xp] = xm
        (3, 3): {0: -2},       # {xp, xp} = -2e
        (4, 4): {2: 2},        # {xm, xm} = 2f
        (3, 4): {1: 1},        # {xp, xm} = h
    }
    form = {(0, 2): 1, (1, 1): 2, (3, 4): 2}
    return LieSuperData(names, parities, brackets, form,
                        x=None, f={"f": 1}, dual_coxeter=Fraction(3, 2))


def with_x(data, x):
    """Copy of the data with the grading element set (dict name -> coeff)."""
    return LieSuperData(data.names, data.parities,
                        {k: dict(v) for k, v in data.bracket.items()},
                        {k: v for k, v in data.form.items()},
                        x=x, f={data.names[l]: c
                                for l, c in enumerate(data.f or [])
                                if c != 0} if data.f else None,
                        dual_coxeter=data.dual_coxeter, validate=False)
