"""Exact scalar arithmetic: rationals, rational functions in the level k, phases.

Rationals are plain ``fractions.Fraction``.  Scalars are elements of Q(k),
stored as a pair of coprime polynomials with monic denominator.  Phases are
rationals reduced mod 1, representing classes in Q/Z.
"""
from __future__ import annotations

from fractions import Fraction
from math import floor
import re

Rational = Fraction

ZERO_R = Fraction(0)
ONE_R = Fraction(1)


# ---------------------------------------------------------------------------
# polynomials over Q, little-endian coefficient tuples, () is the zero poly;
# integer coefficients are stored as plain ints (int arithmetic is much
# faster than Fraction and the two mix transparently)

def _ptrim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO_R] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    """Polynomial division: a = q*b + r with deg r < deg b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO_R] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(r) > db and any(c != 0 for c in r):
        dr = len(r) - 1
        if r[dr] == 0:
            r.pop()
            continue
        if dr < db:
            break
        c = Fraction(r[dr]) / lead
        q[dr - db] = c
        for i in range(len(b)):
            r[dr - db + i] -= c * b[i]
        r.pop()
    return _ptrim(q), _ptrim(r)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, Fraction(1) / a[-1])
    return a


class Scalar:
    """A rational function in the formal level parameter k over Q."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=(1,), _reduced=False):
        if not _reduced:
            num = _ptrim(num)
            den = _ptrim(den)
            if not den:
                raise ZeroDivisionError("zero denominator in Scalar")
            if not num:
                den = (1,)
            elif den == (1,):
                pass
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    inv = Fraction(1) / lead
                    num = _pscale(num, inv)
                    den = _pscale(den, inv)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def of(q):
        """Wrap a rational (or int) as a constant scalar."""
        if type(q) is not int:
            if type(q) is not Fraction:
                q = Fraction(q)
            if q.denominator == 1:
                q = q.numerator
        if q == 0:
            return S_ZERO
        return Scalar((q,), (1,), _reduced=True)

    def is_zero(self):
        return not self.num

    def is_const(self):
        return len(self.num) <= 1 and self.den == (1,)

    def const_value(self):
        if not self.is_const():
            raise ValueError("scalar is not constant: %s" % self)
        return Fraction(self.num[0]) if self.num else ZERO_R

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.of(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return Scalar(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Scalar(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.of(other)
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.of(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.of(other)
        ns, no = self.num, other.num
        if not ns or not no:
            return S_ZERO
        if self.den == (1,) and other.den == (1,):
            # polynomial times polynomial needs no gcd reduction
            if len(ns) == 1 and len(no) == 1:
                c = ns[0] * no[0]
                if type(c) is not int and c.denominator == 1:
                    c = c.numerator
                return Scalar((c,), (1,), _reduced=True)
            return Scalar(_pmul(ns, no), (1,), _reduced=True)
        return Scalar(_pmul(ns, no), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar.of(other)
        if not other.num:
            raise ZeroDivisionError("division by zero Scalar")
        if not self.num:
            return S_ZERO
        return Scalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return Scalar.of(other) / self

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.of(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def specialize(self, k_value):
        """Evaluate at a rational level; raises on a pole."""
        k_value = Fraction(k_value)
        den = _peval(self.den, k_value)
        if den == 0:
            raise ZeroDivisionError("scalar has a pole at k = %s" % k_value)
        return Fraction(_peval(self.num, k_value)) / den

    def __repr__(self):
        return "Scalar(%s)" % format_scalar(self)


def _peval(cs, x):
    acc = ZERO_R
    for c in reversed(cs):
        acc = acc * x + c
    return acc


S_ZERO = Scalar((), (1,), _reduced=True)
S_ONE = Scalar((1,), (1,), _reduced=True)
S_K = Scalar((0, 1), (1,), _reduced=True)


# ---------------------------------------------------------------------------
# formatting / parsing

def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def parse_rational(s):
    return Fraction(s.strip())


def _format_poly(cs):
    if not cs:
        return "0"
    parts = []
    for n in range(len(cs) - 1, -1, -1):
        c = cs[n]
        if c == 0:
            continue
        if n == 0:
            mono = format_rational(abs(c))
        else:
            kpow = "k" if n == 1 else "k^%d" % n
            mono = kpow if abs(c) == 1 else "%s*%s" % (format_rational(abs(c)), kpow)
        if not parts:
            parts.append(mono if c > 0 else "-" + mono)
        else:
            parts.append(("+ " if c > 0 else "- ") + mono)
    return " ".join(parts)


def format_scalar(s):
    if s.den == (1,):
        return _format_poly(s.num)
    num = _format_poly(s.num)
    den = _format_poly(s.den)
    return "(%s)/(%s)" % (num, den)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?"
    r"(?:(?P<k>k)(?:\^(?P<pow>\d+))?)?"
)


def _parse_poly(s):
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    coeffs = {}
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse polynomial %r at offset %d" % (s, pos))
        sign, coef, kvar, kpow = m.group("sign", "coef", "k", "pow")
        if coef is None and kvar is None:
            raise ValueError("cannot parse polynomial %r at offset %d" % (s, pos))
        c = Fraction(coef) if coef is not None else ONE_R
        if sign == "-":
            c = -c
        n = 0
        if kvar is not None:
            n = int(kpow) if kpow is not None else 1
        coeffs[n] = coeffs.get(n, ZERO_R) + c
        seen = True
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
    if not seen:
        raise ValueError("empty polynomial string")
    deg = max(coeffs)
    return _ptrim([coeffs.get(i, ZERO_R) for i in range(deg + 1)])


def parse_scalar(s):
    s = s.strip()
    # A quotient is always emitted as "(num)/(den)"; any other "/" belongs
    # to a fractional coefficient such as "1/2*k^3".
    if s.startswith("("):
        depth = 0
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    if i + 1 < len(s) and s[i + 1] == "/":
                        return Scalar(_parse_poly(s[:i + 1]),
                                      _parse_poly(s[i + 1 + 1:]))
                    break
    if "k" not in s:
        return Scalar.of(Fraction(s.replace(" ", "")))
    return Scalar(_parse_poly(s))


# ---------------------------------------------------------------------------
# grading helpers

def phase_mod1(q):
    """Canonical representative in [0, 1) of a rational mod 1."""
    q = Fraction(q)
    return q - floor(q)


def gen_binom(x, j):
    """Generalized binomial coefficient binom(x, j) = x(x-1)...(x-j+1)/j!."""
    if j < 0:
        raise ValueError("gen_binom needs j >= 0")
    x = Fraction(x)
    acc = ONE_R
    for i in range(j):
        acc = acc * (x - i) / (i + 1)
    return acc


def epsilon(phase, weight):
    """The unique eps in (-1, 0] with eps + weight = phase mod 1."""
    r = phase_mod1(Fraction(phase) - Fraction(weight))
    return r if r == 0 else r - 1


def chi(eps_a, eps_b):
    """floor(-eps_a - eps_b) for eps in (-1, 0]: 1 iff eps_a + eps_b <= -1."""
    for e in (eps_a, eps_b):
        if not (-1 < e <= 0):
            raise ValueError("epsilon out of range (-1, 0]: %s" % e)
    return 1 if eps_a + eps_b <= -1 else 0
