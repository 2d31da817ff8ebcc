"""Exact scalars.

Rationals are plain ``fractions.Fraction``.  This module adds univariate
rational functions in a deformation parameter ``t`` (with valuation and
evaluation at ``t = 0``) and truncated power series in ``t`` used by the
deformation oracle.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence, Union

Rational = Fraction


class PoleError(ArithmeticError):
    """Raised when a limit at t = 0 does not exist."""


class PrecisionError(ArithmeticError):
    """A truncated series ran out of known coefficients."""


# ---------------------------------------------------------------------------
# dense polynomials over Q, stored low degree first, trailing zeros trimmed

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _pneg(a):
    return tuple(-v for v in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u == 0:
            continue
        for j, v in enumerate(b):
            out[i + j] += u * v
    return _trim(out)


def _pdivmod(a, b):
    """Division with remainder over Q."""
    a = [Fraction(v) for v in a]
    lead = Fraction(b[-1])
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j, v in enumerate(b):
                a[i - db + j] -= c * v
    return _trim(q), _trim(a[:db])


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return a


def _primitive(c):
    """Scale a rational coefficient list to coprime integers; also return the factor."""
    den = reduce(lambda x, y: x * y // gcd(x, y), (Fraction(v).denominator for v in c), 1)
    ints = [int(Fraction(v) * den) for v in c]
    g = reduce(gcd, ints, 0) or 1
    return tuple(v // g for v in ints), Fraction(g, den)


def _order(c):
    for i, v in enumerate(c):
        if v:
            return i
    raise ZeroDivisionError("order of zero polynomial")


def _peval0(c):
    return c[0] if c else 0


class RationalFunction:
    """Element of Q(t) in canonical form.

    Numerator and denominator are coprime integer polynomials, jointly
    primitive, with the denominator's leading coefficient positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence = (), den: Sequence = (1,)):
        num = _trim(num)
        den = _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (1,)
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        pn, fn = _primitive(num)
        pd, fd = _primitive(den)
        # num/den = (fn/fd) * pn/pd; push the constant into the numerator
        c = fn / fd
        pn = tuple(v * c.numerator for v in pn)
        pd = tuple(v * c.denominator for v in pd)
        if pd[-1] < 0:
            pn, pd = _pneg(pn), _pneg(pd)
        self.num, self.den = pn, pd

    @classmethod
    def t(cls) -> "RationalFunction":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        c = Fraction(c)
        return cls((c.numerator,), (c.denominator,))

    @staticmethod
    def _lift(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction.const(x)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
                                _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction.const(1) / (self ** -e)
        out = RationalFunction.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if len(self.num) <= 1 and self.den == (1,):
            return hash(Fraction(_peval0(self.num)))
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def valuation(self) -> int:
        return valuation(self)

    def limit_at_zero(self) -> Fraction:
        return limit_at_zero(self)

    def __repr__(self):
        return f"RationalFunction({format_scalar(self)!r})"

    __str__ = lambda self: format_scalar(self)


def valuation(f) -> int:
    """Order of vanishing at t = 0."""
    if isinstance(f, (int, Fraction)):
        if f == 0:
            raise ZeroDivisionError("valuation of zero")
        return 0
    if not f.num:
        raise ZeroDivisionError("valuation of zero")
    return _order(f.num) - _order(f.den)


def limit_at_zero(f) -> Fraction:
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    if not f.num:
        return Fraction(0)
    v = valuation(f)
    if v < 0:
        raise PoleError("pole at 0")
    if v > 0:
        return Fraction(0)
    return Fraction(f.num[0], f.den[0])


# ---------------------------------------------------------------------------
# truncated power series

class Series:
    """Power series in t with integer coefficients, known modulo t**prec.

    Only ring operations are provided; projective code rescales whole
    coordinate vectors, so division is never needed.
    """

    __slots__ = ("c", "prec")

    def __init__(self, coeffs, prec: int):
        c = list(coeffs[:prec])
        while c and c[-1] == 0:
            c.pop()
        self.c = c
        self.prec = prec

    def __add__(self, o):
        p = min(self.prec, o.prec)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = a[:p]
        for i, v in enumerate(b[:p]):
            out[i] += v
        return Series(out, p)

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return Series([-v for v in self.c], self.prec)

    def __mul__(self, o):
        if isinstance(o, int):
            return Series([o * v for v in self.c], self.prec)
        p = min(self.prec, o.prec)
        a, b = self.c, o.c
        if not a or not b:
            return Series([], p)
        out = [0] * min(p, len(a) + len(b) - 1)
        n = len(out)
        for i, u in enumerate(a[:n]):
            if u:
                for j, v in enumerate(b[: n - i]):
                    out[i + j] += u * v
        return Series(out, p)

    __rmul__ = __mul__

    def order(self) -> int:
        """Index of the first nonzero coefficient, or ``prec`` if none is known."""
        for i, v in enumerate(self.c):
            if v:
                return i
        return self.prec

    def shift_down(self, v: int) -> "Series":
        return Series(self.c[v:], self.prec - v)

    def __repr__(self):
        return f"Series({self.c[:4]}..., prec={self.prec})"


def series_from_rf(f: RationalFunction, prec: int) -> Series:
    """Expand a rational function with nonnegative valuation, scaled to integers."""
    if f and valuation(f) < 0:
        raise PoleError("pole at 0")
    den = f.den
    inv = [Fraction(0)] * prec
    inv[0] = Fraction(1, den[0])
    for i in range(1, prec):
        s = sum(den[j] * inv[i - j] for j in range(1, min(i, len(den) - 1) + 1))
        inv[i] = -s / den[0]
    out = [Fraction(0)] * prec
    for i, a in enumerate(f.num[:prec]):
        for j in range(prec - i):
            out[i + j] += a * inv[j]
    ints, _ = _primitive(out) if any(out) else ([0] * prec, 1)
    return Series(list(ints), prec)


# ---------------------------------------------------------------------------
# text encoding

Scalar = Union[int, Fraction, RationalFunction]


def _format_poly(c) -> str:
    if not c:
        return "0"
    parts = []
    for i, v in enumerate(c):
        if v == 0:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        body = mono if (mono and abs(v) == 1) else (f"{abs(v)}*{mono}" if mono else str(abs(v)))
        parts.append((v, body))
    s = ("-" if parts[0][0] < 0 else "") + parts[0][1]
    for v, body in parts[1:]:
        s += (" - " if v < 0 else " + ") + body
    return s


def format_scalar(x) -> str:
    if isinstance(x, RationalFunction):
        return f"({_format_poly(x.num)})/({_format_poly(x.den)})"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_TERM = re.compile(r"^(\d*)(?:\*?t(?:\^(\d+))?)?$")


def _parse_poly(s: str):
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    toks = re.findall(r"[+-]?[^+-]+", s)
    coeffs: dict[int, int] = {}
    for tok in toks:
        sign = -1 if tok[0] == "-" else 1
        body = tok.lstrip("+-")
        m = _TERM.match(body)
        if not m or not body:
            raise ValueError(f"bad polynomial term {tok!r}")
        has_t = "t" in body
        c = int(m.group(1)) if m.group(1) else 1
        if not has_t and not m.group(1):
            raise ValueError(f"bad polynomial term {tok!r}")
        e = int(m.group(2)) if m.group(2) else (1 if has_t else 0)
        coeffs[e] = coeffs.get(e, 0) + sign * c
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return tuple(out)


def parse_scalar(s: str):
    """Inverse of :func:`format_scalar`."""
    s = s.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
    if m:
        return RationalFunction(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
    return Fraction(s)
