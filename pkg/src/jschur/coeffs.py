"""Exact coefficients: Laurent polynomials in ``v`` over the integers, their
fraction field, and the quantum integers built from them.

Both :class:`LaurentPoly` and :class:`RatFunc` are immutable and hashable.
A :class:`RatFunc` is always kept in canonical form, so ``==`` is semantic
equality of rational functions.
"""

from __future__ import annotations

from fractions import Fraction

from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Mapping, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

Scalar = Union[int, "LaurentPoly", "RatFunc"]


class LaurentPoly:
    """Element of Z[v, v^-1], stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: Dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                c = int(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, terms: Dict[int, int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def from_coeffs(cls, low: int, coeffs: Iterable[int]) -> "LaurentPoly":
        return cls({low + k: c for k, c in enumerate(coeffs)})

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def low(self) -> int:
        return min(self._terms)

    def high(self) -> int:
        return max(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def shift(self, k: int) -> "LaurentPoly":
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The ring involution v -> v^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def dense(self) -> Tuple[int, list]:
        """``(low, coeffs)`` with coeffs listed from the lowest exponent up."""
        lo, hi = self.low(), self.high()
        return lo, [self._terms.get(e, 0) for e in range(lo, hi + 1)]

    def evaluate(self, x):
        if isinstance(x, int):
            x = Fraction(x)
        return sum((c * x ** e for e, c in self._terms.items()), Fraction(0))

    # arithmetic
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[int, int] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.is_monomial():
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly.monomial(e * k, c ** (-k))
            raise ValueError("negative power of a non-unit Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
            if not mono:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mono}")
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c:+d}*{mono}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    # JSON
    def to_json(self) -> Dict[str, str]:
        return {str(e): str(c) for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in obj.items()})


def _poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Primitive gcd of two nonzero Laurent polynomials, normalized to
    lowest exponent 0 and positive leading coefficient."""
    lp, cp = p.dense()
    lq, cq = q.dense()
    # sympy dense lists run from the highest degree down
    g = dup_gcd([ZZ(c) for c in reversed(cp)], [ZZ(c) for c in reversed(cq)], ZZ)
    coeffs = [int(c) for c in reversed(g)]
    return LaurentPoly.from_coeffs(0, coeffs)


def _exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Exact division p / d in Z[v, v^-1]; raises if it does not divide."""
    if d.is_monomial():
        (e, c), = d._terms.items()
        out = {}
        for pe, pc in p._terms.items():
            q, rem = divmod(pc, c)
            if rem:
                raise ArithmeticError("inexact division")
            out[pe - e] = q
        return LaurentPoly._raw(out)
    rem = dict(p._terms)
    dl, dh = d.low(), d.high()
    lead = d._terms[dh]
    floor = p.low() - dl
    quot: Dict[int, int] = {}
    while rem:
        h = max(rem)
        shift = h - dh
        if shift < floor:
            raise ArithmeticError("inexact division")
        c, r = divmod(rem[h], lead)
        if r:
            raise ArithmeticError("inexact division")
        quot[shift] = c
        for e, dc in d._terms.items():
            k = e + shift
            s = rem.get(k, 0) - c * dc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(quot)


class ZeroDivision(ArithmeticError):
    """Division of a rational function by zero."""


class RatFunc:
    """Element of Q(v), kept as a canonical quotient of Laurent polynomials.

    Canonical form: numerator and denominator coprime, no common integer
    content, denominator has lowest exponent 0 and a positive leading
    coefficient. The zero function is ``0 / 1``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Scalar = 0, den: Scalar | None = None, *, _canonical=False):
        if isinstance(num, RatFunc):
            if den is None:
                self.num, self.den, self._hash = num.num, num.den, num._hash
                return
            q = num / den
            self.num, self.den, self._hash = q.num, q.den, None
            return
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if den is None:
            den = _ONE
        elif isinstance(den, int):
            den = LaurentPoly.const(den)
        elif isinstance(den, RatFunc):
            q = RatFunc(num) / den
            self.num, self.den, self._hash = q.num, q.den, None
            return
        if _canonical:
            self.num, self.den, self._hash = num, den, None
            return
        self.num, self.den = _canonicalize(num, den)
        self._hash = None

    @classmethod
    def v(cls, k: int = 1) -> "RatFunc":
        return cls(LaurentPoly.monomial(k), _ONE, _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == _ONE

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def evaluate(self, x):
        """Specialize v to ``x`` (a Fraction or int)."""
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivision("denominator vanishes at this specialization")
        return self.num.evaluate(x) / d

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den == _ONE and other.den == _ONE:
            return RatFunc(self.num * other.num, _ONE, _canonical=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivision("division by zero in Q(v)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(1) / (self ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == _ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj) -> "RatFunc":
        if "num" in obj:
            return cls(LaurentPoly.from_json(obj["num"]), LaurentPoly.from_json(obj["den"]))
        return cls(LaurentPoly.from_json(obj))


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc(x, _ONE, _canonical=True)
    if isinstance(x, int):
        return RatFunc(LaurentPoly.const(x), _ONE, _canonical=True)
    return None


def _canonicalize(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise ZeroDivision("zero denominator")
    if num.is_zero():
        return num, _ONE
    if not den.is_monomial():
        g = _poly_gcd(num, den)
        if not g.is_monomial():
            num = _exact_div(num, g)
            den = _exact_div(den, g)
    c = gcd(num.content(), den.content())
    lead = den.coeff(den.high())
    if lead < 0:
        c = -c
    if c != 1:
        num = _exact_div(num, LaurentPoly.const(c))
        den = _exact_div(den, LaurentPoly.const(c))
    k = den.low()
    if k:
        num, den = num.shift(-k), den.shift(-k)
    return num, den


def canonical(x: RatFunc) -> RatFunc:
    return RatFunc(x.num, x.den)


_ONE = LaurentPoly.const(1)
ZERO = RatFunc(LaurentPoly(), _ONE, _canonical=True)
ONE = RatFunc(_ONE, _ONE, _canonical=True)
V = LaurentPoly.monomial(1)


def vpow(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k)


# quantum numbers

@lru_cache(maxsize=None)
def qint2(n: int) -> LaurentPoly:
    """[[n]] = (v^{2n} - 1)/(v^2 - 1) = 1 + v^2 + ... + v^{2n-2}."""
    if n < 0:
        raise ValueError("[[n]] needs n >= 0")
    return LaurentPoly({2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def qint2_bar(n: int) -> LaurentPoly:
    """The bar image of [[n]]: 1 + v^-2 + ... + v^{-2n+2}."""
    return qint2(n).bar()


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """[n] = (v^n - v^-n)/(v - v^-1), extended to negative n by [-n] = -[n]."""
    if n < 0:
        return -qint(-n)
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("[n]! needs n >= 0")
    out = LaurentPoly.const(1)
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


def _binom_product(s: int, t: int, step: int) -> LaurentPoly:
    num = LaurentPoly.const(1)
    den = LaurentPoly.const(1)
    for i in range(1, t + 1):
        a = step * (s - i + 1)
        b = step * i
        num = num * LaurentPoly({a: 1, -a: -1}) if a else LaurentPoly()
        den = den * LaurentPoly({b: 1, -b: -1})
    if num.is_zero():
        return num
    return _exact_div(num, den)


@lru_cache(maxsize=None)
def qbinom(s: int, t: int) -> LaurentPoly:
    """Gaussian binomial [s over t] for integer s and t >= 0 ([s over 0] = 1)."""
    if t < 0:
        raise ValueError("binomial needs t >= 0")
    return _binom_product(s, t, 1)


@lru_cache(maxsize=None)
def qbinom_v2(s: int, t: int) -> LaurentPoly:
    """The Gaussian binomial with v replaced by v^2."""
    if t < 0:
        raise ValueError("binomial needs t >= 0")
    return _binom_product(s, t, 2)


def quantum_value(kind: str, *args: int) -> LaurentPoly:
    """Dispatch used by the CLI: kind in {qint2, qint, qfact, binom, binom_v2}."""
    table = {
        "qint2": qint2,
        "qint": qint,
        "qfact": qfact,
        "binom": qbinom,
        "binom_v2": qbinom_v2,
    }
    return table[kind](*args)
