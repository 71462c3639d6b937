"""Rank computations for matrices with RatFunc entries.

Ranks are taken over Q after substituting a random rational for v, or exactly
over Q(v) when the specializations disagree.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from sympy import QQ, Symbol
from sympy.polys.matrices import DomainMatrix

from .coeffs import RatFunc, ZeroDivision

_V = Symbol("v")


def random_point(rng: random.Random) -> Fraction:
    """A random rational away from 0 and +-1."""
    while True:
        x = Fraction(rng.randint(2, 97), rng.randint(1, 97))
        if rng.random() < 0.5:
            x = -x
        if abs(x) != 1:
            return x


def specialize(rows: Sequence[Sequence[RatFunc]], x: Fraction) -> DomainMatrix:
    data = []
    for row in rows:
        out = []
        for c in row:
            val = c.evaluate(x) if not c.is_zero() else Fraction(0)
            out.append(QQ(val.numerator, val.denominator))
        data.append(out)
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(data, (len(rows), ncols), QQ)


def specialized_rank(rows: Sequence[Sequence[RatFunc]], rng: random.Random, attempts: int = 20) -> int:
    """Rank after specializing v at a random rational (resampled on poles)."""
    if not rows or not rows[0]:
        return 0
    for _ in range(attempts):
        x = random_point(rng)
        try:
            return specialize(rows, x).rank()
        except ZeroDivision:
            continue
    raise RuntimeError("could not find a specialization avoiding the poles")


def exact_rank(rows: Sequence[Sequence[RatFunc]]) -> int:
    """Rank over Q(v)."""
    if not rows or not rows[0]:
        return 0
    K = QQ.frac_field(_V)
    v = K.gens[0]

    def conv(p):
        out = K.zero
        for e, c in p.items():
            out += K(c) * v ** e
        return out

    data = [[conv(c.num) / conv(c.den) for c in row] for row in rows]
    return DomainMatrix(data, (len(rows), len(rows[0])), K).rank()


def nullity(rows: Sequence[Sequence[RatFunc]], rng: random.Random) -> int:
    return len(rows[0]) - specialized_rank(rows, rng)
