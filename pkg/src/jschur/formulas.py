"""Closed multiplication formulas by generators on the elements A(j).

``generator_terms`` returns the expansion of ``g . A(j)`` as a list of
``(coefficient, B, j')`` triples. The same structure constants describe the
product in every S^j(n, r) with 2r >= |A| and in the stabilized algebra.
"""

from __future__ import annotations

from typing import List, Tuple

from .coeffs import RatFunc, LaurentPoly, qint2_bar, vpow
from .theta import E_theta, SignedWeight, ThetaMatrix, alpha, alpha_minus, beta

Term = Tuple[RatFunc, ThetaMatrix, SignedWeight]

# 1 / (1 - v^-2)
_INV_ONE_MINUS = RatFunc(LaurentPoly.const(1)) / RatFunc(LaurentPoly({0: 1, -2: -1}))


def _mono(k: int) -> RatFunc:
    return RatFunc(vpow(k))


def _sym_pair(jraw, i: int) -> int:
    """j_i + j_{N+1-i} (1-based)."""
    N = len(jraw)
    return jraw[i - 1] + jraw[N - i]


def o_terms(j: SignedWeight, A: ThetaMatrix, j2: SignedWeight) -> List[Term]:
    """O(j) . A(j2) = v^{ro(A).j} A(j + j2)."""
    return [(_mono(j.pair(A.ro())), A, j + j2)]


def o_right_terms(A: ThetaMatrix, j2: SignedWeight, j: SignedWeight) -> List[Term]:
    """A(j2) . O(j) = v^{co(A).j} A(j + j2)."""
    return [(_mono(j.pair(A.co())), A, j + j2)]


def e_terms(h: int, A: ThetaMatrix, j: SignedWeight) -> List[Term]:
    """E^theta_{h,h+1}(0) . A(j)."""
    n, N = A.n, A.N
    jr = j.raw()
    a = lambda i, k: A.rows[i - 1][k - 1]
    out: List[Term] = []
    j_up = j + alpha(n, h)
    for p in range(1, h):
        if a(h + 1, p) >= 1:
            B = A.add(E_theta(n, h, p)).add(E_theta(n, h + 1, p), -1)
            c = _mono(beta(A, h, p)) * RatFunc(qint2_bar(a(h, p) + 1))
            out.append((c, B, j_up))
    if a(h + 1, h) >= 1:
        B = A.add(E_theta(n, h + 1, h), -1)
        c = _mono(beta(A, h, h) - _sym_pair(jr, h) - 1) * _INV_ONE_MINUS
        out.append((c, B, j_up))
        out.append((-c, B, j + alpha_minus(n, h)))
    B = A.add(E_theta(n, h, h + 1))
    c = _mono(beta(A, h, h + 1) + _sym_pair(jr, h + 1)) * RatFunc(qint2_bar(a(h, h + 1) + 1))
    out.append((c, B, j))
    for p in range(h + 2, N + 1):
        if a(h + 1, p) >= 1:
            B = A.add(E_theta(n, h, p)).add(E_theta(n, h + 1, p), -1)
            c = _mono(beta(A, h, p)) * RatFunc(qint2_bar(a(h, p) + 1))
            out.append((c, B, j))
    return out


def f_terms(h: int, A: ThetaMatrix, j: SignedWeight) -> List[Term]:
    """E^theta_{h+1,h}(0) . A(j)."""
    n, N = A.n, A.N
    jr = j.raw()
    a = lambda i, k: A.rows[i - 1][k - 1]
    out: List[Term] = []
    j_down = j - alpha(n, h)
    for p in range(1, h):
        if a(h, p) >= 1:
            B = A.add(E_theta(n, h, p), -1).add(E_theta(n, h + 1, p))
            c = _mono(beta(A, h, p, primed=True)) * RatFunc(qint2_bar(a(h + 1, p) + 1))
            out.append((c, B, j))
    B = A.add(E_theta(n, h + 1, h))
    c = _mono(beta(A, h, h, primed=True) + _sym_pair(jr, h)) * RatFunc(qint2_bar(a(h + 1, h) + 1))
    out.append((c, B, j))
    if a(h, h + 1) >= 1:
        B = A.add(E_theta(n, h, h + 1), -1)
        d = 1 if h == n else 0
        c = _mono(beta(A, h, h + 1, primed=True) - _sym_pair(jr, h + 1) - 1) * _INV_ONE_MINUS
        out.append((c * _mono(-d), B, j_down))
        out.append((-c * _mono(d), B, j + alpha_minus(n, h)))
    for p in range(h + 2, N + 1):
        if a(h, p) >= 1:
            B = A.add(E_theta(n, h, p), -1).add(E_theta(n, h + 1, p))
            c = _mono(beta(A, h, p, primed=True)) * RatFunc(qint2_bar(a(h + 1, p) + 1))
            out.append((c, B, j_down))
    return out


def generator_terms(gen, A: ThetaMatrix, j: SignedWeight) -> List[Term]:
    """Dispatch on ``gen``: ``('O', SignedWeight)``, ``('e', h)`` or ``('f', h)``."""
    kind = gen[0]
    if kind == "O":
        return o_terms(gen[1], A, j)
    if not 1 <= gen[1] <= A.n:
        raise ValueError(f"generator index {gen[1]} out of range for n={A.n}")
    if kind == "e":
        return e_terms(gen[1], A, j)
    if kind == "f":
        return f_terms(gen[1], A, j)
    raise ValueError(f"unknown generator {gen!r}")
