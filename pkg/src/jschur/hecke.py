"""Weyl group of type B_r inside the symmetric group on [1, 2r+1], its Hecke
algebra, and the double-coset model of the type-B q-Schur algebra.

This module is the brute-force oracle: it knows nothing about the closed
multiplication formulas and computes structure constants by composing
Hecke-module maps x_mu H -> x_lambda H.

Permutations are tuples ``w`` with ``w[x-1]`` the image of ``x``; products
are function composition, ``(u*w)(x) = u(w(x))``.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .coeffs import LaurentPoly
from .theta import Lambda, ThetaMatrix, tilde

Perm = Tuple[int, ...]

_Q = LaurentPoly.monomial(2)          # v^2
_QM1 = LaurentPoly({2: 1, 0: -1})     # v^2 - 1


def compose(u: Perm, w: Perm) -> Perm:
    return tuple(u[x - 1] for x in w)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for x, y in enumerate(w, start=1):
        out[y - 1] = x
    return tuple(out)


def transposition(m: int, a: int, b: int) -> Perm:
    w = list(range(1, m + 1))
    w[a - 1], w[b - 1] = b, a
    return tuple(w)


def theta_perm(r: int) -> Perm:
    m = 2 * r + 1
    return tuple(m + 1 - x for x in range(1, m + 1))


def commutes_with_theta(w: Perm) -> bool:
    m = len(w)
    return all(w[m - x] == m + 1 - w[x - 1] for x in range(1, m + 1))


def weyl_generator(i: int, r: int) -> Perm:
    """s_i = (i,i+1)(2r+2-i,2r+1-i) for i < r and s_r = (r,r+1)(r+1,r+2)(r,r+1)."""
    if not 1 <= i <= r:
        raise ValueError("generator index out of range")
    m = 2 * r + 1
    if i < r:
        return compose(transposition(m, i, i + 1), transposition(m, 2 * r + 2 - i, 2 * r + 1 - i))
    t = transposition(m, r, r + 1)
    return compose(compose(t, transposition(m, r + 1, r + 2)), t)


class WeylB:
    """W(B_r) with lengths and reduced words from a breadth-first search."""

    def __init__(self, r: int):
        self.r = r
        self.m = 2 * r + 1
        self.identity: Perm = tuple(range(1, self.m + 1))
        self.gens: List[Perm] = [weyl_generator(i, r) for i in range(1, r + 1)]
        self.length: Dict[Perm, int] = {self.identity: 0}
        self.word: Dict[Perm, Tuple[int, ...]] = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for k, s in enumerate(self.gens, start=1):
                ws = compose(w, s)
                if ws not in self.length:
                    self.length[ws] = self.length[w] + 1
                    self.word[ws] = self.word[w] + (k,)
                    queue.append(ws)
        self.elements: List[Perm] = sorted(self.length, key=lambda w: (self.length[w], w))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w):
        return w in self.length

    def check(self, w: Perm) -> Perm:
        w = tuple(w)
        if len(w) != self.m or sorted(w) != list(self.identity):
            raise ValueError("not a permutation of [1, 2r+1]")
        if not commutes_with_theta(w):
            raise ValueError("permutation does not commute with the flip")
        return w

    def longest(self) -> Perm:
        return self.elements[-1]


@lru_cache(maxsize=None)
def weyl_group(r: int) -> WeylB:
    return WeylB(r)


def coxeter_length(w: Sequence[int]) -> int:
    W = weyl_group((len(w) - 1) // 2)
    return W.length[W.check(w)]


def reduced_word(w: Sequence[int]) -> Tuple[int, ...]:
    W = weyl_group((len(w) - 1) // 2)
    return W.word[W.check(w)]


class HeckeElt:
    """Element of H(B_r): a finite sum of coefficient * T_w."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Dict[Perm, LaurentPoly] | None = None):
        self.r = r
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def basis(cls, r: int, w: Perm, coeff: LaurentPoly | int = 1) -> "HeckeElt":
        if isinstance(coeff, int):
            coeff = LaurentPoly.const(coeff)
        return cls(r, {tuple(w): coeff})

    @classmethod
    def generator(cls, r: int, i: int) -> "HeckeElt":
        return cls.basis(r, weyl_generator(i, r))

    @classmethod
    def one(cls, r: int) -> "HeckeElt":
        return cls.basis(r, weyl_group(r).identity)

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElt(self.r, out)

    def __neg__(self):
        return HeckeElt(self.r, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> "HeckeElt":
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        return HeckeElt(self.r, {w: x * c for w, x in self.terms.items()})

    def mul_generator(self, k: int) -> "HeckeElt":
        """Right multiplication by T_{s_k}."""
        W = weyl_group(self.r)
        s = W.gens[k - 1]
        out: Dict[Perm, LaurentPoly] = {}

        def acc(w, c):
            if w in out:
                out[w] = out[w] + c
            else:
                out[w] = c

        for w, c in self.terms.items():
            ws = compose(w, s)
            if W.length[ws] > W.length[w]:
                acc(ws, c)
            else:
                acc(w, c * _QM1)
                acc(ws, c * _Q)
        return HeckeElt(self.r, out)

    def __mul__(self, other: "HeckeElt") -> "HeckeElt":
        if self.r != other.r:
            raise ValueError("Hecke algebras of different rank")
        W = weyl_group(self.r)
        total = HeckeElt(self.r)
        for y, c in other.terms.items():
            part = self
            for k in W.word[y]:
                part = part.mul_generator(k)
            total = total + part.scale(c)
        return total

    def __eq__(self, other):
        return isinstance(other, HeckeElt) and self.r == other.r and self.terms == other.terms

    def coeff(self, w: Perm) -> LaurentPoly:
        return self.terms.get(tuple(w), LaurentPoly())

    def __repr__(self):
        W = weyl_group(self.r)
        parts = [f"({c})*T{list(W.word[w])}" for w, c in sorted(self.terms.items(), key=lambda t: W.length[t[0]])]
        return " + ".join(parts) or "0"


def blocks(vec: Sequence[int]) -> List[FrozenSet[int]]:
    """The consecutive intervals R_i of [1, sum(vec)] with sizes vec_i."""
    out, start = [], 1
    for size in vec:
        out.append(frozenset(range(start, start + size)))
        start += size
    return out


@lru_cache(maxsize=None)
def parabolic(lam: Tuple[int, ...]) -> FrozenSet[Perm]:
    """W_lambda: elements of W preserving every block of tilde(lambda)."""
    r = sum(lam)
    W = weyl_group(r)
    R = blocks(tilde(lam))
    label = {}
    for k, block in enumerate(R):
        for x in block:
            label[x] = k
    return frozenset(w for w in W.elements
                     if all(label[w[x - 1]] == label[x] for x in range(1, W.m + 1)))


def x_lambda(lam: Sequence[int]) -> HeckeElt:
    lam = tuple(lam)
    r = sum(lam)
    one = LaurentPoly.const(1)
    return HeckeElt(r, {w: one for w in parabolic(lam)})


def _matrix_of(d: Perm, lam, mu) -> ThetaMatrix:
    Rl = blocks(tilde(lam))
    Rm = blocks(tilde(mu))
    images = [frozenset(d[x - 1] for x in block) for block in Rm]
    return ThetaMatrix([[len(Ri & Dj) for Dj in images] for Ri in Rl])


class DoubleCoset:
    __slots__ = ("lam", "mu", "rep", "elements", "matrix", "right_reps")

    def __init__(self, lam, mu, rep, elements, matrix, right_reps):
        self.lam, self.mu = lam, mu
        self.rep = rep
        self.elements = elements
        self.matrix = matrix
        self.right_reps = right_reps   # y minimal in W_lam y, inside the coset


@lru_cache(maxsize=None)
def double_cosets(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> Tuple[DoubleCoset, ...]:
    r = sum(lam)
    W = weyl_group(r)
    Wl, Wm = parabolic(lam), parabolic(mu)
    seen = set()
    out = []
    for w in W.elements:          # increasing length, so the first hit is minimal
        if w in seen:
            continue
        coset = frozenset(compose(compose(u, w), x) for u in Wl for x in Wm)
        seen |= coset
        right_reps = []
        for y in coset:
            right = [compose(u, y) for u in Wl]
            if min(right, key=lambda z: (W.length[z], z)) == y:
                right_reps.append(y)
        out.append(DoubleCoset(lam, mu, w, coset, _matrix_of(w, lam, mu), tuple(sorted(right_reps))))
    return tuple(out)


def coset_matrix(lam, d: Perm, mu) -> ThetaMatrix:
    """Matrix label of the double coset W_lam d W_mu (d need not be minimal)."""
    lam, mu, d = tuple(lam), tuple(mu), tuple(d)
    for dc in double_cosets(lam, mu):
        if d in dc.elements:
            return dc.matrix
    raise ValueError("element not in W")


def minimal_representative(lam, d: Perm, mu) -> Perm:
    lam, mu, d = tuple(lam), tuple(mu), tuple(d)
    for dc in double_cosets(lam, mu):
        if d in dc.elements:
            return dc.rep
    raise ValueError("element not in W")


def matrix_to_coset(A: ThetaMatrix, r: int | None = None):
    """Inverse of the labelling: (lambda, minimal d, mu) for A in Xi_{2n+1,2r+1}."""
    from .theta import untilde
    lam, mu = untilde(A.ro()), untilde(A.co())
    for dc in double_cosets(lam, mu):
        if dc.matrix == A:
            return lam, dc.rep, mu
    raise ValueError("matrix is not a double-coset label")


class SchurOracle:
    """The algebra End_H(sum_lambda x_lambda H) in the basis e_A.

    Elements are dicts ``{ThetaMatrix: LaurentPoly}``; ``e_A`` maps x_mu to the
    double-coset sum of its label and kills x_nu for nu != mu, where
    ro(A) = tilde(lambda), co(A) = tilde(mu). Products compose maps, the left
    factor applied last.
    """

    def __init__(self, n: int, r: int):
        self.n, self.r = n, r
        self.comps = Lambda(n, r)
        self.by_matrix: Dict[ThetaMatrix, DoubleCoset] = {}
        for lam in self.comps:
            for mu in self.comps:
                for dc in double_cosets(lam, mu):
                    self.by_matrix[dc.matrix] = dc
        self._cache: Dict[Tuple[ThetaMatrix, ThetaMatrix], Dict[ThetaMatrix, LaurentPoly]] = {}

    def basis(self) -> List[ThetaMatrix]:
        return sorted(self.by_matrix)

    def value(self, A: ThetaMatrix) -> HeckeElt:
        """The double-coset sum e_A(x_mu)."""
        one = LaurentPoly.const(1)
        return HeckeElt(self.r, {w: one for w in self.by_matrix[A].elements})

    def decompose(self, value: HeckeElt, lam, nu) -> Dict[ThetaMatrix, LaurentPoly]:
        """Write an element of x_lam H cap H x_nu as a combination of double-coset sums."""
        out = {}
        check = HeckeElt(self.r)
        for dc in double_cosets(tuple(lam), tuple(nu)):
            c = value.coeff(dc.rep)
            if not c.is_zero():
                out[dc.matrix] = c
                check = check + self.value(dc.matrix).scale(c)
        if check != value:
            raise ArithmeticError("product left the span of double-coset sums")
        return out

    def mul_basis(self, A: ThetaMatrix, B: ThetaMatrix) -> Dict[ThetaMatrix, LaurentPoly]:
        key = (A, B)
        if key in self._cache:
            return self._cache[key]
        if A.co() != B.ro():
            self._cache[key] = {}
            return {}
        dcB = self.by_matrix[B]
        one = LaurentPoly.const(1)
        h = HeckeElt(self.r, {y: one for y in dcB.right_reps})
        product = self.value(A) * h
        lam = self.by_matrix[A].lam
        nu = dcB.mu
        result = self.decompose(product, lam, nu)
        self._cache[key] = result
        return result

    def mul(self, x: Dict[ThetaMatrix, LaurentPoly], y: Dict[ThetaMatrix, LaurentPoly]):
        out: Dict[ThetaMatrix, LaurentPoly] = {}
        for A, a in x.items():
            for B, b in y.items():
                for C, c in self.mul_basis(A, B).items():
                    t = a * b * c
                    out[C] = out[C] + t if C in out else t
        return {C: c for C, c in out.items() if not c.is_zero()}


@lru_cache(maxsize=None)
def schur_oracle(n: int, r: int) -> SchurOracle:
    return SchurOracle(n, r)


def oracle_mul(x: Dict[ThetaMatrix, LaurentPoly], y: Dict[ThetaMatrix, LaurentPoly], n: int, r: int):
    return schur_oracle(n, r).mul(x, y)
