"""The type-B q-Schur algebra S^j(n, r) in the normalized basis [A].

Products are computed from the generator formulas: ``lmul_simple`` is the
product [E^theta_{h,h+1} + lambda][A] (or its lower-triangular twin), and
general products go through monomials in divided powers, which are
unitriangular against [A]. The Hecke oracle in :mod:`jschur.hecke` is an
independent route to the same structure constants.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .coeffs import ONE, ZERO, RatFunc, qfact, qint2_bar, vpow
from .formulas import generator_terms
from .theta import (E_theta, Lambda, SignedWeight, ThetaMatrix, beta, diag, dr_exponent,
                    enumerate_xi, norm, tilde, triple_order, untilde)


class SchurElt:
    """Finite combination of basis symbols [A], A in Xi_{2n+1,2r+1}."""

    __slots__ = ("n", "r", "terms")

    def __init__(self, n: int, r: int, terms: Dict[ThetaMatrix, RatFunc] | None = None, *, check: bool = False):
        self.n, self.r = n, r
        clean = {}
        for A, c in (terms or {}).items():
            if not isinstance(c, RatFunc):
                c = RatFunc(c)
            if c.is_zero():
                continue
            if check and (A.n != n or A.total() != 2 * r + 1):
                raise ValueError(f"{A} is not in Xi_{{{2 * n + 1},{2 * r + 1}}}")
            clean[A] = c
        self.terms = clean

    @classmethod
    def basis(cls, A: ThetaMatrix, r: int | None = None, coeff=ONE) -> "SchurElt":
        if r is None:
            r = (A.total() - 1) // 2
        return cls(A.n, r, {A: coeff}, check=True)

    @classmethod
    def zero(cls, n: int, r: int) -> "SchurElt":
        return cls(n, r)

    @classmethod
    def identity(cls, n: int, r: int) -> "SchurElt":
        return cls(n, r, {diag(tilde(lam)): ONE for lam in Lambda(n, r)})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, A: ThetaMatrix) -> RatFunc:
        return self.terms.get(A, ZERO)

    def _same(self, other: "SchurElt"):
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("elements of different Schur algebras")

    def __add__(self, other: "SchurElt") -> "SchurElt":
        self._same(other)
        out = dict(self.terms)
        for A, c in other.terms.items():
            out[A] = out[A] + c if A in out else c
        return SchurElt(self.n, self.r, out)

    def __neg__(self):
        return SchurElt(self.n, self.r, {A: -c for A, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SchurElt":
        c = RatFunc(c) if not isinstance(c, RatFunc) else c
        return SchurElt(self.n, self.r, {A: x * c for A, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SchurElt):
            return schur_algebra(self.n, self.r).mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (isinstance(other, SchurElt) and (self.n, self.r) == (other.n, other.r)
                and self.terms == other.terms)

    def is_laurent(self) -> bool:
        return all(c.is_laurent() for c in self.terms.values())

    def is_diagonal(self) -> bool:
        return all(A.is_diagonal() for A in self.terms)

    def __repr__(self):
        if not self.terms:
            return f"SchurElt(n={self.n}, r={self.r}, 0)"
        body = " + ".join(f"({c})[{list(map(list, A.rows))}]" for A, c in sorted(self.terms.items()))
        return f"SchurElt(n={self.n}, r={self.r}, {body})"

    def to_json(self):
        return {"n": self.n, "r": self.r,
                "terms": [{"A": A.to_json(), "c": c.to_json()} for A, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj) -> "SchurElt":
        terms = {}
        for t in obj["terms"]:
            A = ThetaMatrix.from_json(t["A"])
            c = RatFunc.from_json(t["c"]) if isinstance(t["c"], dict) else RatFunc(int(t["c"]))
            terms[A] = terms[A] + c if A in terms else c
        return cls(obj["n"], obj["r"], terms, check=True)


# normalization [A] = v^{-(d(A) - r(A))} e_A

def normalize_to_e(x: SchurElt) -> Dict[ThetaMatrix, RatFunc]:
    """Coefficients of x in the e_A basis."""
    return {A: c * RatFunc(vpow(-dr_exponent(A))) for A, c in x.terms.items()}


def normalize_from_e(n: int, r: int, coeffs: Dict[ThetaMatrix, object]) -> SchurElt:
    """Element with the given e_A coefficients, written in the [A] basis."""
    out = {}
    for A, c in coeffs.items():
        c = c if isinstance(c, RatFunc) else RatFunc(c)
        out[A] = c * RatFunc(vpow(dr_exponent(A)))
    return SchurElt(n, r, out)


# the generator products

def lmul_simple(kind: str, h: int, lam: Sequence[int], A: ThetaMatrix) -> SchurElt:
    """[E^theta_{h,h+1} + lam~][A] for kind 'e', [E^theta_{h+1,h} + lam~][A] for 'f'.

    ``lam`` is a composition of r-1 into n+1 parts.
    """
    n = A.n
    r = (A.total() - 1) // 2
    if not 1 <= h <= n:
        raise ValueError("h out of range")
    if len(lam) != n + 1 or sum(lam) != r - 1:
        raise ValueError("lambda must be a composition of r-1 into n+1 parts")
    lt = tilde(lam)
    N = A.N
    a = lambda i, k: A.rows[i - 1][k - 1]
    out: Dict[ThetaMatrix, RatFunc] = {}
    if kind == "e":
        target = list(lt)
        target[h] += 1
        target[N - 1 - h] += 1
        if tuple(target) != A.ro():
            return SchurElt(n, r)
        for p in range(1, N + 1):
            eps = 2 if (h + 1 == p == n + 1) else 1
            if a(h + 1, p) < eps:
                continue
            B = A.add(E_theta(n, h, p)).add(E_theta(n, h + 1, p), -1)
            c = RatFunc(vpow(beta(A, h, p)) * qint2_bar(a(h, p) + 1))
            out[B] = out[B] + c if B in out else c
    elif kind == "f":
        target = list(lt)
        target[h - 1] += 1
        target[N - h] += 1
        if tuple(target) != A.ro():
            return SchurElt(n, r)
        for p in range(1, N + 1):
            if a(h, p) < 1:
                continue
            B = A.add(E_theta(n, h, p), -1).add(E_theta(n, h + 1, p))
            c = RatFunc(vpow(beta(A, h, p, primed=True)) * qint2_bar(a(h + 1, p) + 1))
            out[B] = out[B] + c if B in out else c
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return SchurElt(n, r, out)


def _generator_lambda(kind: str, h: int, A: ThetaMatrix):
    """The unique lam with [E + lam~][A] possibly nonzero, or None."""
    N = A.N
    ro = list(A.ro())
    if kind == "e":
        ro[h] -= 1
        ro[N - 1 - h] -= 1
    else:
        ro[h - 1] -= 1
        ro[N - h] -= 1
    if min(ro) < 0 or ro[A.n] % 2 == 0:
        return None
    return untilde(ro)


def apply_generator(kind: str, h: int, x: SchurElt) -> SchurElt:
    """E^theta_{h,h+1}(0, r) . x ('e') or E^theta_{h+1,h}(0, r) . x ('f'),
    term by term with the generator products."""
    out = SchurElt(x.n, x.r)
    for A, c in x.terms.items():
        lam = _generator_lambda(kind, h, A)
        if lam is None:
            continue
        out = out + lmul_simple(kind, h, lam, A).scale(c)
    return out


def apply_divided(kind: str, h: int, m: int, x: SchurElt) -> SchurElt:
    """(m E^theta)(0, r) . x computed as E(0, r)^m x / [m]!."""
    for _ in range(m):
        x = apply_generator(kind, h, x)
    if m > 1:
        x = x.scale(RatFunc(1) / RatFunc(qfact(m)))
    return x


def apply_O(j: SignedWeight, x: SchurElt) -> SchurElt:
    """O(j, r) . x: scales [A] by v^{ro(A).j}."""
    return SchurElt(x.n, x.r, {A: c * RatFunc(vpow(j.pair(A.ro()))) for A, c in x.terms.items()})


def apply_diag_idempotent(vec, x: SchurElt) -> SchurElt:
    """[diag(vec)] . x."""
    vec = tuple(vec)
    return SchurElt(x.n, x.r, {A: c for A, c in x.terms.items() if A.ro() == vec})


def build_ajr(A: ThetaMatrix, j: SignedWeight, r: int) -> SchurElt:
    """A(j, r) = sum over lam in Lambda(n+1, r - |A|/2) of v^{lam~ . j} [A + lam~]."""
    if not A.has_zero_diagonal():
        raise ValueError("A(j, r) needs a zero-diagonal matrix")
    total = A.total()
    if total % 2:
        raise ValueError("zero-diagonal centro-symmetric matrices have even sum")
    n = A.n
    if total > 2 * r:
        return SchurElt(n, r)
    out = {}
    for lam in Lambda(n, r - total // 2):
        out[A.plus_diag(tilde(lam))] = RatFunc(vpow(j.pair_tilde(lam)))
    return SchurElt(n, r, out)


def theorem42_mul(gen, A: ThetaMatrix, j: SignedWeight, r: int) -> SchurElt:
    """g . A(j, r) from the closed formulas, for g = O(j') | e_h | f_h given as
    ``('O', SignedWeight)`` / ``('e', h)`` / ``('f', h)``."""
    out = SchurElt(A.n, r)
    for c, B, jj in generator_terms(gen, A, j):
        out = out + build_ajr(B, jj, r).scale(c)
    return out


def termwise_generator_mul(gen, x: SchurElt) -> SchurElt:
    """g . x with the generator products alone (no closed formulas)."""
    kind = gen[0]
    if kind == "O":
        return apply_O(gen[1], x)
    return apply_generator(kind, gen[1], x)


# monomials and general products

def factor_for_triple(n: int, h: int):
    """E^theta_{h+1,h} as a generator: ('f', h) when h <= n else ('e', 2n+1-h)."""
    return ("f", h) if h <= n else ("e", 2 * n + 1 - h)


def monomial_factors(A: ThetaMatrix) -> List[Tuple[str, int, int]]:
    """Factors (kind, index, multiplicity) of the ordered product over the
    triples (i,h,j) of (a_{i,j} E^theta_{h+1,h})(0), leftmost first."""
    out = []
    for (i, h, j) in triple_order(A.n):
        m = A.rows[i - 1][j - 1]
        if m:
            kind, idx = factor_for_triple(A.n, h)
            out.append((kind, idx, m))
    return out


def apply_monomial(A: ThetaMatrix, x: SchurElt) -> SchurElt:
    """[ro(A)] . prod (a_{ij} E^theta_{h+1,h})(0, r) . x for A in Xi_{2n+1,2r+1}."""
    for kind, idx, m in reversed(monomial_factors(A.off_diagonal())):
        x = apply_divided(kind, idx, m, x)
    return apply_diag_idempotent(A.ro(), x)


def peel_order_key(A: ThetaMatrix):
    """Sort key for peeling: larger norm first, ties broken lexicographically."""
    return (-norm(A), A.rows)


class SchurAlgebra:
    """Structure constants of S^j(n, r) computed through monomials."""

    def __init__(self, n: int, r: int):
        self.n, self.r = n, r
        self.basis: List[ThetaMatrix] = enumerate_xi(n, r)
        self._monomial: Dict[ThetaMatrix, SchurElt] = {}
        self._inverse: Dict[ThetaMatrix, Dict[ThetaMatrix, RatFunc]] = {}
        self._products: Dict[Tuple[ThetaMatrix, ThetaMatrix], SchurElt] = {}

    def identity(self) -> SchurElt:
        return SchurElt.identity(self.n, self.r)

    def monomial(self, A: ThetaMatrix) -> SchurElt:
        """[ro(A)] times the ordered product of divided powers for A."""
        if A not in self._monomial:
            self._monomial[A] = apply_monomial(A, self.identity())
        return self._monomial[A]

    def expand_in_monomials(self, A: ThetaMatrix) -> Dict[ThetaMatrix, RatFunc]:
        """[A] = sum_B c_B monomial(B), by peeling leading terms."""
        if A in self._inverse:
            return self._inverse[A]
        rest = SchurElt.basis(A, self.r)
        coeffs: Dict[ThetaMatrix, RatFunc] = {}
        while not rest.is_zero():
            B = min(rest.terms, key=peel_order_key)
            c = rest.terms[B]
            m = self.monomial(B)
            lead = m.coeff(B)
            if lead != ONE:
                raise ArithmeticError(f"monomial of {B} is not monic at its leading term")
            coeffs[B] = coeffs[B] + c if B in coeffs else c
            rest = rest - m.scale(c)
        self._inverse[A] = coeffs
        return coeffs

    def mul_basis(self, A: ThetaMatrix, B: ThetaMatrix) -> SchurElt:
        key = (A, B)
        if key not in self._products:
            if A.co() != B.ro():
                self._products[key] = SchurElt(self.n, self.r)
            elif A.is_diagonal():
                self._products[key] = SchurElt.basis(B, self.r)
            else:
                out = SchurElt(self.n, self.r)
                for C, c in self.expand_in_monomials(A).items():
                    out = out + apply_monomial(C, SchurElt.basis(B, self.r)).scale(c)
                self._products[key] = out
        return self._products[key]

    def mul(self, x: SchurElt, y: SchurElt) -> SchurElt:
        out = SchurElt(self.n, self.r)
        for A, a in x.terms.items():
            for B, b in y.terms.items():
                p = self.mul_basis(A, B)
                if not p.is_zero():
                    out = out + p.scale(a * b)
        return out

    def table(self) -> Dict[Tuple[ThetaMatrix, ThetaMatrix], SchurElt]:
        return {(A, B): self.mul_basis(A, B) for A in self.basis for B in self.basis}


@lru_cache(maxsize=None)
def schur_algebra(n: int, r: int) -> SchurAlgebra:
    return SchurAlgebra(n, r)


def schur_mul(x: SchurElt, y: SchurElt) -> SchurElt:
    return schur_algebra(x.n, x.r).mul(x, y)
