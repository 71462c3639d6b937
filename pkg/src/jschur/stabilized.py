"""The stabilized algebra with basis A(j): A zero-diagonal, j a reduced weight.

Elements are formal combinations of the symbols A(j). Left multiplication by
the generators O(j), E^theta_{h,h+1}(0), E^theta_{h+1,h}(0) uses the closed
formulas in :mod:`jschur.formulas`. General products go through the monomial
basis: x is rewritten as a combination of monomial words, which are then
applied to y one generator at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .coeffs import ONE, ZERO, RatFunc, qfact, vpow
from .formulas import generator_terms
from .schur import SchurElt, build_ajr, factor_for_triple
from .theta import (E_theta, SignedWeight, ThetaMatrix, norm, strictly_below, triple_order,
                    zero)

Key = Tuple[ThetaMatrix, SignedWeight]


class StabElt:
    """Finite combination of basis symbols A(j)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Key, RatFunc] | None = None):
        self.n = n
        clean = {}
        for (A, j), c in (terms or {}).items():
            if not isinstance(c, RatFunc):
                c = RatFunc(c)
            if c.is_zero():
                continue
            if not A.has_zero_diagonal():
                raise ValueError("stabilized basis matrices must have zero diagonal")
            if A.n != n or j.n != n:
                raise ValueError("rank mismatch")
            clean[(A, j)] = c
        self.terms = clean

    @classmethod
    def basis(cls, A: ThetaMatrix, j: SignedWeight | None = None, coeff=ONE) -> "StabElt":
        j = SignedWeight.zero(A.n) if j is None else j
        return cls(A.n, {(A, j): coeff})

    @classmethod
    def O(cls, j: SignedWeight) -> "StabElt":
        return cls.basis(zero(j.n), j)

    @classmethod
    def one(cls, n: int) -> "StabElt":
        return cls.O(SignedWeight.zero(n))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, A: ThetaMatrix, j: SignedWeight) -> RatFunc:
        return self.terms.get((A, j), ZERO)

    def __add__(self, other: "StabElt") -> "StabElt":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return StabElt(self.n, out)

    def __neg__(self):
        return StabElt(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "StabElt":
        c = c if isinstance(c, RatFunc) else RatFunc(c)
        return StabElt(self.n, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, StabElt):
            return stab_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, StabElt) and self.n == other.n and self.terms == other.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].rows, kv[0][1].reduced))

    def __repr__(self):
        if not self.terms:
            return f"StabElt(n={self.n}, 0)"
        body = " + ".join(f"({c}){[list(r) for r in A.rows]}({list(j.reduced)})"
                          for (A, j), c in self.sorted_terms())
        return f"StabElt(n={self.n}, {body})"

    def to_json(self):
        return {"n": self.n,
                "terms": [{"A": A.to_json(), "j": j.to_json(), "c": c.to_json()}
                          for (A, j), c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj) -> "StabElt":
        terms: Dict[Key, RatFunc] = {}
        for t in obj["terms"]:
            A = ThetaMatrix.from_json(t["A"])
            j = SignedWeight.from_json(t["j"]) if "j" in t else SignedWeight.zero(A.n)
            c = RatFunc.from_json(t["c"]) if isinstance(t.get("c"), dict) else RatFunc(int(t.get("c", 1)))
            k = (A, j)
            terms[k] = terms[k] + c if k in terms else c
        return cls(obj["n"], terms)


def mf_mul(gen, x: StabElt) -> StabElt:
    """g . x for g = ('O', j) | ('e', h) | ('f', h)."""
    out: Dict[Key, RatFunc] = {}
    for (A, j), c in x.terms.items():
        for coef, B, jj in generator_terms(gen, A, j):
            k = (B, jj)
            val = coef * c
            out[k] = out[k] + val if k in out else val
    return StabElt(x.n, out)


def divided_power(kind: str, h: int, n: int, m: int) -> StabElt:
    """(m E^theta_{h,h+1})(0) for kind 'e', (m E^theta_{h+1,h})(0) for kind 'f'."""
    if m < 0:
        raise ValueError("negative divided power")
    if m == 0:
        return StabElt.one(n)
    A = E_theta(n, h, h + 1, m) if kind == "e" else E_theta(n, h + 1, h, m)
    return StabElt.basis(A)


def apply_divided(kind: str, h: int, m: int, x: StabElt) -> StabElt:
    """(m E^theta)(0) . x, computed as E(0)^m . x / [m]!."""
    for _ in range(m):
        x = mf_mul((kind, h), x)
    if m > 1:
        x = x.scale(RatFunc(1) / RatFunc(qfact(m)))
    return x


@dataclass(frozen=True)
class MonomialWord:
    """Ordered factors, leftmost first. Each factor is ('O', j) or
    (kind, h, m) standing for the divided power (m E^theta)(0)."""

    n: int
    factors: Tuple = ()

    def apply(self, x: StabElt) -> StabElt:
        for f in reversed(self.factors):
            if f[0] == "O":
                x = mf_mul(f, x)
            else:
                x = apply_divided(f[0], f[1], f[2], x)
        return x

    def evaluate(self) -> StabElt:
        return self.apply(StabElt.one(self.n))

    def to_json(self):
        out = []
        for f in self.factors:
            if f[0] == "O":
                out.append({"O": f[1].to_json()})
            else:
                out.append({"kind": f[0], "h": f[1], "m": f[2]})
        return {"n": self.n, "factors": out}

    def __str__(self):
        parts = []
        for f in self.factors:
            if f[0] == "O":
                parts.append(f"O({list(f[1].reduced)})")
            else:
                name = "E" if f[0] == "e" else "F"
                parts.append(f"{name}{f[1]}^({f[2]})")
        return "*".join(parts) or "1"


def monomial_word(A: ThetaMatrix, j: SignedWeight | None = None) -> MonomialWord:
    """The word for m^{A,j}: O(j) followed by the divided powers
    (a_{i,j} E^theta_{h+1,h})(0) over the triples in order."""
    n = A.n
    factors = []
    if j is not None and any(j.reduced):
        factors.append(("O", j))
    for (i, h, jj) in triple_order(n):
        m = A.rows[i - 1][jj - 1]
        if m:
            kind, idx = factor_for_triple(n, h)
            factors.append((kind, idx, m))
    return MonomialWord(n, tuple(factors))


def monomial(A: ThetaMatrix, j: SignedWeight | None = None) -> Tuple[MonomialWord, StabElt]:
    w = monomial_word(A, j)
    return w, w.evaluate()


class TriangularityError(AssertionError):
    pass


def triangular_expand(A: ThetaMatrix, j: SignedWeight | None = None) -> dict:
    """Expand m^{A,j} v^{-ro(A).j}, certifying leading coefficient 1 at A(j)
    and strict preorder decrease on every other term."""
    j = SignedWeight.zero(A.n) if j is None else j
    word, value = monomial(A, j)
    value = value.scale(RatFunc(vpow(-j.pair(A.ro()))))
    lead = value.coeff(A, j)
    lower = [(B, jj, c) for (B, jj), c in value.sorted_terms() if (B, jj) != (A, j)]
    leading_ok = lead == ONE
    lower_ok = all(strictly_below(B, A) for B, _, _ in lower)
    norm_ok = all(norm(B) < norm(A) for B, _, _ in lower)
    report = {
        "A": A.to_json(), "j": j.to_json(), "word": str(word),
        "leading_coefficient": lead.to_json(),
        "leading_is_one": leading_ok, "lower_strictly_below": lower_ok,
        "lower_norm_smaller": norm_ok,
        "lower_terms": [{"B": B.to_json(), "j": jj.to_json(), "c": c.to_json(),
                         "laurent": c.is_laurent()} for B, jj, c in lower],
        "value": value,
    }
    if not (leading_ok and lower_ok):
        raise TriangularityError(f"monomial for {A} is not unitriangular")
    return report


def _peel_key(key: Key):
    A, j = key
    return (-norm(A), A.rows, j.reduced)


def express_in_generators(x: StabElt, budget: int = 100000) -> List[Tuple[RatFunc, MonomialWord]]:
    """Write x as sum c * m^{A,j}; re-evaluation reproduces x exactly."""
    rest = x
    out: List[Tuple[RatFunc, MonomialWord]] = []
    steps = 0
    while not rest.is_zero():
        steps += 1
        if steps > budget:
            raise RuntimeError("expression budget exceeded")
        key = min(rest.terms, key=_peel_key)
        A, j = key
        c = rest.terms[key]
        word = monomial_word(A, j)
        # m^{A,j} = v^{ro(A).j} A(j) + lower
        coef = c * RatFunc(vpow(-j.pair(A.ro())))
        out.append((coef, word))
        rest = rest - word.evaluate().scale(coef)
    return out


def evaluate_expression(expr: Iterable[Tuple[RatFunc, MonomialWord]], n: int) -> StabElt:
    out = StabElt(n)
    for c, w in expr:
        out = out + w.evaluate().scale(c)
    return out


def stab_mul(x: StabElt, y: StabElt) -> StabElt:
    """General product via the monomial expression of x."""
    out = StabElt(x.n)
    for c, w in express_in_generators(x):
        out = out + w.apply(y).scale(c)
    return out


def pi_r(x: StabElt, r: int) -> SchurElt:
    """Projection onto S^j(n, r): A(j) -> A(j, r)."""
    out = SchurElt(x.n, r)
    for (A, j), c in x.terms.items():
        out = out + build_ajr(A, j, r).scale(c)
    return out
