"""The i-quantum group U^j(n), realized through phi^j in the stabilized algebra.

Words are formal combinations of monomials over the letters e_i, f_i,
d_a^{+-1}. Evaluation multiplies out with the generator formulas; no normal
form for words is attempted.
"""

from __future__ import annotations

import random
from typing import Dict, List, Sequence, Tuple

from .coeffs import (ONE, ZERO, LaurentPoly, RatFunc, qfact, qint, qint2_bar, vpow)
from .schur import (SchurElt, apply_divided, factor_for_triple, schur_algebra)
from .stabilized import StabElt, mf_mul, monomial_word, pi_r
from .theta import (SignedWeight, ThetaMatrix, diag, enumerate_zero_diag_by_norm, norm, strictly_below,
                    tilde, triple_order, untilde)

Letter = Tuple


def _r(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)


class UjWord:
    """Formal combination of words in e_i, f_i, d_a^{+-1} with RatFunc scalars.

    Letters: ('e', i), ('f', i), ('d', a, +1 or -1).
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Tuple[Letter, ...], RatFunc] | None = None):
        self.n = n
        clean = {}
        for w, c in (terms or {}).items():
            c = _r(c)
            if c.is_zero():
                continue
            for l in w:
                self._check_letter(l)
            clean[tuple(w)] = c
        self.terms = clean

    def _check_letter(self, l):
        if l[0] in ("e", "f"):
            ok = len(l) == 2 and 1 <= l[1] <= self.n
        elif l[0] == "d":
            ok = len(l) == 3 and 1 <= l[1] <= self.n + 1 and l[2] in (1, -1)
        else:
            ok = False
        if not ok:
            raise ValueError(f"bad letter {l!r} for n={self.n}")

    @classmethod
    def letter(cls, n: int, *l) -> "UjWord":
        return cls(n, {(tuple(l),): ONE})

    @classmethod
    def one(cls, n: int) -> "UjWord":
        return cls(n, {(): ONE})

    def __add__(self, other: "UjWord") -> "UjWord":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return UjWord(self.n, out)

    def __neg__(self):
        return UjWord(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "UjWord":
        c = _r(c)
        return UjWord(self.n, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UjWord):
            out: Dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out[w] + c1 * c2 if w in out else c1 * c2
            return UjWord(self.n, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, UjWord) and self.n == other.n and self.terms == other.terms

    def __pow__(self, k: int) -> "UjWord":
        out = UjWord.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        def show(w):
            return "".join(f"{l[0]}{l[1]}" + ("^-1" if l[0] == "d" and l[2] < 0 else "") for l in w) or "1"
        return " + ".join(f"({c}){show(w)}" for w, c in self.terms.items()) or "0"


def e(n, i):
    return UjWord.letter(n, "e", i)


def f(n, i):
    return UjWord.letter(n, "f", i)


def d(n, a, sign=1):
    return UjWord.letter(n, "d", a, sign)


def omega(w: UjWord) -> UjWord:
    """e_i <-> f_i, d_i -> d_i^{-1}, d_{n+1} -> v^{-1} d_{n+1}^{-1}."""
    n = w.n
    out = UjWord(n)
    for word, c in w.terms.items():
        coef = c
        letters = []
        for l in word:
            if l[0] == "e":
                letters.append(("f", l[1]))
            elif l[0] == "f":
                letters.append(("e", l[1]))
            else:
                a, s = l[1], l[2]
                letters.append(("d", a, -s))
                if a == n + 1:
                    coef = coef * RatFunc(vpow(-s))
        out = out + UjWord(n, {tuple(letters): coef})
    return out


def _apply_letter(l, x: StabElt, n: int) -> StabElt:
    if l[0] in ("e", "f"):
        return mf_mul((l[0], l[1]), x)
    a, s = l[1], l[2]
    y = mf_mul(("O", SignedWeight.unit(n, a, s)), x)
    if a == n + 1:
        y = y.scale(RatFunc(vpow(-s)))
    return y


def phi_j(w: UjWord) -> StabElt:
    """Image of a word in the stabilized algebra."""
    n = w.n
    out = StabElt(n)
    for word, c in w.terms.items():
        x = StabElt.one(n)
        for l in reversed(word):
            x = _apply_letter(l, x, n)
        out = out + x.scale(c)
    return out


def phi_jr(w: UjWord, r: int) -> SchurElt:
    return pi_r(phi_j(w), r)


# relations

def _v(k):
    return RatFunc(vpow(k))


def relation_instances(n: int) -> List[Tuple[str, str, UjWord, UjWord]]:
    """All instances of the defining relations as (family, label, lhs, rhs)."""
    out = []
    one = UjWord.one(n)
    q2 = RatFunc(qint(2))
    for a in range(1, n + 2):
        out.append(("iQG1", f"d{a} d{a}^-1", d(n, a) * d(n, a, -1), one))
        out.append(("iQG1", f"d{a}^-1 d{a}", d(n, a, -1) * d(n, a), one))
        for b in range(a + 1, n + 2):
            out.append(("iQG1", f"d{a} d{b}", d(n, a) * d(n, b), d(n, b) * d(n, a)))
    for a in range(1, n + 2):
        for j in range(1, n + 1):
            if a <= n:
                ke = int(a == j) - int(a == j + 1)
            else:
                ke = -2 * int(j == n)
            out.append(("iQG2", f"d{a} e{j} d{a}^-1", d(n, a) * e(n, j) * d(n, a, -1), e(n, j).scale(_v(ke))))
            out.append(("iQG2", f"d{a} f{j} d{a}^-1", d(n, a) * f(n, j) * d(n, a, -1), f(n, j).scale(_v(-ke))))
    inv = RatFunc(1) / RatFunc(LaurentPoly({1: 1, -1: -1}))
    # only the pair i = j = n is excluded; the mixed pairs with i != j hold too
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j == n:
                continue
            lhs = e(n, i) * f(n, j) - f(n, j) * e(n, i)
            rhs = (d(n, i) * d(n, i + 1, -1) - d(n, i, -1) * d(n, i + 1)).scale(inv) if i == j else UjWord(n)
            out.append(("iQG3", f"[e{i}, f{j}]", lhs, rhs))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) > 1:
                out.append(("iQG4", f"e{i} e{j}", e(n, i) * e(n, j), e(n, j) * e(n, i)))
                out.append(("iQG4", f"f{i} f{j}", f(n, i) * f(n, j), f(n, j) * f(n, i)))
            if abs(i - j) == 1:
                out.append(("iQG5", f"e{i}^2 e{j}", e(n, i) ** 2 * e(n, j) + e(n, j) * e(n, i) ** 2,
                            (e(n, i) * e(n, j) * e(n, i)).scale(q2)))
                out.append(("iQG5", f"f{i}^2 f{j}", f(n, i) ** 2 * f(n, j) + f(n, j) * f(n, i) ** 2,
                            (f(n, i) * f(n, j) * f(n, i)).scale(q2)))
    dd = (d(n, n) * d(n, n + 1, -1)).scale(_v(1)) + (d(n, n, -1) * d(n, n + 1)).scale(_v(-1))
    en, fn = e(n, n), f(n, n)
    out.append(("iQG6", "f_n^2 e_n", fn ** 2 * en + en * fn ** 2, (fn * en * fn - dd * fn).scale(q2)))
    out.append(("iQG6", "e_n^2 f_n", en ** 2 * fn + fn * en ** 2, (en * fn * en - en * dd).scale(q2)))
    return out


def coefficient_identities() -> List[Tuple[str, RatFunc, RatFunc]]:
    """The coefficient comparisons that close the (iQG6) computation."""
    v = RatFunc.v
    b2 = RatFunc(qint2_bar(2))
    q2 = RatFunc(qint(2))
    f2 = RatFunc(qfact(2))
    inv = RatFunc(1) / RatFunc(LaurentPoly({0: 1, -2: -1}))
    return [
        ("(E_{n,n+1}+2E_{n+1,n})(0)", v(1) * b2 + f2 * v(-2), b2 * q2),
        ("(E_{n+1,n}+E_{n,n+2})(0)", f2, q2),
        ("E_{n+1,n}(-alpha_n)", v(-1) * inv + v(-3) * inv, q2 * (RatFunc(1) + v(-2) * inv - RatFunc(1))),
        ("E_{n+1,n}(alpha_n)", f2 * v(-2) * inv, q2 * (inv - RatFunc(1))),
        ("E_{n+1,n}(alpha_n^-)", -v(1) * inv - v(-1) * inv - f2 * v(-2) * inv, q2 * (-inv - v(-2) * inv)),
    ]


def verify_relations(n: int) -> dict:
    """Evaluate both sides of every relation instance under phi^j."""
    results = []
    ok = True
    for fam, label, lhs, rhs in relation_instances(n):
        L, R = phi_j(lhs), phi_j(rhs)
        passed = L == R
        ok &= passed
        entry = {"family": fam, "instance": label, "pass": passed}
        if not passed:
            entry["diff"] = (L - R).to_json()
        results.append(entry)
    coeffs = []
    for label, a, b in coefficient_identities():
        coeffs.append({"term": label, "pass": a == b})
        ok &= a == b
    families = {}
    for rec in results:
        families.setdefault(rec["family"], []).append(rec["pass"])
    return {"n": n, "pass": ok,
            "families": {k: {"instances": len(v), "pass": all(v)} for k, v in sorted(families.items())},
            "coefficient_identities": coeffs, "instances": results}


# integral form

def _k_pair(n: int, i: int, r: int) -> Tuple[SchurElt, SchurElt]:
    """(k_{i,r}, k_{i,r}^{-1}) inside S^j(n, r)."""
    kp = pi_r(StabElt.O(SignedWeight.unit(n, i, 1)), r)
    km = pi_r(StabElt.O(SignedWeight.unit(n, i, -1)), r)
    if i == n + 1:
        kp, km = kp.scale(_v(-1)), km.scale(_v(1))
    return kp, km


def kbinom_element(n: int, i: int, t: int, r: int) -> SchurElt:
    """[k_{i,r}; 0 over t], with v replaced by v^2 when i = n+1."""
    if not 1 <= i <= n + 1:
        raise ValueError("index out of range")
    if t < 0:
        raise ValueError("t must be nonnegative")
    S = schur_algebra(n, r)
    out = S.identity()
    kp, km = _k_pair(n, i, r)
    step = 2 if i == n + 1 else 1
    for s in range(1, t + 1):
        num = kp.scale(_v(step * (1 - s))) - km.scale(_v(step * (s - 1)))
        den = RatFunc(LaurentPoly({step * s: 1, -step * s: -1}))
        out = S.mul(out, num.scale(RatFunc(1) / den))
    return out


def kbinom_prefix(lam: Sequence[int], r: int) -> SchurElt:
    n = len(lam) - 1
    S = schur_algebra(n, r)
    out = S.identity()
    for i, t in enumerate(lam, start=1):
        if t:
            out = S.mul(out, kbinom_element(n, i, t, r))
    return out


def lemma63_check(lam: Sequence[int], r: int | None = None) -> dict:
    lam = tuple(lam)
    r = sum(lam) if r is None else r
    got = kbinom_prefix(lam, r)
    want = SchurElt.basis(diag(tilde(lam)), r)
    res = got - want
    return {"lambda": list(lam), "r": r, "pass": res.is_zero(),
            "residual": None if res.is_zero() else res.to_json()}


def integral_word(A: ThetaMatrix) -> List[Tuple]:
    """Word over the integral generators for M^{(A)}: the binomial prefix for
    ro(A) followed by f_h^{(m)} (h <= n) or e_{2n+1-h}^{(m)} (h > n)."""
    n = A.n
    lam = untilde(A.ro())
    word = []
    for i, t in enumerate(lam, start=1):
        if t:
            word.append(("dbinom_v2" if i == n + 1 else "dbinom", i, t))
    for (i, h, j) in triple_order(n):
        m = A.rows[i - 1][j - 1]
        if m:
            kind, idx = factor_for_triple(n, h)
            word.append((kind, idx, m))
    return word


def integral_monomial(A: ThetaMatrix, r: int | None = None) -> Tuple[List[Tuple], SchurElt]:
    """(word, pi_r(m^{(A)})) for A in Xi_{2n+1,2r+1}."""
    n = A.n
    r = (A.total() - 1) // 2 if r is None else r
    word = integral_word(A)
    S = schur_algebra(n, r)
    x = S.identity()
    for g in reversed(word):
        if g[0] in ("e", "f"):
            x = apply_divided(g[0], g[1], g[2], x)
    prefix = kbinom_prefix(untilde(A.ro()), r)
    return word, S.mul(prefix, x)


def integrality_check(n: int, r: int) -> dict:
    """pi_r(m^{(A)}) = [A] + strictly lower terms, all Laurent, for every A."""
    S = schur_algebra(n, r)
    bad = []
    for A in S.basis:
        _, val = integral_monomial(A, r)
        ok = val.coeff(A) == ONE and val.is_laurent()
        ok = ok and all(strictly_below(B, A) for B in val.terms if B != A)
        if not ok:
            bad.append(A.to_json())
    inv_ok = True
    for A in S.basis:
        expr = express_standard_basis(A, r)
        back = SchurElt(n, r)
        for B, c in expr.items():
            back = back + integral_monomial(B, r)[1].scale(c)
        if back != SchurElt.basis(A, r) or not all(c.is_laurent() for c in expr.values()):
            inv_ok = False
            bad.append({"inversion": A.to_json()})
    return {"n": n, "r": r, "count": len(S.basis), "pass": not bad and inv_ok, "failures": bad}


def express_standard_basis(A: ThetaMatrix, r: int | None = None) -> Dict[ThetaMatrix, RatFunc]:
    """[A] = sum_B c_B pi_r(m^{(B)}) by peeling maximal terms."""
    r = (A.total() - 1) // 2 if r is None else r
    rest = SchurElt.basis(A, r)
    out: Dict[ThetaMatrix, RatFunc] = {}
    while not rest.is_zero():
        B = min(rest.terms, key=lambda M: (-norm(M), M.rows))
        c = rest.terms[B]
        val = integral_monomial(B, r)[1]
        if val.coeff(B) != ONE:
            raise ArithmeticError(f"integral monomial for {B} is not monic")
        out[B] = out[B] + c if B in out else c
        rest = rest - val.scale(c)
    return out


# the optional experiment on the conjectured integral basis

def _stab_kbinom(n: int, i: int, t: int) -> StabElt:
    kp = StabElt.O(SignedWeight.unit(n, i, 1))
    km = StabElt.O(SignedWeight.unit(n, i, -1))
    if i == n + 1:
        kp, km = kp.scale(_v(-1)), km.scale(_v(1))
    step = 2 if i == n + 1 else 1
    out = StabElt.one(n)
    for s in range(1, t + 1):
        num = kp.scale(_v(step * (1 - s))) - km.scale(_v(step * (s - 1)))
        den = RatFunc(LaurentPoly({step * s: 1, -step * s: -1}))
        out = _o_combination_mul(out, num.scale(RatFunc(1) / den))
    return out


def _o_combination_mul(x: StabElt, y: StabElt) -> StabElt:
    """Product of two combinations of O(j)'s."""
    out = StabElt(x.n)
    for (A, j), c in x.terms.items():
        for (B, jj), cc in y.terms.items():
            out = out + StabElt.O(j + jj).scale(c * cc)
    return out


def rank_experiment(n: int, max_norm: int, max_lambda: int, seed: int = 0) -> dict:
    """Rank of the images of d^tau M^{A,lambda} at random specializations of v.

    Full rank is consistent with linear independence over Q(v). It says
    nothing about the integral basis question and is reported, not asserted.
    """
    from itertools import product
    from .linalg import specialized_rank

    elems = []
    mats = enumerate_zero_diag_by_norm(n, max_norm)
    lams = [lam for lam in product(range(max_lambda + 1), repeat=n + 1) if sum(lam) <= max_lambda]
    for A in mats:
        base = monomial_word(A).evaluate()
        for lam in lams:
            pre = StabElt.one(n)
            for i, t in enumerate(lam, start=1):
                if t:
                    pre = _o_combination_mul(pre, _stab_kbinom(n, i, t))
            for tau in product((0, 1), repeat=n + 1):
                x = base
                for a, t in enumerate(tau, start=1):
                    if t:
                        x = mf_mul(("O", SignedWeight.unit(n, a, 1)), x)
                        if a == n + 1:
                            x = x.scale(_v(-1))
                p = StabElt(n)
                for (P, j), c in pre.terms.items():
                    p = p + mf_mul(("O", j), x).scale(c)
                elems.append(p)
    keys = sorted({k for x in elems for k in x.terms}, key=lambda k: (k[0].rows, k[1].reduced))
    rows = [[x.terms.get(k, ZERO) for k in keys] for x in elems]
    rng = random.Random(seed)
    ranks = [specialized_rank(rows, rng) for _ in range(3)]
    return {"n": n, "elements": len(elems), "ranks": ranks, "full_rank": all(k == len(elems) for k in ranks)}
