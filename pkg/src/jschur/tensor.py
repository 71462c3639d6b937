"""Tensor space Omega^{(x) r} with its two commuting actions.

The Hecke algebra of type B acts on the right. The quantum gl_N acts through
the iterated coproduct and restricts to U^j(n) along iota. The map eta_r sends
tensors into the Schur algebra.
"""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .coeffs import ONE, ZERO, LaurentPoly, RatFunc, vpow
from .hecke import coset_matrix, weyl_generator
from .iquantum import UjWord, omega, phi_j, relation_instances
from .linalg import exact_rank, random_point
from .schur import SchurElt, normalize_from_e, schur_algebra
from .stabilized import pi_r
from .theta import ThetaMatrix, embed_circ, embed_index_map, enumerate_xi

Index = Tuple[int, ...]

_V2M1 = RatFunc(LaurentPoly({2: 1, 0: -1}))
_V = RatFunc(vpow(1))
_V2 = RatFunc(vpow(2))


class TensorElt:
    """Finite combination of pure tensors omega_i, i in I(2n+1, r)."""

    __slots__ = ("n", "r", "terms")

    def __init__(self, n: int, r: int, terms: Dict[Index, RatFunc] | None = None):
        self.n, self.r = n, r
        N = 2 * n + 1
        clean = {}
        for i, c in (terms or {}).items():
            c = c if isinstance(c, RatFunc) else RatFunc(c)
            if c.is_zero():
                continue
            i = tuple(i)
            if len(i) != r or not all(1 <= x <= N for x in i):
                raise ValueError(f"bad index tuple {i}")
            clean[i] = c
        self.terms = clean

    @classmethod
    def basis(cls, n: int, i: Sequence[int], c=ONE) -> "TensorElt":
        return cls(n, len(i), {tuple(i): c})

    def is_zero(self):
        return not self.terms

    def __add__(self, other: "TensorElt") -> "TensorElt":
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out[i] + c if i in out else c
        return TensorElt(self.n, self.r, out)

    def __neg__(self):
        return TensorElt(self.n, self.r, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElt":
        c = c if isinstance(c, RatFunc) else RatFunc(c)
        return TensorElt(self.n, self.r, {i: x * c for i, x in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, TensorElt) and (self.n, self.r) == (other.n, other.r)
                and self.terms == other.terms)

    def __repr__(self):
        return "TensorElt(" + " + ".join(f"({c})w{list(i)}" for i, c in sorted(self.terms.items())) + ")"

    def to_json(self):
        return {"n": self.n, "r": self.r,
                "terms": [{"i": list(i), "c": c.to_json()} for i, c in sorted(self.terms.items())]}


def all_indices(n: int, r: int) -> List[Index]:
    return list(product(range(1, 2 * n + 2), repeat=r))


def _linear(fn, x: TensorElt) -> TensorElt:
    out: Dict[Index, RatFunc] = {}
    for i, c in x.terms.items():
        for j, d in fn(i).items():
            val = c * d
            out[j] = out[j] + val if j in out else val
    return TensorElt(x.n, x.r, out)


# right Hecke action

def hecke_on_basis(i: Index, k: int, n: int) -> Dict[Index, RatFunc]:
    """omega_i T_k. For k = r the letter i_r is compared with n+1 and the
    moved tuple replaces i_r by N+1-i_r."""
    r = len(i)
    N = 2 * n + 1
    if not 1 <= k <= r:
        raise ValueError("generator index out of range")
    if k < r:
        a, b = i[k - 1], i[k]
        moved = i[:k - 1] + (b, a) + i[k + 1:]
    else:
        a, b = i[-1], n + 1
        moved = i[:-1] + (N + 1 - i[-1],)
    if a < b:
        return {moved: _V}
    if a == b:
        return {i: _V2}
    return {i: _V2M1, moved: _V}


def hecke_act(x: TensorElt, k: int) -> TensorElt:
    return _linear(lambda i: hecke_on_basis(i, k, x.n), x)


# quantum gl_N action

def _k_exp(letter: int, j: int) -> int:
    return int(letter == j)


def _ktilde_exp(letter: int, a: int) -> int:
    """Exponent of v for K_a K_{a+1}^{-1} on omega_letter."""
    return int(letter == a) - int(letter == a + 1)


def gl_on_basis(g, i: Index) -> Dict[Index, RatFunc]:
    """Generator g = ('E', a) | ('F', a) | ('K', j, +-1) on a pure tensor."""
    kind = g[0]
    out: Dict[Index, RatFunc] = {}
    if kind == "K":
        j, s = g[1], g[2]
        return {i: RatFunc(vpow(s * sum(_k_exp(x, j) for x in i)))}
    a = g[1]
    r = len(i)
    for p in range(r):
        if kind == "E":
            if i[p] != a + 1:
                continue
            e = sum(_ktilde_exp(x, a) for x in i[p + 1:])
            j = i[:p] + (a,) + i[p + 1:]
        elif kind == "F":
            if i[p] != a:
                continue
            e = -sum(_ktilde_exp(x, a) for x in i[:p])
            j = i[:p] + (a + 1,) + i[p + 1:]
        else:
            raise ValueError(f"unknown generator {g!r}")
        c = RatFunc(vpow(e))
        out[j] = out[j] + c if j in out else c
    return out


def gl_act(g, x: TensorElt) -> TensorElt:
    return _linear(lambda i: gl_on_basis(g, i), x)


def gl_word_act(word: Sequence, x: TensorElt) -> TensorElt:
    """Apply a product of gl generators (leftmost acts last)."""
    for g in reversed(word):
        x = gl_act(g, x)
    return x


def iota_image(letter, n: int) -> List[Tuple[RatFunc, Tuple]]:
    """iota of a U^j letter as a combination of gl words."""
    N = 2 * n + 1
    kind = letter[0]
    if kind == "d":
        a, s = letter[1], letter[2]
        if a <= n:
            return [(ONE, (("K", a, -s), ("K", N + 1 - a, -s)))]
        return [(RatFunc(vpow(-s)), (("K", n + 1, -2 * s),))]
    h = letter[1]
    if kind == "e":
        # F_h + Ktilde_h^{-1} E_{N-h}
        return [(ONE, (("F", h),)),
                (ONE, (("K", h, -1), ("K", h + 1, 1), ("E", N - h)))]
    if kind == "f":
        # E_h Ktilde_{N-h}^{-1} + F_{N-h}
        return [(ONE, (("E", h), ("K", N - h, -1), ("K", N - h + 1, 1))),
                (ONE, (("F", N - h),))]
    raise ValueError(f"unknown letter {letter!r}")


def iota_act(letter, x: TensorElt) -> TensorElt:
    out = TensorElt(x.n, x.r)
    for c, word in iota_image(letter, x.n):
        out = out + gl_word_act(word, x).scale(c)
    return out


def iota_word_act(w: UjWord, x: TensorElt) -> TensorElt:
    out = TensorElt(x.n, x.r)
    for word, c in w.terms.items():
        y = x
        for l in reversed(word):
            y = iota_act(l, y)
        out = out + y.scale(c)
    return out


def uj_letters(n: int) -> List[Tuple]:
    out = [("e", h) for h in range(1, n + 1)] + [("f", h) for h in range(1, n + 1)]
    out += [("d", a, s) for a in range(1, n + 2) for s in (1, -1)]
    return out


# checks on the tensor side

def commutation_check(n: int, r: int) -> dict:
    """Every iota(g) commutes with every T_k on every basis tensor."""
    failures = []
    for i in all_indices(n, r):
        x = TensorElt.basis(n, i)
        for g in uj_letters(n):
            for k in range(1, r + 1):
                lhs = hecke_act(iota_act(g, x), k)
                rhs = iota_act(g, hecke_act(x, k))
                if lhs != rhs:
                    failures.append({"g": list(g), "k": k, "i": list(i)})
    return {"n": n, "r": r, "pass": not failures, "failures": failures[:10]}


def gl_commutation_counterexample(n: int, r: int, g=("E", 1)):
    """First basis tensor on which the gl generator g fails to commute with
    some T_k, or None."""
    for i in all_indices(n, r):
        x = TensorElt.basis(n, i)
        for k in range(1, r + 1):
            if hecke_act(gl_act(g, x), k) != gl_act(g, hecke_act(x, k)):
                return {"g": list(g), "k": k, "i": list(i)}
    return None


def hecke_relations_check(n: int, r: int) -> dict:
    """Quadratic and braid relations of H(B_r) as operators on Omega^{(x) r}."""
    fails = []

    def T(x, *ks):
        for k in ks:
            x = hecke_act(x, k)
        return x

    for i in all_indices(n, r):
        x = TensorElt.basis(n, i)
        for k in range(1, r + 1):
            y = T(x, k)
            if T(y, k) != y.scale(_V2M1) + x.scale(_V2):
                fails.append(("quadratic", k, i))
        for a in range(1, r + 1):
            for b in range(a + 1, r + 1):
                if b - a > 1 and T(x, a, b) != T(x, b, a):
                    fails.append(("commute", a, b, i))
                if b == a + 1 and b < r and T(x, a, b, a) != T(x, b, a, b):
                    fails.append(("braid3", a, b, i))
                if b == a + 1 == r and T(x, a, b, a, b) != T(x, b, a, b, a):
                    fails.append(("braid4", a, b, i))
    return {"n": n, "r": r, "pass": not fails, "failures": fails[:10]}


def tensor_relations_check(n: int, r: int) -> dict:
    """The defining relations of U^j(n) hold as operators through iota."""
    fails = []
    basis = [TensorElt.basis(n, i) for i in all_indices(n, r)]
    for fam, label, lhs, rhs in relation_instances(n):
        for x in basis:
            if iota_word_act(lhs, x) != iota_word_act(rhs, x):
                fails.append({"family": fam, "instance": label})
                break
    return {"n": n, "r": r, "pass": not fails, "failures": fails}


# eta_r

def empty_composition(n: int, r: int) -> Tuple[int, ...]:
    """(1^r, 0^{n-r}; 0), whose tilde is (1^r, 0^{n-r}, 1, 0^{n-r}, 1^r)."""
    if n < r:
        raise ValueError("needs n >= r")
    return (1,) * r + (0,) * (n - r) + (0,)


def a_matrix(i: Sequence[int], n: int) -> ThetaMatrix:
    """A_i: column l <= r has a single 1 in row i_l, column n+1 has a single 1
    in row n+1, the last r columns mirror the first r."""
    r = len(i)
    if n < r:
        raise ValueError("needs n >= r")
    N = 2 * n + 1
    rows = [[0] * N for _ in range(N)]
    for l, k in enumerate(i, start=1):
        rows[k - 1][l - 1] = 1
        rows[N - k][N - l] = 1
    rows[n][n] = 1
    return ThetaMatrix(rows, n)


def eta_index(i: Sequence[int], n: int) -> Tuple[ThetaMatrix, int]:
    """(A_i, rank) with letters pushed into [1, 2r+1] first when n < r."""
    r = len(i)
    if n >= r:
        return a_matrix(i, n), n
    index = embed_index_map(n, r)
    return a_matrix([index[k] for k in i], r), r


def eta(x, n: int | None = None) -> SchurElt:
    """eta_r on a basis tuple or a TensorElt."""
    if not isinstance(x, TensorElt):
        x = TensorElt.basis(n, x)
    r = x.r
    rank = max(x.n, r)
    out = SchurElt(rank, r)
    for i, c in x.terms.items():
        A, _ = eta_index(i, x.n)
        out = out + SchurElt.basis(A, r).scale(c)
    return out


def embed_schur(x: SchurElt, rank: int) -> SchurElt:
    """[A] -> [A°] into S^j(rank, r)."""
    if x.n == rank:
        return x
    return SchurElt(rank, x.r, {embed_circ(A, rank): c for A, c in x.terms.items()})


def intertwiner_check(n: int, r: int) -> dict:
    """eta(iota(g) w_i) = pi_r(phi(omega(g))) [A_i] for every generator and i."""
    rank = max(n, r)
    S = schur_algebra(rank, r)
    failures = []
    checked = 0
    images = {g: embed_schur(pi_r(phi_j(omega(UjWord.letter(n, *g))), r), rank) for g in uj_letters(n)}
    for i in all_indices(n, r):
        x = TensorElt.basis(n, i)
        Ai = eta(x)
        for g in uj_letters(n):
            lhs = eta(iota_act(g, x))
            rhs = S.mul(images[g], Ai)
            checked += 1
            if lhs != rhs:
                failures.append({"g": list(g), "i": list(i)})
    return {"n": n, "r": r, "checked": checked, "pass": not failures, "failures": failures[:10]}


def hecke_image(n: int, r: int, k: int) -> SchurElt:
    """The element of e S e (e the idempotent for the empty composition) that
    corresponds to T_k, written in the [A] basis."""
    lam = empty_composition(n, r)
    A = coset_matrix(lam, weyl_generator(k, r), lam)
    return normalize_from_e(n, r, {A: ONE})


def eta_hecke_check(n: int, r: int) -> dict:
    """eta(x T_k) = eta(x) [image of T_k] on every basis tensor (n >= r)."""
    S = schur_algebra(n, r)
    fails = []
    for k in range(1, r + 1):
        h = hecke_image(n, r, k)
        for i in all_indices(n, r):
            x = TensorElt.basis(n, i)
            if eta(hecke_act(x, k)) != S.mul(eta(x), h):
                fails.append({"k": k, "i": list(i)})
    return {"n": n, "r": r, "pass": not fails, "failures": fails[:10]}


# the commutant

def orbit_key(i: Index, n: int) -> Tuple[int, ...]:
    N = 2 * n + 1
    return tuple(sorted(min(x, N + 1 - x) for x in i))


def _orbits(n: int, r: int) -> List[List[Index]]:
    groups = defaultdict(list)
    for i in all_indices(n, r):
        groups[orbit_key(i, n)].append(i)
    return [groups[k] for k in sorted(groups)]


def _block_system(n: int, r: int, src: List[Index], dst: List[Index], value) -> List[list]:
    """Rows of the linear system M_k^dst X = X M_k^src over all k, with
    entries mapped through ``value``."""
    ps, pd = {i: a for a, i in enumerate(src)}, {i: a for a, i in enumerate(dst)}
    ms, md = len(src), len(dst)
    zero = value(ZERO)
    rows = []
    for k in range(1, r + 1):
        Ms = [[zero] * ms for _ in range(ms)]
        for j in src:
            for t, c in hecke_on_basis(j, k, n).items():
                Ms[ps[t]][ps[j]] = value(c)
        Md = [[zero] * md for _ in range(md)]
        for j in dst:
            for t, c in hecke_on_basis(j, k, n).items():
                Md[pd[t]][pd[j]] = value(c)
        for a in range(md):
            for b in range(ms):
                row = [zero] * (md * ms)
                for c in range(md):
                    if Md[a][c] != zero:
                        row[c * ms + b] = row[c * ms + b] + Md[a][c]
                for c in range(ms):
                    if Ms[c][b] != zero:
                        row[a * ms + c] = row[a * ms + c] - Ms[c][b]
                rows.append(row)
    return rows


def _dimension_at(n: int, r: int, x: Fraction) -> int:
    orbits = _orbits(n, r)

    def value(c: RatFunc):
        if c.is_zero():
            return QQ(0)
        q = c.evaluate(x)
        return QQ(q.numerator, q.denominator)

    total = 0
    for src in orbits:
        for dst in orbits:
            rows = _block_system(n, r, src, dst, value)
            M = DomainMatrix(rows, (len(rows), len(src) * len(dst)), QQ)
            total += len(src) * len(dst) - M.rank()
    return total


def _dimension_exact(n: int, r: int) -> int:
    orbits = _orbits(n, r)
    total = 0
    for src in orbits:
        for dst in orbits:
            rows = _block_system(n, r, src, dst, lambda c: c)
            total += len(src) * len(dst) - exact_rank(rows)
    return total


def commutant_dimension(n: int, r: int, trials: int = 3, seed: int = 0) -> dict:
    """dim End_{H(B_r)}(Omega^{(x) r}) by specialized ranks.

    The tensor space splits into the spans of the W-orbits of index tuples,
    each stable under every T_k, so the commutant is the direct sum of the
    Hom spaces between orbit blocks and each is solved separately.
    """
    rng = random.Random(seed)
    points, dims = [], []
    while len(points) < trials:
        x = random_point(rng)
        if x in points:
            continue
        points.append(x)
        dims.append(_dimension_at(n, r, x))
    agree = len(set(dims)) == 1
    report = {"n": n, "r": r, "specializations": [str(p) for p in points], "dimensions": dims,
              "agree": agree, "exact": None}
    if agree:
        report["dimension"] = dims[0]
    else:
        report["exact"] = _dimension_exact(n, r)
        report["dimension"] = report["exact"]
    report["xi_count"] = len(enumerate_xi(n, r))
    report["pass"] = report["dimension"] == report["xi_count"]
    return report
