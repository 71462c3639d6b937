"""Centro-symmetric matrices of odd size and the combinatorics around them.

Indices in the public API are 1-based, matching the usual matrix notation
``a_{i,j}``; storage is a tuple of row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

Vector = Tuple[int, ...]


def compositions(parts: int, total: int) -> Iterator[Vector]:
    """All tuples of ``parts`` nonnegative integers summing to ``total``,
    in lexicographically decreasing order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(parts - 1, total - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def Lambda(n: int, r: int) -> Tuple[Vector, ...]:
    """Lambda(n+1, r): compositions of r into n+1 parts."""
    if r < 0:
        return ()
    return tuple(compositions(n + 1, r))


def tilde(lam: Sequence[int]) -> Vector:
    """(l_1..l_n, 2 l_{n+1} + 1, l_n..l_1)."""
    head = tuple(lam[:-1])
    return head + (2 * lam[-1] + 1,) + head[::-1]


def untilde(vec: Sequence[int]) -> Vector:
    N = len(vec)
    n = (N - 1) // 2
    if N % 2 == 0 or tuple(vec) != tuple(vec)[::-1] or vec[n] % 2 == 0:
        raise ValueError(f"{tuple(vec)} is not of the form tilde(lambda)")
    return tuple(vec[:n]) + ((vec[n] - 1) // 2,)


class ThetaMatrix:
    """A (2n+1)x(2n+1) nonnegative integer matrix with a_{i,j} = a_{N+1-i,N+1-j}."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]], n: int | None = None, *, check: bool = True):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        N = len(rows)
        if n is None:
            n = (N - 1) // 2
        self.n = n
        self.rows = rows
        self._hash = None
        if check:
            if N != 2 * n + 1 or any(len(row) != N for row in rows):
                raise ValueError(f"expected a {2 * n + 1}x{2 * n + 1} matrix")
            for i in range(N):
                for j in range(N):
                    if rows[i][j] < 0:
                        raise ValueError("negative entry")
                    if rows[i][j] != rows[N - 1 - i][N - 1 - j]:
                        raise ValueError("matrix is not centro-symmetric")

    @property
    def N(self) -> int:
        return 2 * self.n + 1

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, ThetaMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __lt__(self, other):
        return self.rows < other.rows

    def __repr__(self):
        return f"ThetaMatrix({[list(r) for r in self.rows]})"

    def total(self) -> int:
        return sum(map(sum, self.rows))

    def ro(self) -> Vector:
        return tuple(sum(row) for row in self.rows)

    def co(self) -> Vector:
        return tuple(map(sum, zip(*self.rows)))

    def diagonal(self) -> Vector:
        return tuple(self.rows[i][i] for i in range(self.N))

    def is_diagonal(self) -> bool:
        N = self.N
        return all(self.rows[i][j] == 0 for i in range(N) for j in range(N) if i != j)

    def off_diagonal(self) -> "ThetaMatrix":
        N = self.N
        return ThetaMatrix(
            [[0 if i == j else self.rows[i][j] for j in range(N)] for i in range(N)],
            self.n, check=False)

    def has_zero_diagonal(self) -> bool:
        return all(self.rows[i][i] == 0 for i in range(self.N))

    def add(self, other: "ThetaMatrix", sign: int = 1) -> "ThetaMatrix":
        """Entrywise sum; raises if the result has a negative entry."""
        N = self.N
        rows = [[self.rows[i][j] + sign * other.rows[i][j] for j in range(N)] for i in range(N)]
        if any(x < 0 for row in rows for x in row):
            raise ValueError("negative entry")
        return ThetaMatrix(rows, self.n, check=False)

    def plus_diag(self, vec: Sequence[int]) -> "ThetaMatrix":
        rows = [list(r) for r in self.rows]
        for i, x in enumerate(vec):
            rows[i][i] += x
        return ThetaMatrix(rows, self.n, check=False)

    def reversed(self) -> "ThetaMatrix":
        """Simultaneous reversal of rows and columns."""
        return ThetaMatrix([row[::-1] for row in self.rows[::-1]], self.n, check=False)

    def to_json(self):
        return {"n": self.n, "entries": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "ThetaMatrix":
        if isinstance(obj, dict):
            return cls(obj["entries"], obj.get("n"))
        return cls(obj)


def zero(n: int) -> ThetaMatrix:
    N = 2 * n + 1
    return ThetaMatrix([[0] * N for _ in range(N)], n, check=False)


def diag(vec: Sequence[int]) -> ThetaMatrix:
    N = len(vec)
    return ThetaMatrix([[vec[i] if i == j else 0 for j in range(N)] for i in range(N)])


def E_theta(n: int, i: int, j: int, m: int = 1) -> ThetaMatrix:
    """m * E^theta_{i,j} = m (E_{i,j} + E_{N+1-i,N+1-j}); 1-based indices."""
    N = 2 * n + 1
    rows = [[0] * N for _ in range(N)]
    rows[i - 1][j - 1] += m
    rows[N - i][N - j] += m
    return ThetaMatrix(rows, n, check=False)


def ro_co(A: ThetaMatrix) -> Tuple[Vector, Vector]:
    return A.ro(), A.co()


def dr_exponent(A: ThetaMatrix) -> int:
    """d(A) - r(A), the exponent relating e_A to the normalized basis [A].

    Half of  sum_{i>=k, j<l} a_ij a_kl  -  sum_{j < n+1 <= i} a_ij.
    """
    N, n = A.N, A.n
    a = A.rows
    # suffix sums S[k][l] = sum_{k' <= k... } computed directly; sizes are tiny
    first = 0
    for i in range(N):
        for j in range(N):
            aij = a[i][j]
            if not aij:
                continue
            s = 0
            for k in range(i + 1):
                row = a[k]
                for l in range(j + 1, N):
                    s += row[l]
            first += aij * s
    second = sum(a[i][j] for i in range(n, N) for j in range(n))
    total = first - second
    if total % 2:
        raise ValueError("d(A)-r(A) is not integral; matrix is malformed")
    return total // 2


def beta(A: ThetaMatrix, h: int, p: int, primed: bool = False) -> int:
    """beta_p(A,h) or beta'_p(A,h) for 1 <= h <= n, 1 <= p <= N."""
    n = A.n
    if not 1 <= h <= n:
        raise ValueError("h out of range")
    row_h = A.rows[h - 1]
    row_h1 = A.rows[h]
    if primed:
        return sum(row_h1[:p]) - sum(row_h[:p - 1])
    value = sum(row_h[p - 1:]) - sum(row_h1[p:])
    if h == n and p <= n:
        value += 1
    return value


def corner_sums(A: ThetaMatrix) -> Vector:
    """The partial sums defining the preorder, for all i < j then all i > j."""
    N = A.N
    a = A.rows
    out = []
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            out.append(sum(a[r][s] for r in range(i) for s in range(j - 1, N)))
    for i in range(1, N + 1):
        for j in range(1, i):
            out.append(sum(a[r][s] for r in range(i - 1, N) for s in range(j)))
    return tuple(out)


def preceq(A: ThetaMatrix, B: ThetaMatrix) -> bool:
    """A <= B in the preorder (upper corner sums dominated)."""
    N = A.N
    a, b = A.rows, B.rows
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            sa = sum(a[r][s] for r in range(i) for s in range(j - 1, N))
            sb = sum(b[r][s] for r in range(i) for s in range(j - 1, N))
            if sa > sb:
                return False
    return True


def preorder_leq(A: ThetaMatrix, B: ThetaMatrix) -> str:
    """Relation of A to B: 'equiv' (both ways), 'lt', 'gt' or 'incomparable'."""
    ab, ba = preceq(A, B), preceq(B, A)
    if ab and ba:
        return "equiv"
    if ab:
        return "lt"
    if ba:
        return "gt"
    return "incomparable"


def strictly_below(B: ThetaMatrix, A: ThetaMatrix) -> bool:
    return preceq(B, A) and not preceq(A, B)


def norm(A: ThetaMatrix) -> int:
    N = A.N
    a = A.rows
    return sum((j - i) * (j - i + 1) // 2 * (a[i][j] + a[j][i])
               for i in range(N) for j in range(i + 1, N))


@lru_cache(maxsize=None)
def triple_order(n: int) -> Tuple[Tuple[int, int, int], ...]:
    """The triples (i,h,j), 1 <= j <= h < i <= N, in increasing order."""
    N = 2 * n + 1
    triples = [(i, h, j) for i in range(1, N + 1) for h in range(1, i) for j in range(1, h + 1)]
    triples.sort(key=lambda t: (t[0], t[2], -t[1]))
    return tuple(triples)


def triple_leq(t1, t2) -> bool:
    (i, h, j), (i2, h2, j2) = t1, t2
    return i < i2 or (i == i2 and j < j2) or (i == i2 and j == j2 and h >= h2)


def _free_positions(n: int) -> List[Tuple[int, int]]:
    """One representative (0-based) of each orbit {(i,j), (N-1-i, N-1-j)}."""
    N = 2 * n + 1
    reps = []
    for i in range(N):
        for j in range(N):
            if (i, j) <= (N - 1 - i, N - 1 - j):
                reps.append((i, j))
    return reps


def _weight_fill(n: int, weights, limit_exact, budget, keep) -> Iterator[ThetaMatrix]:
    N = 2 * n + 1
    positions = [p for p in _free_positions(n) if keep(p)]
    w = [weights(p) for p in positions]

    def rec(k, remaining, chosen):
        if k == len(positions):
            if limit_exact is None or remaining == 0:
                rows = [[0] * N for _ in range(N)]
                for (i, j), x in zip(positions, chosen):
                    rows[i][j] = x
                    rows[N - 1 - i][N - 1 - j] = x
                yield ThetaMatrix(rows, n, check=False)
            return
        wk = w[k]
        if wk == 0:
            raise ValueError("zero weight position")
        for x in range(remaining // wk + 1):
            yield from rec(k + 1, remaining - x * wk, chosen + [x])

    yield from rec(0, budget, [])


def enumerate_xi(n: int, r: int, zero_diag: bool = False) -> List[ThetaMatrix]:
    """Xi_{2n+1,2r+1} (|A| = 2r+1), or with ``zero_diag`` all zero-diagonal
    members of Xi_{2n+1} with |A| <= 2r. Returned sorted."""
    2 * n + 1
    centre = (n, n)

    def weight(p):
        return 1 if p == centre else 2

    if zero_diag:
        out = list(_weight_fill(n, weight, None, 2 * r, lambda p: p[0] != p[1]))
    else:
        out = list(_weight_fill(n, weight, True, 2 * r + 1, lambda p: True))
    return sorted(out)


def enumerate_zero_diag_by_norm(n: int, max_norm: int) -> List[ThetaMatrix]:
    """All zero-diagonal centro-symmetric matrices with ||A|| <= max_norm."""
    2 * n + 1

    def weight(p):
        i, j = p
        d = abs(j - i)
        return 2 * (d * (d + 1) // 2)

    return sorted(_weight_fill(n, weight, None, max_norm, lambda p: p[0] != p[1]))


def embed_circ(A: ThetaMatrix, r: int) -> ThetaMatrix:
    """Embed A in Xi_{2n+1} into Xi_{2r+1} (n < r) by inserting zero rows and
    columns after the first n and before the last n indices."""
    n = A.n
    if n >= r:
        raise ValueError("embedding needs n < r")
    index = embed_index_map(n, r)
    M = 2 * r + 1
    rows = [[0] * M for _ in range(M)]
    for i in range(A.N):
        for j in range(A.N):
            rows[index[i + 1] - 1][index[j + 1] - 1] = A.rows[i][j]
    return ThetaMatrix(rows, r)


def embed_index_map(n: int, r: int) -> dict:
    """1-based position of index i of [1, 2n+1] inside [1, 2r+1]."""
    out = {}
    for i in range(1, 2 * n + 2):
        if i <= n:
            out[i] = i
        elif i == n + 1:
            out[i] = r + 1
        else:
            out[i] = i + 2 * (r - n)
    return out


def embed_vector(vec: Sequence[int], r: int) -> Vector:
    n = (len(vec) - 1) // 2
    index = embed_index_map(n, r)
    out = [0] * (2 * r + 1)
    for i, x in enumerate(vec, start=1):
        out[index[i] - 1] = x
    return tuple(out)


@dataclass(frozen=True)
class SignedWeight:
    """A weight j in Z^{2n+1}, identified with its reduced form of length n+1
    (j_i + j_{N+1-i} for i <= n, then j_{n+1})."""

    reduced: Vector

    @classmethod
    def from_raw(cls, j: Sequence[int]) -> "SignedWeight":
        N = len(j)
        if N % 2 == 0:
            raise ValueError("weight must have odd length")
        n = (N - 1) // 2
        return cls(tuple(j[i] + j[N - 1 - i] for i in range(n)) + (j[n],))

    @classmethod
    def zero(cls, n: int) -> "SignedWeight":
        return cls((0,) * (n + 1))

    @classmethod
    def unit(cls, n: int, i: int, sign: int = 1) -> "SignedWeight":
        """Reduced form of sign * e_i, i in [1, 2n+1]."""
        N = 2 * n + 1
        k = min(i, N + 1 - i)
        vec = [0] * (n + 1)
        vec[k - 1] = sign
        return cls(tuple(vec))

    @property
    def n(self) -> int:
        return len(self.reduced) - 1

    def raw(self) -> Vector:
        """Canonical representative in Z^{2n+1}: reduced entries up to n+1, zeros after."""
        return self.reduced + (0,) * self.n

    def __add__(self, other: "SignedWeight") -> "SignedWeight":
        return SignedWeight(tuple(a + b for a, b in zip(self.reduced, other.reduced)))

    def __neg__(self) -> "SignedWeight":
        return SignedWeight(tuple(-a for a in self.reduced))

    def __sub__(self, other: "SignedWeight") -> "SignedWeight":
        return self + (-other)

    def pair(self, vec: Sequence[int]) -> int:
        """vec . j for a vector of length 2n+1 (any vector, not only centro-symmetric)."""
        return sum(x * y for x, y in zip(vec, self.raw()))

    def pair_tilde(self, lam: Sequence[int]) -> int:
        """tilde(lam) . j, computed from the reduced form."""
        n = self.n
        return sum(lam[i] * self.reduced[i] for i in range(n)) + (2 * lam[n] + 1) * self.reduced[n]

    def __lt__(self, other):
        return self.reduced < other.reduced

    def to_json(self):
        return {"reduced": list(self.reduced)}

    @classmethod
    def from_json(cls, obj) -> "SignedWeight":
        if isinstance(obj, dict):
            if "reduced" in obj:
                return cls(tuple(obj["reduced"]))
            return cls.from_raw(obj["raw"])
        return cls.from_raw(obj)


def alpha(n: int, h: int) -> SignedWeight:
    """alpha_h = e_h - e_{h+1}."""
    return SignedWeight.unit(n, h) - SignedWeight.unit(n, h + 1)


def alpha_minus(n: int, h: int) -> SignedWeight:
    """alpha_h^- = -e_h - e_{h+1}."""
    return -(SignedWeight.unit(n, h) + SignedWeight.unit(n, h + 1))
