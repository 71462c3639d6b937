"""Multiplication tables of S^j(n, r) as plain JSON-ready data."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import List

from .coeffs import RatFunc, vpow
from .hecke import schur_oracle
from .schur import schur_algebra
from .theta import ThetaMatrix, dr_exponent

TABLE_FORMAT = 1
BASES = ("normalized", "e")


def _row(n: int, r: int, basis: str, a: int) -> List[dict]:
    S = schur_algebra(n, r)
    A = S.basis[a]
    out = []
    for B in S.basis:
        prod = S.mul_basis(A, B)
        if prod.is_zero():
            continue
        terms = []
        for C, c in sorted(prod.terms.items()):
            if basis == "e":
                c = c * RatFunc(vpow(dr_exponent(A) + dr_exponent(B) - dr_exponent(C)))
            if not c.is_laurent():
                raise ArithmeticError(f"non-Laurent structure constant for {A} * {B}")
            terms.append({"C": C.to_json(), "c": c.as_laurent().to_json()})
        out.append({"A": A.to_json(), "B": B.to_json(), "product": terms})
    return out


def _rows_worker(args):
    n, r, basis, idx = args
    return [entry for a in idx for entry in _row(n, r, basis, a)]


def multiplication_table(n: int, r: int, basis: str = "normalized", jobs: int = 1) -> dict:
    """All nonzero products of basis elements, sorted by (A, B)."""
    if basis not in BASES:
        raise ValueError(f"basis must be one of {BASES}")
    size = len(schur_algebra(n, r).basis)
    if jobs > 1 and size > 1:
        chunks = [list(range(k, size, jobs)) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_rows_worker, [(n, r, basis, c) for c in chunks]))
        entries = [e for part in parts for e in part]
    else:
        entries = _rows_worker((n, r, basis, range(size)))
    entries.sort(key=lambda e: (e["A"]["entries"], e["B"]["entries"]))
    return {"format": TABLE_FORMAT, "n": n, "r": r, "basis": basis, "entries": entries}


def oracle_table(n: int, r: int) -> dict:
    """The same table in the e basis, straight from the Hecke oracle."""
    O = schur_oracle(n, r)
    entries = []
    for A in O.basis():
        for B in O.basis():
            prod = O.mul_basis(A, B)
            terms = [{"C": C.to_json(), "c": c.to_json()} for C, c in sorted(prod.items()) if not c.is_zero()]
            if terms:
                entries.append({"A": A.to_json(), "B": B.to_json(), "product": terms})
    entries.sort(key=lambda e: (e["A"]["entries"], e["B"]["entries"]))
    return {"format": TABLE_FORMAT, "n": n, "r": r, "basis": "e", "entries": entries}


def table_from_normalized(table: dict) -> dict:
    """Convert a normalized-basis table to the e basis."""
    from .coeffs import LaurentPoly
    entries = []
    for e in table["entries"]:
        A, B = ThetaMatrix.from_json(e["A"]), ThetaMatrix.from_json(e["B"])
        shift = dr_exponent(A) + dr_exponent(B)
        terms = []
        for t in e["product"]:
            C = ThetaMatrix.from_json(t["C"])
            terms.append({"C": t["C"], "c": LaurentPoly.from_json(t["c"]).shift(shift - dr_exponent(C)).to_json()})
        entries.append({"A": e["A"], "B": e["B"], "product": terms})
    return {"format": table["format"], "n": table["n"], "r": table["r"], "basis": "e", "entries": entries}
