"""Command-line driver.

Every verb prints a JSON report on stdout and a one-line summary on stderr.
Exit status: 0 pass, 2 verification failure, 3 input error, 4 scale refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, List, Optional

from . import __version__
from .cache import Cache
from .coeffs import ZeroDivision
from .schur import SchurElt, build_ajr, normalize_from_e, normalize_to_e, schur_algebra
from .stabilized import StabElt, TriangularityError, stab_mul, triangular_expand
from .theta import Lambda, SignedWeight, ThetaMatrix, enumerate_xi

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SCALE = 0, 2, 3, 4
MAX_N, MAX_R = 4, 4


class InputError(Exception):
    pass


class ScaleRefused(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# input helpers

def load_json(arg: str) -> Any:
    """Inline JSON, a file path, or '-' for stdin."""
    try:
        if arg == "-":
            return json.load(sys.stdin)
        text = arg.strip()
        if text[:1] in "[{" or text.lstrip("-").isdigit():
            return json.loads(text)
        return json.loads(Path(arg).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {arg!r}: {exc}") from exc


def parse_matrix(obj) -> ThetaMatrix:
    try:
        return ThetaMatrix.from_json(obj)
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


def parse_weight(obj, n: int) -> SignedWeight:
    if obj is None:
        return SignedWeight.zero(n)
    try:
        j = SignedWeight.from_json(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"bad weight: {exc}") from exc
    if j.n != n:
        raise InputError("weight length does not match the matrix size")
    return j


def parse_schur(obj, n: int, r: int) -> SchurElt:
    """A SchurElt JSON object, or a bare matrix meaning a basis element."""
    try:
        if isinstance(obj, dict) and "terms" in obj:
            x = SchurElt.from_json({"n": obj.get("n", n), "r": obj.get("r", r), "terms": obj["terms"]})
        else:
            x = SchurElt.basis(ThetaMatrix.from_json(obj), r)
    except (ValueError, TypeError, KeyError, IndexError, ZeroDivision) as exc:
        raise InputError(f"bad Schur element: {exc}") from exc
    if (x.n, x.r) != (n, r):
        raise InputError(f"element lives in S({x.n},{x.r}), expected S({n},{r})")
    return x


def parse_stab(obj, n: int) -> StabElt:
    """A StabElt JSON object, or a bare zero-diagonal matrix meaning A(0)."""
    try:
        if isinstance(obj, dict) and "terms" in obj:
            x = StabElt.from_json({"n": obj.get("n", n), "terms": obj["terms"]})
        else:
            x = StabElt.basis(ThetaMatrix.from_json(obj))
    except (ValueError, TypeError, KeyError, IndexError, ZeroDivision) as exc:
        raise InputError(f"bad stabilized element: {exc}") from exc
    if x.n != n:
        raise InputError(f"element has rank {x.n}, expected {n}")
    return x


def guard(args, n: Optional[int] = None, r: Optional[int] = None):
    if n is not None and n < 1:
        raise InputError("n must be at least 1")
    if r is not None and r < 0:
        raise InputError("r must be nonnegative")
    if args.unsafe_scale:
        return
    if (n is not None and n > MAX_N) or (r is not None and r > MAX_R):
        raise ScaleRefused(f"(n, r) = ({n}, {r}) exceeds n <= {MAX_N}, r <= {MAX_R}; pass --unsafe-scale to run anyway")


def _schur_out(x: SchurElt, basis: str):
    if basis == "normalized":
        return x.to_json()
    coeffs = normalize_to_e(x)
    return {"n": x.n, "r": x.r, "basis": "e",
            "terms": [{"A": A.to_json(), "c": c.to_json()} for A, c in sorted(coeffs.items())]}


def _cache(args) -> Cache:
    return Cache(args.cache_dir)


def table_bytes(args, n: int, r: int, basis: str) -> bytes:
    from .tables import multiplication_table
    return _cache(args).get_or_compute("table", {"n": n, "r": r, "basis": basis},
                                       lambda: multiplication_table(n, r, basis, args.jobs))


# verbs

def cmd_mul(args):
    guard(args, args.n, args.r)
    x = parse_schur(load_json(args.x), args.n, args.r)
    y = parse_schur(load_json(args.y), args.n, args.r)
    if args.basis == "e":
        # inputs were given in the e basis; reinterpret the coefficients
        x = normalize_from_e(x.n, x.r, x.terms)
        y = normalize_from_e(y.n, y.r, y.terms)
    prod = schur_algebra(args.n, args.r).mul(x, y)
    return True, {"verb": "mul", "basis": args.basis, "product": _schur_out(prod, args.basis)}, \
        f"product has {len(prod.terms)} terms"


def cmd_ajr(args):
    A = parse_matrix(load_json(args.matrix))
    guard(args, A.n, args.r)
    if not A.has_zero_diagonal():
        raise InputError("A(j, r) needs a zero-diagonal matrix")
    j = parse_weight(load_json(args.j) if args.j else None, A.n)
    x = build_ajr(A, j, args.r)
    return True, {"verb": "ajr", "value": x.to_json()}, f"A(j, r) has {len(x.terms)} terms"


def cmd_stab_mul(args):
    guard(args, args.n)
    x = parse_stab(load_json(args.x), args.n)
    y = parse_stab(load_json(args.y), args.n)
    prod = stab_mul(x, y)
    return True, {"verb": "stab-mul", "product": prod.to_json()}, f"product has {len(prod.terms)} terms"


def cmd_expand_monomial(args):
    A = parse_matrix(load_json(args.matrix))
    guard(args, A.n)
    if not A.has_zero_diagonal():
        raise InputError("monomials are indexed by zero-diagonal matrices")
    j = parse_weight(load_json(args.j) if args.j else None, A.n)
    try:
        rep = triangular_expand(A, j)
    except TriangularityError as exc:
        return False, {"verb": "expand-monomial", "pass": False, "error": str(exc)}, str(exc)
    value = rep.pop("value")
    rep["value"] = value.to_json()
    rep["pass"] = True
    return True, {"verb": "expand-monomial", **rep}, f"{rep['word']}: unitriangular, {len(rep['lower_terms'])} lower terms"


def cmd_expand(args):
    from .iquantum import express_standard_basis, integral_word
    A = parse_matrix(load_json(args.matrix))
    r = (A.total() - 1) // 2 if args.r is None else args.r
    guard(args, A.n, r)
    if A.total() != 2 * r + 1:
        raise InputError(f"|A| = {A.total()} does not match r = {r}")
    expr = express_standard_basis(A, r)
    terms = [{"B": B.to_json(), "word": [list(f) for f in integral_word(B)], "c": c.to_json(),
              "laurent": c.is_laurent()} for B, c in sorted(expr.items())]
    ok = all(t["laurent"] for t in terms)
    return ok, {"verb": "expand", "A": A.to_json(), "r": r, "pass": ok, "terms": terms}, \
        f"[A] is a combination of {len(terms)} integral monomials"


def _verify_formulas(args):
    from .tables import oracle_table, table_from_normalized
    data = table_bytes(args, args.n, args.r, "normalized")
    mine = table_from_normalized(json.loads(data))
    theirs = oracle_table(args.n, args.r)
    diffs = []

    def keyed(table):
        return {(json.dumps(e["A"], sort_keys=True), json.dumps(e["B"], sort_keys=True)):
                json.loads(json.dumps(e["product"], sort_keys=True)) for e in table["entries"]}

    got, want = keyed(mine), keyed(theirs)
    for key in sorted(set(got) | set(want)):
        if got.get(key) != want.get(key):
            diffs.append({"A": json.loads(key[0]), "B": json.loads(key[1]),
                          "formulas": got.get(key), "oracle": want.get(key)})
    return {"n": args.n, "r": args.r, "products": len(want), "pass": not diffs, "diffs": diffs[:10]}


def _verify_lemma63(args):
    from .iquantum import lemma63_check
    rs = range(args.r + 1) if args.r is not None else range(MAX_R)
    results = [lemma63_check(lam, r) for r in rs for lam in Lambda(args.n, r)]
    return {"n": args.n, "checked": len(results), "pass": all(x["pass"] for x in results),
            "failures": [x for x in results if not x["pass"]]}


def cmd_verify(args):
    what = args.what
    needs_r = what != "relations"
    if needs_r and args.r is None and what != "lemma63":
        raise InputError(f"verify {what} needs --r")
    guard(args, args.n, args.r)
    if what == "relations":
        from .iquantum import verify_relations
        rep = verify_relations(args.n)
    elif what == "formulas":
        rep = _verify_formulas(args)
    elif what == "duality":
        from .tensor import commutant_dimension, commutation_check
        comm = commutation_check(args.n, args.r)
        dim = commutant_dimension(args.n, args.r, trials=args.trials, seed=args.seed)
        rep = {"n": args.n, "r": args.r, "commutation": comm, "commutant": dim,
               "pass": comm["pass"] and dim["pass"] and dim["agree"]}
    elif what == "intertwiner":
        from .tensor import intertwiner_check
        rep = intertwiner_check(args.n, args.r)
    elif what == "integrality":
        from .iquantum import integrality_check
        rep = integrality_check(args.n, args.r)
    else:
        rep = _verify_lemma63(args)
    status = "PASS" if rep["pass"] else "FAIL"
    return rep["pass"], {"verb": "verify", "what": what, **rep}, f"verify {what}: {status}"


def cmd_enumerate(args):
    guard(args, args.n, args.r)
    mats = enumerate_xi(args.n, args.r, zero_diag=args.zero_diag)
    return True, {"verb": "enumerate", "what": "xi", "n": args.n, "r": args.r, "zero_diag": args.zero_diag,
                  "count": len(mats), "matrices": [A.to_json() for A in mats]}, f"{len(mats)} matrices"


def cmd_dump(args):
    guard(args, args.n, args.r)
    cache = _cache(args)
    params = {"n": args.n, "r": args.r, "basis": args.basis}
    from .tables import multiplication_table
    data = cache.get_or_compute("table", params, lambda: multiplication_table(args.n, args.r, args.basis, args.jobs))
    if args.out and args.out != "-":
        Path(args.out).write_bytes(data)
        report = {"verb": "dump", "what": "table", **params, "out": args.out, "bytes": len(data),
                  "cache_hit": cache.hits > 0}
        return True, report, f"wrote {len(data)} bytes to {args.out}"
    sys.stdout.buffer.write(data)
    sys.stdout.flush()
    return True, None, f"table ({len(data)} bytes), cache {'hit' if cache.hits else 'miss'}"


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed for randomized checks")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for table sweeps")
    common.add_argument("--cache-dir", default=None, help="cache directory (default $JSCHUR_CACHE_DIR or ~/.cache/jschur)")
    common.add_argument("--unsafe-scale", action="store_true", help=f"allow n > {MAX_N} or r > {MAX_R}")
    common.add_argument("--quiet", action="store_true", help="suppress the summary on stderr")

    p = _Parser(prog="jschur", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"jschur {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("mul", parents=[common], help="product of two elements of S^j(n, r)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--x", required=True, help="SchurElt JSON or a matrix")
    s.add_argument("--y", required=True, help="SchurElt JSON or a matrix")
    s.add_argument("--basis", choices=["normalized", "e"], default="normalized")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("ajr", parents=[common], help="the element A(j, r)")
    s.add_argument("--matrix", required=True)
    s.add_argument("--j", default=None, help="weight: raw list of length 2n+1 or {\"reduced\": [...]}")
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_ajr)

    s = sub.add_parser("stab-mul", parents=[common], help="product in the stabilized algebra")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.set_defaults(func=cmd_stab_mul)

    s = sub.add_parser("expand-monomial", parents=[common], help="triangular expansion of m^{A,j}")
    s.add_argument("--matrix", required=True)
    s.add_argument("--j", default=None)
    s.set_defaults(func=cmd_expand_monomial)

    s = sub.add_parser("expand", parents=[common], help="[A] in terms of integral monomials")
    s.add_argument("--matrix", required=True)
    s.add_argument("--r", type=int, default=None)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    s.add_argument("what", choices=["relations", "formulas", "duality", "intertwiner", "integrality", "lemma63"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, default=None)
    s.add_argument("--trials", type=int, default=3, help="random specializations for duality")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate index sets")
    s.add_argument("what", choices=["xi"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--zero-diag", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("dump", parents=[common], help="write a structure-constant table")
    s.add_argument("what", choices=["table"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--basis", choices=["normalized", "e"], default="normalized")
    s.add_argument("--out", default=None, help="output file (default stdout)")
    s.set_defaults(func=cmd_dump)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("jschur: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        ok, report, summary = args.func(args)
    except InputError as exc:
        print(f"jschur: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScaleRefused as exc:
        print(f"jschur: refused: {exc}", file=sys.stderr)
        return EXIT_SCALE
    if report is not None:
        report["elapsed_s"] = round(time.perf_counter() - start, 3)
        print(json.dumps(report, indent=2, sort_keys=True))
    if not args.quiet:
        print(f"jschur {args.verb}: {summary}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
