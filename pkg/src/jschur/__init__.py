"""Exact computations in the type-B q-Schur algebras S^j(n, r), their
stabilized limit and the i-quantum group U^j(n)."""

__version__ = "0.1.0"

from .coeffs import LaurentPoly, RatFunc, ZeroDivision  # noqa: E402
from .theta import SignedWeight, ThetaMatrix, enumerate_xi  # noqa: E402
from .schur import SchurElt, schur_algebra  # noqa: E402
from .stabilized import StabElt  # noqa: E402

__all__ = ["LaurentPoly", "RatFunc", "ZeroDivision", "SignedWeight", "ThetaMatrix",
           "enumerate_xi", "SchurElt", "schur_algebra", "StabElt", "__version__"]
