"""Rational point counts and the predicted leading constant for the cubic
surface x0(x1^2+x2^2) = x3^3.

The heavy lifting lives in the C++ extension ``_core``; this package adds
thin dict-returning wrappers around its JSON reports.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from . import _core as _c

__all__ = [n for n in dir(_c) if not n.startswith("_")] + [
    "fan_report",
    "predict",
    "cox_basis",
    "density_report",
]


def fan_report():
    """Fan, resolution, Picard and alpha report for the surface's fan."""
    return _json.loads(_c.fan_report_json())


def predict(cutoff=1000000, tol=1e-4):
    """Predicted leading constant, factor by factor."""
    return _json.loads(_c.predict_json(cutoff, tol))


def cox_basis():
    """Cox ring generators and their relation."""
    return _json.loads(_c.cox_json())


def density_report(p, k):
    """p-adic density oracle N(p^k)/p^(3k) next to the closed form."""
    return _json.loads(_c.density_json(p, k))
