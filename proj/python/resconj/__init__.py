"""Coefficient ideals D(m, 0..i) and minimal exponents of H_ij in them."""

import json

from ._resconj import (
    Error,
    InexactDivision,
    ParseError,
    Poly,
    UsageError,
    compute_D,
    compute_H,
    exact_div,
    homogeneous_member,
    is_member,
    is_radical_member,
    selftest,
    verify_certificate,
    verify_result12,
)
from . import _resconj

__all__ = [
    "Error",
    "InexactDivision",
    "ParseError",
    "Poly",
    "UsageError",
    "compute_D",
    "compute_H",
    "dump",
    "exact_div",
    "homogeneous_member",
    "is_member",
    "is_radical_member",
    "kappa",
    "selftest",
    "table",
    "verify_certificate",
    "verify_result12",
]


def dump(m):
    """Matrices, D(m, i) and the H triangle as a dict."""
    return json.loads(_resconj.dump_json(m))


def kappa(m, i, j=None, **options):
    """Reports for H_ij(m); options mirror the `resconj kappa` flags."""
    return json.loads(_resconj.kappa_json(m, i, j, **options))


def table(m_lo, m_hi=None, **options):
    return json.loads(_resconj.table_json(m_lo, m_hi if m_hi is not None else m_lo, **options))
