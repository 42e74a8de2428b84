"""Massey products, Kummer towers and abelian crossed products over F_l(t)."""

import json

from . import _core
from ._core import (
    RNG_NAME,
    InstanceRejected,
    ParseError,
    RetryExhausted,
    default_prime,
    factor,
    group_order,
    group_table,
    is_pth_power,
    primitive_root,
    ratfunc,
)

__all__ = [
    "RNG_NAME",
    "InstanceRejected",
    "ParseError",
    "Report",
    "RetryExhausted",
    "cohomology",
    "crossed",
    "cup",
    "default_prime",
    "differential",
    "dwyer_check",
    "factor",
    "group_order",
    "group_table",
    "is_pth_power",
    "massey_scan",
    "primitive_root",
    "ratfunc",
    "tower",
]


class Report:
    """Decoded report records and the overall verdict."""

    def __init__(self, passed, lines):
        self.passed = passed
        self.records = [json.loads(line) for line in lines]

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __repr__(self):
        return f"Report(passed={self.passed}, records={len(self.records)})"


def _report(result):
    return Report(*result)


def cohomology(group, p=None, basis=False):
    return _report(_core.cohomology(group, p, basis)).records[0]


def massey_scan(group, p=None):
    return _report(_core.massey_scan(group, p))


def dwyer_check(group, p=None, samples=100, seed=0):
    return _report(_core.dwyer_check(group, p, samples, seed))


def tower(ell, p, b="t", v=None, seed=0):
    return _report(_core.tower(ell, p, b, v, seed))


def crossed(ell, p, a2="t", v2=None, seed=0, associativity=100, center=True):
    return _report(_core.crossed(ell, p, a2, v2, seed, associativity, center))


def differential(cochain):
    """Coboundary of a cochain given as {group, degree, p, values}."""
    return json.loads(_core.differential(json.dumps(cochain)))


def cup(a, b):
    return json.loads(_core.cup(json.dumps(a), json.dumps(b)))
