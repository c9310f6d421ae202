"""Chevalley bases, Kostant forms and Chevalley supergroups of classical Lie superalgebras."""

import json

from . import _core
from ._core import (
    DegenerateWeights,
    Error,
    InvalidFamily,
    InvalidField,
    NotARoot,
    NotInvertible,
    ParityError,
    ParseError,
    WrongConstructor,
)

SUITES = ("jacobi", "integrality", "commutators", "normalform", "kostant", "stabilizer", "grouplaws")


def roots(family):
    return json.loads(_core.roots(family))


def basis(family):
    return json.loads(_core.basis(family))


def constants(family):
    return json.loads(_core.constants(family))


def passed(report):
    return all(c["status"] == "pass" for c in report["cases"])


def verify(family, suite="all", seed=1, words=200, pairs=50, monomials=500, field=""):
    """Run one suite, or all of them, and return the report dicts."""
    names = SUITES if suite == "all" else (suite,)
    return [json.loads(_core.verify(family, s, seed, words, pairs, monomials, field)) for s in names]


def normal_form(family, word, field=""):
    return json.loads(_core.normalform(family, word, field))


def heisenberg(n, a=1):
    return json.loads(_core.heisenberg(n, a))


def obstruction():
    return json.loads(_core.obstruction())
