"""Cobordism invariants, singular patterns and local normal forms.

Descriptors, patterns, sign assignments, moves and traces are plain dicts in
the same JSON layout the command line reads.
"""

import json

from . import _core
from ._core import Error

__all__ = [
    "Error",
    "validate_descriptor",
    "invariant",
    "is_cobordant",
    "disjoint_union",
    "reverse",
    "generator",
    "extendable",
    "validate_pattern",
    "check_pattern",
    "normalize",
    "apply_move",
    "verify_trace",
    "eval_map",
    "swallow_tail_curve",
    "run_cli",
]


def _dump(obj):
    return None if obj is None else json.dumps(obj)


def validate_descriptor(descriptor):
    return json.loads(_core.validate_descriptor(_dump(descriptor)))


def invariant(descriptor):
    return json.loads(_core.invariant(_dump(descriptor)))


def is_cobordant(a, b):
    return _core.is_cobordant(_dump(a), _dump(b))


def disjoint_union(a, b):
    return json.loads(_core.disjoint_union(_dump(a), _dump(b)))


def reverse(descriptor):
    return json.loads(_core.reverse(_dump(descriptor)))


def generator(n):
    return json.loads(_core.generator(n))


def extendable(descriptor, sigma=None):
    return _core.extendable(_dump(descriptor), _dump(sigma))


def validate_pattern(pattern):
    return json.loads(_core.validate_pattern(_dump(pattern)))


def check_pattern(pattern, sigma=None):
    return json.loads(_core.check_pattern(_dump(pattern), _dump(sigma)))


def normalize(pattern, sigma=None, chi_v=None):
    """Returns {"trace": ...} or {"obstruction": ...}."""
    return json.loads(_core.normalize(_dump(pattern), _dump(sigma), chi_v))


def apply_move(pattern, move):
    return json.loads(_core.apply_move(_dump(pattern), _dump(move)))


def verify_trace(trace):
    return _core.verify_trace(_dump(trace))


def eval_map(kind, n, point, i=0, t=1.0):
    return _core.eval_map(kind, n, i, t, list(point))


def swallow_tail_curve(t, x):
    return _core.swallow_tail_curve(t, x)


def run_cli(*args):
    """Runs one command line; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
