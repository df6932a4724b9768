"""Exact computations on small graphs: neighbourhood complexity, weak colouring
numbers, centred colourings, treedepth and shallow topological grads."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    ContractViolation,
    Graph,
    GuardExceeded,
    ParseError,
    chi_r_exact,
    degeneracy,
    generate,
    is_r_centred,
    parse_graph,
    small_graphs,
    trace_classes,
    treedepth,
    wcol_exact,
    wcol_given_order,
    wcol_heuristic,
    wreach,
    write_graph,
)

__all__ = [
    "ContractViolation",
    "Graph",
    "GuardExceeded",
    "ParseError",
    "chi_r_exact",
    "degeneracy",
    "generate",
    "grad0_exact",
    "gradr_bruteforce",
    "is_r_centred",
    "nu_exact",
    "nu_fixed",
    "nu_lower_bound",
    "parse_graph",
    "run_suite",
    "small_graphs",
    "trace_classes",
    "treedepth",
    "wcol_exact",
    "wcol_given_order",
    "wcol_heuristic",
    "wreach",
    "write_graph",
]


def _frac(pair):
    return Fraction(*pair)


def nu_fixed(graph, x, r):
    return _frac(_core.nu_fixed(graph, list(x), r))


def _nu_report(raw):
    value, vertices, edges, x = raw
    return {"value": _frac(value), "vertices": vertices, "edges": edges, "x": x}


def nu_exact(graph, r, induced_only=False):
    """Exact nu_r with its witness subgraph and X; guarded to tiny graphs."""
    return _nu_report(_core.nu_exact(graph, r, induced_only))


def nu_lower_bound(graph, r, seed=0, budget=2000):
    return _nu_report(_core.nu_lower_bound(graph, r, seed, budget))


def grad0_exact(graph):
    value, cert = _core.grad0_exact(graph)
    return _frac(value), cert


def gradr_bruteforce(graph, r):
    """r may be a half-integer (int, float or Fraction)."""
    twice = Fraction(r) * 2
    if twice.denominator != 1 or twice < 0:
        raise ValueError("r must be a non-negative multiple of 1/2")
    value, cert = _core.gradr_bruteforce(graph, int(twice))
    return _frac(value), cert


def run_suite(suite, min_n=1, max_n=5, connected_only=True, unique=False, max_m=-1, r=1, seed=0):
    twice = Fraction(r) * 2
    if twice.denominator != 1:
        raise ValueError("r must be a multiple of 1/2")
    return json.loads(
        _core.run_suite(suite, min_n, max_n, connected_only, unique, max_m, int(twice), seed)
    )
