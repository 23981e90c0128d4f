"""Poincare duality checks for finite simplicial pairs.

Complexes, pairs and triads are plain dicts in the JSON layout used by the
command-line tool: {"vertices": N, "facets": [...], "sub_facets": [...]}.
"""

import json

from . import _core

ParseError = _core.ParseError

__all__ = [
    "ParseError",
    "builtin",
    "construct",
    "find_thom_class",
    "homology",
    "orientation_systems",
    "run_scenario",
    "scenario_names",
    "verify_pair",
    "verify_triad",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def homology(pair, relative=False, system=None):
    """Homology groups [{"rank", "torsion"}, ...] by degree."""
    return json.loads(_core.homology(_dump(pair), relative, _dump(system) if system else ""))


def orientation_systems(complex_):
    """Rank-one sign systems, trivial first."""
    return json.loads(_core.orientation_systems(_dump(complex_)))


def verify_pair(pair, max_cosets=1000000):
    return json.loads(_core.verify_pair(_dump(pair), max_cosets))


def verify_triad(triad, max_cosets=1000000):
    return json.loads(_core.verify_triad(_dump(triad), max_cosets))


def find_thom_class(pair, k):
    return json.loads(_core.find_thom_class(_dump(pair), k))


def run_scenario(name, n=0, large=False):
    return json.loads(_core.run_scenario(name, n, large))


def scenario_names():
    return list(_core.scenario_names())


def construct(op, *inputs):
    """op is one of cone, product, double, puncture."""
    return json.loads(_core.construct(op, [_dump(i) for i in inputs]))


def builtin(name, n=0):
    """Built-in complexes: full_simplex, boundary_sphere (with n), projective_plane,
    torus, klein_bottle, moebius_band, poincare_sphere, projective_space3."""
    return json.loads(_core.builtin(name, n))
