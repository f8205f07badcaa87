"""Exact Hochschild cohomology computations; thin wrapper returning Python objects."""

import json as _json

from . import _torushh
from ._torushh import ConfigError, TorusHHError, set_threads, thread_count

__all__ = [
    "ConfigError",
    "TorusHHError",
    "set_threads",
    "thread_count",
    "local_hh",
    "global_hh",
    "mapping_torus_hh",
    "growth_table",
    "random_algebras",
    "graph_equations",
    "graph_restrictions",
    "flatness_certificate",
    "tate_rhom",
    "armod",
    "run",
]


def _enc(obj):
    if obj is None:
        return ""
    return obj if isinstance(obj, str) else _json.dumps(obj)


def local_hh(deformed=False, K=3, degree_max=6, weight_band=8):
    return _json.loads(_torushh.local_hh(deformed, K, degree_max, weight_band))


def global_hh(N=3, deformed=False, K=3, degree_max=4, weight_band=2):
    return _json.loads(_torushh.global_hh(N, deformed, K, degree_max, weight_band))


def mapping_torus_hh(algebra=None, degree_max=2):
    """algebra: dict with dim, unit, mult and optional phi, name (default Q)."""
    return _json.loads(_torushh.mapping_torus_hh(_enc(algebra), degree_max))


def growth_table(algebra=None, k_max=6, degree_max=4):
    return _json.loads(_torushh.growth_table(_enc(algebra), k_max, degree_max))


def random_algebras(count, seed):
    return _json.loads(_torushh.random_algebras(count, seed))


def graph_equations(i, j):
    return _json.loads(_torushh.graph_equations(i, j))


def graph_restrictions(lo=0, hi=2):
    return _json.loads(_torushh.graph_restrictions(lo, hi))


def flatness_certificate(i, j, degree_bound=6):
    return _json.loads(_torushh.flatness_certificate(i, j, degree_bound))


def tate_rhom(src=0, src_twist=0, dst=0, dst_twist=0, depth=5, deg_max=6, weight_band=8):
    return _json.loads(_torushh.tate_rhom(src, src_twist, dst, dst_twist, depth, deg_max, weight_band))


class armod:
    """Modules over Q[u,t]; a module is a dict {"generators", "relations", "connection"}."""

    @staticmethod
    def check_connection(module):
        return _json.loads(_torushh.armod_check_connection(_enc(module)))

    @staticmethod
    def solve_connection(module, degree_bound=2):
        return _json.loads(_torushh.armod_solve_connection(_enc(module), degree_bound))

    @staticmethod
    def restrict(module, locus):
        return _json.loads(_torushh.armod_restrict(_enc(module), locus))

    @staticmethod
    def is_q_torsion(module, E=8):
        return _json.loads(_torushh.armod_is_q_torsion(_enc(module), E))

    @staticmethod
    def dual(module):
        return _json.loads(_torushh.armod_dual(_enc(module)))

    @staticmethod
    def double_dual(module, E=8):
        return _json.loads(_torushh.armod_double_dual(_enc(module), E))

    @staticmethod
    def invariant_ideal_primes(generators):
        return _json.loads(_torushh.invariant_ideal_primes(list(generators)))

    @staticmethod
    def property_suite(instances=100, seed=7, E=8):
        return _json.loads(_torushh.armod_property_suite(instances, seed, E))


def run(command, config=None, **options):
    """Same reports as the command line tool, e.g. run("graph", {"N": 3}, check="restrictions")."""
    return _json.loads(_torushh.run(command, _json.dumps(config or {}), _json.dumps(options)))
