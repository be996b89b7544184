import functools
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gluing.algebra import Quiver, field_algebra, path_algebra
from gluing.exactla import Field

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.register_profile("ci", max_examples=15, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F2 = Field(2)
F3 = Field(3)


def linear(n, F=F2, relations=(), name=None):
    verts = tuple(range(1, n + 1))
    arrows = [(i, i + 1, chr(ord("a") + i - 1)) for i in range(1, n)]
    return path_algebra(Quiver(verts, arrows), relations, F=F, name=name or f"A{n}")


def two_cycle(relations, name):
    return path_algebra(Quiver((1, 2), [(1, 2, "a"), (2, 1, "b")]), relations, F=F2, name=name)


def kronecker(F=F2):
    return path_algebra(Quiver((1, 2), [(1, 2, "a"), (1, 2, "b")]), F=F, name="Kr")


def dual_numbers(F=F2):
    return path_algebra(Quiver((1,), [(1, 1, "x")]), [[(1, "xx")]], F=F, name="k[x]/x²")


def zoo():
    """Small basic algebras with their enumeration bounds."""
    return [
        (field_algebra(F2), 2),
        (linear(2), 3),
        (linear(3), 4),
        (linear(3, relations=[[(1, "ba")]], name="A3/ba"), 4),
        (two_cycle([[(1, "ab")], [(1, "ba")]], "R0"), 3),
        (two_cycle([[(1, "ab")]], "R1"), 4),
        (dual_numbers(), 3),
        (linear(2, F=F3, name="A2/F3"), 3),
    ]


@pytest.fixture(scope="session")
def k12():
    return linear(2, name="k(1→2)")


@pytest.fixture
def rng():
    return np.random.default_rng(0)


ZOO = zoo()


@functools.lru_cache(maxsize=None)
def universe(i):
    from gluing.enumeration import enumerate_indecomposables
    alg, bound = ZOO[i]
    return enumerate_indecomposables(alg, bound)


def arrow_count(alg, i, j):
    """Arrows i -> j of the quiver an algebra was built from."""
    return sum(1 for s, t, _ in alg.arrows if s == i and t == j)


@functools.lru_cache(maxsize=None)
def recollements():
    """(zoo index, recollement) for every proper nonzero sum of vertex idempotents."""
    import itertools
    from gluing.recollement import build_recollement
    out = []
    for i, (alg, _) in enumerate(ZOO):
        n = alg.n_idempotents
        for size in range(1, n):
            for subset in itertools.combinations(range(n), size):
                e = alg.field.reduce(sum(alg.idempotents[k] for k in subset))
                tag = "+".join(f"e{k + 1}" for k in subset)
                out.append((i, build_recollement(alg, e, name=f"{alg.name}@{tag}")))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def side_universes(k):
    """Universes of the quotient and corner algebras of recollements()[k]."""
    from gluing.enumeration import enumerate_indecomposables
    i, r = recollements()[k]
    bound = ZOO[i][1]
    return enumerate_indecomposables(r.quotient, bound), enumerate_indecomposables(r.corner, bound)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
