import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F3, ZOO, kronecker, linear, universe
from gluing.algebra import field_algebra
from gluing.enumeration import (BudgetExceeded, EnumerationBudget, UniverseMiss, declared_universe,
                                enumerate_indecomposables, ensure_projectives_injectives)
from gluing.exactla import Field
from gluing.modules import direct_sum, injectives, is_isomorphic, projectives, simples

# Expected counts: A_n has n(n+1)/2 indecomposables (positive roots); a Nakayama
# algebra with Kupisch series (c_1, ..., c_n) has c_1 + ... + c_n.
EXPECTED = {"F_2": 1, "A2": 3, "A3": 6, "A3/ba": 5, "R0": 4, "R1": 5, "k[x]/x²": 2, "A2/F3": 3}


@pytest.mark.parametrize("i", range(len(ZOO)), ids=[a.name for a, _ in ZOO])
def test_universe_sizes(i):
    u = universe(i)
    assert len(u) == EXPECTED[ZOO[i][0].name]
    assert ensure_projectives_injectives(u) == []


def test_linear_a4_has_ten_indecomposables():
    assert len(enumerate_indecomposables(linear(4), 4)) == 10


@pytest.mark.parametrize("F,expected", [(Field(2), 7), (F3, 8)], ids=["F2", "F3"])
def test_kronecker_counts_depend_on_field(F, expected):
    # two simples, one (1,1) module per point of the projective line, and (1,2), (2,1)
    u = enumerate_indecomposables(kronecker(F), 3)
    assert len(u) == expected
    assert sum(1 for m in u if m.dim_vector == (1, 1)) == F.p + 1


@pytest.mark.parametrize("i", range(len(ZOO)), ids=[a.name for a, _ in ZOO])
def test_members_are_pairwise_non_isomorphic(i):
    u = universe(i)
    for a in range(len(u)):
        assert u[a].is_indecomposable
        for b in range(a):
            assert not is_isomorphic(u[a], u[b])[0]


def test_standard_names(k12):
    u = enumerate_indecomposables(k12, 3)
    assert sorted(u.names()) == ["P1", "S1", "S2"]


@given(st.data())
def test_decompose_counts_multiplicities(data):
    i = data.draw(st.sampled_from([i for i, (a, _) in enumerate(ZOO) if a.dim > 1]))
    u = universe(i)
    picks = data.draw(st.lists(st.integers(0, len(u) - 1), min_size=1, max_size=4))
    m, _, _ = direct_sum([u[p] for p in picks], u.algebra)
    got = u.decompose(m)
    assert got == {p: picks.count(p) for p in set(picks)}


def test_universe_miss_for_large_summand():
    a3 = linear(3)
    small = enumerate_indecomposables(a3, 2)
    P1 = projectives(a3)[0]
    assert P1.dim == 3
    with pytest.raises(UniverseMiss):
        small.decompose(P1)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        enumerate_indecomposables(kronecker(), 4, EnumerationBudget(max_candidates=10))


def test_rational_field_cannot_be_enumerated():
    with pytest.raises(BudgetExceeded):
        enumerate_indecomposables(field_algebra(Field(None)), 1)


def test_declared_universe_drops_duplicates(k12):
    S = simples(k12)
    P = projectives(k12)
    I = injectives(k12)
    s, _, _ = direct_sum([S[0], S[0], P[0]], k12)
    u = declared_universe(k12, [s, I[1], S[1]])
    # I2 is P1 again
    assert len(u) == 3
    assert u.provenance == "declared"
