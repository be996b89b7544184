import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, ZOO, universe
from gluing.modules import (Module, ModuleError, ModuleMap, cokernel, direct_sum, dual_module, hom_dim, hom_space,
                            injective_envelope, injectives, is_injective, is_isomorphic, is_projective, kernel,
                            module_axioms, projective_cover, projectives, regular_module, simples, zero_module)

BASIC = [i for i, (a, _) in enumerate(ZOO) if a.dim > 1]


def random_sum(data, i, max_terms=3):
    u = universe(i)
    picks = data.draw(st.lists(st.integers(0, len(u) - 1), min_size=1, max_size=max_terms))
    return direct_sum([u[p] for p in picks], u.algebra)[0], picks


def test_projectives_and_injectives_of_a2(k12):
    P = projectives(k12)
    I = injectives(k12)
    # P1 = (k -> k), P2 = S2, I1 = S1, I2 = P1
    assert [p.dim for p in P] == [2, 1]
    assert [q.dim for q in I] == [1, 2]
    assert is_isomorphic(I[1], P[0])[0]
    assert is_isomorphic(P[1], simples(k12)[1])[0]
    assert all(is_projective(p) for p in P)
    assert all(is_injective(q) for q in I)
    assert not is_projective(simples(k12)[0])


@pytest.mark.parametrize("i", BASIC, ids=[ZOO[i][0].name for i in BASIC])
def test_regular_module_is_sum_of_projectives(i):
    alg = ZOO[i][0]
    R = regular_module(alg)
    total, _, _ = direct_sum(projectives(alg), alg)
    assert is_isomorphic(R, total)[0]
    assert module_axioms(R) == []


@given(st.data())
def test_yoneda_hom_from_projective(data):
    """dim Hom(P_j, M) = dim e_j M."""
    i = data.draw(st.sampled_from(BASIC))
    m, _ = random_sum(data, i)
    for j, P in enumerate(projectives(m.algebra)):
        assert hom_dim(P, m) == m.dim_vector[j]


@given(st.data())
def test_hom_space_elements_are_homomorphisms(data):
    i = data.draw(st.sampled_from(BASIC))
    m, _ = random_sum(data, i, 2)
    n, _ = random_sum(data, i, 2)
    H = hom_space(m, n)
    for h in H:
        assert ModuleMap(m, n, h).is_homomorphism()


@given(st.data())
def test_krull_schmidt_recovers_summands(data):
    i = data.draw(st.sampled_from(BASIC))
    u = universe(i)
    m, picks = random_sum(data, i)
    assert sorted(u.decompose(m).items()) == sorted({p: picks.count(p) for p in set(picks)}.items())


@given(st.data())
def test_double_dual_is_identity(data):
    i = data.draw(st.sampled_from(BASIC))
    m, _ = random_sum(data, i)
    dd = dual_module(dual_module(m))
    assert dd.algebra.same_as(m.algebra)
    assert np.array_equal(dd.action, m.action)


@given(st.data())
def test_projective_cover_and_injective_envelope(data):
    i = data.draw(st.sampled_from(BASIC))
    m, _ = random_sum(data, i)
    p = projective_cover(m)
    assert p.is_epi() and is_projective(p.source)
    e = injective_envelope(m)
    assert e.is_mono() and is_injective(e.target) and e.is_homomorphism()


@given(st.data())
def test_kernel_cokernel_dimensions(data):
    i = data.draw(st.sampled_from(BASIC))
    m, _ = random_sum(data, i, 2)
    n, _ = random_sum(data, i, 2)
    H = hom_space(m, n)
    if H.shape[0] == 0:
        return
    rng = np.random.default_rng(data.draw(st.integers(0, 999)))
    F = m.field
    c = F.random((H.shape[0],), rng)
    f = ModuleMap(m, n, F.reduce(np.tensordot(c, H, axes=(0, 0))))
    K, k = kernel(f)
    C, q = cokernel(f)
    assert K.dim + f.rank == m.dim
    assert C.dim + f.rank == n.dim
    assert F.is_zero(F.matmul(f.matrix, k.matrix))
    assert F.is_zero(F.matmul(q.matrix, f.matrix))


def test_isomorphism_detects_difference():
    u = universe(2)
    for x in u:
        for y in u:
            assert is_isomorphic(x, y)[0] == (x is y)


def test_module_axioms_flag_bad_action(k12):
    act = regular_module(k12).action.copy()
    act[0] = (act[0] + F2.eye(3)) % 2
    assert module_axioms(Module(k12, act))


def test_zero_module_and_dimension_checks(k12):
    z = zero_module(k12)
    assert z.dim == 0
    with pytest.raises((ModuleError, ValueError)):
        ModuleMap(simples(k12)[0], simples(k12)[1], F2.zeros((2, 2)))
