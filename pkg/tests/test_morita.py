import functools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, ZOO, linear
from gluing.algebra import field_algebra, validate_algebra
from gluing.cotorsion import everything, injective_class, projective_class
from gluing.enumeration import enumerate_indecomposables
from gluing.homological import regular_bimodule
from gluing.modules import Bimodule, hom_space, is_isomorphic, simples
from gluing.morita import (FIRST, SECOND, AssumptionFailed, IncompatibleContext, MoritaData, corollary_scenario,
                           example_data, from_idempotent, module_to_quadruple, morita_functor, morita_ring,
                           phi_is_mono, psi_is_mono, quadruple_to_module, recollement_pair, scalar_context, swapped,
                           tilde, triangular_context, untilde, verify_functor_agreement, zero_context)
from gluing.recollement import condition_p

K = field_algebra(F2)
K12 = linear(2, name="k(1→2)")


def regular_k_bimodule():
    return Bimodule(K, K, F2.eye(1)[None], F2.eye(1)[None], "k")


@functools.lru_cache(maxsize=None)
def instances():
    R0, R1, A3 = ZOO[4][0], ZOO[5][0], ZOO[2][0]
    return {
        "example": example_data(),
        "scalar0": scalar_context(F2, 0),
        "product": zero_context(K12, K),
        "triangular": triangular_context(K, K, regular_k_bimodule()),
        "R0 split": from_idempotent(R0, R0.idempotents[0]),
        "R1 split": from_idempotent(R1, R1.idempotents[0]),
        "A3 split": from_idempotent(A3, F2.reduce(A3.idempotents[0] + A3.idempotents[1])),
    }


NAMES = list(instances())


@functools.lru_cache(maxsize=None)
def lam(name, bound=3):
    return enumerate_indecomposables(morita_ring(instances()[name]).algebra, bound)


@pytest.mark.parametrize("name", NAMES)
def test_contexts_are_valid_rings(name):
    d = instances()[name]
    assert d.check() == []
    ring = morita_ring(d)
    assert validate_algebra(ring.algebra) == []
    assert ring.algebra.dim == d.A.dim + d.B.dim + d.M.dim + d.N.dim


def test_example_dimensions():
    d = example_data()
    assert (d.A.dim, d.M.dim, d.N.dim) == (3, 1, 1)
    assert d.MN.dim == 0 and d.NM.dim == 0
    assert morita_ring(d).algebra.dim == 8


@pytest.mark.parametrize("i", [2, 4, 5], ids=["A3", "R0", "R1"])
def test_split_context_rebuilds_the_ring(i):
    R, bound = ZOO[i]
    d = from_idempotent(R, R.idempotents[0])
    ring = morita_ring(d).algebra
    assert ring.dim == R.dim
    assert len(enumerate_indecomposables(ring, bound)) == len(enumerate_indecomposables(R, bound))


def test_product_ring_has_both_universes():
    ring = morita_ring(instances()["product"]).algebra
    assert len(enumerate_indecomposables(ring, 3)) == 3 + 1


def test_unbalanced_pairing_rejected():
    R = regular_bimodule(K12)
    bil = np.zeros((3, 3, 3), dtype=np.int64)
    # e1 ⊗ e2 = e1 ⊗ e1e2 = 0 in A ⊗_A A, so it cannot be sent to e1
    bil[0, 1] = K12.basis_vector(0)
    with pytest.raises(IncompatibleContext):
        MoritaData.from_bilinear(K12, K12, R, R, bil, None)


@given(st.data())
def test_quadruple_roundtrip(data):
    name = data.draw(st.sampled_from(NAMES))
    d = instances()[name]
    m = data.draw(st.sampled_from(list(lam(name))))
    q, iso = module_to_quadruple(d, m)
    assert is_isomorphic(quadruple_to_module(d, q), m)[0]
    back = swapped(swapped(d))
    assert back is d


@given(st.data())
def test_tilde_roundtrip(data):
    name = data.draw(st.sampled_from(NAMES))
    d = instances()[name]
    q, _ = module_to_quadruple(d, data.draw(st.sampled_from(list(lam(name)))))
    t = tilde(q)
    assert t.f_tilde.is_homomorphism() and t.g_tilde.is_homomorphism()
    f = untilde(F2, q.mx[1], t.hom_m, t.f_tilde.matrix, q.X.dim, q.Y.dim)
    g = untilde(F2, q.ny[1], t.hom_n, t.g_tilde.matrix, q.Y.dim, q.X.dim)
    assert np.array_equal(f, q.f) and np.array_equal(g, q.g)


def test_functors_on_the_example():
    d = example_data()
    S = simples(d.A)
    # U_A reads off the A-part; T_A followed by Q_B kills everything coming from A
    for x in S:
        assert morita_functor(d, "U_A", quadruple_to_module(d, morita_functor(d, "T_A", x))).dim == x.dim
        assert morita_functor(d, "Q_B", quadruple_to_module(d, morita_functor(d, "T_A", x))).dim == 0
    # Hom_A(N, S2) is one dimensional since N = Ae₂ ⊗ e₁A
    assert morita_functor(d, "H_A", S[1]).Y.dim == 1


@pytest.mark.parametrize("name", NAMES)
def test_functor_agreement(name):
    rep = verify_functor_agreement(instances()[name], bound=3, probes=20)
    assert rep["ok"], {k: v for side in ("first", "second") for k, v in rep[side].items() if not v["ok"]}
    assert set(rep["first"]) == set(FIRST) and set(rep["second"]) == set(SECOND)


@pytest.mark.parametrize("name", NAMES)
def test_condition_p_tracks_injectivity_of_pairings(name):
    d = instances()[name]
    assert condition_p(recollement_pair(d, 1).recollement).holds == phi_is_mono(d)[0]
    assert condition_p(recollement_pair(d, 2).recollement).holds == psi_is_mono(d)[0]


def test_known_pairing_injectivity():
    # φ = 0 on k⊗k = k is not injective; with M⊗N = 0 it is
    assert not phi_is_mono(instances()["scalar0"])[0]
    assert phi_is_mono(scalar_context(F2, 1))[0]
    assert phi_is_mono(instances()["example"])[0] and psi_is_mono(instances()["example"])[0]


def test_missing_assumption_is_reported():
    d = instances()["scalar0"]
    u = enumerate_indecomposables(K, 1)
    pair = (everything(u), everything(u))
    with pytest.raises(AssumptionFailed) as exc:
        corollary_scenario(d, "c46", pair, pair)
    assert exc.value.witness["kernel_dim"] == 1
    with pytest.raises(AssumptionFailed):
        corollary_scenario(d, "c48", pair, pair)


def test_product_ring_under_c48_glues_products():
    d = instances()["product"]
    st_ = recollement_pair(d, 1)
    ua = enumerate_indecomposables(st_.corner_side, 3)
    ub = enumerate_indecomposables(st_.quotient_side, 3)
    rep = corollary_scenario(d, "c48", (projective_class(ua), everything(ua)), (everything(ub), injective_class(ub)),
                             bound=3)
    assert rep.exit_code == 0
    assert rep.characterization["agree"]
    # on a product the glued classes are products: two projectives from A and k from B on the
    # left, everything on the right
    assert len(rep.classes["M"]) == 3 and len(rep.classes["N"]) == 4


def test_triangular_dictionary_agrees():
    from gluing.morita import triangular_dictionary
    d = instances()["triangular"]
    u = enumerate_indecomposables(K, 1)
    pair = (everything(u), everything(u))
    rep = triangular_dictionary(d, pair, pair, bound=3)
    assert rep["M agrees"] and rep["N agrees"]


def test_hom_space_of_example_projectives_is_nonzero():
    ring = morita_ring(example_data()).algebra
    u = lam("example")
    assert any(hom_space(x, y).shape[0] for x in u for y in u if x is not y)
    assert ring.n_idempotents == 4
