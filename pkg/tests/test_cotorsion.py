import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ZOO, recollements, side_universes, universe
from gluing.cotorsion import (Budget, GluedScenario, ModuleClass, analyze_pair, class_from_names,
                              cotorsion_pair_catalog, everything, ext_table, glued_M, glued_N, injective_class,
                              is_complete, is_cotorsion_pair, is_hereditary, left_perp, nothing, precover_from_middle,
                              preenvelope_from_middle, projective_class, right_perp, special_precover,
                              special_preenvelope, verify_gluing)
from gluing.enumeration import enumerate_indecomposables
from gluing.homological import ext_dim
from gluing.modules import ModuleMap, ShortExactSequence, hom_space

BASIC = [i for i, (a, _) in enumerate(ZOO) if a.dim > 1]


def brute_force_pairs(u):
    """All (C, D) with C = ^⊥D and D = C^⊥, straight from Ext dimensions of members."""
    n = len(u)
    E = [[ext_dim(u[a], u[b], 1) for b in range(n)] for a in range(n)]
    subsets = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)]
    out = set()
    for C in subsets:
        D = frozenset(b for b in range(n) if all(E[a][b] == 0 for a in C))
        if C == frozenset(a for a in range(n) if all(E[a][b] == 0 for b in D)):
            out.add((C, D))
    return out


@pytest.mark.parametrize("i", range(len(ZOO)), ids=[a.name for a, _ in ZOO])
def test_catalog_matches_brute_force(i):
    u = universe(i)
    assert set(cotorsion_pair_catalog(u)) == brute_force_pairs(u)


def test_catalog_of_a2(k12):
    u = enumerate_indecomposables(k12, 3)
    names = u.names()
    got = [({names[a] for a in C}, {names[b] for b in D}) for C, D in cotorsion_pair_catalog(u)]
    # only Ext^1(S1, S2) is nonzero, so S1 ∈ C and S2 ∈ D exclude each other
    assert sorted(got, key=lambda p: len(p[0])) == [({"S2", "P1"}, {"S1", "S2", "P1"}),
                                                  ({"S1", "S2", "P1"}, {"S1", "P1"})]


@pytest.mark.parametrize("i", BASIC, ids=[ZOO[i][0].name for i in BASIC])
def test_projective_and_injective_pairs(i):
    u = universe(i)
    assert is_cotorsion_pair(projective_class(u), everything(u)).is_pair
    assert is_cotorsion_pair(everything(u), injective_class(u)).is_pair
    assert right_perp(nothing(u)) == everything(u)


@pytest.mark.parametrize("i", BASIC, ids=[ZOO[i][0].name for i in BASIC])
def test_perps_are_galois_connection(i):
    u = universe(i)
    E = ext_table(u)
    for C, D in cotorsion_pair_catalog(u):
        c, d = ModuleClass(u, C), ModuleClass(u, D)
        assert right_perp(c) == d and left_perp(d) == c
        assert all(E[a, b] == 0 for a in C for b in D)


@pytest.mark.parametrize("i", BASIC, ids=[ZOO[i][0].name for i in BASIC])
def test_heredity_criteria_agree(i):
    u = universe(i)
    for C, D in cotorsion_pair_catalog(u):
        rep = is_hereditary(ModuleClass(u, C), ModuleClass(u, D), Budget(probe_cap=8))
        assert rep.consistent, rep.to_dict()


@pytest.mark.parametrize("i", BASIC, ids=[ZOO[i][0].name for i in BASIC])
def test_precovers_and_preenvelopes_co_occur(i):
    u = universe(i)
    for C, D in cotorsion_pair_catalog(u):
        c, d = ModuleClass(u, C), ModuleClass(u, D)
        rep = is_complete(c, d)
        assert rep.co_occur
        for w in list(rep.precovers.values()) + list(rep.preenvelopes.values()):
            assert w.verify(c, d)


def test_non_pair_reports_certificate(k12):
    u = enumerate_indecomposables(k12, 3)
    c = class_from_names(u, ["S1"])
    rep = is_cotorsion_pair(c, class_from_names(u, ["S2"]))
    assert not rep.is_pair and rep.certificates


def test_witnesses_move_along_sequences(k12):
    u = enumerate_indecomposables(k12, 3)
    by = {m.name: m for m in u}
    P1, S1, S2 = by["P1"], by["S1"], by["S2"]
    ses = ShortExactSequence(ModuleMap(S2, P1, hom_space(S2, P1)[0]), ModuleMap(P1, S1, hom_space(P1, S1)[0]))
    assert ses.check()
    # (projectives, all): S2 lies in the right class
    c, d = projective_class(u), everything(u)
    w = precover_from_middle(ses, special_precover(P1, c, d))
    assert w.verify(c, d) and w.module is S1
    # (all, injectives): S2 is not in the right class, so only exactness is promised
    c, d = everything(u), injective_class(u)
    w = preenvelope_from_middle(ses, special_preenvelope(P1, c, d))
    assert w.sequence.check() and w.module is S1


def glue_on(k, up, vp, udp, vdp):
    i, r = recollements()[k]
    left, right = side_universes(k)
    mk = lambda uni, spec: everything(uni) if spec == "all" else nothing(uni) if spec == "none" else \
        projective_class(uni) if spec == "proj" else injective_class(uni)
    return GluedScenario(r, universe(i), mk(left, up), mk(left, vp), mk(right, udp), mk(right, vdp))


@pytest.mark.parametrize("k", [0, 1], ids=["e1", "e2"])
def test_glued_pair_on_a2_is_in_the_catalog(k):
    s = glue_on(k, "all", "all", "all", "all")
    M, N = glued_M(s), glued_N(s)
    assert (M.members, N.members) in set(cotorsion_pair_catalog(s.universe))
    rep = verify_gluing(s)
    assert rep.exit_code == 0


@given(st.data())
def test_gluing_reports_are_never_contradicted(data):
    k = data.draw(st.sampled_from(range(len(recollements()))))
    pairs = [("all", "inj"), ("proj", "all")]
    up, vp = data.draw(st.sampled_from(pairs))
    udp, vdp = data.draw(st.sampled_from(pairs))
    rep = verify_gluing(glue_on(k, up, vp, udp, vdp), Budget(probe_cap=6))
    assert rep.exit_code == 0, {k: v for k, v in rep.conclusions.items() if v["status"] == "failed"}


def test_analyze_pair_on_a3():
    u = universe(2)
    rep = analyze_pair(projective_class(u), everything(u))
    assert rep.is_pair and rep.is_hereditary and rep.is_complete is True
    assert rep.complete_hereditary
