import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, F3, dual_numbers, kronecker, linear, two_cycle, zoo
from gluing import exactla as la
from gluing.algebra import (Algebra, AlgebraError, NotIdempotent, Quiver, corner_algebra, path_algebra,
                            quotient_algebra, two_sided_ideal_basis, validate_algebra)

ZOO = zoo()


def count_paths(n_vertices, arrows, max_len):
    """Paths in a quiver without relations, up to length max_len (inclusive)."""
    layer = [(v, v) for v in range(n_vertices)]
    total = len(layer)
    for _ in range(max_len):
        layer = [(s, t2) for (s, t) in layer for (a, t2) in arrows if a == t]
        total += len(layer)
    return total


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_linear_quiver_dimension(n):
    arrows = [(i, i + 1) for i in range(n - 1)]
    assert linear(n).dim == count_paths(n, arrows, n)


def test_kronecker_and_relations_dimensions():
    assert kronecker().dim == count_paths(2, [(0, 1), (0, 1)], 2)
    # 1⇄2 with both length-two cycles killed: e1, e2, a, b
    assert two_cycle([[(1, "ab")], [(1, "ba")]], "R0").dim == 4
    assert two_cycle([[(1, "ab")]], "R1").dim == 5
    assert dual_numbers().dim == 2


@pytest.mark.parametrize("alg,bound", ZOO, ids=[a.name for a, _ in ZOO])
def test_zoo_validates(alg, bound):
    assert validate_algebra(alg) == []
    assert alg.dim - alg.radical.shape[1] == alg.n_idempotents


@pytest.mark.parametrize("alg,bound", ZOO, ids=[a.name for a, _ in ZOO])
def test_peirce_decomposition_is_complete(alg, bound):
    total = sum(alg.peirce(i, j).shape[1] for i in range(alg.n_idempotents) for j in range(alg.n_idempotents))
    assert total == alg.dim


@given(st.data())
def test_associative_and_unital(data):
    alg, _ = data.draw(st.sampled_from(ZOO))
    F = alg.field
    rng = np.random.default_rng(data.draw(st.integers(0, 2**16)))
    x, y, z = (F.random((alg.dim,), rng) for _ in range(3))
    assert np.array_equal(alg.mul(alg.mul(x, y), z), alg.mul(x, alg.mul(y, z)))
    assert np.array_equal(alg.mul(alg.unit, x), x)
    assert np.array_equal(alg.mul(x, alg.unit), x)


def test_opposite_reverses_products():
    a = linear(3)
    op = a.opposite
    x, y = a.basis_vector(3), a.basis_vector(4)
    assert np.array_equal(op.mul(x, y), a.mul(y, x))
    assert op.opposite is a


def test_corner_of_linear_quiver():
    a = linear(3)
    e = a.field.reduce(a.idempotents[0] + a.idempotents[1])
    c, E = corner_algebra(a, e)
    # e(kA3)e is kA2
    assert c.dim == 3
    assert validate_algebra(c) == []
    for i in range(c.dim):
        for j in range(c.dim):
            assert np.array_equal(F2.matmul(E, c.mul(c.basis_vector(i), c.basis_vector(j))),
                                  a.mul(E[:, i], E[:, j]))


def test_corner_rejects_non_idempotent():
    a = linear(2)
    with pytest.raises(NotIdempotent):
        corner_algebra(a, a.radical[:, 0])


def test_quotient_by_idempotent_ideal():
    a = linear(2)
    I = two_sided_ideal_basis(a, a.idempotents[0])
    q, P, lift = quotient_algebra(a, I)
    # kA2 / <e1> is k
    assert q.dim == 1
    assert validate_algebra(q) == []
    assert np.array_equal(F2.matmul(P, lift), F2.eye(q.dim))


def test_serialization_roundtrip():
    a = linear(3, F=F3)
    b = Algebra.from_dict(F3, a.to_dict())
    assert b.same_as(a)


def test_from_dict_reports_bad_row():
    d = linear(2).to_dict()
    d["struct"][1] = d["struct"][1][:2]
    with pytest.raises(AlgebraError, match="row 1"):
        Algebra.from_dict(F2, d)


def test_duplicate_arrow_labels_rejected():
    with pytest.raises(AlgebraError):
        Quiver((1, 2), [(1, 2, "a"), (2, 1, "a")])


def test_non_path_relation_rejected():
    with pytest.raises(AlgebraError):
        path_algebra(Quiver((1, 2, 3), [(1, 2, "a"), (2, 3, "b")]), [[(1, "ab")]], F=F2)


def test_radical_power_dimensions():
    a = linear(3)
    J = a.radical
    assert J.shape[1] == 3
    assert a.radical_square.shape[1] == 1
    assert la.rank(F2, J) == 3
