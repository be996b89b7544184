"""Finite-dimensional associative unital algebras.

An algebra is stored by structure constants ``struct[i, j, k]``, the
coefficient of ``b_k`` in ``b_i * b_j``, together with a complete system of
orthogonal idempotents.  Elements are plain coordinate vectors.

Path algebras compose right to left: for arrows ``a: 1 -> 2`` the product
``e2 * a * e1`` equals ``a`` and ``e1 * a`` vanishes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import exactla as la
from .exactla import Field


class AlgebraError(ValueError):
    pass


class NotIdempotent(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class InfiniteDimensional(AlgebraError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (source, target, label)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        labels = [a[2] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("arrow labels must be unique")
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex labels must be unique")
        for s, t, lab in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise AlgebraError(f"arrow {lab} has an unknown endpoint")

    def arrow_index(self, label) -> int:
        for i, a in enumerate(self.arrows):
            if a[2] == label:
                return i
        raise KeyError(label)


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    struct: np.ndarray
    unit: np.ndarray
    idempotents: tuple
    labels: tuple = ()
    name: str = ""
    primitive: bool | None = None
    meta: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.struct.shape[0]
        if self.struct.shape != (n, n, n):
            raise AlgebraError("structure constants must have shape (n, n, n)")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(n)))
        object.__setattr__(self, "idempotents", tuple(self.idempotents))

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field})"

    @property
    def dim(self) -> int:
        return self.struct.shape[0]

    @property
    def n_idempotents(self) -> int:
        return len(self.idempotents)

    @cached_property
    def key(self) -> tuple:
        """Structural identity: two algebras with equal keys are the same algebra."""
        F = self.field
        return (F.p, self.dim, tuple(F.to_int(x) for x in self.struct.flat),
                tuple(tuple(F.to_int(x) for x in e) for e in self.idempotents))

    def same_as(self, other: Algebra) -> bool:
        return self is other or self.key == other.key

    # elements ---------------------------------------------------------
    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def element(self, label) -> np.ndarray:
        return self.basis_vector(self.labels.index(label))

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def mul(self, x, y) -> np.ndarray:
        if self.dim == 0:
            return self.zero()
        F = self.field
        t = np.tensordot(x, self.struct, axes=(0, 0))
        return F.reduce(np.tensordot(y, t, axes=(0, 0)))

    def left_mult(self, x) -> np.ndarray:
        """Matrix of y -> x y."""
        if self.dim == 0:
            return self.field.zeros((0, 0))
        return self.field.reduce(np.tensordot(x, self.struct, axes=(0, 0))).T.copy()

    def right_mult(self, y) -> np.ndarray:
        """Matrix of x -> x y."""
        if self.dim == 0:
            return self.field.zeros((0, 0))
        return self.field.reduce(np.tensordot(y, self.struct, axes=(0, 1))).T.copy()

    @cached_property
    def regular_action(self) -> np.ndarray:
        """Left regular action matrices, shape (n, n, n)."""
        return np.stack([self.struct[i].T.copy() for i in range(self.dim)]) if self.dim else self.field.zeros((0, 0, 0))

    @cached_property
    def right_regular_action(self) -> np.ndarray:
        return np.stack([self.struct[:, i, :].T.copy() for i in range(self.dim)]) if self.dim else self.field.zeros((0, 0, 0))

    def is_idempotent(self, e) -> bool:
        return not np.any(self.mul(e, e) != e)

    # derived structures ----------------------------------------------
    @cached_property
    def opposite(self) -> Algebra:
        op = Algebra(self.field, self.struct.transpose(1, 0, 2).copy(), self.unit, self.idempotents,
                     self.labels, name=f"{self.name}^op", primitive=self.primitive)
        op.__dict__["opposite"] = self
        return op

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Indices of basis elements that generate the algebra (with the unit)."""
        F = self.field
        chosen: list[int] = []
        span = self.unit.reshape(-1, 1) if self.dim else F.zeros((0, 0))
        span = la.column_space(F, span)
        for i in range(self.dim):
            if span.shape[1] == self.dim:
                break
            if la.in_span(F, span, self.basis_vector(i)):
                continue
            chosen.append(i)
            span = self._closure(chosen)
        # drop redundant ones
        for i in list(chosen):
            rest = [c for c in chosen if c != i]
            if self._closure(rest).shape[1] == self.dim:
                chosen = rest
        return tuple(chosen)

    def _closure(self, gens) -> np.ndarray:
        F = self.field
        vecs = [self.unit] + [self.basis_vector(g) for g in gens]
        span = la.column_space(F, np.stack(vecs, axis=1))
        while True:
            prods = [self.mul(span[:, a], self.basis_vector(g)) for a in range(span.shape[1]) for g in gens]
            if not prods:
                return span
            new = la.column_space(F, np.concatenate([span, np.stack(prods, axis=1)], axis=1))
            if new.shape[1] == span.shape[1]:
                return new
            span = new

    def peirce(self, i: int, j: int) -> np.ndarray:
        """Basis (columns) of e_i Λ e_j."""
        F = self.field
        ei, ej = self.idempotents[i], self.idempotents[j]
        vecs = [self.mul(self.mul(ei, self.basis_vector(k)), ej) for k in range(self.dim)]
        if not vecs:
            return F.zeros((0, 0))
        return la.column_space(F, np.stack(vecs, axis=1))

    @cached_property
    def radical(self) -> np.ndarray:
        """Basis (columns) of the Jacobson radical.

        Valid for basic split algebras whose idempotent system is primitive;
        anything else raises AlgebraError.
        """
        F = self.field
        n = self.dim
        if n == 0:
            return F.zeros((0, 0))
        cols = []
        m = self.n_idempotents
        for i, j in itertools.product(range(m), range(m)):
            P = self.peirce(j, i)
            if P.shape[1] == 0:
                continue
            if i != j:
                cols.append(P)
                continue
            e = self.idempotents[i]
            for c in range(P.shape[1]):
                x = P[:, c]
                lam = self._residue(x, e)
                cols.append(F.reduce(x - lam * e).reshape(-1, 1))
        J = la.column_space(F, np.concatenate(cols, axis=1)) if cols else F.zeros((n, 0))
        if n - J.shape[1] != m:
            raise AlgebraError(f"{self.name}: not basic split for its idempotent system "
                               f"(dim {n}, radical {J.shape[1]}, {m} idempotents)")
        if self._power_dims(J)[-1] != 0:
            raise AlgebraError(f"{self.name}: computed radical is not nilpotent")
        return J

    def _residue(self, x, e):
        F = self.field
        L = self.left_mult(x)
        Le = self.left_mult(e)
        if F.is_finite:
            for lam in F.elements():
                if la.is_nilpotent(F, F.reduce(L - lam * Le)):
                    return lam
        else:
            # x acts on eΛ with a single eigenvalue and kills (1-e)Λ
            d = la.rank(F, Le)
            lam = sum(L.diagonal(), F.zero) / d if d else F.zero
            if la.is_nilpotent(F, F.reduce(L - lam * Le)):
                return lam
        raise AlgebraError(f"{self.name}: corner algebra is not local with residue field {F}")

    def _power_dims(self, J) -> list[int]:
        F = self.field
        dims = [J.shape[1]]
        cur = J
        for _ in range(self.dim + 1):
            if cur.shape[1] == 0:
                break
            prods = [self.mul(cur[:, a], J[:, b]) for a in range(cur.shape[1]) for b in range(J.shape[1])]
            nxt = la.column_space(F, np.stack(prods, axis=1))
            if nxt.shape[1] == cur.shape[1]:
                dims.append(nxt.shape[1])
                break
            cur = nxt
            dims.append(cur.shape[1])
        return dims

    @cached_property
    def radical_square(self) -> np.ndarray:
        F = self.field
        J = self.radical
        if J.shape[1] == 0:
            return F.zeros((self.dim, 0))
        prods = [self.mul(J[:, a], J[:, b]) for a in range(J.shape[1]) for b in range(J.shape[1])]
        return la.column_space(F, np.stack(prods, axis=1))

    @cached_property
    def characters(self) -> np.ndarray:
        """chi[i, k]: scalar by which basis element k acts on the i-th simple."""
        F = self.field
        m, n = self.n_idempotents, self.dim
        chi = F.zeros((m, n))
        J = self.radical
        for i, e in enumerate(self.idempotents):
            rhs = np.stack([self.mul(self.mul(e, self.basis_vector(k)), e) for k in range(n)], axis=1)
            sol = la.solve_matrix(F, np.concatenate([e.reshape(-1, 1), J], axis=1), rhs)
            chi[i] = sol[0]
        return chi

    @cached_property
    def arrows(self) -> list[tuple[int, int, np.ndarray]]:
        """Adapted lifts of a basis of J/J^2 as (source, target, vector) triples.

        A vector ``v`` with source ``i`` and target ``j`` satisfies e_j v e_i = v.
        """
        F = self.field
        J, J2 = self.radical, self.radical_square
        out = []
        m = self.n_idempotents
        for i, j in itertools.product(range(m), range(m)):
            ej, ei = self.idempotents[j], self.idempotents[i]
            block = [self.mul(self.mul(ej, J[:, c]), ei) for c in range(J.shape[1])]
            if not block:
                continue
            B = la.column_space(F, np.stack(block, axis=1))
            if B.shape[1] == 0:
                continue
            blk2 = [self.mul(self.mul(ej, J2[:, c]), ei) for c in range(J2.shape[1])]
            base = la.column_space(F, np.stack(blk2, axis=1)) if blk2 else F.zeros((self.dim, 0))
            for c in range(B.shape[1]):
                if not la.in_span(F, base, B[:, c]):
                    out.append((i, j, B[:, c].copy()))
                    base = np.concatenate([base, B[:, c:c + 1]], axis=1)
        return out

    # serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        F = self.field
        return {
            "name": self.name,
            "labels": list(self.labels),
            "dim": self.dim,
            "struct": [[[F.to_int(x) for x in self.struct[i, j]] for j in range(self.dim)] for i in range(self.dim)],
            "unit": [F.to_int(x) for x in self.unit],
            "idempotents": [[F.to_int(x) for x in e] for e in self.idempotents],
        }

    @classmethod
    def from_dict(cls, F: Field, d: dict) -> Algebra:
        n = int(d["dim"])
        raw = d["struct"]
        if len(raw) != n:
            raise AlgebraError(f"struct has {len(raw)} rows, expected {n}")
        for i, row in enumerate(raw):
            if len(row) != n or any(len(v) != n for v in row):
                raise AlgebraError(f"struct row {i} has the wrong length")
        struct = F.array(raw).reshape(n, n, n) if n else F.zeros((0, 0, 0))
        unit = F.array(d["unit"]) if n else F.zeros(0)
        idem = [F.array(e) for e in d.get("idempotents", [d["unit"]])]
        return cls(F, struct, unit, tuple(idem), tuple(d.get("labels", ())), d.get("name", ""))


# ---------------------------------------------------------------------------
# validation


def validate_algebra(a: Algebra) -> list[str]:
    F = a.field
    n = a.dim
    diags: list[str] = []
    if n == 0:
        return diags
    C = a.struct
    lhs = F.reduce(np.tensordot(C, C, axes=(2, 0)))  # (b_i b_j) b_k -> [i, j, k, m]
    rhs = F.reduce(np.tensordot(C, C, axes=(1, 2)).transpose(0, 2, 3, 1))  # b_i (b_j b_k)
    bad = np.argwhere(np.any(lhs != rhs, axis=3))
    for i, j, k in bad[:5]:
        diags.append(f"associativity fails for ({a.labels[i]}, {a.labels[j]}, {a.labels[k]})")
    for i in range(n):
        b = a.basis_vector(i)
        if np.any(a.mul(a.unit, b) != b) or np.any(a.mul(b, a.unit) != b):
            diags.append(f"unit is not an identity for {a.labels[i]}")
            break
    total = F.zeros(n)
    for s, e in enumerate(a.idempotents):
        total = F.reduce(total + e)
        if not a.is_idempotent(e):
            diags.append(f"idempotent {s} does not square to itself")
        for t, f in enumerate(a.idempotents):
            if s != t and np.any(a.mul(e, f) != 0):
                diags.append(f"idempotents {s} and {t} are not orthogonal")
    if np.any(total != a.unit):
        diags.append("idempotents do not sum to the unit (incomplete system)")
    return diags


# ---------------------------------------------------------------------------
# constructors


def field_algebra(F: Field) -> Algebra:
    struct = F.zeros((1, 1, 1))
    struct[0, 0, 0] = F.one
    unit = F.array([1])
    return Algebra(F, struct, unit, (unit,), ("1",), name=str(F), primitive=True)


def zero_algebra(F: Field) -> Algebra:
    return Algebra(F, F.zeros((0, 0, 0)), F.zeros(0), (), (), name="0", primitive=True)


def _path_label(q: Quiver, path) -> str:
    kind, data = path
    if kind == "e":
        return f"e{q.vertices[data]}"
    labels = [q.arrows[a][2] for a in reversed(data)]
    sep = "" if all(len(str(x)) == 1 for x in labels) else "*"
    return sep.join(str(x) for x in labels)


def _parse_word(q: Quiver, word) -> tuple:
    """A word is written right to left: ["b", "a"] or "b*a" means b after a."""
    if isinstance(word, str):
        word = word.split("*") if "*" in word else list(word)
    idx = [q.arrow_index(w) for w in word]
    traversal = tuple(reversed(idx))
    for x, y in zip(traversal, traversal[1:]):
        if q.arrows[x][1] != q.arrows[y][0]:
            raise AlgebraError(f"word {word} is not a path")
    return traversal


def path_algebra(q: Quiver, relations=(), F: Field | None = None, cap: int = 64, name: str = "",
                max_paths: int = 4096) -> Algebra:
    """kQ / (relations), relations being lists of (coefficient, word) pairs.

    Relations are assumed admissible; the truncation is raised until every path
    of the current top length lies in the ideal.
    """
    F = F or Field(2)
    rels = [[(c, _parse_word(q, w)) for c, w in rel] for rel in relations]
    nv = len(q.vertices)
    vindex = {v: i for i, v in enumerate(q.vertices)}
    src = [vindex[a[0]] for a in q.arrows]
    tgt = [vindex[a[1]] for a in q.arrows]

    def start(p):
        return p[1] if p[0] == "e" else src[p[1][0]]

    def end(p):
        return p[1] if p[0] == "e" else tgt[p[1][-1]]

    def length(p):
        return 0 if p[0] == "e" else len(p[1])

    def compose(p, r):
        """p after r, or None."""
        if start(p) != end(r):
            return None
        if p[0] == "e":
            return r
        if r[0] == "e":
            return p
        return ("p", r[1] + p[1])

    def paths_upto(L):
        layer = [("p", (a,)) for a in range(len(q.arrows))]
        out = [("e", v) for v in range(nv)]
        for _ in range(L):
            if not layer:
                break
            out.extend(layer)
            layer = [("p", p[1] + (a,)) for p in layer for a in range(len(q.arrows)) if tgt[p[1][-1]] == src[a]]
        return out, bool(layer)

    for L in range(1, cap + 1):
        paths, longer_exist = paths_upto(L)
        if len(paths) > max_paths:
            raise InfiniteDimensional(f"more than {max_paths} paths below length {L}; relations too weak")
        index = {p: i for i, p in enumerate(paths)}
        ideal_rows = []
        for rel in rels:
            for p in paths:
                for r in paths:
                    row = F.zeros(len(paths))
                    hit = False
                    for c, word in rel:
                        mid = compose(("p", word), r)
                        w = compose(p, mid) if mid is not None else None
                        if w is None or length(w) > L:
                            continue
                        row[index[w]] = F.reduce(row[index[w]] + F.array([c])[0])
                        hit = True
                    if hit and np.any(row != 0):
                        ideal_rows.append(row)
        top = [p for p in paths if length(p) == L]
        if ideal_rows:
            Irows = np.stack(ideal_rows)
        else:
            Irows = F.zeros((0, len(paths)))
        if not longer_exist:
            done = True
        else:
            done = all(_row_in_span(F, Irows, index[p], len(paths)) for p in top)
        if done:
            break
    else:
        raise InfiniteDimensional(f"path basis did not terminate below length {cap}")

    # pivots on the longest paths: reorder columns longest-first
    order = sorted(range(len(paths)), key=lambda i: (-length(paths[i]), i))
    if Irows.shape[0]:
        R, piv = la.rref(F, Irows[:, order])
        pivots = [order[c] for c in piv]
        Rfull = F.zeros((len(piv), len(paths)))
        Rfull[:, order] = R[: len(piv)]
    else:
        pivots, Rfull = [], F.zeros((0, len(paths)))
    pivset = set(pivots)
    basis_idx = [i for i in range(len(paths)) if i not in pivset]
    pos = {b: k for k, b in enumerate(basis_idx)}
    n = len(basis_idx)

    def normal_form(vec):
        v = vec.copy()
        for r, pc in enumerate(pivots):
            if v[pc] != 0:
                v = F.reduce(v - v[pc] * Rfull[r])
        return v[basis_idx]

    struct = F.zeros((n, n, n))
    for a, ia in enumerate(basis_idx):
        for b, ib in enumerate(basis_idx):
            w = compose(paths[ia], paths[ib])
            if w is None or length(w) > L:
                continue
            vec = F.zeros(len(paths))
            vec[index[w]] = F.one
            struct[a, b] = normal_form(vec)
    idem = []
    for v in range(nv):
        e = F.zeros(n)
        e[pos[index[("e", v)]]] = F.one
        idem.append(e)
    unit = F.reduce(sum(idem)) if idem else F.zeros(0)
    labels = tuple(_path_label(q, paths[i]) for i in basis_idx)
    alg = Algebra(F, struct, unit, tuple(idem), labels, name=name or "kQ", primitive=True,
                  meta={"quiver": q, "relations": relations})
    return alg


def _row_in_span(F, rows, col, ncols) -> bool:
    v = F.zeros(ncols)
    v[col] = F.one
    if rows.shape[0] == 0:
        return False
    return la.in_span(F, rows.T, v)


def corner_algebra(a: Algebra, e) -> tuple[Algebra, np.ndarray]:
    """eΛe with unit e; returns the algebra and the embedding (dim a x dim corner)."""
    F = a.field
    e = F.array(e)
    if not a.is_idempotent(e):
        raise NotIdempotent("element is not idempotent")
    if a.dim == 0:
        return zero_algebra(F), F.zeros((0, 0))
    W = np.stack([a.mul(a.mul(e, a.basis_vector(k)), e) for k in range(a.dim)], axis=1)
    idx = la.independent_columns(F, W)
    E = W[:, idx].copy()
    k = E.shape[1]
    if k == 0:
        return zero_algebra(F), F.zeros((a.dim, 0))
    Linv = la.left_inverse(F, E)
    struct = F.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            struct[i, j] = F.matmul(Linv, a.mul(E[:, i], E[:, j]))
    unit = F.matmul(Linv, e)
    idem = []
    for f in a.idempotents:
        g = a.mul(a.mul(e, f), e)
        if np.any(g != 0):
            idem.append(F.matmul(Linv, g))
    labels = tuple(a.labels[i] for i in idx)
    corner = Algebra(F, struct, unit, tuple(idem), labels, name=f"e{a.name}e")
    if validate_algebra(corner):
        corner = Algebra(F, struct, unit, (unit,), labels, name=f"e{a.name}e")
    return corner, E


def two_sided_ideal_basis(a: Algebra, x) -> np.ndarray:
    F = a.field
    if a.dim == 0:
        return F.zeros((0, 0))
    x = F.array(x)
    vecs = []
    for i in range(a.dim):
        left = a.mul(a.basis_vector(i), x)
        for j in range(a.dim):
            vecs.append(a.mul(left, a.basis_vector(j)))
    return la.column_space(F, np.stack(vecs, axis=1))


def quotient_algebra(a: Algebra, ideal) -> tuple[Algebra, np.ndarray, np.ndarray]:
    """Λ/I; returns (algebra, projection (k x n), lift (n x k))."""
    F = a.field
    n = a.dim
    ideal = np.asarray(ideal)
    if ideal.size == 0:
        ideal = F.zeros((n, 0))
    for c in range(ideal.shape[1]):
        v = ideal[:, c]
        for i in range(n):
            b = a.basis_vector(i)
            if not la.in_span(F, ideal, a.mul(b, v)) or not la.in_span(F, ideal, a.mul(v, b)):
                raise NotAnIdeal("subspace is not a two-sided ideal")
    if ideal.shape[1]:
        R, piv = la.rref(F, ideal.T)
        R = R[: len(piv)]
    else:
        R, piv = F.zeros((0, n)), []
    keep = [i for i in range(n) if i not in set(piv)]
    k = len(keep)
    P = F.zeros((k, n))
    for c, i in enumerate(keep):
        P[c, i] = F.one
    for r, pc in enumerate(piv):
        P[:, pc] = F.reduce(-R[r, keep])
    lift = F.zeros((n, k))
    for c, i in enumerate(keep):
        lift[i, c] = F.one
    struct = F.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            struct[i, j] = F.matmul(P, a.mul(lift[:, i], lift[:, j]))
    unit = F.matmul(P, a.unit) if n else F.zeros(0)
    idem = [F.matmul(P, f) for f in a.idempotents if np.any(F.matmul(P, f) != 0)]
    labels = tuple(a.labels[i] for i in keep)
    q = Algebra(F, struct, unit, tuple(idem), labels, name=f"{a.name}/I", primitive=a.primitive)
    return q, P, lift


def ideal_generated_by_idempotent(a: Algebra, e) -> np.ndarray:
    return two_sided_ideal_basis(a, e)
