"""Left modules as tuples of action matrices, and the maps between them.

A right module over an algebra is a left module over ``algebra.opposite``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algebra import Algebra, field_algebra


class ModuleError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size."""


ENUM_CAP = 1 << 14


def _cache(obj, key, fn):
    store = obj.__dict__.setdefault("_memo", {})
    if key not in store:
        store[key] = fn()
    return store[key]


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    action: np.ndarray  # (dim algebra, d, d)
    name: str = ""

    def __post_init__(self):
        n = self.algebra.dim
        if self.action.ndim != 3 or self.action.shape[0] != n or self.action.shape[1] != self.action.shape[2]:
            raise ModuleError(f"action must have shape ({n}, d, d), got {self.action.shape}")

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self):
        return self.algebra.field

    def act(self, x) -> np.ndarray:
        F = self.field
        if self.algebra.dim == 0:
            return F.zeros((self.dim, self.dim))
        return F.reduce(np.tensordot(x, self.action, axes=(0, 0)))

    @cached_property
    def dim_vector(self) -> tuple[int, ...]:
        F = self.field
        return tuple(la.rank(F, self.act(e)) for e in self.algebra.idempotents)

    def block_basis(self, i: int) -> np.ndarray:
        """Basis (columns) of e_i M."""
        return _cache(self, ("block", i), lambda: la.column_space(self.field, self.act(self.algebra.idempotents[i])))

    def identity(self) -> ModuleMap:
        return ModuleMap(self, self, self.field.eye(self.dim))

    def zero_map_to(self, other: Module) -> ModuleMap:
        return ModuleMap(self, other, self.field.zeros((other.dim, self.dim)))

    # radical and socle ---------------------------------------------------
    @cached_property
    def radical(self) -> np.ndarray:
        """Basis of rad M = JM."""
        F = self.field
        J = self.algebra.radical
        if J.shape[1] == 0 or self.dim == 0:
            return F.zeros((self.dim, 0))
        return la.column_space(F, np.concatenate([self.act(J[:, c]) for c in range(J.shape[1])], axis=1))

    @cached_property
    def socle(self) -> np.ndarray:
        F = self.field
        J = self.algebra.radical
        if J.shape[1] == 0 or self.dim == 0:
            return F.eye(self.dim)
        return la.kernel_basis(F, np.concatenate([self.act(J[:, c]) for c in range(J.shape[1])], axis=0))

    @cached_property
    def radical_layers(self) -> list[np.ndarray]:
        """rad^0 M ⊇ rad^1 M ⊇ ... down to 0, as column bases."""
        F = self.field
        J = self.algebra.radical
        layers = [F.eye(self.dim)]
        while layers[-1].shape[1]:
            cur = layers[-1]
            imgs = [F.matmul(self.act(J[:, c]), cur) for c in range(J.shape[1])]
            nxt = la.column_space(F, np.concatenate(imgs, axis=1)) if imgs else F.zeros((self.dim, 0))
            if nxt.shape[1] == cur.shape[1]:
                raise ModuleError("radical series does not terminate")
            layers.append(nxt)
        return layers

    @cached_property
    def socle_layers(self) -> list[np.ndarray]:
        """0 = soc^0 ⊆ soc^1 ⊆ ... up to M."""
        F = self.field
        J = self.algebra.radical
        layers = [F.zeros((self.dim, 0))]
        stack = np.concatenate([self.act(J[:, c]) for c in range(J.shape[1])], axis=0) if J.shape[1] else None
        while layers[-1].shape[1] < self.dim:
            cur = layers[-1]
            if stack is None:
                layers.append(F.eye(self.dim))
                break
            # soc^{k+1} = {m : J m ⊆ soc^k}
            ann = la.left_annihilator(F, cur)  # rows vanishing exactly on cur
            reps = [F.matmul(ann, self.act(J[:, c])) for c in range(J.shape[1])]
            nxt = la.kernel_basis(F, np.concatenate(reps, axis=0))
            layers.append(nxt)
        return layers

    @cached_property
    def fingerprint(self) -> tuple:
        """Isomorphism invariant used to bucket modules before exact tests."""
        F = self.field
        ranks = tuple(la.rank(F, self.action[k]) for k in range(self.algebra.dim))
        rl = tuple(x.shape[1] for x in self.radical_layers)
        sl = tuple(x.shape[1] for x in self.socle_layers)
        return (self.dim, self.dim_vector, ranks, rl, sl)

    @cached_property
    def end_basis(self) -> np.ndarray:
        return hom_space(self, self)

    @cached_property
    def summands(self) -> list[tuple[Module, ModuleMap, ModuleMap]]:
        """Indecomposable summands with inclusion and projection maps."""
        return _split(self)

    @cached_property
    def is_indecomposable(self) -> bool:
        return self.dim > 0 and len(self.summands) == 1

    def to_dict(self) -> dict:
        F = self.field
        return {"name": self.name, "dim": self.dim,
                "action": [[[F.to_int(x) for x in row] for row in m] for m in self.action]}

    @classmethod
    def from_dict(cls, alg: Algebra, d: dict) -> Module:
        F = alg.field
        dim = int(d["dim"])
        act = d["action"]
        if len(act) != alg.dim:
            raise ModuleError(f"expected {alg.dim} action matrices, got {len(act)}")
        arr = F.array(act).reshape(alg.dim, dim, dim) if dim else F.zeros((alg.dim, 0, 0))
        return cls(alg, arr, d.get("name", ""))


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray  # target.dim x source.dim

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ModuleError(f"map matrix has shape {self.matrix.shape}, expected "
                              f"{(self.target.dim, self.source.dim)}")

    @property
    def field(self):
        return self.source.field

    def is_homomorphism(self) -> bool:
        F = self.field
        A, B = self.source, self.target
        for g in A.algebra.generators:
            if np.any(F.matmul(self.matrix, A.action[g]) != F.matmul(B.action[g], self.matrix)):
                return False
        return True

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        """self after other."""
        return ModuleMap(other.source, self.target, self.field.matmul(self.matrix, other.matrix))

    def __add__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.source, self.target, self.field.reduce(self.matrix + other.matrix))

    @cached_property
    def rank(self) -> int:
        return la.rank(self.field, self.matrix)

    def is_mono(self) -> bool:
        return self.rank == self.source.dim

    def is_epi(self) -> bool:
        return self.rank == self.target.dim

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def is_zero(self) -> bool:
        return not np.any(self.matrix != 0)


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    inclusion: ModuleMap
    projection: ModuleMap

    def check(self) -> bool:
        F = self.inclusion.field
        f, g = self.inclusion, self.projection
        return (f.target is g.source and f.is_mono() and g.is_epi()
                and F.is_zero(F.matmul(g.matrix, f.matrix))
                and f.rank + g.rank == f.target.dim)

    @property
    def left(self) -> Module:
        return self.inclusion.source

    @property
    def middle(self) -> Module:
        return self.inclusion.target

    @property
    def right(self) -> Module:
        return self.projection.target


@dataclass(frozen=True, eq=False)
class Bimodule:
    """Left ``left``-module and right ``right``-module on one vector space.

    ``right_action[r]`` is the matrix of x -> x.r, so it composes contravariantly.
    """

    left: Algebra
    right: Algebra
    left_action: np.ndarray
    right_action: np.ndarray
    name: str = ""

    @property
    def dim(self) -> int:
        return self.left_action.shape[1]

    @property
    def field(self):
        return self.left.field

    @cached_property
    def as_left(self) -> Module:
        return Module(self.left, self.left_action, self.name)

    @cached_property
    def as_right(self) -> Module:
        """The right structure as a left module over the opposite algebra."""
        return Module(self.right.opposite, self.right_action, self.name)

    def right_act(self, x) -> np.ndarray:
        return self.as_right.act(x)

    def validate(self) -> list[str]:
        F = self.field
        out = []
        out += [f"left: {d}" for d in module_axioms(self.as_left)]
        out += [f"right: {d}" for d in module_axioms(self.as_right)]
        for a in self.left.generators:
            for r in self.right.generators:
                L, R = self.left_action[a], self.right_action[r]
                if np.any(F.matmul(L, R) != F.matmul(R, L)):
                    out.append(f"left {self.left.labels[a]} and right {self.right.labels[r]} do not commute")
        return out

    @classmethod
    def from_left_module(cls, m: Module) -> Bimodule:
        """A left module viewed as a bimodule with the ground field acting on the right."""
        k = field_algebra(m.field)
        return cls(m.algebra, k, m.action, m.field.eye(m.dim)[None], m.name)

    @classmethod
    def from_right_module(cls, m: Module) -> Bimodule:
        """A left module over R^op viewed as a k-R bimodule."""
        k = field_algebra(m.field)
        return cls(k, m.algebra.opposite, m.field.eye(m.dim)[None], m.action, m.name)


# ---------------------------------------------------------------------------
# axioms and constructors


def module_axioms(m: Module) -> list[str]:
    F = m.field
    a = m.algebra
    out = []
    if a.dim == 0:
        return [] if m.dim == 0 else ["nonzero module over the zero algebra"]
    if np.any(m.act(a.unit) != F.eye(m.dim)):
        out.append("unit does not act as the identity")
    lhs = F.reduce(np.matmul(m.action[:, None], m.action[None, :]))
    rhs = F.reduce(np.tensordot(a.struct, m.action, axes=(2, 0)))
    bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
    for i, j in bad[:5]:
        out.append(f"action not multiplicative on ({a.labels[i]}, {a.labels[j]})")
    return out


def zero_module(alg: Algebra) -> Module:
    return Module(alg, alg.field.zeros((alg.dim, 0, 0)), "0")


def regular_module(alg: Algebra) -> Module:
    return Module(alg, alg.regular_action, f"{alg.name}")


def submodule(m: Module, K: np.ndarray, name: str = "") -> tuple[Module, ModuleMap]:
    """Submodule spanned by the columns of K (assumed independent and invariant)."""
    F = m.field
    L = la.left_inverse(F, K)
    act = F.reduce(np.matmul(np.matmul(L, m.action), K)) if m.algebra.dim else F.zeros((0, K.shape[1], K.shape[1]))
    sub = Module(m.algebra, act, name)
    return sub, ModuleMap(sub, m, K.copy())


def quotient(m: Module, U: np.ndarray, name: str = "") -> tuple[Module, ModuleMap]:
    """M/U for an invariant subspace U; returns the quotient and the projection."""
    F = m.field
    Q = la.left_annihilator(F, U)
    S = la.right_inverse(F, Q)
    act = F.reduce(np.matmul(np.matmul(Q, m.action), S)) if m.algebra.dim else F.zeros((0, Q.shape[0], Q.shape[0]))
    quo = Module(m.algebra, act, name)
    return quo, ModuleMap(m, quo, Q)


def generated_submodule(m: Module, vecs: np.ndarray) -> np.ndarray:
    """Basis of the submodule generated by the columns of ``vecs``."""
    F = m.field
    if vecs.shape[1] == 0:
        return F.zeros((m.dim, 0))
    imgs = [F.matmul(m.action[k], vecs) for k in range(m.algebra.dim)]
    return la.column_space(F, np.concatenate([vecs] + imgs, axis=1))


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    K = la.kernel_basis(f.field, f.matrix)
    return submodule(f.source, K, "ker")


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.target, la.column_space(f.field, f.matrix), "im")


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(f.target, la.column_space(f.field, f.matrix), "coker")


def direct_sum(mods, alg: Algebra | None = None) -> tuple[Module, list[ModuleMap], list[ModuleMap]]:
    mods = list(mods)
    if not mods:
        if alg is None:
            raise ModuleError("empty direct sum needs an algebra")
        z = zero_module(alg)
        return z, [], []
    alg = mods[0].algebra
    F = alg.field
    for m in mods[1:]:
        if not m.algebra.same_as(alg):
            raise ModuleError("direct sum of modules over different algebras")
    d = sum(m.dim for m in mods)
    act = F.zeros((alg.dim, d, d))
    off = 0
    for m in mods:
        act[:, off:off + m.dim, off:off + m.dim] = m.action
        off += m.dim
    total = Module(alg, act, "+".join(m.name or "?" for m in mods))
    incs, projs = [], []
    off = 0
    for m in mods:
        inc = F.zeros((d, m.dim))
        inc[off:off + m.dim] = F.eye(m.dim)
        incs.append(ModuleMap(m, total, inc))
        projs.append(ModuleMap(total, m, inc.T.copy()))
        off += m.dim
    return total, incs, projs


def direct_sum_map(maps, source: Module, target: Module) -> ModuleMap:
    return ModuleMap(source, target, la.block_diag(source.field, [f.matrix for f in maps]))


# ---------------------------------------------------------------------------
# hom spaces


def hom_space(m: Module, n: Module) -> np.ndarray:
    """Basis of Hom(m, n) as an array of shape (k, n.dim, m.dim)."""
    F = m.field
    if not m.algebra.same_as(n.algebra):
        raise ModuleError("hom between modules over different algebras")
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return F.zeros((0, dn, dm))
    alg = m.algebra
    # maps preserve the idempotent blocks; solve blockwise in adapted coordinates
    blocks = []
    for i in range(alg.n_idempotents):
        Bm, Bn = m.block_basis(i), n.block_basis(i)
        blocks.append((Bm, Bn))
    if alg.n_idempotents and sum(b[0].shape[1] for b in blocks) == dm and sum(b[1].shape[1] for b in blocks) == dn:
        Pm = np.concatenate([b[0] for b in blocks], axis=1)
        Pn = np.concatenate([b[1] for b in blocks], axis=1)
        Pm_inv, Pn_inv = la.inverse(F, Pm), la.inverse(F, Pn)
        # unknowns: block-diagonal f' in adapted coordinates
        offsets_m = np.cumsum([0] + [b[0].shape[1] for b in blocks])
        offsets_n = np.cumsum([0] + [b[1].shape[1] for b in blocks])
        var_index = []
        for i in range(len(blocks)):
            for r in range(offsets_n[i], offsets_n[i + 1]):
                for c in range(offsets_m[i], offsets_m[i + 1]):
                    var_index.append(r * dm + c)
        nv = len(var_index)
        if nv == 0:
            return F.zeros((0, dn, dm))
        eqs = []
        for g in alg.generators:
            A = F.mul(Pm_inv, m.action[g], Pm)
            B = F.mul(Pn_inv, n.action[g], Pn)
            full = F.reduce(la.kron(F, F.eye(dn), A.T) - la.kron(F, B, F.eye(dm)))
            eqs.append(full[:, var_index])
        sol = la.kernel_basis(F, np.concatenate(eqs, axis=0)) if eqs else F.eye(nv)
        out = F.zeros((sol.shape[1], dn, dm))
        for k in range(sol.shape[1]):
            fp = F.zeros(dn * dm)
            fp[var_index] = sol[:, k]
            out[k] = F.mul(Pn, fp.reshape(dn, dm), Pm_inv)
        return _canonical_basis(F, out)
    eqs = []
    for g in alg.generators:
        A, B = m.action[g], n.action[g]
        eqs.append(F.reduce(la.kron(F, F.eye(dn), A.T) - la.kron(F, B, F.eye(dm))))
    if not eqs:
        return F.eye(dn * dm).T.reshape(dn * dm, dn, dm)
    K = la.kernel_basis(F, np.concatenate(eqs, axis=0))
    return K.T.reshape(K.shape[1], dn, dm).copy()


def _canonical_basis(F, mats: np.ndarray) -> np.ndarray:
    k = mats.shape[0]
    if k == 0:
        return mats
    flat = mats.reshape(k, -1)
    R, piv = la.rref(F, flat)
    return R[: len(piv)].reshape((len(piv),) + mats.shape[1:]).copy()


def hom_dim(m: Module, n: Module) -> int:
    return hom_space(m, n).shape[0]


def hom_coordinates(F, basis: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Coordinates of the matrix f in a hom basis."""
    k = basis.shape[0]
    if k == 0:
        if np.any(f != 0):
            raise la.NoSolution("map not in the span of an empty basis")
        return F.zeros(0)
    return la.solve(F, basis.reshape(k, -1).T, f.reshape(-1))


# ---------------------------------------------------------------------------
# simple, projective and injective modules


def simples(alg: Algebra) -> list[Module]:
    def build():
        chi = alg.characters
        return [Module(alg, chi[i].reshape(alg.dim, 1, 1).copy(), f"S{_vlabel(alg, i)}")
                for i in range(alg.n_idempotents)]
    return _cache(alg, "simples", build)


def _vlabel(alg: Algebra, i: int) -> str:
    lab = alg.labels[int(np.flatnonzero(alg.idempotents[i])[0])] if alg.dim else str(i)
    return lab[1:] if lab.startswith("e") and len(alg.idempotents[i].nonzero()[0]) == 1 else str(i + 1)


def projective_basis(alg: Algebra, i: int) -> np.ndarray:
    """Basis of Λe_i inside Λ, with e_i as the first column."""
    def build():
        F = alg.field
        e = alg.idempotents[i]
        W = np.concatenate([e.reshape(-1, 1), alg.right_mult(e)], axis=1)
        return W[:, la.independent_columns(F, W)].copy()
    return _cache(alg, ("pbasis", i), build)


def projectives(alg: Algebra) -> list[Module]:
    def build():
        out = []
        for i in range(alg.n_idempotents):
            K = projective_basis(alg, i)
            m, _ = submodule(regular_module(alg), K, f"P{_vlabel(alg, i)}")
            out.append(m)
        return out
    return _cache(alg, "projectives", build)


def injectives(alg: Algebra) -> list[Module]:
    def build():
        F = alg.field
        out = []
        for i, e in enumerate(alg.idempotents):
            K = la.column_space(F, alg.left_mult(e))  # e_i Λ
            L = la.left_inverse(F, K)
            act = np.stack([F.mul(L, alg.right_mult(alg.basis_vector(k)), K).T for k in range(alg.dim)])
            out.append(Module(alg, act, f"I{_vlabel(alg, i)}"))
        return out
    return _cache(alg, "injectives", build)


def dual_module(m: Module) -> Module:
    """D M = Hom_k(M, k) as a left module over the opposite algebra."""
    return Module(m.algebra.opposite, m.action.transpose(0, 2, 1).copy(), f"D{m.name}")


def is_projective(m: Module) -> bool:
    return projective_cover(m).source.dim == m.dim


def is_injective(m: Module) -> bool:
    return is_projective(dual_module(m))


# ---------------------------------------------------------------------------
# projective covers


@dataclass(frozen=True, eq=False)
class Cover:
    """Projective cover ⊕ P_{vertices[s]} -> M sending the s-th top generator to ``generators[:, s]``."""

    map: ModuleMap
    vertices: tuple[int, ...]

    @property
    def source(self) -> Module:
        return self.map.source


def projective_sum(alg: Algebra, vertices) -> Module:
    vertices = tuple(vertices)
    def build():
        P = projectives(alg)
        return direct_sum([P[i] for i in vertices], alg)[0]
    return _cache(alg, ("psum", vertices), build)


def top_generators(m: Module) -> tuple[list[int], np.ndarray]:
    """Vertices and vectors in M lifting a basis of the top, block by block."""
    F = m.field
    alg = m.algebra
    span = m.radical
    verts, vecs = [], []
    for i in range(alg.n_idempotents):
        B = m.block_basis(i)
        for c in range(B.shape[1]):
            v = B[:, c]
            if not la.in_span(F, span, v):
                verts.append(i)
                vecs.append(v)
                span = np.concatenate([span, v.reshape(-1, 1)], axis=1)
    V = np.stack(vecs, axis=1) if vecs else F.zeros((m.dim, 0))
    return verts, V


def map_from_projectives(m: Module, verts, vecs) -> ModuleMap:
    F = m.field
    alg = m.algebra
    P = projective_sum(alg, verts)
    cols = []
    for s, i in enumerate(verts):
        K = projective_basis(alg, i)
        for c in range(K.shape[1]):
            cols.append(F.matmul(m.act(K[:, c]), vecs[:, s]))
    mat = np.stack(cols, axis=1) if cols else F.zeros((m.dim, 0))
    return ModuleMap(P, m, mat)


def projective_cover(m: Module) -> ModuleMap:
    return cover(m).map


def cover(m: Module) -> Cover:
    def build():
        verts, V = top_generators(m)
        return Cover(map_from_projectives(m, verts, V), tuple(verts))
    return _cache(m, "cover", build)


def injective_envelope(m: Module) -> ModuleMap:
    """M -> I(M), the transpose of the projective cover of DM over the opposite algebra."""
    def build():
        p = projective_cover(dual_module(m))
        inj = Module(m.algebra, p.source.action.transpose(0, 2, 1).copy(), f"I({m.name})")
        return ModuleMap(m, inj, p.matrix.T.copy())
    return _cache(m, "envelope", build)


# ---------------------------------------------------------------------------
# Krull-Schmidt


def _fitting_split(m: Module, phi: np.ndarray):
    F = m.field
    d = m.dim
    power = la.matrix_power(F, phi, d)
    r = la.rank(F, power)
    if r == 0 or r == d:
        return None
    U = la.column_space(F, power)
    V = la.kernel_basis(F, power)
    return U, V


def _layer_ideal(m: Module, E: np.ndarray) -> np.ndarray:
    """Endomorphisms shifting radical layers down or socle layers down.

    The sum of the two is a nilpotent ideal of End(M).
    """
    F = m.field
    k = E.shape[0]
    def shifting(layers, down):
        cons = []
        for t in range(len(layers) - 1):
            src = layers[t] if down else layers[t + 1]
            dst = layers[t + 1] if down else layers[t]
            if src.shape[1] == 0:
                continue
            ann = la.left_annihilator(F, dst)
            if ann.shape[0] == 0:
                continue
            # ann . phi . src = 0, linear in coefficients
            rows = [F.mul(ann, E[b], src).reshape(-1) for b in range(k)]
            cons.append(np.stack(rows, axis=1))
        if not cons:
            return F.eye(k)
        return la.kernel_basis(F, np.concatenate(cons, axis=0))
    A = shifting(m.radical_layers, True)
    B = shifting(m.socle_layers, False)
    both = np.concatenate([A, B], axis=1)
    return la.column_space(F, both) if both.shape[1] else F.zeros((k, 0))


def _find_split(m: Module, rng_seed: int = 0):
    F = m.field
    E = m.end_basis
    k = E.shape[0]
    if k <= 1:
        return None
    cands = [E[b] for b in range(k)]
    cands += [F.reduce(E[a] + E[b]) for a in range(k) for b in range(a + 1, k)]
    rng = np.random.default_rng(rng_seed)
    for _ in range(16):
        c = F.random(k, rng)
        cands.append(F.reduce(np.tensordot(c, E, axes=(0, 0))))
    for phi in cands:
        s = _fitting_split(m, phi)
        if s is not None:
            return s
    I = _layer_ideal(m, E)
    r = k - I.shape[1]
    if r <= 1:
        return None
    # coset representatives of End/I
    reps, span = [], I
    for c in range(k):
        v = F.eye(k)[:, c]
        if not la.in_span(F, span, v):
            reps.append(c)
            span = np.concatenate([span, v.reshape(-1, 1)], axis=1)
    if not F.is_finite or F.p ** len(reps) > ENUM_CAP:
        raise CapExceeded(f"End/I has dimension {len(reps)}; exhaustive idempotent search too large")
    for coeffs in itertools.product(range(F.p), repeat=len(reps)):
        if not any(coeffs):
            continue
        phi = F.reduce(sum(int(c) * E[b] for c, b in zip(coeffs, reps)))
        s = _fitting_split(m, phi)
        if s is not None:
            return s
    return None


def _split(m: Module) -> list[tuple[Module, ModuleMap, ModuleMap]]:
    F = m.field
    if m.dim == 0:
        return []
    s = _find_split(m)
    if s is None:
        return [(m, m.identity(), m.identity())]
    U, V = s
    out = []
    W = np.concatenate([U, V], axis=1)
    Winv = la.inverse(F, W)
    for part, rows in ((U, Winv[: U.shape[1]]), (V, Winv[U.shape[1]:])):
        sub, inc = submodule(m, part)
        proj = ModuleMap(m, sub, rows.copy())
        for piece, i2, p2 in sub.summands:
            out.append((piece, inc @ i2, p2 @ proj))
    return out


def idempotents_of_end(m: Module) -> list[np.ndarray]:
    """All idempotent endomorphisms when End is small enough to enumerate."""
    F = m.field
    E = m.end_basis
    k = E.shape[0]
    if F.is_finite and F.p ** k <= ENUM_CAP:
        out = []
        for coeffs in itertools.product(range(F.p), repeat=k):
            phi = F.reduce(sum(int(c) * E[b] for c, b in zip(coeffs, range(k)))) if k else F.zeros((m.dim, m.dim))
            if not np.any(F.matmul(phi, phi) != phi):
                out.append(phi)
        return out
    # fallback: idempotents from a Krull-Schmidt splitting
    out = [F.zeros((m.dim, m.dim)), F.eye(m.dim)]
    for _, inc, proj in m.summands if len(m.summands) > 1 else []:
        out.append(F.matmul(inc.matrix, proj.matrix))
    return out


def indecompose(m: Module) -> list[tuple[Module, int]]:
    """Indecomposable summands grouped up to isomorphism, with multiplicities."""
    groups: list[list] = []
    for piece, _, _ in m.summands:
        for g in groups:
            if is_isomorphic(g[0], piece)[0]:
                g[1] += 1
                break
        else:
            groups.append([piece, 1])
    return [(g[0], g[1]) for g in groups]


# ---------------------------------------------------------------------------
# isomorphism


def _invertible_in_span(F, basis: np.ndarray, seed: int = 0):
    k = basis.shape[0]
    for b in range(k):
        if la.is_invertible(F, basis[b]):
            return basis[b]
    if k > 1:
        rng = np.random.default_rng(seed)
        for _ in range(8):
            c = F.random(k, rng)
            f = F.reduce(np.tensordot(c, basis, axes=(0, 0)))
            if la.is_invertible(F, f):
                return f
    return None


def is_isomorphic(m: Module, n: Module) -> tuple[bool, object]:
    """(True, witness map) or (False, reason)."""
    F = m.field
    if not m.algebra.same_as(n.algebra):
        raise ModuleError("modules over different algebras")
    if m.dim != n.dim:
        return False, "dimension"
    if m.dim == 0:
        return True, ModuleMap(m, n, F.zeros((0, 0)))
    if m.fingerprint != n.fingerprint:
        return False, "fingerprint"
    H = hom_space(m, n)
    f = _invertible_in_span(F, H)
    if f is not None:
        return True, ModuleMap(m, n, f)
    if m.is_indecomposable or n.is_indecomposable:
        # End is local, so Hom(m, n) has an invertible basis element iff m ≅ n
        return False, "no invertible map"
    # Krull-Schmidt comparison
    pm, pn = [p for p, _, _ in m.summands], [p for p, _, _ in n.summands]
    if len(pm) != len(pn):
        return False, "number of summands"
    used = [False] * len(pn)
    pairs = []
    for a in pm:
        for j, b in enumerate(pn):
            if not used[j]:
                ok, w = is_isomorphic(a, b)
                if ok:
                    used[j] = True
                    pairs.append((a, j, w))
                    break
        else:
            return False, "summands differ"
    # assemble a witness from summand isomorphisms
    mat = F.zeros((n.dim, m.dim))
    for (a, j, w), (_, inc_m, proj_m) in zip(pairs, m.summands):
        _, inc_n, _ = n.summands[j]
        mat = F.reduce(mat + F.mul(inc_n.matrix, w.matrix, proj_m.matrix))
    return True, ModuleMap(m, n, mat)
