"""Morita context rings and their modules written as quadruples (X, Y, f, g).

Ring elements are stored in the block basis A, B, M, N.  A module over the
ring is a pair X (over A), Y (over B) with f: M⊗_A X -> Y and g: N⊗_B Y -> X.
The second recollement is obtained from the first by swapping the roles of
(A, M, φ) and (B, N, ψ), so only one set of six functors is written out.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algebra import Algebra, AlgebraError, quotient_algebra, validate_algebra
from .cotorsion import (Budget, GluedScenario, ModuleClass, analyze_pair, class_from_predicate, everything,
                        glued_M, glued_N, projective_class, verify_gluing)
from .enumeration import Universe, enumerate_indecomposables, ensure_projectives_injectives
from .homological import (HomModule, Tensor, ext_dim, hom_functor, hom_map, regular_bimodule, tensor_map,
                          tensor_module, tensor_over, tor_dim)
from .modules import (Bimodule, Module, ModuleError, ModuleMap, _cache, cokernel, hom_space, is_isomorphic,
                      is_projective, kernel, module_axioms, zero_module)
from .recollement import Functor, Recollement, WrongCategory, build_recollement, condition_p, functor_exact


class IncompatibleContext(AlgebraError):
    pass


class IncompatibleQuadruple(ModuleError):
    pass


class AssumptionFailed(RuntimeError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True, eq=False)
class MoritaData:
    A: Algebra
    B: Algebra
    M: Bimodule  # B-A
    N: Bimodule  # A-B
    phi: np.ndarray  # (dim B, dim M⊗_A N)
    psi: np.ndarray  # (dim A, dim N⊗_B M)
    name: str = ""

    @cached_property
    def MN(self) -> Tensor:
        return tensor_over(self.M, self.N)

    @cached_property
    def NM(self) -> Tensor:
        return tensor_over(self.N, self.M)

    @property
    def field(self):
        return self.A.field

    def phi_of(self, m, n) -> np.ndarray:
        return self.field.matmul(self.phi, self.MN.element(m, n)) if self.MN.dim else self.B.zero()

    def psi_of(self, n, m) -> np.ndarray:
        return self.field.matmul(self.psi, self.NM.element(n, m)) if self.NM.dim else self.A.zero()

    @classmethod
    def from_bilinear(cls, A, B, M, N, phi_bil=None, psi_bil=None, name: str = "") -> MoritaData:
        """phi_bil[i, j] = φ(m_i ⊗ n_j) in B, psi_bil[i, j] = ψ(n_i ⊗ m_j) in A; None means zero."""
        F = A.field
        mn, nm = tensor_over(M, N), tensor_over(N, M)

        def descend(bil, t: Tensor, target: Algebra, label):
            if bil is None:
                return F.zeros((target.dim, t.dim))
            bil = F.array(bil)
            raw = bil.reshape(-1, target.dim).T  # columns indexed by i*dy + j
            mat = F.matmul(raw, t.section) if t.dim else F.zeros((target.dim, 0))
            if np.any(F.matmul(mat, t.q) != raw):
                raise IncompatibleContext(f"{label} is not balanced over the middle algebra")
            return mat
        return cls(A, B, M, N, descend(phi_bil, mn, B, "φ"), descend(psi_bil, nm, A, "ψ"), name)

    def check(self) -> list[str]:
        """Bimodule-map properties of φ, ψ and the two compatibility identities, on basis elements."""
        F = self.field
        out = []
        M, N = self.M, self.N
        eye_m, eye_n = F.eye(M.dim), F.eye(N.dim)
        for i in range(M.dim):
            for j in range(N.dim):
                v = self.phi_of(eye_m[:, i], eye_n[:, j])
                for b in self.B.generators:
                    lhs = self.phi_of(F.matmul(M.left_action[b], eye_m[:, i]), eye_n[:, j])
                    if np.any(lhs != self.B.mul(self.B.basis_vector(b), v)):
                        out.append(f"φ is not left B-linear at (m{i}, n{j})")
                    rhs = self.phi_of(eye_m[:, i], F.matmul(N.right_action[b], eye_n[:, j]))
                    if np.any(rhs != self.B.mul(v, self.B.basis_vector(b))):
                        out.append(f"φ is not right B-linear at (m{i}, n{j})")
        for i in range(N.dim):
            for j in range(M.dim):
                v = self.psi_of(eye_n[:, i], eye_m[:, j])
                for a in self.A.generators:
                    lhs = self.psi_of(F.matmul(N.left_action[a], eye_n[:, i]), eye_m[:, j])
                    if np.any(lhs != self.A.mul(self.A.basis_vector(a), v)):
                        out.append(f"ψ is not left A-linear at (n{i}, m{j})")
                    rhs = self.psi_of(eye_n[:, i], F.matmul(M.right_action[a], eye_m[:, j]))
                    if np.any(rhs != self.A.mul(v, self.A.basis_vector(a))):
                        out.append(f"ψ is not right A-linear at (n{i}, m{j})")
        for mp in range(M.dim):
            for n in range(N.dim):
                for m in range(M.dim):
                    lhs = F.matmul(M.as_right.act(self.psi_of(eye_n[:, n], eye_m[:, m])), eye_m[:, mp])
                    rhs = F.matmul(M.as_left.act(self.phi_of(eye_m[:, mp], eye_n[:, n])), eye_m[:, m])
                    if np.any(lhs != rhs):
                        out.append(f"m'ψ(n⊗m) != φ(m'⊗n)m at (m{mp}, n{n}, m{m})")
        for np_ in range(N.dim):
            for m in range(M.dim):
                for n in range(N.dim):
                    lhs = F.matmul(N.as_right.act(self.phi_of(eye_m[:, m], eye_n[:, n])), eye_n[:, np_])
                    rhs = F.matmul(N.as_left.act(self.psi_of(eye_n[:, np_], eye_m[:, m])), eye_n[:, n])
                    if np.any(lhs != rhs):
                        out.append(f"n'φ(m⊗n) != ψ(n'⊗m)n at (n{np_}, m{m}, n{n})")
        return out


def swapped(d: MoritaData) -> MoritaData:
    """The same ring with the two diagonal corners exchanged."""
    def build():
        s = MoritaData(d.B, d.A, d.N, d.M, d.psi, d.phi, f"{d.name}~")
        s.__dict__.setdefault("_memo", {})["swap"] = d
        return s
    return _cache(d, "swap", build)


# ---------------------------------------------------------------------------
# the ring


@dataclass(frozen=True, eq=False)
class MoritaRing:
    data: MoritaData
    algebra: Algebra
    e_a: np.ndarray
    e_b: np.ndarray

    @property
    def offsets(self) -> dict[str, int]:
        d = self.data
        return {"A": 0, "B": d.A.dim, "M": d.A.dim + d.B.dim, "N": d.A.dim + d.B.dim + d.M.dim}

    def embed(self, block: str, v) -> np.ndarray:
        F = self.data.field
        out = F.zeros(self.algebra.dim)
        o = self.offsets[block]
        v = F.array(v)
        out[o:o + len(v)] = v
        return out

    def block(self, block: str, x) -> np.ndarray:
        d = self.data
        size = {"A": d.A.dim, "B": d.B.dim, "M": d.M.dim, "N": d.N.dim}[block]
        o = self.offsets[block]
        return np.asarray(x)[o:o + size]


def morita_ring(d: MoritaData) -> MoritaRing:
    def build():
        alg, ea, eb = _build(d)
        return MoritaRing(d, alg, ea, eb)
    return _cache(d, "ring", build)


def build_morita_ring(d: MoritaData) -> tuple[Algebra, np.ndarray, np.ndarray]:
    r = morita_ring(d)
    return r.algebra, r.e_a, r.e_b


def _build(d: MoritaData):
    problems = d.check()
    if problems:
        raise IncompatibleContext(problems[0])
    F = d.field
    A, B, M, N = d.A, d.B, d.M, d.N
    dA, dB, dM, dN = A.dim, B.dim, M.dim, N.dim
    oA, oB, oM, oN = 0, dA, dA + dB, dA + dB + dM
    n = oN + dN
    C = F.zeros((n, n, n))
    eM, eN = F.eye(dM), F.eye(dN)
    C[oA:oB, oA:oB, oA:oB] = A.struct
    C[oB:oM, oB:oM, oB:oM] = B.struct
    for i in range(dA):
        C[oA + i, oN:n, oN:n] = N.left_action[i].T  # a·n
        C[oM:oN, oA + i, oM:oN] = M.right_action[i].T  # m·a
    for i in range(dB):
        C[oB + i, oM:oN, oM:oN] = M.left_action[i].T  # b·m
        C[oN:n, oB + i, oN:n] = N.right_action[i].T  # n·b
    for i in range(dN):
        for j in range(dM):
            C[oN + i, oM + j, oA:oB] = d.psi_of(eN[:, i], eM[:, j])
    for i in range(dM):
        for j in range(dN):
            C[oM + i, oN + j, oB:oM] = d.phi_of(eM[:, i], eN[:, j])
    unit = F.zeros(n)
    unit[oA:oB] = A.unit
    unit[oB:oM] = B.unit
    idem = []
    for f in A.idempotents:
        v = F.zeros(n)
        v[oA:oB] = f
        idem.append(v)
    for f in B.idempotents:
        v = F.zeros(n)
        v[oB:oM] = f
        idem.append(v)
    labels = tuple([f"A:{x}" for x in A.labels] + [f"B:{x}" for x in B.labels] +
                   [f"M{i}" for i in range(dM)] + [f"N{i}" for i in range(dN)])
    prim = bool(A.primitive) and bool(B.primitive)
    alg = Algebra(F, C, unit, tuple(idem), labels, name=d.name or "Λ", primitive=prim)
    problems = validate_algebra(alg)
    if problems:
        raise IncompatibleContext(problems[0])
    ea, eb = F.zeros(n), F.zeros(n)
    ea[oA:oB] = A.unit
    eb[oB:oM] = B.unit
    return alg, ea, eb


# ---------------------------------------------------------------------------
# quadruples


def _tensor(bim: Bimodule, x: Module) -> tuple[Module, Tensor]:
    store = bim.__dict__.setdefault("_tensors", {})
    hit = store.get(id(x))
    if hit is None or hit[0] is not x:
        hit = (x, tensor_module(bim, x))
        store[id(x)] = hit
    return hit[1]


def _hom(bim: Bimodule, x: Module) -> HomModule:
    store = bim.__dict__.setdefault("_homs", {})
    hit = store.get(id(x))
    if hit is None or hit[0] is not x:
        hit = (x, hom_functor(bim, x))
        store[id(x)] = hit
    return hit[1]


@dataclass(frozen=True, eq=False)
class Quadruple:
    data: MoritaData
    X: Module
    Y: Module
    f: np.ndarray  # M⊗_A X -> Y
    g: np.ndarray  # N⊗_B Y -> X
    name: str = ""

    @property
    def mx(self) -> tuple[Module, Tensor]:
        return _tensor(self.data.M, self.X)

    @property
    def ny(self) -> tuple[Module, Tensor]:
        return _tensor(self.data.N, self.Y)

    @property
    def f_map(self) -> ModuleMap:
        return ModuleMap(self.mx[0], self.Y, self.f)

    @property
    def g_map(self) -> ModuleMap:
        return ModuleMap(self.ny[0], self.X, self.g)

    def swapped(self) -> Quadruple:
        return Quadruple(swapped(self.data), self.Y, self.X, self.g, self.f, self.name)


@dataclass(frozen=True, eq=False)
class QuadrupleMap:
    source: Quadruple
    target: Quadruple
    a: np.ndarray  # X -> X'
    b: np.ndarray  # Y -> Y'

    def swapped(self) -> QuadrupleMap:
        return QuadrupleMap(self.source.swapped(), self.target.swapped(), self.b, self.a)


def quadruple_to_module(d: MoritaData, q: Quadruple) -> Module:
    F = d.field
    ring = morita_ring(d)
    X, Y = q.X, q.Y
    dX, dY = X.dim, Y.dim
    n = dX + dY
    act = F.zeros((ring.algebra.dim, n, n))
    o = ring.offsets
    for i in range(d.A.dim):
        act[o["A"] + i, :dX, :dX] = X.action[i]
    for i in range(d.B.dim):
        act[o["B"] + i, dX:, dX:] = Y.action[i]
    _, tmx = q.mx
    _, tny = q.ny
    eX, eY, eM, eN = F.eye(dX), F.eye(dY), F.eye(d.M.dim), F.eye(d.N.dim)
    for i in range(d.M.dim):
        for l in range(dX):
            act[o["M"] + i, dX:, l] = F.matmul(q.f, tmx.element(eM[:, i], eX[:, l])) if tmx.dim else 0
    for i in range(d.N.dim):
        for l in range(dY):
            act[o["N"] + i, :dX, dX + l] = F.matmul(q.g, tny.element(eN[:, i], eY[:, l])) if tny.dim else 0
    mod = Module(ring.algebra, act, q.name)
    issues = module_axioms(mod)
    if issues:
        raise IncompatibleQuadruple(f"quadruple {q.name or '?'} violates: {issues[0]}")
    return mod


def module_to_quadruple(d: MoritaData, m: Module) -> tuple[Quadruple, np.ndarray]:
    """The quadruple of a ring module, plus the coordinate change m -> X ⊕ Y."""
    F = d.field
    ring = morita_ring(d)
    if not m.algebra.same_as(ring.algebra):
        raise WrongCategory("module is not over the Morita ring")
    pa, pb = m.act(ring.e_a), m.act(ring.e_b)
    Bx, By = la.column_space(F, pa), la.column_space(F, pb)
    Lx = la.left_inverse(F, Bx) if Bx.shape[1] else F.zeros((0, m.dim))
    Ly = la.left_inverse(F, By) if By.shape[1] else F.zeros((0, m.dim))
    dX, dY = Bx.shape[1], By.shape[1]

    def restrict(alg, block, L, Bm):
        if alg.dim == 0:
            return F.zeros((0, Bm.shape[1], Bm.shape[1]))
        return np.stack([F.mul(L, m.act(ring.embed(block, alg.basis_vector(k))), Bm) for k in range(alg.dim)])
    X = Module(d.A, restrict(d.A, "A", Lx, Bx), f"X({m.name})")
    Y = Module(d.B, restrict(d.B, "B", Ly, By), f"Y({m.name})")
    _, tmx = _tensor(d.M, X)
    _, tny = _tensor(d.N, Y)
    eM, eN = F.eye(d.M.dim), F.eye(d.N.dim)
    raw_f = [F.mul(Ly, m.act(ring.embed("M", eM[:, i])), Bx[:, l:l + 1]).reshape(-1)
             for i in range(d.M.dim) for l in range(dX)]
    raw_g = [F.mul(Lx, m.act(ring.embed("N", eN[:, i])), By[:, l:l + 1]).reshape(-1)
             for i in range(d.N.dim) for l in range(dY)]
    f = F.matmul(np.stack(raw_f, axis=1), tmx.section) if raw_f and tmx.dim else F.zeros((dY, tmx.dim))
    g = F.matmul(np.stack(raw_g, axis=1), tny.section) if raw_g and tny.dim else F.zeros((dX, tny.dim))
    iso = np.concatenate([F.matmul(Lx, pa), F.matmul(Ly, pb)], axis=0)
    return Quadruple(d, X, Y, f, g, m.name), iso


def _as_quadruple(d: MoritaData, arg) -> Quadruple:
    if isinstance(arg, Quadruple):
        return arg
    if isinstance(arg, Module):
        return module_to_quadruple(d, arg)[0]
    raise WrongCategory("expected a module over the Morita ring")


def map_to_quadruple_map(d: MoritaData, f: ModuleMap) -> QuadrupleMap:
    qs, isos = module_to_quadruple(d, f.source)
    qt, isot = module_to_quadruple(d, f.target)
    F = d.field
    inv = la.inverse(F, isos) if isos.size else isos
    mat = F.mul(isot, f.matrix, inv) if f.matrix.size else F.zeros((f.target.dim, f.source.dim))
    dX, dXt = qs.X.dim, qt.X.dim
    return QuadrupleMap(qs, qt, mat[:dXt, :dX], mat[dXt:, dX:])


def quadruple_map_to_module_map(d: MoritaData, h: QuadrupleMap) -> ModuleMap:
    F = d.field
    src, dst = quadruple_to_module(d, h.source), quadruple_to_module(d, h.target)
    mat = F.zeros((dst.dim, src.dim))
    dX, dXt = h.source.X.dim, h.target.X.dim
    mat[:dXt, :dX] = h.a
    mat[dXt:, dX:] = h.b
    return ModuleMap(src, dst, mat)


# ---------------------------------------------------------------------------
# adjunct maps


@dataclass(frozen=True, eq=False)
class TildeMaps:
    f_tilde: ModuleMap  # X -> Hom_B(M, Y)
    g_tilde: ModuleMap  # Y -> Hom_A(N, X)
    hom_m: HomModule
    hom_n: HomModule


def _adjunct(F, t: Tensor, h: HomModule, f: np.ndarray, dsrc: int, dbim: int) -> np.ndarray:
    """Matrix of x -> (b -> f(b ⊗ x)) in the basis of h."""
    eB, eX = F.eye(dbim), F.eye(dsrc)
    cols = []
    for l in range(dsrc):
        if t.dim:
            Fl = np.stack([F.matmul(f, t.element(eB[:, i], eX[:, l])) for i in range(dbim)], axis=1) \
                if dbim else F.zeros((f.shape[0], 0))
        else:
            Fl = F.zeros((f.shape[0], dbim))
        cols.append(h.coordinates(Fl))
    return np.stack(cols, axis=1) if cols else F.zeros((h.basis.shape[0], 0))


def tilde(q: Quadruple) -> TildeMaps:
    d = q.data
    F = d.field
    hm, hn = _hom(d.M, q.Y), _hom(d.N, q.X)
    ft = _adjunct(F, q.mx[1], hm, q.f, q.X.dim, d.M.dim)
    gt = _adjunct(F, q.ny[1], hn, q.g, q.Y.dim, d.N.dim)
    return TildeMaps(ModuleMap(q.X, hm.module, ft), ModuleMap(q.Y, hn.module, gt), hm, hn)


def untilde(F, t: Tensor, h: HomModule, ft: np.ndarray, dsrc: int, dtarget: int) -> np.ndarray:
    """Inverse of the adjunction: recover f: B⊗X -> Y from the matrix of x -> Hom(B, Y)."""
    if t.dim == 0:
        return F.zeros((dtarget, 0))
    k, dbim = h.basis.shape[0], h.basis.shape[2]
    cols = []
    for i in range(dbim):
        for l in range(dsrc):
            fx = F.reduce(np.tensordot(ft[:, l], h.basis, axes=(0, 0))) if k else F.zeros((dtarget, dbim))
            cols.append(fx[:, i])
    return F.matmul(np.stack(cols, axis=1), t.section)


# ---------------------------------------------------------------------------
# the twelve functors


FIRST = ("Q_B", "Z_B", "P_B", "T_A", "U_A", "H_A")
SECOND = {"Q_A": "Q_B", "Z_A": "Z_B", "P_A": "P_B", "T_B": "T_A", "U_B": "U_A", "H_B": "H_A"}
TAGS = FIRST + tuple(SECOND)

# which generic idempotent-recollement functor each tag realizes
GENERIC = {"Q_B": Functor.I_STAR_UPPER, "Z_B": Functor.I_LOWER, "P_B": Functor.I_SHRIEK,
           "T_A": Functor.J_LOWER_SHRIEK, "U_A": Functor.J_STAR, "H_A": Functor.J_UPPER_STAR}


@dataclass(frozen=True, eq=False)
class QuotientSide:
    """B/Imφ with its projection from B and the (B/Imφ)-B bimodule B/Imφ."""

    algebra: Algebra
    proj: np.ndarray
    lift: np.ndarray
    bimodule: Bimodule


def quotient_side(d: MoritaData) -> QuotientSide:
    def build():
        F = d.field
        B = d.B
        I = la.column_space(F, d.phi) if d.phi.size else F.zeros((B.dim, 0))
        if I.shape[1] == 0:
            return QuotientSide(B, F.eye(B.dim), F.eye(B.dim), regular_bimodule(B))
        Q, P, lift = quotient_algebra(B, I)
        Q = Algebra(Q.field, Q.struct, Q.unit, Q.idempotents, Q.labels, name=f"{B.name}/Imφ", primitive=Q.primitive)
        k = Q.dim
        left = np.stack([F.mul(P, B.left_mult(lift[:, u]), lift) for u in range(k)]) if k else F.zeros((0, 0, 0))
        right = np.stack([F.mul(P, B.right_mult(B.basis_vector(b)), lift) for b in range(B.dim)]) if k else \
            F.zeros((B.dim, 0, 0))
        return QuotientSide(Q, P, lift, Bimodule(Q, B, left, right, f"{B.name}/Imφ"))
    return _cache(d, "quotient_side", build)


def _expect_module(m, alg: Algebra, tag: str):
    if not isinstance(m, Module) or not m.algebra.same_as(alg):
        raise WrongCategory(f"{tag} expects a module over {alg.name}")


def _psi_x(d: MoritaData, X: Module, mx: Module, tmx: Tensor, ny: Module, tny: Tensor) -> np.ndarray:
    """Ψ_X : N ⊗_B (M ⊗_A X) -> X, n ⊗ m ⊗ x ↦ ψ(n ⊗ m)x."""
    F = d.field
    dX, dY, dM, dN = X.dim, mx.dim, d.M.dim, d.N.dim
    if tny.dim == 0:
        return F.zeros((dX, 0))
    eM, eN = F.eye(dM), F.eye(dN)
    S = tmx.section  # raw (m_k ⊗ x_l) coordinates of each basis vector of M⊗X
    cols = []
    for i in range(dN):
        acts = [X.act(d.psi_of(eN[:, i], eM[:, k])) for k in range(dM)]
        for j in range(dY):
            v = F.zeros(dX)
            for k in range(dM):
                v = v + F.matmul(acts[k], S[k * dX:(k + 1) * dX, j])
            cols.append(F.reduce(v))
    return F.matmul(np.stack(cols, axis=1), tny.section)


def _first(d: MoritaData, tag: str, arg):
    F = d.field
    if tag == "U_A":
        return _as_quadruple(d, arg).X
    if tag == "Q_B":
        q = _as_quadruple(d, arg)
        C, _ = cokernel(q.f_map)
        qs = quotient_side(d)
        mod, _ = _tensor(qs.bimodule, C)
        return Module(qs.algebra, mod.action, f"Q_B({q.name})")
    if tag == "P_B":
        q = _as_quadruple(d, arg)
        K, _ = kernel(tilde(q).g_tilde)
        qs = quotient_side(d)
        mod, _ = _tensor(qs.bimodule, K)
        return Module(qs.algebra, mod.action, f"P_B({q.name})")
    if tag == "Z_B":
        qs = quotient_side(d)
        _expect_module(arg, qs.algebra, tag)
        act = F.reduce(np.tensordot(qs.proj.T, arg.action, axes=(1, 0))) if qs.algebra.dim else \
            F.zeros((d.B.dim, arg.dim, arg.dim))
        Y = Module(d.B, act, arg.name)
        X = zero_module(d.A)
        return Quadruple(d, X, Y, F.zeros((Y.dim, _tensor(d.M, X)[1].dim)),
                         F.zeros((0, _tensor(d.N, Y)[1].dim)), f"Z_B({arg.name})")
    if tag == "T_A":
        _expect_module(arg, d.A, tag)
        mx, tmx = _tensor(d.M, arg)
        Y = Module(d.B, mx.action, f"M⊗{arg.name}")
        ny, tny = _tensor(d.N, Y)
        g = _psi_x(d, arg, Y, tmx, ny, tny)
        return Quadruple(d, arg, Y, F.eye(Y.dim), g, f"T_A({arg.name})")
    if tag == "H_A":
        _expect_module(arg, d.A, tag)
        h = _hom(d.N, arg)
        Y = Module(d.B, h.module.action, f"Hom(N,{arg.name})")
        mx, tmx = _tensor(d.M, arg)
        ny, tny = _tensor(d.N, Y)
        eM, eN, eX = F.eye(d.M.dim), F.eye(d.N.dim), F.eye(arg.dim)
        cols = []
        for k in range(d.M.dim):
            for l in range(arg.dim):
                Fk = np.stack([F.matmul(arg.act(d.psi_of(eN[:, i], eM[:, k])), eX[:, l]) for i in range(d.N.dim)],
                              axis=1) if d.N.dim else F.zeros((arg.dim, 0))
                cols.append(h.coordinates(Fk))
        f = F.matmul(np.stack(cols, axis=1), tmx.section) if cols and tmx.dim else F.zeros((Y.dim, tmx.dim))
        ev = [h.basis[c][:, i] for i in range(d.N.dim) for c in range(h.basis.shape[0])]
        g = F.matmul(np.stack(ev, axis=1), tny.section) if ev and tny.dim else F.zeros((arg.dim, tny.dim))
        return Quadruple(d, arg, Y, f, g, f"H_A({arg.name})")
    raise ValueError(tag)


def morita_functor(d: MoritaData, tag: str, arg):
    """Apply one of the twelve functors; quadruple-valued tags return a Quadruple."""
    if tag in FIRST:
        return _first(d, tag, arg)
    if tag not in SECOND:
        raise ValueError(f"unknown functor {tag}")
    s = swapped(d)
    if isinstance(arg, Module) and arg.algebra.same_as(morita_ring(d).algebra):
        arg = module_to_quadruple(d, arg)[0]
    if isinstance(arg, Quadruple):
        arg = arg.swapped()
    out = _first(s, SECOND[tag], arg)
    return out.swapped() if isinstance(out, Quadruple) else out


def _first_map(d: MoritaData, tag: str, h):
    F = d.field
    if tag == "U_A":
        return ModuleMap(h.source.X, h.target.X, h.a)
    if tag in ("Q_B", "P_B"):
        qs = quotient_side(d)
        src, dst = _first(d, tag, h.source), _first(d, tag, h.target)
        if tag == "Q_B":
            C, c = cokernel(h.source.f_map)
            C2, c2 = cokernel(h.target.f_map)
            s = la.right_inverse(F, c.matrix) if c.matrix.shape[0] else F.zeros((h.source.Y.dim, 0))
            ind = F.mul(c2.matrix, h.b, s) if C2.dim and C.dim else F.zeros((C2.dim, C.dim))
        else:
            C, i1 = kernel(tilde(h.source).g_tilde)
            C2, i2 = kernel(tilde(h.target).g_tilde)
            L = la.left_inverse(F, i2.matrix) if C2.dim else F.zeros((0, h.target.Y.dim))
            ind = F.mul(L, h.b, i1.matrix) if C.dim and C2.dim else F.zeros((C2.dim, C.dim))
        _, t1 = _tensor(qs.bimodule, C)
        _, t2 = _tensor(qs.bimodule, C2)
        return ModuleMap(src, dst, tensor_map(qs.bimodule, t1, t2, ind))
    if tag == "Z_B":
        src, dst = _first(d, tag, h.source), _first(d, tag, h.target)
        return QuadrupleMap(src, dst, F.zeros((0, 0)), h.matrix)
    if tag == "T_A":
        src, dst = _first(d, tag, h.source), _first(d, tag, h.target)
        _, t1 = _tensor(d.M, h.source)
        _, t2 = _tensor(d.M, h.target)
        return QuadrupleMap(src, dst, h.matrix, tensor_map(d.M, t1, t2, h.matrix))
    if tag == "H_A":
        src, dst = _first(d, tag, h.source), _first(d, tag, h.target)
        return QuadrupleMap(src, dst, h.matrix, hom_map(_hom(d.N, h.source), _hom(d.N, h.target), h.matrix))
    raise ValueError(tag)


def morita_functor_map(d: MoritaData, tag: str, h):
    """Functor on morphisms: QuadrupleMap (or ring-module map) for Λ-sourced tags, ModuleMap otherwise."""
    if isinstance(h, ModuleMap) and h.source.algebra.same_as(morita_ring(d).algebra):
        h = map_to_quadruple_map(d, h)
    if tag in FIRST:
        return _first_map(d, tag, h)
    if isinstance(h, QuadrupleMap):
        h = h.swapped()
    out = _first_map(swapped(d), SECOND[tag], h)
    return out.swapped() if isinstance(out, QuadrupleMap) else out


# ---------------------------------------------------------------------------
# transport between the side algebras and the generic recollement


def transport_module(m: Module, alg: Algebra, T: np.ndarray, name: str | None = None) -> Module:
    """Module over alg through T, where T maps alg coordinates to m.algebra coordinates."""
    F = m.field
    act = F.reduce(np.tensordot(T.T, m.action, axes=(1, 0))) if T.size else F.zeros((alg.dim, m.dim, m.dim))
    return Module(alg, act, m.name if name is None else name)


@dataclass(frozen=True, eq=False)
class SideTransport:
    """Coordinate changes between (corner, quotient) of a recollement and (A, B/Imφ)."""

    recollement: Recollement
    corner_side: Algebra
    quotient_side: Algebra
    to_corner: np.ndarray  # corner coords -> corner_side coords
    from_corner: np.ndarray  # the inverse
    to_quotient: np.ndarray  # quotient coords -> quotient_side coords
    from_quotient: np.ndarray  # the inverse

    def corner_module(self, m: Module) -> Module:
        """A module over corner_side as a module over the recollement's corner."""
        return transport_module(m, self.recollement.corner, self.to_corner)

    def corner_back(self, m: Module) -> Module:
        return transport_module(m, self.corner_side, self.from_corner)

    def quotient_module(self, m: Module) -> Module:
        return transport_module(m, self.recollement.quotient, self.to_quotient)

    def quotient_back(self, m: Module) -> Module:
        return transport_module(m, self.quotient_side, self.from_quotient)


def recollement_pair(d: MoritaData, which: int = 1) -> SideTransport:
    """The generic recollement for e_A (which=1) or e_B (which=2), with side transports."""
    def build():
        F = d.field
        ring = morita_ring(d)
        dd = d if which == 1 else swapped(d)
        e = ring.e_a if which == 1 else ring.e_b
        r = build_recollement(ring.algebra, e, name=f"{ring.algebra.name}@e_{'A' if which == 1 else 'B'}")
        corner_side = dd.A
        qs = quotient_side(dd)
        blk_corner, blk_quot = ("A", "B") if which == 1 else ("B", "A")
        o = ring.offsets
        Ec = r.embed[o[blk_corner]:o[blk_corner] + corner_side.dim, :]  # corner coords -> A coords
        to_corner = Ec
        from_corner = la.inverse(F, Ec) if Ec.size else Ec
        cols = [F.matmul(r.proj, ring.embed(blk_quot, qs.lift[:, u])) for u in range(qs.algebra.dim)]
        Tq = np.stack(cols, axis=1) if cols else F.zeros((r.quotient.dim, 0))  # quotient_side -> quotient
        from_quotient = Tq
        to_quotient = la.inverse(F, Tq) if Tq.size else Tq
        return SideTransport(r, corner_side, qs.algebra, to_corner, from_corner, to_quotient, from_quotient)
    return _cache(d, ("recollement", which), build)


# ---------------------------------------------------------------------------
# agreement with the generic recollement


def _same_map(f: ModuleMap, g: ModuleMap) -> bool:
    if f.rank != g.rank:
        return False
    for op in (kernel, cokernel):
        if not is_isomorphic(op(f)[0], op(g)[0])[0]:
            return False
    return True


def _probe_maps(u: Universe, limit: int):
    out = []
    for i, x in enumerate(u):
        for j, y in enumerate(u):
            H = hom_space(x, y)
            for b in range(min(H.shape[0], 2)):
                out.append(ModuleMap(x, y, H[b]))
                if len(out) >= limit:
                    return out
    return out


def verify_functor_agreement(d: MoritaData, bound: int = 4, probes: int = 40, universe: Universe | None = None) -> dict:
    """Compare the explicit functors with the idempotent-recollement ones on objects and probe maps."""
    ring = morita_ring(d)
    lam = universe or enumerate_indecomposables(ring.algebra, bound)
    report = {"universe": {"size": len(lam), "provenance": lam.provenance}, "first": {}, "second": {}, "ok": True}
    for which, key, tags in ((1, "first", FIRST), (2, "second", tuple(SECOND))):
        st = recollement_pair(d, which)
        r = st.recollement
        u_corner = enumerate_indecomposables(st.corner_side, bound)
        u_quot = enumerate_indecomposables(st.quotient_side, bound)
        lam_probes = _probe_maps(lam, probes)
        for tag in tags:
            base = tag if which == 1 else SECOND[tag]
            gen = GENERIC[base]
            fails, n_obj, n_map = [], 0, 0
            if base in ("U_A", "Q_B", "P_B"):
                back = st.corner_back if base == "U_A" else st.quotient_back
                for m in lam:
                    n_obj += 1
                    if not is_isomorphic(morita_functor(d, tag, m), back(r.apply(gen, m)))[0]:
                        fails.append(m.name)
                for h in lam_probes:
                    n_map += 1
                    g_map = r.apply_map(gen, h)
                    g_map = ModuleMap(back(g_map.source), back(g_map.target), g_map.matrix)
                    if not _same_map(morita_functor_map(d, tag, h), g_map):
                        fails.append(f"{h.source.name}->{h.target.name}")
            else:
                side_u = u_quot if base == "Z_B" else u_corner
                to = st.quotient_module if base == "Z_B" else st.corner_module
                for y in side_u:
                    n_obj += 1
                    mine = quadruple_to_module(d, morita_functor(d, tag, y))
                    if not is_isomorphic(mine, r.apply(gen, to(y)))[0]:
                        fails.append(y.name)
                for h in _probe_maps(side_u, probes):
                    n_map += 1
                    mine = quadruple_map_to_module_map(d, morita_functor_map(d, tag, h))
                    th = ModuleMap(to(h.source), to(h.target), h.matrix)
                    if not _same_map(mine, r.apply_map(gen, th)):
                        fails.append(f"{h.source.name}->{h.target.name}")
            report[key][tag] = {"generic": gen.value, "objects": n_obj, "maps": n_map, "ok": not fails,
                                "failures": fails[:5]}
            report["ok"] = report["ok"] and not fails
    return report


# ---------------------------------------------------------------------------
# injectivity of the pairings


def phi_is_mono(d: MoritaData) -> tuple[bool, np.ndarray]:
    K = la.kernel_basis(d.field, d.phi) if d.phi.size else d.field.zeros((d.phi.shape[1], 0))
    return K.shape[1] == 0, K


def psi_is_mono(d: MoritaData) -> tuple[bool, np.ndarray]:
    K = la.kernel_basis(d.field, d.psi) if d.psi.size else d.field.zeros((d.psi.shape[1], 0))
    return K.shape[1] == 0, K


# ---------------------------------------------------------------------------
# corollary scenarios


@dataclass
class CorollaryReport:
    which: str
    assumption: dict
    panel: dict
    characterization: dict
    gluing: object  # GluingReport
    classes: dict

    @property
    def exit_code(self) -> int:
        if not self.characterization.get("agree", True):
            return 1
        return self.gluing.exit_code

    def to_dict(self) -> dict:
        return {"corollary": self.which, "assumption": self.assumption, "panel": self.panel,
                "characterization": self.characterization, "classes": self.classes,
                "gluing": self.gluing.to_dict()}


def _transport_universe(u: Universe, fn, alg: Algebra) -> Universe:
    return Universe(alg, tuple(fn(m) for m in u), provenance=u.provenance, bound=u.bound)


def _transport_class(cls: ModuleClass, u: Universe, back) -> ModuleClass:
    pred = None
    if cls.predicate is not None:
        p = cls.predicate
        pred = lambda m: p(back(m))
    return ModuleClass(u, cls.members, cls.name, pred)


def characterized_classes(d: MoritaData, which: int, up, udp, vp, vdp, universe: Universe):
    """The mono/epi descriptions: f mono, Q(q) in U', X in U''; g~ epi, P(q) in V', X in V''."""
    dd = d if which == 1 else swapped(d)

    def quad(m):
        q = module_to_quadruple(d, m)[0]
        return q if which == 1 else q.swapped()

    def in_m(m):
        q = quad(m)
        return (q.f_map.is_mono() and udp.contains(q.X) and up.contains(_first(dd, "Q_B", q)))

    def in_n(m):
        q = quad(m)
        return (tilde(q).g_tilde.is_epi() and vdp.contains(q.X) and vp.contains(_first(dd, "P_B", q)))
    return class_from_predicate(universe, in_m, "M(char)"), class_from_predicate(universe, in_n, "N(char)")


def corollary_scenario(d: MoritaData, which: str, pair_corner, pair_quotient, budget: Budget | None = None,
                       universe: Universe | None = None, bound: int = 6) -> CorollaryReport:
    """Scenarios c46/c48 use the e_A recollement, c47/c49 the e_B one.

    pair_corner = (U'', V'') over the corner algebra (A, resp. B); pair_quotient = (U', V') over
    B/Imφ (resp. A/Imψ).  For c48/c49 these are the pairs (U, X) and (V, Y) of the two sides.
    """
    if which not in ("c46", "c47", "c48", "c49"):
        raise ValueError(f"unknown corollary {which}")
    side = 1 if which in ("c46", "c48") else 2
    dd = d if side == 1 else swapped(d)
    if which == "c46":
        ok, K = phi_is_mono(d)
        if not ok:
            raise AssumptionFailed("φ is not a monomorphism", {"kernel_dim": int(K.shape[1]), "kernel": K.T.tolist()})
        assumption = {"φ mono": True}
    elif which == "c47":
        ok, K = psi_is_mono(d)
        if not ok:
            raise AssumptionFailed("ψ is not a monomorphism", {"kernel_dim": int(K.shape[1]), "kernel": K.T.tolist()})
        assumption = {"ψ mono": True}
    elif which == "c48":
        if d.MN.dim:
            raise AssumptionFailed("M⊗_A N is not zero", {"dim": d.MN.dim})
        assumption = {"M⊗N = 0": True}
    else:
        if d.NM.dim:
            raise AssumptionFailed("N⊗_B M is not zero", {"dim": d.NM.dim})
        assumption = {"N⊗M = 0": True}
    st = recollement_pair(d, side)
    r = st.recollement
    udp, vdp = pair_corner
    up, vp = pair_quotient
    for cls, alg, label in ((udp, st.corner_side, "corner pair"), (vdp, st.corner_side, "corner pair"),
                            (up, st.quotient_side, "quotient pair"), (vp, st.quotient_side, "quotient pair")):
        if not cls.universe.algebra.same_as(alg):
            raise WrongCategory(f"{label} must live over {alg.name}")
    ring = morita_ring(d)
    lam = universe or enumerate_indecomposables(ring.algebra, bound)
    uc = _transport_universe(udp.universe, st.corner_module, r.corner)
    uq = _transport_universe(up.universe, st.quotient_module, r.quotient)
    s = GluedScenario(r, lam,
                      _transport_class(up, uq, st.quotient_back), _transport_class(vp, uq, st.quotient_back),
                      _transport_class(udp, uc, st.corner_back), _transport_class(vdp, uc, st.corner_back),
                      name=f"{d.name or 'Λ'} {which}")
    # hypothesis panel in the Morita language
    Mr = dd.M.as_right  # M as a right corner-algebra module
    Nl = dd.N.as_left
    tor = [(m.name, tor_dim(Mr, m, 1)) for m in udp.modules()]
    ext = [(m.name, ext_dim(Nl, m, 1)) for m in vdp.modules()]
    tor_ok, ext_ok = all(v == 0 for _, v in tor), all(v == 0 for _, v in ext)
    lbl = ("A", "M", "N") if side == 1 else ("B", "N", "M")
    panel = {f"Tor1^{lbl[0]}({lbl[1]}, U'')=0": {"holds": tor_ok, "witness": next((n for n, v in tor if v), None)},
             f"Ext1_{lbl[0]}({lbl[2]}, V'')=0": {"holds": ext_ok, "witness": next((n for n, v in ext if v), None)}}
    report = verify_gluing(s, budget)
    panel["agrees with L1 j_!/R1 j_* flags"] = (tor_ok == report.hypotheses["L1 j_!(U'')=0"]["holds"]
                                                and ext_ok == report.hypotheses["R1 j_*(V'')=0"]["holds"])
    Mc, Nc = characterized_classes(d, side, up, udp, vp, vdp, lam)
    Mg, Ng = report.glued.left, report.glued.right
    agree_m, agree_n = Mc.members == Mg.members, Nc.members == Ng.members
    char = {"M agrees": agree_m, "N agrees": agree_n, "agree": agree_m and agree_n}
    if not agree_m:
        char["M mismatch"] = [lam[i].name for i in sorted(Mc.members ^ Mg.members)]
    if not agree_n:
        char["N mismatch"] = [lam[i].name for i in sorted(Nc.members ^ Ng.members)]
    classes = {"M": Mg.names(), "N": Ng.names()}
    return CorollaryReport(which, assumption, panel, char, report, classes)


def triangular_dictionary(d: MoritaData, pair_a, pair_b, universe: Universe | None = None, bound: int = 5) -> dict:
    """For N = 0, compare the glued classes of the e_A recollement with the direct descriptions

    M = {X in C1, Coker f in D1, f mono} and N = {X in C2, Y in D2},
    where pair_a = (C1, C2) over A and pair_b = (D1, D2) over B.
    """
    if d.N.dim:
        raise AssumptionFailed("N is not zero", {"dim": d.N.dim})
    st = recollement_pair(d, 1)
    r = st.recollement
    c1, c2 = pair_a
    d1, d2 = pair_b
    lam = universe or enumerate_indecomposables(morita_ring(d).algebra, bound)
    uc = _transport_universe(c1.universe, st.corner_module, r.corner)
    uq = _transport_universe(d1.universe, st.quotient_module, r.quotient)
    s = GluedScenario(r, lam, _transport_class(d1, uq, st.quotient_back), _transport_class(d2, uq, st.quotient_back),
                      _transport_class(c1, uc, st.corner_back), _transport_class(c2, uc, st.corner_back),
                      name=f"{d.name} triangular")
    quad = lambda m: module_to_quadruple(d, m)[0]
    direct_m = class_from_predicate(
        lam, lambda m: (lambda q: q.f_map.is_mono() and c1.contains(q.X) and d1.contains(cokernel(q.f_map)[0]))(quad(m)),
        "M(direct)")
    direct_n = class_from_predicate(lam, lambda m: (lambda q: c2.contains(q.X) and d2.contains(q.Y))(quad(m)), "N(direct)")
    gm, gn = glued_M(s), glued_N(s)
    return {"M agrees": gm.members == direct_m.members, "N agrees": gn.members == direct_n.members,
            "M": gm.names(), "N": gn.names(), "universe": len(lam)}


# ---------------------------------------------------------------------------
# built-in instances


def from_idempotent(R: Algebra, e, name: str = "") -> MoritaData:
    """The Morita context (eRe, fRf, fRe, eRf, multiplication) for f = 1 - e; its ring is isomorphic to R."""
    from .algebra import corner_algebra
    F = R.field
    e = F.array(e)
    f = F.reduce(R.unit - e)
    A, Ea = corner_algebra(R, e)
    B, Eb = corner_algebra(R, f)
    La = la.left_inverse(F, Ea) if Ea.size else F.zeros((0, R.dim))
    Lb = la.left_inverse(F, Eb) if Eb.size else F.zeros((0, R.dim))

    def piece(x, y):
        W = F.matmul(R.left_mult(x), R.right_mult(y))
        return la.column_space(F, W) if R.dim else F.zeros((0, 0))
    Mb, Nb = piece(f, e), piece(e, f)

    def bimod(Bs, left, El, right, Er, label):
        L = la.left_inverse(F, Bs) if Bs.shape[1] else F.zeros((0, R.dim))
        la_ = np.stack([F.mul(L, R.left_mult(El[:, k]), Bs) for k in range(left.dim)]) if left.dim else \
            F.zeros((0, Bs.shape[1], Bs.shape[1]))
        ra_ = np.stack([F.mul(L, R.right_mult(Er[:, k]), Bs) for k in range(right.dim)]) if right.dim else \
            F.zeros((0, Bs.shape[1], Bs.shape[1]))
        return Bimodule(left, right, la_, ra_, label), L
    M, _ = bimod(Mb, B, Eb, A, Ea, "fRe")
    N, _ = bimod(Nb, A, Ea, B, Eb, "eRf")
    dM, dN = Mb.shape[1], Nb.shape[1]
    phi = np.zeros((dM, dN, B.dim), dtype=object if F.p is None else np.int64)
    psi = np.zeros((dN, dM, A.dim), dtype=object if F.p is None else np.int64)
    for i in range(dM):
        for j in range(dN):
            phi[i, j] = F.matmul(Lb, R.mul(Mb[:, i], Nb[:, j]))
            psi[j, i] = F.matmul(La, R.mul(Nb[:, j], Mb[:, i]))
    return MoritaData.from_bilinear(A, B, M, N, phi if dM * dN else None, psi if dM * dN else None,
                                    name=name or f"{R.name} split")


def scalar_context(F, c: int = 0, name: str = "") -> MoritaData:
    """A = B = M = N = k with φ(m⊗n) = c·mn = ψ(n⊗m)."""
    from .algebra import field_algebra
    k = field_algebra(F)
    one = F.eye(1)[None]
    M = Bimodule(k, k, one, one.copy(), "k")
    N = Bimodule(k, k, one.copy(), one.copy(), "k")
    val = F.array([[[c]]])
    return MoritaData.from_bilinear(k, k, M, N, val, val.copy(), name=name or f"k-context(c={c})")


def zero_context(A: Algebra, B: Algebra, name: str = "") -> MoritaData:
    """M = N = 0: the ring is the product A × B."""
    F = A.field
    M = Bimodule(B, A, F.zeros((B.dim, 0, 0)), F.zeros((A.dim, 0, 0)), "0")
    N = Bimodule(A, B, F.zeros((A.dim, 0, 0)), F.zeros((B.dim, 0, 0)), "0")
    return MoritaData.from_bilinear(A, B, M, N, name=name or f"{A.name}×{B.name}")


def triangular_context(A: Algebra, B: Algebra, U: Bimodule, name: str = "") -> MoritaData:
    """N = 0 and U a B-A bimodule: the lower triangular ring (A 0; U B)."""
    F = A.field
    N = Bimodule(A, B, F.zeros((A.dim, 0, 0)), F.zeros((B.dim, 0, 0)), "0")
    return MoritaData.from_bilinear(A, B, U, N, name=name or "triangular")


def _path_k12(F):
    from .algebra import Quiver, path_algebra
    return path_algebra(Quiver((1, 2), [(1, 2, "a")]), F=F, name="k(1→2)")


def example_data(F=None) -> MoritaData:
    """A = B = k(1→2), M = N = Ae₂ ⊗_k e₁A, φ = ψ = 0."""
    from .exactla import Field
    F = F or Field(2)
    A = _path_k12(F)
    e1, e2 = A.idempotents
    Ae2 = A.right_mult(e2)
    Ae2 = Ae2[:, la.independent_columns(F, Ae2)]
    e1A = A.left_mult(e1)
    e1A = e1A[:, la.independent_columns(F, e1A)]
    L = la.left_inverse(F, Ae2)
    R = la.left_inverse(F, e1A)
    left = np.stack([F.mul(L, A.left_mult(A.basis_vector(k)), Ae2) for k in range(A.dim)])
    right = np.stack([F.mul(R, A.right_mult(A.basis_vector(k)), e1A) for k in range(A.dim)])
    dl, dr = Ae2.shape[1], e1A.shape[1]
    la_ = np.stack([la.kron(F, left[k], F.eye(dr)) for k in range(A.dim)])
    ra_ = np.stack([la.kron(F, F.eye(dl), right[k]) for k in range(A.dim)])
    M = Bimodule(A, A, la_, ra_, "Ae₂⊗e₁A")
    N = Bimodule(A, A, la_.copy(), ra_.copy(), "Ae₂⊗e₁A")
    return MoritaData.from_bilinear(A, A, M, N, name="Λ")


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_dict(self):
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ExampleReport:
    checks: list[Check]
    pairs: dict

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        if self.ok:
            return 0
        inconclusive = any(c.detail == "inconclusive" for c in self.checks if not c.passed)
        return 2 if inconclusive else 1

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "pairs": self.pairs, "ok": self.ok}


def worked_example(bound: int = 6, budget: Budget | None = None, F=None) -> ExampleReport:
    d = example_data(F)
    A = d.A
    Fd = d.field
    e1, e2 = A.idempotents
    checks = [Check("dim A = 3", A.dim == 3, A.dim)]
    peirce = lambda x, y: la.rank(Fd, Fd.matmul(A.left_mult(x), A.right_mult(y)))
    checks.append(Check("e1 A e2 = 0", peirce(e1, e2) == 0, peirce(e1, e2)))
    checks.append(Check("dim e2 A e1 = 1", peirce(e2, e1) == 1, peirce(e2, e1)))
    checks.append(Check("M⊗_A N = 0", d.MN.dim == 0, d.MN.dim))
    checks.append(Check("N⊗_A M = 0", d.NM.dim == 0, d.NM.dim))
    checks.append(Check("M projective on both sides",
                        is_projective(d.M.as_left) and is_projective(d.M.as_right), None))
    ring = morita_ring(d)
    checks.append(Check("dim Λ = 8", ring.algebra.dim == 8, ring.algebra.dim))
    st1, st2 = recollement_pair(d, 1), recollement_pair(d, 2)
    for label, st in (("first", st1), ("second", st2)):
        cp = condition_p(st.recollement)
        checks.append(Check(f"condition (P), {label} recollement", cp.holds and cp.consistent,
                            {"canonical_kernel_dim": int(cp.kernel.shape[1])}))
    checks.append(Check("i^! of the first recollement is not exact",
                        not functor_exact(st1.recollement, Functor.I_SHRIEK), None))
    lam = enumerate_indecomposables(ring.algebra, bound)
    missing = ensure_projectives_injectives(lam)
    checks.append(Check(f"universe (dim ≤ {bound}) contains projectives and injectives", not missing,
                        {"size": len(lam), "missing": missing}))
    uA = enumerate_indecomposables(A, 3)
    PA, allA = projective_class(uA), everything(uA)
    budget = budget or Budget()

    def quad(m):
        return module_to_quadruple(d, m)[0]
    M1 = class_from_predicate(lam, lambda m: (lambda q: q.f_map.is_mono() and is_projective(q.X) and
                                              is_projective(cokernel(q.f_map)[0]))(quad(m)), "M1")
    N1 = class_from_predicate(lam, lambda m: tilde(quad(m)).g_tilde.is_epi(), "N1")
    M2 = class_from_predicate(lam, lambda m: (lambda q: q.g_map.is_mono() and is_projective(q.Y) and
                                              is_projective(cokernel(q.g_map)[0]))(quad(m)), "M2")
    N2 = class_from_predicate(lam, lambda m: tilde(quad(m)).f_tilde.is_epi(), "N2")
    pairs = {}
    for label, (Mc, Nc), which in (("(M1, N1)", (M1, N1), "c48"), ("(M2, N2)", (M2, N2), "c49")):
        rep = analyze_pair(Mc, Nc, budget)
        ch = rep.complete_hereditary
        detail = True if ch else ("inconclusive" if ch is None else rep.certificates[:3])
        checks.append(Check(f"{label} is a complete hereditary cotorsion pair", ch is True, detail))
        cor = corollary_scenario(d, which, (PA, allA), (PA, allA), budget, universe=lam)
        same = cor.gluing.glued.left.members == Mc.members and cor.gluing.glued.right.members == Nc.members
        checks.append(Check(f"{label} equals the glued pair of the {which} recollement", same, cor.classes))
        checks.append(Check(f"{which} gluing report has no failures", cor.exit_code == 0,
                            {k: v["status"] for k, v in cor.gluing.conclusions.items()}))
        pairs[label] = {"left": Mc.names(), "right": Nc.names(), "report": rep.to_dict()}
    return ExampleReport(checks, pairs)
