"""Resolutions, Ext and Tor, tensor and hom functors, extensions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algebra import Algebra
from .modules import (Bimodule, Module, ModuleError, ModuleMap, ShortExactSequence, _cache, cover, direct_sum,
                      dual_module, hom_space, kernel, map_from_projectives, projective_basis, quotient)


@dataclass(frozen=True, eq=False)
class ProjectiveResolution:
    target: Module
    terms: tuple  # P_0 .. P_n
    vertices: tuple  # vertex list of each term
    differentials: tuple  # d_1 .. d_n with d_k: P_k -> P_{k-1}
    augmentation: ModuleMap
    complete: bool  # the last syzygy is zero

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term(self, k: int) -> tuple[int, ...]:
        return self.vertices[k] if k < len(self.vertices) else ()

    def coefficients(self, k: int) -> list[list[np.ndarray]]:
        """lam[t][s]: component in the s-th summand of P_{k-1} of d_k(generator t)."""
        return _cache(self, ("lam", k), lambda: _coefficients(self, k))

    def syzygy(self, k: int) -> tuple[Module, ModuleMap]:
        """Ω^k with its inclusion into P_{k-1} (k >= 1)."""
        d = self.augmentation if k == 1 else self.differentials[k - 2]
        return kernel(d)


def _offsets(alg: Algebra, verts) -> list[int]:
    out, off = [], 0
    for i in verts:
        out.append(off)
        off += projective_basis(alg, i).shape[1]
    return out


def _coefficients(res: ProjectiveResolution, k: int):
    alg = res.target.algebra
    F = alg.field
    if k < 1 or k > res.length:
        return []
    d = res.differentials[k - 1].matrix
    src, dst = res.vertices[k], res.vertices[k - 1]
    so, do = _offsets(alg, src), _offsets(alg, dst)
    out = []
    for t in range(len(src)):
        col = d[:, so[t]]
        row = []
        for s, i in enumerate(dst):
            K = projective_basis(alg, i)
            row.append(F.matmul(K, col[do[s]:do[s] + K.shape[1]]))
        out.append(row)
    return out


def projective_resolution(m: Module, length: int) -> ProjectiveResolution:
    def build():
        c = cover(m)
        terms, verts, diffs = [c.source], [c.vertices], []
        aug = c.map
        prev = aug
        complete = False
        for _ in range(length + 1):
            K, inc = kernel(prev)
            if K.dim == 0:
                complete = True
                break
            if len(terms) > length:
                break
            ck = cover(K)
            d = inc @ ck.map
            terms.append(ck.source)
            verts.append(ck.vertices)
            diffs.append(ModuleMap(ck.source, terms[-2], d.matrix))
            prev = diffs[-1]
        return ProjectiveResolution(m, tuple(terms), tuple(verts), tuple(diffs), aug, complete)
    return _cache(m, ("res", length), build)


def projective_dimension(m: Module, bound: int = 8) -> int | None:
    res = projective_resolution(m, bound)
    return res.length if res.complete else None


# ---------------------------------------------------------------------------
# Ext through a projective resolution of the first argument


def _cochain_matrix(res: ProjectiveResolution, n: Module, k: int) -> np.ndarray:
    """d*_k : Hom(P_{k-1}, N) -> Hom(P_k, N) in block coordinates."""
    F = n.field
    src = res.term(k - 1)
    dst = res.term(k)
    rows = sum(n.block_basis(j).shape[1] for j in dst)
    cols = sum(n.block_basis(i).shape[1] for i in src)
    out = F.zeros((rows, cols))
    if rows == 0 or cols == 0:
        return out
    lam = res.coefficients(k)
    r0 = 0
    for t, j in enumerate(dst):
        Bt = n.block_basis(j)
        Lt = la.left_inverse(F, Bt)
        c0 = 0
        for s, i in enumerate(src):
            Bs = n.block_basis(i)
            out[r0:r0 + Bt.shape[1], c0:c0 + Bs.shape[1]] = F.mul(Lt, n.act(lam[t][s]), Bs)
            c0 += Bs.shape[1]
        r0 += Bt.shape[1]
    return out


def _check_same(a: Algebra, b: Algebra):
    if not a.same_as(b):
        raise ModuleError("modules live over different algebras")


def ext_dim(m: Module, n: Module, degree: int) -> int:
    _check_same(m.algebra, n.algebra)
    F = m.field
    res = projective_resolution(m, degree + 1)
    h = sum(n.block_basis(i).shape[1] for i in res.term(degree))
    if h == 0:
        return 0
    r_out = la.rank(F, _cochain_matrix(res, n, degree + 1)) if degree + 1 <= res.length else 0
    r_in = la.rank(F, _cochain_matrix(res, n, degree)) if 1 <= degree <= res.length else 0
    return h - r_out - r_in


def ext_dim_injective(m: Module, n: Module, degree: int) -> int:
    """Ext via an injective coresolution of n, obtained by dualising over the opposite algebra."""
    _check_same(m.algebra, n.algebra)
    F = m.field
    res = projective_resolution(dual_module(n), degree + 1)
    inj = [dual_module(P) for P in res.terms]
    # coaugmentation N -> D(Q_0) is the transpose of the augmentation
    cob = [d.matrix.T for d in res.differentials]  # D(Q_{k-1}) -> D(Q_k)

    def hom_basis(k):
        if k >= len(inj):
            return F.zeros((0, 0, m.dim))
        return hom_space(m, _retarget(inj[k], m.algebra))

    def rank_of(k):
        if k >= len(cob) or k + 1 >= len(inj):
            return 0
        H = hom_basis(k)
        if H.shape[0] == 0:
            return 0
        imgs = np.stack([F.matmul(cob[k], H[b]).reshape(-1) for b in range(H.shape[0])], axis=1)
        return la.rank(F, imgs)

    dim_k = hom_basis(degree).shape[0]
    return dim_k - rank_of(degree) - (rank_of(degree - 1) if degree >= 1 else 0)


def _retarget(m: Module, alg: Algebra) -> Module:
    return m if m.algebra is alg else Module(alg, m.action, m.name)


# ---------------------------------------------------------------------------
# Tor


def _tensor_chain_matrix(res: ProjectiveResolution, x: Module, k: int) -> np.ndarray:
    """∂_k : X ⊗ P_k -> X ⊗ P_{k-1} in block coordinates, x acting by the same vectors."""
    F = x.field
    src = res.term(k)
    dst = res.term(k - 1)
    rows = sum(x.block_basis(i).shape[1] for i in dst)
    cols = sum(x.block_basis(j).shape[1] for j in src)
    out = F.zeros((rows, cols))
    if rows == 0 or cols == 0:
        return out
    lam = res.coefficients(k)
    c0 = 0
    for t, j in enumerate(src):
        Bt = x.block_basis(j)
        r0 = 0
        for s, i in enumerate(dst):
            Bs = x.block_basis(i)
            Ls = la.left_inverse(F, Bs)
            out[r0:r0 + Bs.shape[1], c0:c0 + Bt.shape[1]] = F.mul(Ls, x.act(lam[t][s]), Bt)
            r0 += Bs.shape[1]
        c0 += Bt.shape[1]
    return out


def _tor_from(res: ProjectiveResolution, other: Module, degree: int) -> int:
    F = other.field
    c = sum(other.block_basis(i).shape[1] for i in res.term(degree))
    if c == 0:
        return 0
    r_in = la.rank(F, _tensor_chain_matrix(res, other, degree)) if 1 <= degree <= res.length else 0
    r_out = la.rank(F, _tensor_chain_matrix(res, other, degree + 1)) if degree + 1 <= res.length else 0
    return c - r_in - r_out


def tor_dim(x: Module, y: Module, degree: int) -> int:
    """Tor_degree(x, y) with x a right module (a module over y.algebra.opposite)."""
    _check_same(x.algebra, y.algebra.opposite)
    return _tor_from(projective_resolution(y, degree + 1), x, degree)


def tor_dim_left(x: Module, y: Module, degree: int) -> int:
    """The same Tor computed from a resolution of the right-module argument."""
    _check_same(x.algebra, y.algebra.opposite)
    return _tor_from(projective_resolution(x, degree + 1), y, degree)


# ---------------------------------------------------------------------------
# Ext classes and extensions


def _reduce_mod(F, basis: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Canonical representative of v modulo the column span of basis."""
    if basis.shape[1] == 0:
        return v.copy()
    R, piv = la.rref(F, basis.T)
    out = v.copy()
    for r, pc in enumerate(piv):
        if out[pc] != 0:
            out = F.reduce(out - out[pc] * R[r])
    return out


@dataclass(frozen=True, eq=False)
class ExtClass:
    source: Module  # the module that is resolved (M in Ext^1(M, N))
    target: Module
    degree: int
    cocycle: np.ndarray  # block coordinates in Hom(P_degree, target), canonical

    @property
    def field(self):
        return self.source.field

    def is_zero(self) -> bool:
        return not np.any(self.cocycle != 0)

    def __eq__(self, other):
        return (isinstance(other, ExtClass) and self.source is other.source and self.target is other.target
                and self.degree == other.degree and not np.any(self.cocycle != other.cocycle))

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.degree, tuple(int(x) for x in self.cocycle)
                     if self.field.is_finite else None))

    def as_map(self) -> ModuleMap:
        res = projective_resolution(self.source, self.degree + 1)
        return _cocycle_map(res, self.target, self.degree, self.cocycle)


def _cocycle_map(res, n: Module, k: int, vec) -> ModuleMap:
    F = n.field
    verts = res.term(k)
    cols, off = [], 0
    for j in verts:
        B = n.block_basis(j)
        cols.append(F.matmul(B, vec[off:off + B.shape[1]]))
        off += B.shape[1]
    Y = np.stack(cols, axis=1) if cols else F.zeros((n.dim, 0))
    f = map_from_projectives(n, verts, Y)
    return ModuleMap(res.terms[k], n, f.matrix)


def ext_group(m: Module, n: Module, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """(cocycles, coboundaries) as column bases in block coordinates."""
    F = m.field
    res = projective_resolution(m, degree + 1)
    h = sum(n.block_basis(i).shape[1] for i in res.term(degree))
    if degree + 1 <= res.length:
        Z = la.kernel_basis(F, _cochain_matrix(res, n, degree + 1))
    else:
        Z = F.eye(h)
    if 1 <= degree <= res.length:
        B = la.column_space(F, _cochain_matrix(res, n, degree))
    else:
        B = F.zeros((h, 0))
    return Z, B


def ext_class(m: Module, n: Module, degree: int, cocycle) -> ExtClass:
    F = m.field
    Z, B = ext_group(m, n, degree)
    v = F.array(cocycle)
    if not la.in_span(F, Z, v):
        raise ValueError("vector is not a cocycle")
    return ExtClass(m, n, degree, _reduce_mod(F, B, v))


def ext_basis(m: Module, n: Module, degree: int) -> list[ExtClass]:
    """Canonical classes whose images form a basis of Ext^degree(m, n)."""
    F = m.field
    Z, B = ext_group(m, n, degree)
    out, span = [], B
    for c in range(Z.shape[1]):
        v = Z[:, c]
        if not la.in_span(F, span, v):
            out.append(ExtClass(m, n, degree, _reduce_mod(F, B, v)))
            span = np.concatenate([span, v.reshape(-1, 1)], axis=1)
    return out


def ext1_to_ses(c: ExtClass) -> ShortExactSequence:
    """0 -> target -> E -> source -> 0 as the pushout of the first syzygy sequence."""
    if c.degree != 1:
        raise ValueError("only degree-one classes give short exact sequences")
    F = c.field
    m, n = c.source, c.target
    res = projective_resolution(m, 2)
    K0, iota = kernel(res.augmentation)
    zeta = c.as_map()  # P_1 -> N
    if res.length >= 1:
        pi1 = la.solve_matrix(F, iota.matrix, res.differentials[0].matrix)  # P_1 -> K0
        zeta_prime = F.matmul(zeta.matrix, la.right_inverse(F, pi1))
    else:
        zeta_prime = F.zeros((n.dim, K0.dim))
    Z = ModuleMap(K0, n, zeta_prime)
    E, (_, into_E_from_N), q = _pushout(iota, Z)
    # E -> M induced by the augmentation and zero on N
    S = la.right_inverse(F, q)
    both = np.concatenate([res.augmentation.matrix, F.zeros((m.dim, n.dim))], axis=1)
    g = ModuleMap(E, m, F.matmul(both, S))
    return ShortExactSequence(into_E_from_N, g)


def connecting_class(ses: ShortExactSequence) -> ExtClass:
    """Class of 0 -> N -> E -> M -> 0 in Ext^1(M, N)."""
    F = ses.middle.field
    f, g = ses.inclusion, ses.projection
    m, n = ses.right, ses.left
    res = projective_resolution(m, 2)
    h = lift_through_epi(res.augmentation, g, res.vertices[0])
    K0, iota = kernel(res.augmentation)
    hk = F.matmul(h.matrix, iota.matrix)  # lands in im f
    zeta_prime = la.solve_matrix(F, f.matrix, hk)
    if res.length >= 1:
        pi1 = la.solve_matrix(F, iota.matrix, res.differentials[0].matrix)
        zeta = F.matmul(zeta_prime, pi1)
    else:
        zeta = F.zeros((n.dim, 0))
    # block coordinates: value at each generator of P_1
    verts = res.term(1)
    offs = _offsets(m.algebra, verts)
    coords = []
    for t, j in enumerate(verts):
        B = n.block_basis(j)
        coords.append(la.solve(F, B, zeta[:, offs[t]]))
    vec = np.concatenate(coords) if coords else F.zeros(0)
    return ext_class(m, n, 1, vec)


def lift_through_epi(p: ModuleMap, g: ModuleMap, verts) -> ModuleMap:
    """h with g h = p, for p out of the projective sum on ``verts``."""
    F = p.field
    E = g.source
    offs = _offsets(p.source.algebra, verts)
    cols = []
    for s, i in enumerate(verts):
        B = E.block_basis(i)
        y = la.solve(F, F.matmul(g.matrix, B), p.matrix[:, offs[s]])
        cols.append(F.matmul(B, y))
    X = np.stack(cols, axis=1) if cols else F.zeros((E.dim, 0))
    h = map_from_projectives(E, verts, X)
    return ModuleMap(p.source, E, h.matrix)


# ---------------------------------------------------------------------------
# pullback and pushout


def pullback(f: ModuleMap, g: ModuleMap) -> tuple[Module, tuple[ModuleMap, ModuleMap]]:
    """Fibre product of f: A -> C and g: B -> C."""
    F = f.field
    if f.target is not g.target and not (f.target.dim == g.target.dim):
        raise ModuleError("pullback needs a common target")
    A, B = f.source, g.source
    S, incs, projs = direct_sum([A, B])
    diff = ModuleMap(S, f.target, F.reduce(np.concatenate([f.matrix, -g.matrix], axis=1)))
    P, inc = kernel(diff)
    return P, (projs[0] @ inc, projs[1] @ inc)


def pushout(f: ModuleMap, g: ModuleMap) -> tuple[Module, tuple[ModuleMap, ModuleMap]]:
    """Amalgamated sum of f: C -> A and g: C -> B."""
    Q, legs, _ = _pushout(f, g)
    return Q, legs


def _pushout(f: ModuleMap, g: ModuleMap):
    F = f.field
    A, B = f.target, g.target
    S, incs, projs = direct_sum([A, B])
    rel = F.reduce(np.concatenate([f.matrix, -g.matrix], axis=0))
    Q, q = quotient(S, la.column_space(F, rel))
    return Q, (q @ incs[0], q @ incs[1]), q.matrix


# ---------------------------------------------------------------------------
# tensor and hom functors


@dataclass(frozen=True, eq=False)
class Tensor:
    """X ⊗_R Y with the quotient map from the vector-space tensor product."""

    bimodule: Bimodule
    q: np.ndarray  # (dim, dX*dY)
    dx: int
    dy: int

    def element(self, x, y) -> np.ndarray:
        F = self.bimodule.field
        return F.matmul(self.q, la.kron(F, np.asarray(x).reshape(-1, 1), np.asarray(y).reshape(-1, 1)).reshape(-1))

    @cached_property
    def section(self) -> np.ndarray:
        return la.right_inverse(self.bimodule.field, self.q)

    @property
    def dim(self) -> int:
        return self.q.shape[0]


def tensor_over(x: Bimodule, y: Bimodule) -> Tensor:
    """X ⊗_R Y for X an S-R bimodule and Y an R-T bimodule."""
    F = x.field
    if not x.right.same_as(y.left):
        raise ModuleError("tensor product over mismatched algebras")
    R = x.right
    dx, dy = x.dim, y.dim
    rels = []
    for r in R.generators:
        Rx = x.right_action[r]
        Ly = y.left_action[r]
        rels.append(F.reduce(la.kron(F, Rx, F.eye(dy)) - la.kron(F, F.eye(dx), Ly)))
    if rels and dx * dy:
        Q = la.left_annihilator(F, np.concatenate(rels, axis=1))
    else:
        Q = F.eye(dx * dy)
    d = Q.shape[0]
    S = la.right_inverse(F, Q) if d else F.zeros((dx * dy, 0))
    left = np.stack([F.mul(Q, la.kron(F, x.left_action[a], F.eye(dy)), S) for a in range(x.left.dim)]) \
        if x.left.dim else F.zeros((0, d, d))
    right = np.stack([F.mul(Q, la.kron(F, F.eye(dx), y.right_action[t]), S) for t in range(y.right.dim)]) \
        if y.right.dim else F.zeros((0, d, d))
    if d == 0:
        left = F.zeros((x.left.dim, 0, 0))
        right = F.zeros((y.right.dim, 0, 0))
    b = Bimodule(x.left, y.right, left, right, f"{x.name}⊗{y.name}")
    t = Tensor(b, Q, dx, dy)
    t.__dict__["section"] = S
    return t


def tensor_module(x: Bimodule, y: Module) -> tuple[Module, Tensor]:
    """X ⊗_R Y as a left module over X's left algebra."""
    t = tensor_over(x, Bimodule.from_left_module(y))
    return t.bimodule.as_left, t


def tensor_map(x: Bimodule, t_src: Tensor, t_dst: Tensor, f: np.ndarray) -> np.ndarray:
    """Matrix of 1_X ⊗ f between two tensor products with the same left factor."""
    F = x.field
    return F.mul(t_dst.q, la.kron(F, F.eye(x.dim), f), t_src.section)


def tensor_dim(x: Module, y: Module) -> int:
    """dim X ⊗_Λ Y for a right module x (over Λ^op) and a left module y."""
    _check_same(x.algebra, y.algebra.opposite)
    return tensor_module(Bimodule.from_right_module(x), y)[0].dim


@dataclass(frozen=True, eq=False)
class HomModule:
    module: Module
    basis: np.ndarray  # (k, dY, dB) maps B -> Y

    def coordinates(self, f: np.ndarray) -> np.ndarray:
        F = self.module.field
        k = self.basis.shape[0]
        if k == 0:
            return F.zeros(0)
        return la.solve(F, self.basis.reshape(k, -1).T, f.reshape(-1))


def hom_functor(b: Bimodule, y: Module) -> HomModule:
    """Hom_L(B, Y) as a left module over B's right algebra: (r.F)(x) = F(x.r)."""
    F = y.field
    _check_same(b.left, y.algebra)
    H = hom_space(b.as_left, _retarget(y, b.left))
    k = H.shape[0]
    R = b.right
    if k == 0:
        return HomModule(Module(R, F.zeros((R.dim, 0, 0)), f"Hom({b.name},{y.name})"), H)
    M = H.reshape(k, -1).T
    act = np.stack([la.solve_matrix(F, M, np.stack([F.matmul(H[c], b.right_action[r]).reshape(-1)
                                                    for c in range(k)], axis=1)) for r in range(R.dim)])
    return HomModule(Module(R, act, f"Hom({b.name},{y.name})"), H)


def hom_map(src: HomModule, dst: HomModule, f: np.ndarray) -> np.ndarray:
    """Matrix of Hom(B, f): Hom(B, Y) -> Hom(B, Y')."""
    F = src.module.field
    k = src.basis.shape[0]
    cols = [dst.coordinates(F.matmul(f, src.basis[c])) for c in range(k)]
    return np.stack(cols, axis=1) if cols else F.zeros((dst.basis.shape[0], 0))


def regular_bimodule(alg: Algebra) -> Bimodule:
    return Bimodule(alg, alg, alg.regular_action, alg.right_regular_action, alg.name)
