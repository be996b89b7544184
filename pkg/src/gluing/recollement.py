"""The recollement of module categories induced by an idempotent e of Λ.

Left side: modules over Λ/ΛeΛ.  Right side: modules over eΛe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import exactla as la
from .algebra import Algebra, corner_algebra, quotient_algebra, two_sided_ideal_basis
from .homological import (HomModule, Tensor, ext_dim, hom_functor, hom_map, tensor_map, tensor_module, tor_dim)
from .modules import (Bimodule, Module, ModuleError, ModuleMap, _cache, injectives, is_isomorphic, kernel,
                      cokernel, projectives, regular_module, simples)


class WrongCategory(ModuleError):
    pass


class Functor(str, Enum):
    I_STAR_UPPER = "i^*"
    I_LOWER = "i_*"
    I_SHRIEK = "i^!"
    J_LOWER_SHRIEK = "j_!"
    J_STAR = "j^*"
    J_UPPER_STAR = "j_*"


class Derived(str, Enum):
    L1_I_STAR = "L1 i^*"
    R1_I_SHRIEK = "R1 i^!"
    L1_J_SHRIEK = "L1 j_!"
    R1_J_STAR = "R1 j_*"


SOURCE_SIDE = {
    Functor.I_STAR_UPPER: "mid", Functor.I_LOWER: "left", Functor.I_SHRIEK: "mid",
    Functor.J_LOWER_SHRIEK: "right", Functor.J_STAR: "mid", Functor.J_UPPER_STAR: "right",
    Derived.L1_I_STAR: "mid", Derived.R1_I_SHRIEK: "mid",
    Derived.L1_J_SHRIEK: "right", Derived.R1_J_STAR: "right",
}


def _sub_bimodule(alg: Algebra, K: np.ndarray, left_vecs, right_vecs, left: Algebra, right: Algebra, name):
    """Subspace K of Λ with left multiplication by left_vecs and right by right_vecs."""
    F = alg.field
    L = la.left_inverse(F, K)
    d = K.shape[1]
    la_ = np.stack([F.mul(L, alg.left_mult(v), K) for v in left_vecs]) if len(left_vecs) else F.zeros((0, d, d))
    ra_ = np.stack([F.mul(L, alg.right_mult(v), K) for v in right_vecs]) if len(right_vecs) else F.zeros((0, d, d))
    return Bimodule(left, right, la_, ra_, name)


@dataclass(frozen=True, eq=False)
class Recollement:
    algebra: Algebra
    e: np.ndarray
    corner: Algebra
    embed: np.ndarray  # corner coordinates -> Λ coordinates
    quotient: Algebra
    proj: np.ndarray  # Λ -> Λ/ΛeΛ
    lift: np.ndarray
    lambda_e: Bimodule  # Λ-eΛe
    e_lambda: Bimodule  # eΛe-Λ
    quot_left: Bimodule  # (Λ/ΛeΛ)-Λ, for i^*
    quot_right: Bimodule  # Λ-(Λ/ΛeΛ), for i^!
    name: str = ""
    checks: dict = field(default_factory=dict, repr=False)

    def side_algebra(self, side: str) -> Algebra:
        return {"left": self.quotient, "mid": self.algebra, "right": self.corner}[side]

    def _expect(self, tag, m: Module):
        alg = self.side_algebra(SOURCE_SIDE[tag])
        if not m.algebra.same_as(alg):
            raise WrongCategory(f"{tag.value} expects a module over {alg.name}, got one over {m.algebra.name}")

    # functors on objects --------------------------------------------------
    def apply(self, tag: Functor, m: Module) -> Module:
        self._expect(tag, m)
        return self._applied(tag, m)[0]

    def _applied(self, tag: Functor, m: Module):
        key = ("apply", id(self), tag)
        return _cache(m, key, lambda: self._compute(tag, m) + (self,))

    def _compute(self, tag: Functor, m: Module):
        F = self.algebra.field
        if tag is Functor.I_STAR_UPPER:
            mod, t = tensor_module(self.quot_left, m)
            return Module(self.quotient, mod.action, f"i^*({m.name})"), t
        if tag is Functor.I_LOWER:
            act = F.reduce(np.tensordot(self.proj.T, m.action, axes=(1, 0))) if self.quotient.dim else \
                F.zeros((self.algebra.dim, m.dim, m.dim))
            return Module(self.algebra, act, f"i_*({m.name})"), None
        if tag is Functor.I_SHRIEK:
            h = hom_functor(self.quot_right, m)
            return Module(self.quotient, h.module.action, f"i^!({m.name})"), h
        if tag is Functor.J_LOWER_SHRIEK:
            mod, t = tensor_module(self.lambda_e, m)
            return Module(self.algebra, mod.action, f"j_!({m.name})"), t
        if tag is Functor.J_STAR:
            B = la.column_space(F, m.act(self.e))
            L = la.left_inverse(F, B)
            k = B.shape[1]
            act = np.stack([F.mul(L, m.act(self.embed[:, c]), B) for c in range(self.corner.dim)]) \
                if self.corner.dim else F.zeros((0, k, k))
            return Module(self.corner, act, f"j^*({m.name})"), (B, L)
        if tag is Functor.J_UPPER_STAR:
            h = hom_functor(self.e_lambda, m)
            return Module(self.algebra, h.module.action, f"j_*({m.name})"), h
        raise ValueError(tag)

    def apply_map(self, tag: Functor, f: ModuleMap) -> ModuleMap:
        self._expect(tag, f.source)
        self._expect(tag, f.target)
        F = self.algebra.field
        src, ds, _ = self._applied(tag, f.source)
        dst, dd, _ = self._applied(tag, f.target)
        if tag in (Functor.I_STAR_UPPER, Functor.J_LOWER_SHRIEK):
            bim = self.quot_left if tag is Functor.I_STAR_UPPER else self.lambda_e
            mat = tensor_map(bim, ds, dd, f.matrix)
        elif tag is Functor.I_LOWER:
            mat = f.matrix
        elif tag in (Functor.I_SHRIEK, Functor.J_UPPER_STAR):
            mat = hom_map(ds, dd, f.matrix)
        else:
            (Bs, _), (_, Ld) = ds, dd
            mat = F.mul(Ld, f.matrix, Bs)
        return ModuleMap(src, dst, mat)

    def composite(self, tags, m: Module) -> Module:
        """Apply tags right to left: composite([j^*, j_!], Y) = j^* j_! Y."""
        for t in reversed(list(tags)):
            m = self.apply(t, m)
        return m

    # units and counits ----------------------------------------------------
    def counit_eps(self, m: Module) -> ModuleMap:
        """ε_M : j_! j^* M -> M, λe ⊗ em ↦ λem."""
        self._expect(Functor.J_STAR, m)
        F = self.algebra.field
        jm = self.apply(Functor.J_STAR, m)
        B, _ = self._applied(Functor.J_STAR, m)[1]
        jj = self.apply(Functor.J_LOWER_SHRIEK, jm)
        t: Tensor = self._applied(Functor.J_LOWER_SHRIEK, jm)[1]
        K = self.lambda_e_basis
        cols = []
        for a in range(K.shape[1]):
            Ma = F.matmul(m.act(K[:, a]), B)
            for b in range(B.shape[1]):
                cols.append(Ma[:, b])
        raw = np.stack(cols, axis=1) if cols else F.zeros((m.dim, 0))
        return ModuleMap(jj, m, F.matmul(raw, t.section) if jj.dim else F.zeros((m.dim, 0)))

    def unit_delta(self, m: Module) -> ModuleMap:
        """δ_M : M -> j_* j^* M, m ↦ (x ↦ xm)."""
        self._expect(Functor.J_STAR, m)
        F = self.algebra.field
        jm = self.apply(Functor.J_STAR, m)
        _, L = self._applied(Functor.J_STAR, m)[1]
        target = self.apply(Functor.J_UPPER_STAR, jm)
        h: HomModule = self._applied(Functor.J_UPPER_STAR, jm)[1]
        K = self.e_lambda_basis
        acts = [F.matmul(L, m.act(K[:, c])) for c in range(K.shape[1])]  # each: eM-coords x M
        cols = []
        for i in range(m.dim):
            Fi = np.stack([a[:, i] for a in acts], axis=1) if acts else F.zeros((jm.dim, 0))
            cols.append(h.coordinates(Fi))
        mat = np.stack(cols, axis=1) if cols else F.zeros((target.dim, 0))
        return ModuleMap(m, target, mat)

    def unit_eta(self, m: Module) -> ModuleMap:
        """M -> i_* i^* M, m ↦ 1 ⊗ m."""
        F = self.algebra.field
        im = self.apply(Functor.I_STAR_UPPER, m)
        t: Tensor = self._applied(Functor.I_STAR_UPPER, m)[1]
        target = self.apply(Functor.I_LOWER, im)
        one = F.matmul(self.proj, self.algebra.unit) if self.quotient.dim else F.zeros(0)
        cols = [t.element(one, F.eye(m.dim)[:, i]) for i in range(m.dim)]
        mat = np.stack(cols, axis=1) if cols else F.zeros((target.dim, 0))
        return ModuleMap(m, target, mat)

    def counit_ev(self, m: Module) -> ModuleMap:
        """i_* i^! M -> M, F ↦ F(1)."""
        F = self.algebra.field
        sm = self.apply(Functor.I_SHRIEK, m)
        h: HomModule = self._applied(Functor.I_SHRIEK, m)[1]
        source = self.apply(Functor.I_LOWER, sm)
        one = F.matmul(self.proj, self.algebra.unit) if self.quotient.dim else F.zeros(0)
        cols = [F.matmul(h.basis[c], one) for c in range(h.basis.shape[0])]
        mat = np.stack(cols, axis=1) if cols else F.zeros((m.dim, 0))
        return ModuleMap(source, m, mat)

    @property
    def lambda_e_basis(self) -> np.ndarray:
        return self.checks["lambda_e_basis"]

    @property
    def e_lambda_basis(self) -> np.ndarray:
        return self.checks["e_lambda_basis"]

    # derived functors -----------------------------------------------------
    def derived_dim(self, tag: Derived, m: Module) -> int:
        self._expect(tag, m)
        if tag is Derived.R1_I_SHRIEK:
            return ext_dim(self.quot_right.as_left, m, 1)
        if tag is Derived.L1_I_STAR:
            return tor_dim(self.quot_left.as_right, m, 1)
        if tag is Derived.L1_J_SHRIEK:
            return tor_dim(self.lambda_e.as_right, m, 1)
        if tag is Derived.R1_J_STAR:
            return ext_dim(self.e_lambda.as_left, m, 1)
        raise ValueError(tag)

    def derived_vanishes(self, tag: Derived, m: Module) -> tuple[bool, int]:
        d = self.derived_dim(tag, m)
        return d == 0, d


def build_recollement(alg: Algebra, e, name: str = "") -> Recollement:
    F = alg.field
    e = F.array(e)
    corner, E = corner_algebra(alg, e)
    I = two_sided_ideal_basis(alg, e)
    quot, P, lift = quotient_algebra(alg, I)
    Kl = alg.right_mult(e)
    Kl = Kl[:, la.independent_columns(F, Kl)]  # Λe
    Kr = alg.left_mult(e)
    Kr = Kr[:, la.independent_columns(F, Kr)]  # eΛ
    basis_vecs = [alg.basis_vector(k) for k in range(alg.dim)]
    corner_vecs = [E[:, c] for c in range(corner.dim)]
    quot_vecs = [lift[:, u] for u in range(quot.dim)]
    lambda_e = _sub_bimodule(alg, Kl, basis_vecs, corner_vecs, alg, corner, "Λe") if Kl.shape[1] else \
        Bimodule(alg, corner, F.zeros((alg.dim, 0, 0)), F.zeros((corner.dim, 0, 0)), "Λe")
    e_lambda = _sub_bimodule(alg, Kr, corner_vecs, basis_vecs, corner, alg, "eΛ") if Kr.shape[1] else \
        Bimodule(corner, alg, F.zeros((corner.dim, 0, 0)), F.zeros((alg.dim, 0, 0)), "eΛ")
    q = quot.dim
    if q:
        ql = np.stack([F.mul(P, alg.left_mult(v), lift) for v in quot_vecs])
        qr = np.stack([F.mul(P, alg.right_mult(v), lift) for v in basis_vecs])
        quot_left = Bimodule(quot, alg, ql, qr, "Λ/ΛeΛ")
        ql2 = np.stack([F.mul(P, alg.left_mult(v), lift) for v in basis_vecs])
        qr2 = np.stack([F.mul(P, alg.right_mult(v), lift) for v in quot_vecs])
        quot_right = Bimodule(alg, quot, ql2, qr2, "Λ/ΛeΛ")
    else:
        quot_left = Bimodule(quot, alg, F.zeros((0, 0, 0)), F.zeros((alg.dim, 0, 0)), "Λ/ΛeΛ")
        quot_right = Bimodule(alg, quot, F.zeros((alg.dim, 0, 0)), F.zeros((0, 0, 0)), "Λ/ΛeΛ")
    r = Recollement(alg, e, corner, E, quot, P, lift, lambda_e, e_lambda, quot_left, quot_right,
                    name=name or f"{alg.name}@e",
                    checks={"lambda_e_basis": Kl, "e_lambda_basis": Kr})
    _construction_checks(r)
    return r


def _construction_checks(r: Recollement):
    """j^* j_! ≅ id and j^* j_* ≅ id on the regular corner module."""
    if r.corner.dim == 0:
        r.checks["jj_identity"] = True
        return
    C = regular_module(r.corner)
    ok1 = is_isomorphic(r.composite([Functor.J_STAR, Functor.J_LOWER_SHRIEK], C), C)[0]
    ok2 = is_isomorphic(r.composite([Functor.J_STAR, Functor.J_UPPER_STAR], C), C)[0]
    r.checks["jj_identity"] = ok1 and ok2
    if not (ok1 and ok2):
        raise ModuleError("recollement sanity check failed: j^*j_! or j^*j_* is not the identity")


# ---------------------------------------------------------------------------
# condition (P), canonical sequences, exactness


def canonical_map(r: Recollement) -> np.ndarray:
    """Matrix of Λe ⊗_{eΛe} eΛ -> Λ."""
    from .homological import tensor_over
    F = r.algebra.field
    t = tensor_over(r.lambda_e, r.e_lambda)
    Kl, Kr = r.lambda_e_basis, r.e_lambda_basis
    cols = [r.algebra.mul(Kl[:, a], Kr[:, b]) for a in range(Kl.shape[1]) for b in range(Kr.shape[1])]
    raw = np.stack(cols, axis=1) if cols else F.zeros((r.algebra.dim, 0))
    return F.matmul(raw, t.section) if t.dim else F.zeros((r.algebra.dim, 0))


@dataclass
class ConditionP:
    holds: bool
    kernel: np.ndarray
    per_projective: list[bool]
    consistent: bool


def condition_p(r: Recollement) -> ConditionP:
    F = r.algebra.field
    cm = canonical_map(r)
    K = la.kernel_basis(F, cm)
    holds = K.shape[1] == 0
    per = [r.counit_eps(P).is_mono() for P in projectives(r.algebra)]
    return ConditionP(holds, K, per, holds == all(per))


def counit_unit_criteria(r: Recollement) -> tuple[bool, bool]:
    """(ε_P mono for all indecomposable projectives, δ_I epi for all indecomposable injectives)."""
    eps = all(r.counit_eps(P).is_mono() for P in projectives(r.algebra))
    dlt = all(r.unit_delta(I).is_epi() for I in injectives(r.algebra))
    return eps, dlt


@dataclass
class SequenceReport:
    first_exact: bool
    second_exact: bool
    m_prime: Module
    n_prime: Module
    details: dict


def canonical_sequences(r: Recollement, m: Module) -> SequenceReport:
    """0 -> i_*M' -> j_!j^*M -> M -> i_*i^*M -> 0 and 0 -> i_*i^!M -> M -> j_*j^*M -> i_*N' -> 0."""
    F = r.algebra.field
    eps = r.counit_eps(m)
    eta = r.unit_eta(m)
    ev = r.counit_ev(m)
    dlt = r.unit_delta(m)
    mp, _ = kernel(eps)
    npr, _ = cokernel(dlt)
    d = {}
    d["eta_eps_zero"] = F.is_zero(F.matmul(eta.matrix, eps.matrix))
    d["eta_epi"] = eta.is_epi()
    d["exact_at_M_first"] = eps.rank + eta.rank == m.dim and d["eta_eps_zero"]
    d["m_prime_in_image_of_i"] = F.is_zero(mp.act(r.e))
    d["dlt_ev_zero"] = F.is_zero(F.matmul(dlt.matrix, ev.matrix))
    d["ev_mono"] = ev.is_mono()
    d["exact_at_M_second"] = ev.rank + dlt.rank == m.dim and d["dlt_ev_zero"]
    d["n_prime_in_image_of_i"] = F.is_zero(npr.act(r.e))
    first = d["eta_epi"] and d["exact_at_M_first"] and d["m_prime_in_image_of_i"]
    second = d["ev_mono"] and d["exact_at_M_second"] and d["n_prime_in_image_of_i"]
    return SequenceReport(first, second, mp, npr, d)


def functor_exact(r: Recollement, which: Functor) -> bool:
    """i^* (resp. i^!) is exact iff its first derived functor kills every simple."""
    tag = {Functor.I_STAR_UPPER: Derived.L1_I_STAR, Functor.I_SHRIEK: Derived.R1_I_SHRIEK}[which]
    return all(r.derived_dim(tag, S) == 0 for S in simples(r.algebra))
