"""Classes of modules relative to a finite universe, cotorsion pairs, and gluing.

A ModuleClass stands for the additive closure of a set of universe members.
Every verdict here is relative to that universe: "for every X" means for
every member of it.  Classes built from Ext conditions additionally carry an
intrinsic predicate so that modules outside the universe can still be tested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import exactla as la
from .enumeration import BudgetExceeded, Universe, UniverseMiss
from .homological import ext_dim
from .modules import (Module, ModuleMap, ShortExactSequence, _cache, cokernel, direct_sum, hom_space,
                      injective_envelope, injectives, is_injective, is_projective, kernel, projective_cover,
                      projectives, quotient)
from .recollement import Derived, Functor, Recollement, WrongCategory, condition_p


@dataclass
class Budget:
    dim_cap: int = 40  # total dimension of a candidate approximation
    mult_cap: int = 8  # copies of one member inside it
    probe_cap: int = 24  # random hom combinations per member pair in closure probes
    seed: int = 0


# ---------------------------------------------------------------------------
# classes


@dataclass(frozen=True, eq=False)
class ModuleClass:
    universe: Universe
    members: frozenset
    name: str = ""
    predicate: Callable[[Module], bool] | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(i) for i in self.members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        return isinstance(other, ModuleClass) and other.universe is self.universe and other.members == self.members

    def __hash__(self):
        return hash((id(self.universe), self.members))

    def contains(self, m: Module) -> bool:
        if m.dim == 0:
            return True
        if self.predicate is not None:
            return bool(self.predicate(m))
        return set(self.universe.decompose(m)) <= self.members

    __contains__ = contains

    def modules(self) -> list[Module]:
        return [self.universe[i] for i in sorted(self.members)]

    def names(self) -> list[str]:
        return [self.universe[i].name for i in sorted(self.members)]


def everything(u: Universe, name: str = "all") -> ModuleClass:
    return ModuleClass(u, range(len(u)), name, lambda m: True)


def nothing(u: Universe, name: str = "0") -> ModuleClass:
    return ModuleClass(u, (), name, lambda m: m.dim == 0)


def projective_class(u: Universe) -> ModuleClass:
    return ModuleClass(u, [i for i, m in enumerate(u) if is_projective(m)], "proj", is_projective)


def injective_class(u: Universe) -> ModuleClass:
    return ModuleClass(u, [i for i, m in enumerate(u) if is_injective(m)], "inj", is_injective)


def class_from_names(u: Universe, names, name: str = "") -> ModuleClass:
    lookup = {m.name: i for i, m in enumerate(u)}
    missing = [n for n in names if n not in lookup]
    if missing:
        raise KeyError(f"not universe members: {missing}")
    return ModuleClass(u, [lookup[n] for n in names], name)


def class_from_predicate(u: Universe, pred: Callable[[Module], bool], name: str = "") -> ModuleClass:
    return ModuleClass(u, [i for i, m in enumerate(u) if pred(m)], name, pred)


# ---------------------------------------------------------------------------
# Ext tables and perpendicular classes


def ext_entry(u: Universe, i: int, j: int, degree: int = 1) -> int:
    return _cache(u, ("ext", i, j, degree), lambda: ext_dim(u[i], u[j], degree))


def ext_table(u: Universe, degree: int = 1) -> np.ndarray:
    n = len(u)
    return np.array([[ext_entry(u, i, j, degree) for j in range(n)] for i in range(n)], dtype=np.int64).reshape(n, n)


def _uhom(u: Universe, i: int, j: int) -> np.ndarray:
    return _cache(u, ("hom", i, j), lambda: hom_space(u[i], u[j]))


def right_perp(c: ModuleClass) -> ModuleClass:
    u = c.universe
    srcs = c.modules()
    mem = [j for j in range(len(u)) if all(ext_entry(u, i, j) == 0 for i in c.members)]
    return ModuleClass(u, mem, f"({c.name})^⊥", lambda m: all(ext_dim(s, m, 1) == 0 for s in srcs))


def left_perp(d: ModuleClass) -> ModuleClass:
    u = d.universe
    tgts = d.modules()
    mem = [i for i in range(len(u)) if all(ext_entry(u, i, j) == 0 for j in d.members)]
    return ModuleClass(u, mem, f"^⊥({d.name})", lambda m: all(ext_dim(m, t, 1) == 0 for t in tgts))


# ---------------------------------------------------------------------------
# reports


@dataclass
class HeredityReport:
    holds: bool  # Ext^2(c, d) = 0
    ext2_witness: dict | None
    kernel_closed: bool
    cokernel_closed: bool
    kernel_probes: int
    cokernel_probes: int
    closure_witness: dict | None = None

    def __bool__(self):
        return self.holds

    @property
    def consistent(self) -> bool:
        return self.holds == self.kernel_closed == self.cokernel_closed

    def to_dict(self) -> dict:
        return {"holds": self.holds, "ext2_witness": self.ext2_witness, "kernel_closed": self.kernel_closed,
                "cokernel_closed": self.cokernel_closed, "kernel_probes": self.kernel_probes,
                "cokernel_probes": self.cokernel_probes, "closure_witness": self.closure_witness,
                "consistent": self.consistent}


@dataclass
class Witness:
    """0 -> K -> C -> X -> 0 (precover) or 0 -> X -> D -> Q -> 0 (preenvelope)."""

    kind: str
    module: Module
    sequence: ShortExactSequence
    middle: list[str]
    end: dict[str, int]

    def verify(self, c: ModuleClass, d: ModuleClass) -> bool:
        s = self.sequence
        if not s.check():
            return False
        if self.kind == "precover":
            return s.projection.target.dim == self.module.dim and c.contains(s.middle) and d.contains(s.left)
        return s.inclusion.source.dim == self.module.dim and d.contains(s.middle) and c.contains(s.right)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "module": self.module.name, "middle": self.middle, "end": self.end}


@dataclass
class CompletenessReport:
    status: bool | str  # True or "inconclusive"
    precovers: dict[str, Witness]
    preenvelopes: dict[str, Witness]
    gaps: list[dict]
    precover_all: bool
    preenvelope_all: bool

    @property
    def co_occur(self) -> bool:
        return self.precover_all == self.preenvelope_all

    def to_dict(self) -> dict:
        return {"status": self.status, "precover_all": self.precover_all, "preenvelope_all": self.preenvelope_all,
                "precovers": {k: w.to_dict() for k, w in self.precovers.items()},
                "preenvelopes": {k: w.to_dict() for k, w in self.preenvelopes.items()},
                "gaps": self.gaps}


@dataclass
class CotorsionPairReport:
    left: ModuleClass
    right: ModuleClass
    is_pair: bool
    certificates: list[dict]
    heredity: HeredityReport | None = None
    completeness: CompletenessReport | None = None

    @property
    def is_hereditary(self) -> bool | None:
        return None if self.heredity is None else self.heredity.holds

    @property
    def is_complete(self) -> bool | str | None:
        return None if self.completeness is None else self.completeness.status

    @property
    def complete_hereditary(self) -> bool | None:
        """True, False, or None when completeness is inconclusive."""
        if not self.is_pair or not self.is_hereditary:
            return False
        return True if self.is_complete is True else None

    def to_dict(self) -> dict:
        u = self.left.universe
        return {"universe": {"algebra": u.algebra.name, "size": len(u), "provenance": u.provenance},
                "left": self.left.names(), "right": self.right.names(), "is_pair": self.is_pair,
                "certificates": self.certificates,
                "heredity": None if self.heredity is None else self.heredity.to_dict(),
                "completeness": None if self.completeness is None else self.completeness.to_dict()}


def _same_universe(c: ModuleClass, d: ModuleClass):
    if c.universe is not d.universe:
        raise ValueError("classes live in different universes")


def is_cotorsion_pair(c: ModuleClass, d: ModuleClass) -> CotorsionPairReport:
    _same_universe(c, d)
    u = c.universe
    rp, lp = right_perp(c), left_perp(d)
    certs: list[dict] = []
    seen = set()
    for i in sorted(c.members):
        for j in sorted(d.members):
            e = ext_entry(u, i, j)
            if e and (i, j) not in seen:
                seen.add((i, j))
                certs.append({"kind": "ext1_nonzero", "left": u[i].name, "right": u[j].name, "dim": e})
    for j in sorted(rp.members - d.members):
        certs.append({"kind": "perp_mismatch", "side": "right", "module": u[j].name})
    for i in sorted(lp.members - c.members):
        certs.append({"kind": "perp_mismatch", "side": "left", "module": u[i].name})
    ok = rp.members == d.members and lp.members == c.members
    return CotorsionPairReport(c, d, ok, certs)


# ---------------------------------------------------------------------------
# heredity


def _probe_maps(F, H: np.ndarray, rng, cap: int):
    k = H.shape[0]
    for b in range(k):
        yield H[b]
    if k > 1:
        yield F.reduce(H.sum(axis=0))
        for _ in range(cap):
            coef = F.random((k,), rng)
            yield F.reduce(np.tensordot(coef, H, axes=(0, 0)))


def _member_or_perp(cls: ModuleClass, fallback: ModuleClass, m: Module) -> bool:
    try:
        return cls.contains(m)
    except UniverseMiss:
        return fallback.contains(m)


def is_hereditary(c: ModuleClass, d: ModuleClass, budget: Budget | None = None) -> HeredityReport:
    """Ext^2 criterion, cross-checked by kernel-of-epi and cokernel-of-mono closure probes.

    Probes use sequences whose outer terms are class members; projective covers and
    injective envelopes are included so that a nonzero Ext^2 is always detectable.
    """
    _same_universe(c, d)
    budget = budget or Budget()
    u = c.universe
    F = u.algebra.field
    rng = np.random.default_rng(budget.seed)
    ext2 = None
    for i in sorted(c.members):
        for j in sorted(d.members):
            e = ext_entry(u, i, j, 2)
            if e:
                ext2 = {"left": u[i].name, "right": u[j].name, "dim": e}
                break
        if ext2:
            break
    lp_d, rp_c = left_perp(d), right_perp(c)
    kprobes = cprobes = 0
    kclosed = cclosed = True
    witness = None
    for z in sorted(c.members):
        Z = u[z]
        epis = []
        p = projective_cover(Z)
        if c.contains(p.source):
            epis.append(("cover", p))
        for y in sorted(c.members):
            for h in _probe_maps(F, _uhom(u, y, z), rng, budget.probe_cap):
                f = ModuleMap(u[y], Z, h)
                if f.is_epi():
                    epis.append((u[y].name, f))
        for src, f in epis:
            kprobes += 1
            K, _ = kernel(f)
            if not _member_or_perp(c, lp_d, K):
                kclosed = False
                witness = witness or {"kind": "kernel_outside_left", "epi": f"{src} -> {Z.name}", "kernel_dim": K.dim}
                break
        if not kclosed:
            break
    for x in sorted(d.members):
        X = u[x]
        monos = []
        env = injective_envelope(X)
        if d.contains(env.target):
            monos.append(("envelope", env))
        for y in sorted(d.members):
            for h in _probe_maps(F, _uhom(u, x, y), rng, budget.probe_cap):
                f = ModuleMap(X, u[y], h)
                if f.is_mono():
                    monos.append((u[y].name, f))
        for tgt, f in monos:
            cprobes += 1
            Q, _ = cokernel(f)
            if not _member_or_perp(d, rp_c, Q):
                cclosed = False
                witness = witness or {"kind": "cokernel_outside_right", "mono": f"{X.name} -> {tgt}",
                                      "cokernel_dim": Q.dim}
                break
        if not cclosed:
            break
    return HeredityReport(ext2 is None, ext2, kclosed, cclosed, kprobes, cprobes, witness)


# ---------------------------------------------------------------------------
# completeness: approximations by sums of class members


class _Gap(Exception):
    pass


def _approximation(x: Module, cls: ModuleClass, budget: Budget, side: str) -> list[tuple[int, np.ndarray]]:
    """Summands (member index, map) of a right (side="pre") or left ("env") add(cls)-approximation of x."""
    u = cls.universe
    F = x.field
    mem = sorted(cls.members)
    hx = {i: (hom_space(u[i], x) if side == "pre" else hom_space(x, u[i])) for i in mem}

    def span(i, pieces):
        cols = []
        for j, phi in pieces:
            if side == "pre":
                for h in _uhom(u, i, j):
                    cols.append(F.matmul(phi, h).reshape(-1))
            else:
                for h in _uhom(u, j, i):
                    cols.append(F.matmul(h, phi).reshape(-1))
        size = hx[i].shape[1] * hx[i].shape[2]
        return np.stack(cols, axis=1) if cols else F.zeros((size, 0))

    def onto(i, pieces):
        k = hx[i].shape[0]
        return k == 0 or la.rank(F, span(i, pieces)) == k

    pieces: list[tuple[int, np.ndarray]] = []
    changed = True
    while changed:
        changed = False
        for i in mem:
            H = hx[i]
            if H.shape[0] == 0:
                continue
            S = span(i, pieces)
            for b in range(H.shape[0]):
                v = H[b].reshape(-1)
                if S.shape[1] and la.in_span(F, S, v):
                    continue
                pieces.append((i, H[b]))
                if sum(u[j].dim for j, _ in pieces) > budget.dim_cap:
                    raise _Gap(f"approximation exceeds dimension cap {budget.dim_cap}")
                if sum(1 for j, _ in pieces if j == i) > budget.mult_cap:
                    raise _Gap(f"approximation needs more than {budget.mult_cap} copies of {u[i].name}")
                S = span(i, pieces)
                changed = True
    k = len(pieces) - 1
    while k >= 0:
        trial = pieces[:k] + pieces[k + 1:]
        if all(onto(i, trial) for i in mem):
            pieces = trial
        k -= 1
    return pieces


def _decomposition_names(u: Universe, m: Module) -> dict[str, int]:
    return {u[i].name: k for i, k in sorted(u.decompose(m).items())}


def special_precover(x: Module, c: ModuleClass, d: ModuleClass, budget: Budget | None = None) -> Witness:
    """0 -> K -> C -> x -> 0 with C in add(c) and K in d; raises _Gap when the search fails."""
    budget = budget or Budget()
    u = c.universe
    alg = u.algebra
    F = alg.field
    pieces = _approximation(x, c, budget, "pre")
    S, _, _ = direct_sum([u[i] for i, _ in pieces], alg)
    mat = np.concatenate([phi for _, phi in pieces], axis=1) if pieces else F.zeros((x.dim, 0))
    p = ModuleMap(S, x, mat)
    if not p.is_epi():
        raise _Gap("approximation is not onto; the left class misses a projective")
    K, inc = kernel(p)
    try:
        if not d.contains(K):
            raise _Gap("approximation kernel is outside the right class")
        end = _decomposition_names(u, K) if K.dim else {}
    except UniverseMiss as exc:
        raise _Gap(str(exc))
    return Witness("precover", x, ShortExactSequence(inc, p), [u[i].name for i, _ in pieces], end)


def special_preenvelope(x: Module, c: ModuleClass, d: ModuleClass, budget: Budget | None = None) -> Witness:
    """0 -> x -> D -> Q -> 0 with D in add(d) and Q in c; raises _Gap when the search fails."""
    budget = budget or Budget()
    u = d.universe
    alg = u.algebra
    F = alg.field
    pieces = _approximation(x, d, budget, "env")
    T, _, _ = direct_sum([u[i] for i, _ in pieces], alg)
    mat = np.concatenate([psi for _, psi in pieces], axis=0) if pieces else F.zeros((0, x.dim))
    j = ModuleMap(x, T, mat)
    if not j.is_mono():
        raise _Gap("approximation is not injective; the right class misses an injective")
    Q, q = cokernel(j)
    try:
        if not c.contains(Q):
            raise _Gap("approximation cokernel is outside the left class")
        end = _decomposition_names(u, Q) if Q.dim else {}
    except UniverseMiss as exc:
        raise _Gap(str(exc))
    return Witness("preenvelope", x, ShortExactSequence(j, q), [u[i].name for i, _ in pieces], end)


def is_complete(c: ModuleClass, d: ModuleClass, budget: Budget | None = None) -> CompletenessReport:
    """Search both witness kinds for every universe member; one side succeeding everywhere suffices."""
    _same_universe(c, d)
    budget = budget or Budget()
    u = c.universe
    pre, env, gaps = {}, {}, []
    for x in u:
        try:
            pre[x.name] = special_precover(x, c, d, budget)
        except _Gap as g:
            gaps.append({"module": x.name, "side": "precover", "note": str(g)})
        try:
            env[x.name] = special_preenvelope(x, c, d, budget)
        except _Gap as g:
            gaps.append({"module": x.name, "side": "preenvelope", "note": str(g)})
    pa, ea = len(pre) == len(u), len(env) == len(u)
    return CompletenessReport(True if (pa or ea) else "inconclusive", pre, env, gaps, pa, ea)


def analyze_pair(c: ModuleClass, d: ModuleClass, budget: Budget | None = None) -> CotorsionPairReport:
    rep = is_cotorsion_pair(c, d)
    if rep.is_pair:
        rep.heredity = is_hereditary(c, d, budget)
        rep.completeness = is_complete(c, d, budget)
    return rep


def cotorsion_pair_catalog(u: Universe, cap: int = 1 << 16) -> list[tuple[frozenset, frozenset]]:
    """Every universe-relative cotorsion pair, as (^⊥(S^⊥), S^⊥) over all member subsets S."""
    n = len(u)
    if 2 ** n > cap:
        raise BudgetExceeded(f"{2 ** n} subsets exceed the catalog cap {cap}")
    E = ext_table(u, 1) != 0
    out = set()
    for bits in range(2 ** n):
        S = [i for i in range(n) if bits >> i & 1]
        D = frozenset(j for j in range(n) if not any(E[i, j] for i in S))
        C = frozenset(i for i in range(n) if not any(E[i, j] for j in D))
        out.add((C, D))
    return sorted(out, key=lambda p: (sorted(p[0]), sorted(p[1])))


# ---------------------------------------------------------------------------
# witnesses transported along short exact sequences


def precover_from_middle(ses: ShortExactSequence, w: Witness) -> Witness:
    """Given 0 -> A1 -> A2 -> A3 -> 0 with A1 right-orthogonal and a precover of A2, one of A3."""
    rho = w.sequence.projection
    sigma = ses.projection @ rho
    K, inc = kernel(sigma)
    return Witness("precover", ses.right, ShortExactSequence(inc, sigma), list(w.middle), {})


def preenvelope_from_middle(ses: ShortExactSequence, w: Witness) -> Witness:
    """Given 0 -> A1 -> A2 -> A3 -> 0 with A1 in the right class and a preenvelope of A2, one of A3."""
    F = ses.middle.field
    i = w.sequence.inclusion
    D2 = i.target
    composite = i @ ses.inclusion
    H, q = quotient(D2, la.column_space(F, composite.matrix))
    g_sec = la.right_inverse(F, ses.projection.matrix)
    tau = ModuleMap(ses.right, H, F.mul(q.matrix, i.matrix, g_sec))
    Q, p = cokernel(tau)
    return Witness("preenvelope", ses.right, ShortExactSequence(tau, p), list(w.middle), {})


# ---------------------------------------------------------------------------
# gluing along a recollement


@dataclass(frozen=True, eq=False)
class GluedScenario:
    """Side classes over Λ/ΛeΛ (primed) and eΛe (double-primed), plus a universe over Λ."""

    recollement: Recollement
    universe: Universe
    u_prime: ModuleClass
    v_prime: ModuleClass
    u_dprime: ModuleClass
    v_dprime: ModuleClass
    name: str = ""

    def __post_init__(self):
        r = self.recollement
        checks = [(self.universe, r.algebra, "Λ universe"),
                  (self.u_prime.universe, r.quotient, "U'"), (self.v_prime.universe, r.quotient, "V'"),
                  (self.u_dprime.universe, r.corner, "U''"), (self.v_dprime.universe, r.corner, "V''")]
        for uni, alg, label in checks:
            if not uni.algebra.same_as(alg):
                raise WrongCategory(f"{label} lives over {uni.algebra.name}, expected {alg.name}")


def glued_n_class(r: Recollement, u: Universe, vp: ModuleClass, vdp: ModuleClass, name: str = "N") -> ModuleClass:
    """{X : i^!X in vp, j^*X in vdp, R1 i^!(X) = 0}."""
    def pred(m: Module) -> bool:
        if r.derived_dim(Derived.R1_I_SHRIEK, m):
            return False
        return vp.contains(r.apply(Functor.I_SHRIEK, m)) and vdp.contains(r.apply(Functor.J_STAR, m))
    return class_from_predicate(u, pred, name)


def glued_m_class(r: Recollement, u: Universe, up: ModuleClass, udp: ModuleClass, name: str = "M") -> ModuleClass:
    """{X : i^*X in up, j^*X in udp, L1 i^*(X) = 0}."""
    def pred(m: Module) -> bool:
        if r.derived_dim(Derived.L1_I_STAR, m):
            return False
        return up.contains(r.apply(Functor.I_STAR_UPPER, m)) and udp.contains(r.apply(Functor.J_STAR, m))
    return class_from_predicate(u, pred, name)


def glued_N(s: GluedScenario) -> ModuleClass:
    return glued_n_class(s.recollement, s.universe, s.v_prime, s.v_dprime, f"N[{s.v_prime.name},{s.v_dprime.name}]")


def glued_M(s: GluedScenario) -> ModuleClass:
    return glued_m_class(s.recollement, s.universe, s.u_prime, s.u_dprime, f"M[{s.u_prime.name},{s.u_dprime.name}]")


def _image_class(s: GluedScenario, parts, name: str) -> ModuleClass:
    r, u = s.recollement, s.universe
    mem: set[int] = set()
    for tag, cls in parts:
        for m in cls.modules():
            img = r.apply(tag, m)
            if img.dim:
                mem |= set(u.decompose(img))
    return ModuleClass(u, mem, name)


def auxiliary_classes(s: GluedScenario) -> tuple[ModuleClass, ModuleClass]:
    """(i_*U' ∪ j_!U'', i_*V' ∪ j_*V''); UniverseMiss if an image leaves the universe."""
    c = _image_class(s, [(Functor.I_LOWER, s.u_prime), (Functor.J_LOWER_SHRIEK, s.u_dprime)], "C")
    d = _image_class(s, [(Functor.I_LOWER, s.v_prime), (Functor.J_UPPER_STAR, s.v_dprime)], "D")
    return c, d


def _vanishing(r: Recollement, tag: Derived, cls: ModuleClass) -> dict:
    for m in cls.modules():
        k = r.derived_dim(tag, m)
        if k:
            return {"holds": False, "witness": m.name, "dim": k}
    return {"holds": True}


def _contains_all(cls: ModuleClass, mods) -> dict:
    for m in mods:
        try:
            ok = cls.contains(m)
        except UniverseMiss:
            return {"holds": None, "witness": m.name, "note": "summand outside universe"}
        if not ok:
            return {"holds": False, "witness": m.name}
    return {"holds": True}


def check_perp_identities(s: GluedScenario) -> dict:
    r = s.recollement
    out = {}
    g1 = {"L1 j_!(U'')=0": _vanishing(r, Derived.L1_J_SHRIEK, s.u_dprime)["holds"],
          "projectives ⊆ U'": _contains_all(s.u_prime, projectives(r.quotient))["holds"] is True}
    g2 = {"R1 j_*(V'')=0": _vanishing(r, Derived.R1_J_STAR, s.v_dprime)["holds"],
          "injectives ⊆ V'": _contains_all(s.v_prime, injectives(r.quotient))["holds"] is True}
    need = all(g1.values()) or all(g2.values())
    try:
        aux = auxiliary_classes(s) if need else None
    except UniverseMiss as exc:
        return {"clause_1": {"status": "inconclusive", "note": str(exc)},
                "clause_2": {"status": "inconclusive", "note": str(exc)}}
    if all(g1.values()):
        lhs = right_perp(aux[0])
        rhs = glued_n_class(r, s.universe, right_perp(s.u_prime), right_perp(s.u_dprime))
        out["clause_1"] = _equality_entry(g1, lhs, rhs)
    else:
        out["clause_1"] = {"status": "not-asserted", "gates": g1}
    if all(g2.values()):
        lhs = left_perp(aux[1])
        rhs = glued_m_class(r, s.universe, left_perp(s.v_prime), left_perp(s.v_dprime))
        out["clause_2"] = _equality_entry(g2, lhs, rhs)
    else:
        out["clause_2"] = {"status": "not-asserted", "gates": g2}
    return out


def _equality_entry(gates, lhs: ModuleClass, rhs: ModuleClass) -> dict:
    u = lhs.universe
    diff = sorted(lhs.members ^ rhs.members)
    entry = {"status": "verified" if not diff else "failed", "gates": gates, "size": len(lhs)}
    if diff:
        entry["certificate"] = {"kind": "set_mismatch", "modules": [u[i].name for i in diff]}
    return entry


# ---------------------------------------------------------------------------
# master report


VERIFIED, FAILED, NOT_ASSERTED, INCONCLUSIVE = "verified", "failed", "not-asserted", "inconclusive"


@dataclass
class GluingReport:
    scenario: str
    universe: dict
    hypotheses: dict
    sides: dict
    glued: CotorsionPairReport
    conclusions: dict
    notes: list[str]

    @property
    def exit_code(self) -> int:
        states = [c["status"] for c in self.conclusions.values()]
        if FAILED in states:
            return 1
        if INCONCLUSIVE in states:
            return 2
        return 0

    def to_dict(self) -> dict:
        return {"scenario": self.scenario, "universe": self.universe, "hypotheses": self.hypotheses,
                "sides": {k: v.to_dict() for k, v in self.sides.items()},
                "glued": self.glued.to_dict(), "conclusions": self.conclusions, "notes": self.notes}


def _gate(*flags) -> bool | None:
    if any(f is False for f in flags):
        return False
    if any(f is None for f in flags):
        return None
    return True


def _conclude(gate, fn) -> dict:
    if gate is False:
        return {"status": NOT_ASSERTED}
    if gate is None:
        return {"status": INCONCLUSIVE, "note": "a hypothesis depends on an inconclusive completeness search"}
    return fn()


def _tristate(flag) -> bool | None:
    if flag is True:
        return True
    if flag is False:
        return False
    return None


def verify_gluing(s: GluedScenario, budget: Budget | None = None) -> GluingReport:
    budget = budget or Budget()
    r, u = s.recollement, s.universe
    cp = condition_p(r)
    l1_u = _vanishing(r, Derived.L1_J_SHRIEK, s.u_dprime)
    r1_v = _vanishing(r, Derived.R1_J_STAR, s.v_dprime)
    l1_pv = _vanishing(r, Derived.L1_J_SHRIEK, left_perp(s.v_dprime))
    r1_up = _vanishing(r, Derived.R1_J_STAR, right_perp(s.u_dprime))
    hyp = {"condition (P)": {"holds": cp.holds, "kernel_dim": int(cp.kernel.shape[1])},
           "L1 j_!(U'')=0": l1_u, "R1 j_*(V'')=0": r1_v,
           "L1 j_!(^⊥V'')=0": l1_pv, "R1 j_*(U''^⊥)=0": r1_up}
    P, L1u, R1v, L1pv, R1up = cp.holds, l1_u["holds"], r1_v["holds"], l1_pv["holds"], r1_up["holds"]

    side1 = analyze_pair(s.u_prime, s.v_prime, budget)
    side2 = analyze_pair(s.u_dprime, s.v_dprime, budget)
    M, N = glued_M(s), glued_N(s)
    glued = analyze_pair(M, N, budget)
    pairs = side1.is_pair and side2.is_pair
    side_her = pairs and bool(side1.is_hereditary) and bool(side2.is_hereditary)
    side_ch = _gate(_tristate(side1.complete_hereditary), _tristate(side2.complete_hereditary))
    hyp["side pairs are cotorsion pairs"] = {"holds": pairs}
    hyp["side pairs complete hereditary"] = {"holds": side_ch}

    conc: dict[str, dict] = {}

    def side_inclusions():
        bad = []
        for tag, cls, target in ((Functor.I_LOWER, s.u_prime, M), (Functor.I_LOWER, s.v_prime, N),
                                 (Functor.J_LOWER_SHRIEK, s.u_dprime, M), (Functor.J_UPPER_STAR, s.v_dprime, N)):
            for m in cls.modules():
                if not target.contains(r.apply(tag, m)):
                    bad.append(f"{tag.value}({m.name}) not in {target.name}")
        return {"status": VERIFIED if not bad else FAILED, **({"certificate": bad} if bad else {})}
    conc["side classes land in glued classes"] = side_inclusions()

    conc["perp identities"] = {"status": VERIFIED, "clauses": check_perp_identities(s)}
    states = [c["status"] for c in conc["perp identities"]["clauses"].values()]
    conc["perp identities"]["status"] = FAILED if FAILED in states else INCONCLUSIVE if INCONCLUSIVE in states else \
        VERIFIED if VERIFIED in states else NOT_ASSERTED

    def pair_entry(rep: CotorsionPairReport):
        return {"status": VERIFIED if rep.is_pair else FAILED,
                **({} if rep.is_pair else {"certificate": rep.certificates[:3]})}
    conc["(^⊥N, N) is a cotorsion pair"] = _conclude(_gate(pairs, L1u), lambda: pair_entry(is_cotorsion_pair(left_perp(N), N)))
    conc["(M, M^⊥) is a cotorsion pair"] = _conclude(_gate(pairs, R1v), lambda: pair_entry(is_cotorsion_pair(M, right_perp(M))))

    def perp_of_m_is_n():
        rp = right_perp(M)
        diff = sorted(rp.members ^ N.members)
        if not diff:
            return {"status": VERIFIED}
        return {"status": FAILED, "certificate": {"kind": "set_mismatch", "modules": [u[i].name for i in diff]}}
    conc["M^⊥ = N"] = _conclude(_gate(P, pairs, L1u, R1v), perp_of_m_is_n)

    panel = _gate(P, L1pv, R1up, L1u or R1v)
    hyp["gluing panel"] = {"holds": panel}

    def iff(lhs, rhs, what):
        entry = {"status": VERIFIED if lhs == rhs else FAILED, "sides": lhs, "glued": rhs}
        if lhs != rhs:
            entry["certificate"] = {"kind": "iff_mismatch", "property": what}
        return entry
    conc["glued pair iff side pairs"] = _conclude(panel, lambda: iff(pairs, glued.is_pair, "cotorsion pair"))
    conc["glued hereditary iff sides hereditary"] = _conclude(panel, lambda: iff(side_her, glued.is_pair and bool(glued.is_hereditary),
                                                          "hereditary cotorsion pair"))

    def glued_complete():
        ch = glued.complete_hereditary
        if ch is None:
            return {"status": INCONCLUSIVE, "note": "completeness search exhausted its budget",
                    "gaps": glued.completeness.gaps[:5]}
        entry = {"status": VERIFIED if ch else FAILED}
        if not ch:
            entry["certificate"] = glued.certificates[:3] or (glued.heredity.to_dict() if glued.heredity else None)
        return entry
    conc["glued pair complete hereditary"] = _conclude(_gate(P, side_ch, L1u, R1v), glued_complete)

    cond1 = cond2 = None

    def converse_conditions():
        j_v = [r.apply(Functor.J_UPPER_STAR, m) for m in s.v_dprime.modules()]
        c1 = _contains_all(s.v_prime, [r.apply(Functor.I_STAR_UPPER, x) for x in j_v])["holds"]
        c1 = _gate(c1, all(r.derived_dim(Derived.L1_I_STAR, x) == 0 for x in j_v))
        j_u = [r.apply(Functor.J_LOWER_SHRIEK, m) for m in s.u_dprime.modules()]
        c2 = _contains_all(s.u_prime, [r.apply(Functor.I_SHRIEK, x) for x in j_u])["holds"]
        c2 = _gate(c2, all(r.derived_dim(Derived.R1_I_SHRIEK, x) == 0 for x in j_u))
        return c1, c2
    cond1, cond2 = converse_conditions()
    hyp["converse condition (1)"] = {"holds": cond1}
    hyp["converse condition (2)"] = {"holds": cond2}
    glued_ch = _tristate(glued.complete_hereditary)
    either = True if (cond1 is True or cond2 is True) else (None if None in (cond1, cond2) else False)

    def converse():
        return {"status": VERIFIED if side_ch else FAILED, "sides_complete_hereditary": side_ch}
    conc["sides complete hereditary (converse)"] = _conclude(_gate(P, glued_ch, R1up, L1pv, L1u or R1v, either), converse)

    notes = [f"universe over {u.algebra.name}: {len(u)} members ({u.provenance})",
             "the (M, M^⊥) clause uses the vanishing of R1 j_* on V'' (V' would not typecheck)"]
    return GluingReport(s.name or r.name, {"size": len(u), "provenance": u.provenance}, hyp,
                        {"prime": side1, "double_prime": side2}, glued, conc, notes)
