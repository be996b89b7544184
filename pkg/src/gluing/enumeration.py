"""Bounded enumeration of indecomposable modules over a finite field.

Modules are built from representations: a dimension vector over the
idempotents plus one block matrix per arrow (an adapted lift of a basis of
J/J^2).  Every algebra basis element is a linear combination of arrow words,
which fixes the full action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .algebra import Algebra
from .modules import (Module, injectives, is_isomorphic, module_axioms, projectives, simples)


class BudgetExceeded(RuntimeError):
    pass


class UniverseMiss(LookupError):
    """A module has an indecomposable summand outside the universe."""


@dataclass
class EnumerationBudget:
    max_candidates: int = 400_000


@dataclass(frozen=True, eq=False)
class Universe:
    algebra: Algebra
    members: tuple
    provenance: str = "declared"
    bound: int | None = None
    stats: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def index_of(self, m: Module) -> int | None:
        if not m.is_indecomposable:
            raise ValueError("index_of expects an indecomposable module")
        for i, u in enumerate(self.members):
            if u.fingerprint == m.fingerprint and is_isomorphic(u, m)[0]:
                return i
        return None

    def decompose(self, m: Module) -> dict[int, int]:
        """Multiplicity of each member in m; raises UniverseMiss."""
        out: dict[int, int] = {}
        for piece, _, _ in m.summands:
            i = self.index_of(piece)
            if i is None:
                raise UniverseMiss(f"summand of dimension {piece.dim} is not in the universe")
            out[i] = out.get(i, 0) + 1
        return out

    def names(self) -> list[str]:
        return [m.name for m in self.members]


class _WordBasis:
    """Expresses each algebra basis element through idempotents and arrow words."""

    def __init__(self, alg: Algebra):
        F = alg.field
        self.alg = alg
        self.arrows = alg.arrows
        m = alg.n_idempotents
        words: list[tuple] = [("e", i) for i in range(m)]
        vecs = [alg.idempotents[i] for i in range(m)]
        layer = [((k,), self.arrows[k][2]) for k in range(len(self.arrows))]
        while layer:
            nxt = []
            for w, v in layer:
                if not np.any(v != 0):
                    continue
                words.append(("w", w))
                vecs.append(v)
                last_target = self.arrows[w[-1]][1]
                for k, (s, t, a) in enumerate(self.arrows):
                    if s == last_target:
                        nxt.append((w + (k,), alg.mul(a, v)))
            layer = nxt
            if len(words) > 4 * alg.dim * alg.dim + 64:
                break
        V = np.stack(vecs, axis=1)
        idx = la.independent_columns(F, V)
        if len(idx) != alg.dim:
            raise ValueError("arrow words do not span the algebra")
        self.words = [words[i] for i in idx]
        self.coef = la.solve_matrix(F, V[:, idx], F.eye(alg.dim))  # (nwords, dim)

    def action(self, dims, offsets, mats) -> np.ndarray:
        F = self.alg.field
        d = int(sum(dims))
        W = []
        for kind, w in self.words:
            if kind == "e":
                P = F.zeros((d, d))
                i = w
                P[offsets[i]:offsets[i] + dims[i], offsets[i]:offsets[i] + dims[i]] = F.eye(dims[i])
                W.append(P)
            else:
                s0 = self.arrows[w[0]][0]
                cur = F.eye(dims[s0])
                for k in w:
                    cur = F.matmul(mats[k], cur)
                t = self.arrows[w[-1]][1]
                P = F.zeros((d, d))
                P[offsets[t]:offsets[t] + dims[t], offsets[s0]:offsets[s0] + dims[s0]] = cur
                W.append(P)
        W = np.stack(W)
        return F.reduce(np.tensordot(self.coef.T, W, axes=(1, 0)))


def _dimension_vectors(m: int, max_dim: int):
    for total in range(1, max_dim + 1):
        for dv in itertools.product(range(total + 1), repeat=m):
            if sum(dv) == total:
                yield dv


def _soc_in_rad(mod: Module) -> bool:
    F = mod.field
    rad, soc = mod.radical, mod.socle
    if soc.shape[1] == 0:
        return True
    return la.rank(F, np.concatenate([rad, soc], axis=1)) == rad.shape[1]


def enumerate_indecomposables(alg: Algebra, max_dim: int, budget: EnumerationBudget | None = None) -> Universe:
    F = alg.field
    budget = budget or EnumerationBudget()
    if not F.is_finite:
        raise BudgetExceeded("enumeration requires a finite field")
    wb = _WordBasis(alg)
    arrows = wb.arrows
    m = alg.n_idempotents
    found: list[Module] = []
    buckets: dict[tuple, list[Module]] = {}
    candidates = 0
    for dv in _dimension_vectors(m, max_dim):
        offsets = np.concatenate([[0], np.cumsum(dv)]).astype(int)
        shapes = [(dv[t], dv[s]) for s, t, _ in arrows]
        # normal form for the largest non-loop block
        nf = None
        best = 0
        for k, (s, t, _) in enumerate(arrows):
            if s != t and shapes[k][0] * shapes[k][1] > best:
                nf, best = k, shapes[k][0] * shapes[k][1]
        free = [k for k in range(len(arrows)) if k != nf and shapes[k][0] * shapes[k][1] > 0]
        nfree = sum(shapes[k][0] * shapes[k][1] for k in free)
        options_nf = range(min(shapes[nf]) + 1) if nf is not None else [None]
        count = len(options_nf) * F.p ** nfree
        candidates += count
        if candidates > budget.max_candidates:
            raise BudgetExceeded(f"more than {budget.max_candidates} candidate representations "
                                 f"(at dimension vector {dv})")
        for r in options_nf:
            base = {}
            for k in range(len(arrows)):
                base[k] = F.zeros(shapes[k])
            if nf is not None:
                for q in range(r):
                    base[nf][q, q] = F.one
            for bits in itertools.product(range(F.p), repeat=nfree):
                mats = dict(base)
                pos = 0
                for k in free:
                    size = shapes[k][0] * shapes[k][1]
                    mats[k] = np.array(bits[pos:pos + size], dtype=np.int64).reshape(shapes[k])
                    pos += size
                act = wb.action(dv, offsets, mats)
                mod = Module(alg, act)
                if module_axioms(mod):
                    continue
                if mod.dim > 1 and not _soc_in_rad(mod):
                    continue
                if not mod.is_indecomposable:
                    continue
                key = mod.fingerprint
                bucket = buckets.setdefault(key, [])
                if any(is_isomorphic(o, mod)[0] for o in bucket):
                    continue
                bucket.append(mod)
                found.append(mod)
    members = _name_members(alg, found)
    return Universe(alg, tuple(members), provenance=f"enumerated over {F} up to dimension {max_dim}",
                    bound=max_dim, stats={"candidates": candidates})


def _name_members(alg: Algebra, mods: list[Module]) -> list[Module]:
    special = []
    for kind, lst in (("S", simples(alg)), ("P", projectives(alg)), ("I", injectives(alg))):
        special.extend(lst)
    out = []
    counter: dict[tuple, int] = {}
    for mod in mods:
        name = None
        for sp in special:
            if sp.dim == mod.dim and is_isomorphic(sp, mod)[0]:
                name = sp.name
                break
        if name is None:
            dv = mod.dim_vector
            counter[dv] = counter.get(dv, 0) + 1
            name = "M" + "".join(map(str, dv)) + ("" if counter[dv] == 1 else f"_{counter[dv]}")
        out.append(Module(alg, mod.action, name))
    return out


def declared_universe(alg: Algebra, mods, provenance: str = "declared") -> Universe:
    """A universe from explicitly listed modules; duplicates up to isomorphism are dropped."""
    kept: list[Module] = []
    for m in mods:
        for piece, _, _ in m.summands:
            if not any(is_isomorphic(k, piece)[0] for k in kept):
                kept.append(piece)
    named = []
    for i, m in enumerate(kept):
        named.append(m if m.name else Module(alg, m.action, f"U{i}"))
    return Universe(alg, tuple(named), provenance=provenance)


def ensure_projectives_injectives(u: Universe) -> list[str]:
    """Names of indecomposable projectives/injectives missing from u."""
    missing = []
    for m in projectives(u.algebra) + injectives(u.algebra):
        if m.dim and u.index_of(m) is None:
            missing.append(m.name)
    return missing
