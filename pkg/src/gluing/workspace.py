"""JSON workspace files: algebras, bimodules, Morita data, modules, classes, scenarios, budgets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .algebra import Algebra, AlgebraError, Quiver, field_algebra, path_algebra, validate_algebra
from .cotorsion import Budget, ModuleClass, class_from_names, everything, injective_class, nothing, projective_class
from .enumeration import EnumerationBudget, Universe, enumerate_indecomposables
from .exactla import Field
from .modules import Bimodule, Module, ModuleError, injectives, module_axioms, projectives, regular_module, simples

SCHEMA_VERSION = 1
SECTIONS = ("schema_version", "field", "algebras", "bimodules", "morita", "modules", "classes", "scenarios", "budgets")


class WorkspaceError(Exception):
    pass


class ParseError(WorkspaceError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class ValidationError(WorkspaceError):
    def __init__(self, location: str, invariant: str):
        super().__init__(f"{location}: {invariant}")
        self.location = location
        self.invariant = invariant


class DanglingReference(WorkspaceError):
    def __init__(self, location: str, kind: str, name: str):
        super().__init__(f"{location}: undeclared {kind} '{name}'")
        self.location = location
        self.kind = kind
        self.name = name


@dataclass
class Budgets:
    dim_cap: int = 40
    mult_cap: int = 8
    probe_cap: int = 24
    enumeration_cap: int = 400_000
    seed: int = 0

    def cotorsion(self) -> Budget:
        return Budget(self.dim_cap, self.mult_cap, self.probe_cap, self.seed)

    def enumeration(self) -> EnumerationBudget:
        return EnumerationBudget(self.enumeration_cap)


@dataclass
class Workspace:
    field: Field
    algebras: dict = field(default_factory=dict)
    bimodules: dict = field(default_factory=dict)
    morita: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)
    scenarios: dict = field(default_factory=dict)  # raw scenario specs, resolved by the runner
    budgets: Budgets = field(default_factory=Budgets)
    source: str = "<memory>"
    _universes: dict = field(default_factory=dict, repr=False)

    def algebra(self, ref: str, where: str = "") -> Algebra:
        """Resolve an algebra name, or "<morita>/ring|A|B"."""
        if ref in self.algebras:
            return self.algebras[ref]
        if "/" in ref:
            base, part = ref.split("/", 1)
            if base in self.morita:
                from .morita import morita_ring
                d = self.morita[base]
                parts = {"ring": lambda: morita_ring(d).algebra, "A": lambda: d.A, "B": lambda: d.B}
                if part in parts:
                    return parts[part]()
        raise DanglingReference(where or "algebra", "algebra", ref)

    def universe(self, alg: Algebra, bound: int) -> Universe:
        key = (alg.key, bound)
        if key not in self._universes:
            self._universes[key] = enumerate_indecomposables(alg, bound, self.budgets.enumeration())
        return self._universes[key]


# ---------------------------------------------------------------------------
# parsing helpers


def _require(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(where, f"missing '{key}'")
    return d[key]


def _matrix(F: Field, raw, rows: int, cols: int, where: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != rows:
        raise ParseError(where, f"expected {rows} rows, got {len(raw) if isinstance(raw, list) else 'a non-list'}")
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{where} row {i}", f"expected {cols} entries")
    return F.array(raw).reshape(rows, cols) if rows * cols else F.zeros((rows, cols))


def _actions(F: Field, raw, count: int, dim: int, where: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != count:
        raise ParseError(where, f"expected {count} action matrices")
    if count == 0:
        return F.zeros((0, dim, dim))
    return np.stack([_matrix(F, m, dim, dim, f"{where}[{k}]") for k, m in enumerate(raw)])


def _field(raw) -> Field:
    if raw is None:
        return Field(2)
    p = raw.get("p", 2) if isinstance(raw, dict) else raw
    if p in (None, "Q", "rational"):
        return Field(None)
    try:
        return Field(int(p))
    except ValueError as exc:
        raise ValidationError("field", str(exc)) from exc


def _algebra(F: Field, name: str, spec: dict) -> Algebra:
    where = f"algebras.{name}"
    if "quiver" in spec:
        q = spec["quiver"]
        try:
            quiver = Quiver(tuple(_require(q, "vertices", where)),
                            tuple(tuple(a) for a in _require(q, "arrows", where)))
            return path_algebra(quiver, spec.get("relations", ()), F=F, name=name)
        except (AlgebraError, KeyError, ValueError) as exc:
            raise ValidationError(where, str(exc)) from exc
    if spec.get("field_algebra"):
        return field_algebra(F)
    rows = _require(spec, "structure_constants", where)
    n = len(rows)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n * n:
            raise ParseError(f"{where}.structure_constants row {i}",
                             f"expected {n * n} entries, got {len(row) if isinstance(row, list) else 'a non-list'}")
    struct = F.array(rows).reshape(n, n, n) if n else F.zeros((0, 0, 0))
    unit = F.array(_require(spec, "unit", where))
    if len(unit) != n:
        raise ParseError(f"{where}.unit", f"expected {n} entries")
    idem = spec.get("idempotents", [list(unit)])
    for i, e in enumerate(idem):
        if len(e) != n:
            raise ParseError(f"{where}.idempotents row {i}", f"expected {n} entries")
    alg = Algebra(F, struct, unit, tuple(F.array(e) for e in idem), tuple(spec.get("labels", ())), name=name)
    problems = validate_algebra(alg)
    if problems:
        raise ValidationError(where, problems[0])
    return alg


def _bimodule(ws: Workspace, name: str, spec: dict) -> Bimodule:
    where = f"bimodules.{name}"
    left = ws.algebra(_require(spec, "left", where), f"{where}.left")
    right = ws.algebra(_require(spec, "right", where), f"{where}.right")
    dim = int(_require(spec, "dim", where))
    b = Bimodule(left, right, _actions(ws.field, _require(spec, "left_action", where), left.dim, dim, f"{where}.left_action"),
                 _actions(ws.field, _require(spec, "right_action", where), right.dim, dim, f"{where}.right_action"), name)
    problems = b.validate()
    if problems:
        raise ValidationError(where, problems[0])
    return b


def _morita(ws: Workspace, name: str, spec: dict):
    from . import morita as mo
    where = f"morita.{name}"
    F = ws.field
    try:
        if spec.get("builtin") == "example":
            return mo.example_data(F)
        if "scalar" in spec:
            return mo.scalar_context(F, int(spec["scalar"]), name=name)
        if "split" in spec:
            s = spec["split"]
            R = ws.algebra(_require(s, "algebra", where), f"{where}.split.algebra")
            e = s.get("idempotent", 0)
            e = R.idempotents[e] if isinstance(e, int) else F.array(e)
            return mo.from_idempotent(R, e, name=name)
        if spec.get("zero"):
            return mo.zero_context(ws.algebra(spec["A"], f"{where}.A"), ws.algebra(spec["B"], f"{where}.B"), name)
        A = ws.algebra(_require(spec, "A", where), f"{where}.A")
        B = ws.algebra(_require(spec, "B", where), f"{where}.B")
        bims = {}
        for key in ("M", "N"):
            ref = _require(spec, key, where)
            if ref not in ws.bimodules:
                raise DanglingReference(f"{where}.{key}", "bimodule", ref)
            bims[key] = ws.bimodules[ref]
        return mo.MoritaData.from_bilinear(A, B, bims["M"], bims["N"], spec.get("phi"), spec.get("psi"), name=name)
    except mo.IncompatibleContext as exc:
        raise ValidationError(where, str(exc)) from exc


def _module(ws: Workspace, name: str, spec: dict) -> Module:
    where = f"modules.{name}"
    alg = ws.algebra(_require(spec, "algebra", where), f"{where}.algebra")
    if spec.get("right"):
        alg = alg.opposite
    for kind, fn in (("projective", projectives), ("injective", injectives), ("simple", simples)):
        if kind in spec:
            lst = fn(alg)
            i = int(spec[kind])
            if not 0 <= i < len(lst):
                raise ValidationError(where, f"no {kind} with index {i}")
            return Module(alg, lst[i].action, name)
    if spec.get("regular"):
        return Module(alg, regular_module(alg).action, name)
    dim = int(_require(spec, "dim", where))
    m = Module(alg, _actions(ws.field, _require(spec, "action", where), alg.dim, dim, f"{where}.action"), name)
    problems = module_axioms(m)
    if problems:
        raise ValidationError(where, problems[0])
    return m


def class_from_spec(u: Universe, spec, where: str, name: str = "") -> ModuleClass:
    """"all" | "none" | "projective" | "injective" | {"names": [...]}."""
    if spec == "all":
        return everything(u)
    if spec == "none":
        return nothing(u)
    if spec == "projective":
        return projective_class(u)
    if spec == "injective":
        return injective_class(u)
    if isinstance(spec, dict) and "names" in spec:
        known = set(u.names())
        for n in spec["names"]:
            if n not in known:
                raise DanglingReference(where, "universe member", n)
        return class_from_names(u, spec["names"], name or ",".join(spec["names"]))
    raise ParseError(where, f"unrecognized class description {spec!r}")


def _class(ws: Workspace, name: str, spec: dict) -> ModuleClass:
    where = f"classes.{name}"
    alg = ws.algebra(_require(spec, "algebra", where), f"{where}.algebra")
    u = ws.universe(alg, int(spec.get("bound", 4)))
    return class_from_spec(u, _require(spec, "kind", where), where, name)


SCENARIO_KINDS = {"glue": ("algebra", "idempotent", "u_prime", "v_prime", "u_dprime", "v_dprime"),
                  "corollary": ("morita", "which", "corner_pair", "quotient_pair")}


def _check_scenario(ws: Workspace, name: str, spec: dict):
    where = f"scenarios.{name}"
    kind = _require(spec, "kind", where)
    if kind not in SCENARIO_KINDS:
        raise ParseError(f"{where}.kind", f"unknown scenario kind {kind!r}")
    for key in SCENARIO_KINDS[kind]:
        _require(spec, key, where)
    if kind == "glue":
        ws.algebra(spec["algebra"], f"{where}.algebra")
        refs = [spec[k] for k in ("u_prime", "v_prime", "u_dprime", "v_dprime")]
    else:
        if spec["morita"] not in ws.morita:
            raise DanglingReference(f"{where}.morita", "morita data", spec["morita"])
        refs = list(spec["corner_pair"]) + list(spec["quotient_pair"])
    for r in refs:
        if isinstance(r, str) and r not in ("all", "none", "projective", "injective") and r not in ws.classes:
            raise DanglingReference(where, "class", r)


def parse_workspace(doc: dict, source: str = "<memory>") -> Workspace:
    if not isinstance(doc, dict):
        raise ParseError(source, "top level must be an object")
    for key in doc:
        if key not in SECTIONS:
            raise ParseError(source, f"unknown section '{key}'")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError("schema_version", f"unsupported version {version}")
    ws = Workspace(_field(doc.get("field")), source=source)
    b = doc.get("budgets", {})
    known = {f.name for f in fields(Budgets)}
    for key in b:
        if key not in known:
            raise ParseError(f"{source}: budgets", f"unknown budget '{key}' (expected one of {sorted(known)})")
    ws.budgets = Budgets(**{k: int(v) for k, v in b.items()})
    try:
        for name, spec in doc.get("algebras", {}).items():
            ws.algebras[name] = _algebra(ws.field, name, spec)
        for name, spec in doc.get("bimodules", {}).items():
            ws.bimodules[name] = _bimodule(ws, name, spec)
        for name, spec in doc.get("morita", {}).items():
            ws.morita[name] = _morita(ws, name, spec)
        for name, spec in doc.get("modules", {}).items():
            ws.modules[name] = _module(ws, name, spec)
        for name, spec in doc.get("classes", {}).items():
            ws.classes[name] = _class(ws, name, spec)
    except (AlgebraError, ModuleError) as exc:
        raise ValidationError(source, str(exc)) from exc
    for name, spec in doc.get("scenarios", {}).items():
        _check_scenario(ws, name, spec)
        ws.scenarios[name] = spec
    return ws


def load_workspace(path) -> Workspace:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(path), f"cannot read file ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    return parse_workspace(doc, str(path))
