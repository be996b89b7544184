"""Command dispatch and deterministic report emission."""

from __future__ import annotations

import argparse
import json
import sys
from enum import Enum
from fractions import Fraction

import numpy as np

from . import morita as mo
from .cotorsion import GluedScenario, ModuleClass, verify_gluing
from .enumeration import BudgetExceeded, Universe, UniverseMiss
from .homological import ext_dim, ext_dim_injective, tor_dim, tor_dim_left
from .recollement import (Functor, WrongCategory, build_recollement, canonical_sequences, condition_p,
                          counit_unit_criteria, functor_exact)
from .workspace import (SCHEMA_VERSION, DanglingReference, ValidationError, Workspace, WorkspaceError,
                        class_from_spec, load_workspace, parse_workspace)

COMMANDS = ("check-algebra", "ext", "tor", "recollement", "condition-p", "enumerate", "glue", "corollary",
            "example-4-11")
USAGE_ERROR = 3


class UnknownCommand(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _arg(args: dict, key: str, where: str):
    if args.get(key) is None:
        raise ValidationError(where, f"--{key.replace('_', '-')} is required")
    return args[key]


def _module(ws: Workspace, name: str, where: str):
    if name not in ws.modules:
        raise DanglingReference(where, "module", name)
    return ws.modules[name]


def _idempotent(ws: Workspace, alg, spec):
    """An index, a comma list of indices (summed), or an explicit coefficient list."""
    F = ws.field
    if isinstance(spec, list) and spec and isinstance(spec[0], list):
        spec = spec[0]
    if isinstance(spec, list) and len(spec) == alg.dim and len(spec) != 1:
        return F.array(spec)
    idx = [int(x) for x in (spec if isinstance(spec, list) else str(spec).split(","))]
    e = alg.zero()
    for i in idx:
        if not 0 <= i < alg.n_idempotents:
            raise ValidationError("idempotent", f"index {i} out of range")
        e = F.reduce(e + alg.idempotents[i])
    return e


def _side_class(ws: Workspace, u: Universe, ref, where: str) -> ModuleClass:
    if isinstance(ref, str) and ref in ws.classes:
        cls = ws.classes[ref]
        if not cls.universe.algebra.same_as(u.algebra):
            raise ValidationError(where, f"class '{ref}' lives over {cls.universe.algebra.name}, "
                                         f"expected {u.algebra.name}")
        return cls
    return class_from_spec(u, ref, where)



# ---------------------------------------------------------------------------
# commands


def cmd_check_algebra(ws: Workspace, args: dict):
    from .algebra import validate_algebra
    names = [args["algebra"]] if args.get("algebra") else sorted(ws.algebras)
    out, bad = {}, False
    for n in names:
        alg = ws.algebra(n, "--algebra")
        problems = validate_algebra(alg)
        entry = {"dim": alg.dim, "idempotents": alg.n_idempotents, "valid": not problems}
        if problems:
            entry["certificate"] = problems[:5]
            bad = True
        else:
            try:
                entry["radical_dim"] = int(alg.radical.shape[1])
                entry["basic"] = True
            except Exception as exc:  # non-basic algebras are valid but unsupported downstream
                entry["basic"] = False
                entry["note"] = str(exc)
        out[n] = entry
    return {"algebras": out}, 1 if bad else 0


def cmd_ext(ws: Workspace, args: dict):
    x = _module(ws, _arg(args, "source", "ext"), "--source")
    y = _module(ws, _arg(args, "target", "ext"), "--target")
    k = int(args.get("degree") or 1)
    if not x.algebra.same_as(y.algebra):
        raise ValidationError("ext", "modules live over different algebras")
    a, b = ext_dim(x, y, k), ext_dim_injective(x, y, k)
    rep = {"source": x.name, "target": y.name, "degree": k, "dim_projective": a, "dim_injective": b,
           "agree": a == b}
    if a != b:
        rep["certificate"] = {"kind": "ext_mismatch", "pair": [x.name, y.name]}
    return rep, 0 if a == b else 1


def cmd_tor(ws: Workspace, args: dict):
    x = _module(ws, _arg(args, "source", "tor"), "--source")
    y = _module(ws, _arg(args, "target", "tor"), "--target")
    k = int(args.get("degree") or 1)
    if not x.algebra.same_as(y.algebra.opposite):
        raise ValidationError("tor", "--source must be a right module over the algebra of --target")
    a, b = tor_dim(x, y, k), tor_dim_left(x, y, k)
    rep = {"right": x.name, "left": y.name, "degree": k, "dim_resolving_left": a, "dim_resolving_right": b,
           "balanced": a == b}
    if a != b:
        rep["certificate"] = {"kind": "tor_mismatch", "pair": [x.name, y.name]}
    return rep, 0 if a == b else 1


def _recollement_from_args(ws: Workspace, args: dict, where: str):
    if args.get("scenario"):
        spec = ws.scenarios.get(args["scenario"])
        if spec is None:
            raise DanglingReference(where, "scenario", args["scenario"])
        if spec["kind"] != "glue":
            raise ValidationError(where, "scenario is not a glue scenario")
        alg = ws.algebra(spec["algebra"], where)
        return build_recollement(alg, _idempotent(ws, alg, spec["idempotent"]), name=args["scenario"]), spec
    alg = ws.algebra(_arg(args, "algebra", where), "--algebra")
    return build_recollement(alg, _idempotent(ws, alg, _arg(args, "idempotent", where)), name=alg.name), {}


def cmd_recollement(ws: Workspace, args: dict):
    r, spec = _recollement_from_args(ws, args, "recollement")
    bound = int(args.get("bound") or spec.get("bound", 4))
    u = ws.universe(r.algebra, bound)
    seq_fail = []
    for m in u:
        s = canonical_sequences(r, m)
        if not (s.first_exact and s.second_exact):
            seq_fail.append(m.name)
    cp = condition_p(r)
    eps, dlt = counit_unit_criteria(r)
    rep = {"algebra": r.algebra.name, "dims": {"algebra": r.algebra.dim, "corner": r.corner.dim,
                                               "quotient": r.quotient.dim},
           "construction_checks": r.checks,
           "universe": {"size": len(u), "provenance": u.provenance},
           "canonical sequences exact": {"holds": not seq_fail, "checked": len(u), "failures": seq_fail},
           "condition (P)": {"holds": cp.holds, "kernel_dim": int(cp.kernel.shape[1])},
           "counit/unit criteria agree": {"counit mono on projectives": eps, "unit epi on injectives": dlt,
                                          "agree": eps == dlt and eps == cp.holds},
           "i^* exact": functor_exact(r, Functor.I_STAR_UPPER), "i^! exact": functor_exact(r, Functor.I_SHRIEK)}
    ok = not seq_fail and eps == dlt == cp.holds
    return rep, 0 if ok else 1


def cmd_condition_p(ws: Workspace, args: dict):
    if args.get("morita"):
        name = args["morita"]
        if name not in ws.morita:
            raise DanglingReference("--morita", "morita data", name)
        d = ws.morita[name]
        out, ok = {}, True
        for which, label, mono in ((1, "first (e_A)", mo.phi_is_mono), (2, "second (e_B)", mo.psi_is_mono)):
            cp = condition_p(mo.recollement_pair(d, which).recollement)
            injective, K = mono(d)
            agree = cp.holds == injective and cp.consistent
            ok = ok and agree
            entry = {"holds": cp.holds, "pairing injective": injective, "agree": agree,
                     "canonical_kernel_dim": int(cp.kernel.shape[1])}
            if not injective:
                entry["pairing kernel"] = K.T.tolist()
            out[label] = entry
        return {"morita": name, "recollements": out}, 0 if ok else 1
    r, _ = _recollement_from_args(ws, args, "condition-p")
    cp = condition_p(r)
    eps, dlt = counit_unit_criteria(r)
    rep = {"algebra": r.algebra.name, "holds": cp.holds, "canonical_kernel_dim": int(cp.kernel.shape[1]),
           "per_projective": cp.per_projective, "consistent": cp.consistent,
           "counit mono on projectives": eps, "unit epi on injectives": dlt}
    if not cp.holds:
        rep["certificate"] = {"kind": "kernel_basis", "vectors": cp.kernel.T.tolist()}
    return rep, 0 if (cp.consistent and eps == dlt) else 1


def cmd_enumerate(ws: Workspace, args: dict):
    alg = ws.algebra(_arg(args, "algebra", "enumerate"), "--algebra")
    bound = int(args.get("bound") or 4)
    u = ws.universe(alg, bound)
    return {"algebra": alg.name, "bound": bound, "provenance": u.provenance, "size": len(u),
            "members": [{"name": m.name, "dim": m.dim, "dim_vector": list(m.dim_vector)} for m in u]}, 0


def cmd_glue(ws: Workspace, args: dict):
    name = _arg(args, "scenario", "glue")
    r, spec = _recollement_from_args(ws, {"scenario": name}, "glue")
    bound = int(args.get("bound") or spec.get("bound", 4))
    side_bound = int(spec.get("side_bound", 3))
    lam = ws.universe(r.algebra, bound)
    uq, uc = ws.universe(r.quotient, side_bound), ws.universe(r.corner, side_bound)
    where = f"scenarios.{name}"
    s = GluedScenario(r, lam, _side_class(ws, uq, spec["u_prime"], where), _side_class(ws, uq, spec["v_prime"], where),
                      _side_class(ws, uc, spec["u_dprime"], where), _side_class(ws, uc, spec["v_dprime"], where),
                      name=name)
    rep = verify_gluing(s, ws.budgets.cotorsion())
    return rep.to_dict(), rep.exit_code


def cmd_corollary(ws: Workspace, args: dict):
    name = _arg(args, "scenario", "corollary")
    spec = ws.scenarios.get(name)
    if spec is None or spec["kind"] != "corollary":
        raise ValidationError("corollary", f"'{name}' is not a corollary scenario")
    d = ws.morita[spec["morita"]]
    which = spec["which"]
    side = 1 if which in ("c46", "c48") else 2
    side_bound = int(spec.get("side_bound", 3))
    where = f"scenarios.{name}"
    try:
        st = mo.recollement_pair(d, side)
        uc, uq = ws.universe(st.corner_side, side_bound), ws.universe(st.quotient_side, side_bound)
        pc = tuple(_side_class(ws, uc, x, where) for x in spec["corner_pair"])
        pq = tuple(_side_class(ws, uq, x, where) for x in spec["quotient_pair"])
        lam = ws.universe(mo.morita_ring(d).algebra, int(args.get("bound") or spec.get("bound", 5)))
        rep = mo.corollary_scenario(d, which, pc, pq, ws.budgets.cotorsion(), universe=lam)
    except mo.AssumptionFailed as exc:
        return {"corollary": which, "assumption": {"holds": False, "message": str(exc),
                                                   "certificate": exc.witness}}, 1
    return rep.to_dict(), rep.exit_code


def cmd_worked_example(ws: Workspace, args: dict):
    rep = mo.worked_example(bound=int(args.get("bound") or 6), budget=ws.budgets.cotorsion(), F=ws.field)
    return rep.to_dict(), rep.exit_code


HANDLERS = {"check-algebra": cmd_check_algebra, "ext": cmd_ext, "tor": cmd_tor, "recollement": cmd_recollement,
            "condition-p": cmd_condition_p, "enumerate": cmd_enumerate, "glue": cmd_glue,
            "corollary": cmd_corollary, "example-4-11": cmd_worked_example}


def run(ws: Workspace | None, command: str, args: dict | None = None) -> tuple[dict, int]:
    """Execute one command; returns a plain report and the exit code (0 pass, 1 failed, 2 inconclusive)."""
    if command not in HANDLERS:
        raise UnknownCommand(f"unknown command '{command}' (expected one of: {', '.join(COMMANDS)})")
    args = dict(args or {})
    ws = ws or parse_workspace({})
    for key, attr in (("budget_dim", "dim_cap"), ("budget_mult", "mult_cap"), ("seed", "seed")):
        if args.get(key) is not None:
            setattr(ws.budgets, attr, int(args[key]))
    try:
        body, code = HANDLERS[command](ws, args)
    except (BudgetExceeded, UniverseMiss) as exc:
        body, code = {"inconclusive": str(exc)}, 2
    except WrongCategory as exc:
        raise ValidationError(command, str(exc)) from exc
    report = {"schema_version": SCHEMA_VERSION, "command": command, "exit_code": code}
    report.update(body)
    return plain(report), code


# ---------------------------------------------------------------------------
# emission


def plain(x):
    """Convert a report to JSON-native values (deterministically)."""
    if isinstance(x, dict):
        return {str(k.value if isinstance(k, Enum) else k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(plain(v) for v in x)
    if isinstance(x, np.ndarray):
        return plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x.numerator)
    if isinstance(x, float):
        return x
    if isinstance(x, Enum):
        return x.value
    if x is None or isinstance(x, str):
        return x
    return str(x)


SECTION_TITLES = {"hypotheses": "hypothesis panel", "conclusions": "conclusions", "checks": "checks"}


def _lines(value, indent: int) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                if isinstance(v, dict) and "status" in v and len(v) == 1:
                    out.append(f"{pad}{k}: {v['status']}")
                    continue
                if isinstance(v, dict) and set(v) <= {"holds"}:
                    out.append(f"{pad}{k}: {json.dumps(v['holds'])}")
                    continue
                out.append(f"{pad}{k}:")
                out.extend(_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            out.append(f"{pad}{json.dumps(value, ensure_ascii=False)}")
        else:
            for v in value:
                sub = _lines(v, indent + 1)
                if sub:
                    out.append(f"{pad}- {sub[0].strip()}")
                    out.extend(sub[1:])
    else:
        out.append(f"{pad}{json.dumps(value, ensure_ascii=False)}")
    return out


def emit_report(report: dict, fmt: str = "text") -> str:
    if fmt == "structured":
        return json.dumps(report, ensure_ascii=False, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt}")
    head = [f"command: {report.get('command')}", f"schema_version: {report.get('schema_version')}",
            f"exit_code: {report.get('exit_code')}"]
    body = []
    for k, v in report.items():
        if k in ("command", "schema_version", "exit_code"):
            continue
        if isinstance(v, (dict, list)) and v:
            body.append("")
            body.append(f"== {SECTION_TITLES.get(k, k)} ==")
            body.extend(_lines(v, 1))
        else:
            body.append(f"{k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(head + body) + "\n"


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gluing", description="Recollement gluing of cotorsion pairs: verification tool")
    p.add_argument("command", help=" | ".join(COMMANDS))
    p.add_argument("--workspace", help="JSON workspace file (not needed for example-4-11)")
    p.add_argument("--budget-dim", type=int)
    p.add_argument("--budget-mult", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--scenario")
    p.add_argument("--algebra")
    p.add_argument("--idempotent")
    p.add_argument("--morita")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--degree", type=int)
    p.add_argument("--bound", type=int)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    args = {k: v for k, v in vars(ns).items() if k not in ("command", "workspace", "format")}
    try:
        if ns.command not in HANDLERS:
            raise UnknownCommand(f"unknown command '{ns.command}' (expected one of: {', '.join(COMMANDS)})")
        ws = load_workspace(ns.workspace) if ns.workspace else None
        if ws is None and ns.command != "example-4-11":
            raise ValidationError(ns.command, "--workspace is required")
        report, code = run(ws, ns.command, args)
    except (UnknownCommand, WorkspaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    sys.stdout.write(emit_report(report, ns.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
