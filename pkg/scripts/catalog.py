"""List every cotorsion pair of a workspace algebra relative to its enumerated universe."""
import argparse

from gluing.cotorsion import ModuleClass, analyze_pair, cotorsion_pair_catalog
from gluing.workspace import load_workspace


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("workspace")
    ap.add_argument("algebra")
    ap.add_argument("--bound", type=int, default=4)
    ns = ap.parse_args()
    ws = load_workspace(ns.workspace)
    u = ws.universe(ws.algebra(ns.algebra), ns.bound)
    print(f"{len(u)} indecomposables: {', '.join(u.names())}")
    for C, D in cotorsion_pair_catalog(u):
        rep = analyze_pair(ModuleClass(u, C), ModuleClass(u, D))
        flags = f"hereditary={rep.is_hereditary} complete={rep.is_complete}"
        print(f"({', '.join(u[i].name for i in sorted(C))} | {', '.join(u[i].name for i in sorted(D))})  {flags}")


if __name__ == "__main__":
    main()
