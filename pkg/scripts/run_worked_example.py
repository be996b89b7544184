"""Run the eight-dimensional Morita ring check and print each step with its timing."""
import argparse
import sys
import time

from gluing.exactla import Field
from gluing.morita import worked_example


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=6, help="total dimension bound for the Λ universe")
    ap.add_argument("--p", type=int, default=2, help="characteristic of the ground field")
    ns = ap.parse_args()
    t = time.time()
    rep = worked_example(bound=ns.bound, F=Field(ns.p))
    for c in rep.checks:
        print(f"[{'ok' if c.passed else 'FAIL'}] {c.name}")
    print(f"exit {rep.exit_code} after {time.time() - t:.1f}s")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
