"""Run every exhaustive sweep and certificate check, writing one JSON report each.

    python3 scripts/reproduce.py --out results/
"""

import argparse
import json
import sys
from pathlib import Path

from lcllab.cli import main as lcllab

RUNS = [
    ("cycle3", ["check-scheme", "--scheme", "CYCLE3", "--nmax", "7"]),
    ("cycle3-repaired", ["check-scheme", "--scheme", "CYCLE3", "--nmax", "7", "--repaired-3labels"]),
    ("cycle2v3", ["check-scheme", "--scheme", "CYCLE2V3", "--nmax", "8"]),
    ("cycle2v3-strict", ["check-scheme", "--scheme", "CYCLE2V3", "--nmax", "7", "--strict-alg3"]),
    ("bipartite2", ["check-scheme", "--scheme", "BIPARTITE2", "--nmax", "7"]),
    ("cycle-n", ["check-scheme", "--scheme", "CYCLE_N", "--nmax", "5"]),
    ("acyclic-n", ["check-scheme", "--scheme", "ACYCLIC_N", "--nmax", "5"]),
    ("thm32", ["thm32"]),
    ("thm36", ["thm36", "--lam", "2", "--d", "1"]),
    ("thm61-i1", ["thm61", "--i", "1"]),
    ("thm61-i2", ["thm61", "--i", "2"]),
    ("thm61-absence-i1", ["thm61", "--i", "1", "--absence"]),
    ("thm61-absence-i2", ["thm61", "--i", "2", "--absence"]),
]


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results")
    p.add_argument("--only", nargs="*", help="run just these report names")
    args = p.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name, cmd in RUNS:
        if args.only and name not in args.only:
            continue
        path = out / f"{name}.json"
        code = lcllab([*cmd, "--out", str(path)])
        summary[name] = {0: "pass", 1: "FAIL"}.get(code, f"error {code}")
        print(f"{name:<20} {summary[name]:<6} {json.loads(path.read_text())['wall_time']:.1f}s")
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return 0 if all(v == "pass" for k, v in summary.items() if k != "cycle3") else 1


if __name__ == "__main__":
    sys.exit(main())
