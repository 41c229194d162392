"""Command line: ``lcllab <command> ...``.

Exit codes: 0 everything accepted / passed, 1 some node rejected / a check
failed, 2 usage or contract error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from itertools import product
from pathlib import Path

from . import oracle
from .adversary import (SamplingExhausted, random_plan, read_plan_checked, validate_budget,
                        worst_case_search, write_plan)
from .congest import congest_bipartite, corruption_within_half
from .enumeration import TooLarge
from .graph import GraphError, read_edge_list
from .labelings import Labeling, NotInProperty, read_labeling, write_labeling
from .refix import ErrorBudget, RefixRunner
from .schemes import SchemeId, get_scheme, run_verifier

REPORT_VERSION = 1
log = logging.getLogger("lcllab")


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    command: str
    graph_path: str | None = None
    labeling_path: str | None = None
    scheme_id: str | None = None
    i: int | None = None
    seed: int | None = None
    output_path: str | None = None
    format: str = "json"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _graph(args):
    if not args.graph:
        raise UsageError("--graph is required")
    return read_edge_list(_read(args.graph))


def _labels(args, required=True):
    if not args.labels:
        if required:
            raise UsageError("--labels is required")
        return None
    return read_labeling(_read(args.labels))


def _scheme(args, n):
    if not args.scheme:
        raise UsageError("--scheme is required")
    return get_scheme(args.scheme, n, strict=getattr(args, "strict_alg3", False),
                      repaired=getattr(args, "repaired_3labels", False))


def _emit(args, report: dict, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        out = text
    else:
        out = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _report(args, command: str, body: dict, t0: float) -> dict:
    cfg = ExperimentConfig(command, getattr(args, "graph", None), getattr(args, "labels", None),
                           getattr(args, "scheme", None), getattr(args, "refix", None) or getattr(args, "i", None),
                           getattr(args, "seed", None), args.out, args.format)
    return {"version": REPORT_VERSION, "config": asdict(cfg), **body, "wall_time": time.perf_counter() - t0}


def _jobs(args) -> int:
    return args.jobs if args.jobs else oracle.default_jobs()


# -- commands --------------------------------------------------------------


def cmd_label(args) -> int:
    g = _graph(args)
    spec = _scheme(args, g.n)
    try:
        lab = spec.label(g)
    except NotInProperty as exc:
        raise UsageError(f"graph is not in {spec.prop.value}: {exc}") from exc
    text = write_labeling(lab)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    g = _graph(args)
    lab = _labels(args)
    spec = _scheme(args, g.n)
    if len(lab) != g.n:
        raise UsageError(f"labeling has {len(lab)} nodes, graph has {g.n}")
    if lab.alphabet_size > spec.alphabet_size:
        raise UsageError(f"labeling alphabet {lab.alphabet_size} exceeds scheme alphabet {spec.alphabet_size}")
    if args.refix is None:
        verdicts = list(run_verifier(g, lab, spec).verdicts)
        patches = None
    else:
        budget = ErrorBudget(args.refix, spec.view_distance)
        results = RefixRunner(g, lab, spec, budget).all_verdicts()
        verdicts = [r.accept for r in results]
        patches = {str(r.node): ([list(p) for p in r.imagined.patch] if r.imagined else None) for r in results}
    body = {"verdicts": verdicts, "summary": {"nodes": g.n, "accepting": sum(verdicts),
                                              "rejecting": [v for v, ok in enumerate(verdicts) if not ok]}}
    if patches is not None:
        body["imagined_patches"] = patches
    text = "".join(f"{v} {'accept' if ok else 'reject'}\n" for v, ok in enumerate(verdicts))
    _emit(args, _report(args, "verify", body, t0), text)
    return 0 if all(verdicts) else 1


def _sweep_text(rep: oracle.SchemeReport, spec) -> str:
    lam = "n+1" if spec.scheme_id in oracle.GROWING else str(spec.alphabet_size)
    rows = [("Problem", "View dist.", "# Labels", "Result"),
            (spec.problem, str(spec.view_distance), lam,
             f"{'pass' if rep.passed else 'FAIL'} (n<={rep.n_range[1]}, {rep.graphs_checked} graphs)")]
    widths = [max(len(r[k]) for r in rows) for k in range(4)]
    lines = [" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    if args.nmax is None:
        raise UsageError("--nmax is required")
    spec = get_scheme(args.scheme, args.nmax, strict=args.strict_alg3, repaired=args.repaired_3labels)
    try:
        rep = oracle.check_scheme(spec, args.nmax, dedup=not args.labeled, jobs=_jobs(args))
    except TooLarge as exc:
        raise UsageError(str(exc)) from exc
    body = {"report": rep.to_dict()}
    _emit(args, _report(args, "sweep", body, t0), _sweep_text(rep, spec))
    return 0 if rep.passed else 1


def _certificate_run(args, command: str, certs) -> int:
    t0 = time.perf_counter()
    certs = list(certs)
    bad = [c for c in certs if not c.validate()]
    body = {"certificates": len(certs), "valid": len(certs) - len(bad),
            "notes": sorted({c.note.split(",")[0] for c in certs}),
            "witnesses": [c.to_dict() for c in (bad or certs)[:3]]}
    text = f"{command}: {len(certs) - len(bad)}/{len(certs)} certificates valid\n"
    _emit(args, _report(args, command, body, t0), text)
    return 0 if not bad else 1


def cmd_thm32(args) -> int:
    lab = _labels(args, required=False)
    labs = [lab] if lab else [Labeling(t, 2) for t in product(range(2), repeat=7)]
    return _certificate_run(args, "thm32", (oracle.thm32_construction(l) for l in labs))


def cmd_thm36(args) -> int:
    lab = _labels(args, required=False)
    if lab is not None:
        labs = [lab]
    else:
        n = args.n or oracle.pigeonhole_length(args.lam, args.d)
        if args.lam ** n > 1 << 20:
            raise UsageError("exhaustive run too large; pass --labels")
        labs = [Labeling(t, args.lam) for t in product(range(args.lam), repeat=n)]
    try:
        certs = [oracle.thm36_construction(l, args.d) for l in labs]
    except oracle.NoRepeat as exc:
        raise UsageError(str(exc)) from exc
    return _certificate_run(args, "thm36", certs)


def cmd_thm61(args) -> int:
    lab = _labels(args, required=False)
    build = oracle.thm61_absence_construction if args.absence else oracle.thm61_construction
    size = 3 * args.i + 1 if args.absence else 3 * args.i + 4
    labs = [lab] if lab else [Labeling(t, 2) for t in product(range(2), repeat=size)]
    try:
        certs = [build(args.i, l) for l in labs]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _certificate_run(args, "thm61", certs)


def cmd_congest(args) -> int:
    t0 = time.perf_counter()
    g = _graph(args)
    lab = _labels(args)
    if len(lab) != g.n:
        raise UsageError(f"labeling has {len(lab)} nodes, graph has {g.n}")
    body = {}
    if args.plan:
        plan = read_plan_checked(_read(args.plan), lab)
        body["within_half"] = corruption_within_half(g, plan, closed=args.closed)
        body["neighborhood"] = "closed" if args.closed else "open"
        lab = plan.apply(lab)
    res = congest_bipartite(g, lab, trace=args.trace)
    verdicts = list(res.verdicts.verdicts)
    body.update({"verdicts": verdicts, "rounds": res.rounds, "max_bits": res.max_bits,
                 "summary": {"nodes": g.n, "accepting": sum(verdicts),
                             "rejecting": [v for v, ok in enumerate(verdicts) if not ok]}})
    if args.trace:
        body["trace"] = [asdict(e) for e in res.trace]
    text = "".join(f"{v} {'accept' if ok else 'reject'}\n" for v, ok in enumerate(verdicts))
    if args.trace:
        text = "".join(f"r{e.round} {e.src}->{e.dst} {e.msg}\n" for e in res.trace) + text
    _emit(args, _report(args, "congest-bipartite", body, t0), text)
    return 0 if all(verdicts) else 1


def cmd_corrupt(args) -> int:
    t0 = time.perf_counter()
    g = _graph(args)
    lab = _labels(args)
    d = 1
    spec = None
    if args.scheme:
        spec = _scheme(args, g.n)
        d = spec.view_distance
        if lab.alphabet_size < spec.alphabet_size:
            lab = Labeling(lab.labels, spec.alphabet_size)
    budget = ErrorBudget(args.i, d)
    if args.worst_case:
        if spec is None:
            raise UsageError("--worst-case needs --scheme")
        plan = worst_case_search(g, lab, spec, budget, refix=not args.no_refix)
        body = {"mode": "worst-case", "found": plan is not None,
                "plan": {str(k): v for k, v in sorted(plan.changes.items())} if plan else None}
        text = write_plan(plan, lab) if plan else "# no breaking plan\n"
        _emit(args, _report(args, "corrupt", body, t0), text)
        return 1 if plan else 0
    try:
        plan = random_plan(g, lab, budget, args.seed)
    except SamplingExhausted as exc:
        raise UsageError(str(exc)) from exc
    assert validate_budget(g, plan, budget)
    body = {"mode": "random", "plan": write_plan(plan, lab).splitlines(), "labels": list(plan.apply(lab).labels)}
    _emit(args, _report(args, "corrupt", body, t0), write_plan(plan, lab))
    if args.labels_out:
        Path(args.labels_out).write_text(write_labeling(plan.apply(lab)))
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcllab", description="Locally checkable labeling laboratory")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, labels=True, scheme=True):
        if graph:
            sp.add_argument("--graph", help="edge list: 'n m' header then 'u v' lines")
        if labels:
            sp.add_argument("--labels", help="labeling: 'lambda=<k>' header then 'node label' lines")
        if scheme:
            sp.add_argument("--scheme", choices=[s.value for s in SchemeId])
            sp.add_argument("--strict-alg3", action="store_true",
                            help="view-3 verifier also checks every child's back-pointer")
            sp.add_argument("--repaired-3labels", action="store_true",
                            help="3-label verifier that accepts 0-labelled tree nodes")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=["json", "text"], default="json")

    sp = sub.add_parser("label", help="write the oracular labeling of a graph")
    common(sp, labels=False)
    sp.set_defaults(func=cmd_label)

    sp = sub.add_parser("verify", help="run a verifier at every node")
    common(sp)
    sp.add_argument("--refix", type=int, metavar="I", help="error-tolerant verification with budget I")
    sp.set_defaults(func=cmd_verify)

    for name in ("sweep", "check-scheme"):
        sp = sub.add_parser(name, help="exhaustive completeness/soundness check")
        common(sp, graph=False, labels=False)
        sp.add_argument("--nmax", type=int)
        sp.add_argument("--labeled", action="store_true", help="enumerate labeled graphs, no isomorphism reduction")
        sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: $LCLLAB_JOBS or all cores)")
        sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("thm32", help="2 labels at view 1 cannot detect cycles")
    common(sp, graph=False, scheme=False)
    sp.set_defaults(func=cmd_thm32)

    sp = sub.add_parser("thm36", help="repeated window on a long path gives an accepted cycle")
    common(sp, graph=False, scheme=False)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--lam", type=int, default=2)
    sp.add_argument("--n", type=int, default=None)
    sp.set_defaults(func=cmd_thm36)

    sp = sub.add_parser("thm61", help="i global errors defeat view distance <= i")
    common(sp, graph=False, scheme=False)
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--absence", action="store_true", help="cycle-absence analogue")
    sp.set_defaults(func=cmd_thm61)

    sp = sub.add_parser("congest-bipartite", help="2-round CONGEST bipartiteness with majority correction")
    common(sp, scheme=False)
    sp.add_argument("--plan", help="corruption plan ('node old new' lines) applied to --labels")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--closed-neighborhood", dest="closed", action="store_true", default=True,
                     help="budget counts v with its neighbours (default)")
    grp.add_argument("--open-neighborhood", dest="closed", action="store_false",
                     help="budget counts neighbours only")
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_congest)

    sp = sub.add_parser("corrupt", help="sample or search a budget-respecting corruption")
    common(sp)
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--worst-case", action="store_true")
    sp.add_argument("--no-refix", action="store_true", help="worst case against the base verifier")
    sp.add_argument("--labels-out", help="also write the corrupted labeling here")
    sp.set_defaults(func=cmd_corrupt)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphError, TooLarge, NotInProperty) as exc:
        print(f"lcllab: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"lcllab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
