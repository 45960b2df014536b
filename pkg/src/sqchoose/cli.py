"""Command-line front end.

Exit codes: 0 = all claims pass / colorable / result found, 1 = definite
failure or uncolorable, 2 = unknown (budget hit or undecided), 3 = usage
or precondition error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import choosability as ch
from .construction import LabeledGraph, build_iterated
from .errors import ConstructionError, ContractViolation, DomainError, SizeGuardError
from .graph import Graph, to_dot
from .latin import mols_family
from .verify import CLAIM_ORDER, applicable_claims, gap_report, recheck_witness, run_claim

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3
WORKERS_ENV = "SQCHOOSE_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    command: str
    parameters: dict
    input_digests: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    wall_time: float = 0.0
    workers: int = 1
    summary: dict = field(default_factory=dict)
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "input_digests": self.input_digests,
            "outputs": self.outputs,
            "wall_time": round(self.wall_time, 6),
            "workers": self.workers,
            "summary": self.summary,
            "error": self.error,
        }


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _dump(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _write(manifest: RunManifest, path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    manifest.outputs.append(str(path))


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> Graph:
    return Graph.from_json(_load_json(path))


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# -- commands -----------------------------------------------------------------

def cmd_construct(args, manifest: RunManifest) -> int:
    lg = build_iterated(args.n, args.rounds)
    text = _dump(lg.to_json())
    if args.out:
        _write(manifest, args.out, text)
    else:
        sys.stdout.write(text)
    if args.dot:
        _write(manifest, args.dot, to_dot(lg.graph, [lab.name() for lab in lg.labels]))
    manifest.summary = {"vertices": lg.graph.vertex_count, "edges": lg.graph.edge_count}
    print(f"constructed n={args.n} rounds={args.rounds}: {lg.graph.vertex_count} vertices, "
          f"{lg.graph.edge_count} edges", file=sys.stderr)
    return EXIT_OK


def _claim_job(payload: tuple[dict, str]) -> dict:
    data, claim = payload
    lg = LabeledGraph.from_json(data)
    rep = run_claim(lg, claim)
    out = rep.to_json({"n": lg.n, "rounds": lg.rounds})
    out["witness_rechecked"] = recheck_witness(lg, rep) if not rep.passed else None
    return out


def cmd_verify(args, manifest: RunManifest) -> int:
    if args.graph:
        lg = LabeledGraph.from_json(_load_json(args.graph))
    elif args.n is not None:
        lg = build_iterated(args.n, args.rounds)
    else:
        raise UsageError("verify needs --graph or --n")
    if args.claims == "all":
        claims = applicable_claims(lg.rounds)
    else:
        claims = tuple(c.strip() for c in args.claims.split(",") if c.strip())
        unknown = [c for c in claims if c not in CLAIM_ORDER]
        if unknown:
            raise UsageError(f"unknown claims {unknown}; choose from {list(CLAIM_ORDER)}")
    claims = tuple(sorted(set(claims), key=CLAIM_ORDER.index))
    data = lg.to_json()
    jobs = [(data, c) for c in claims]
    manifest.workers = args.workers
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            certs = list(pool.map(_claim_job, jobs))
    else:
        certs = [_claim_job(j) for j in jobs]
    for cert in certs:
        stats = ", ".join(f"{k}={v}" for k, v in cert["stats"].items())
        print(f"{cert['status'].upper():4} {cert['claim']} ({stats})")
        if cert["witness"]:
            print(f"     witness: {json.dumps(cert['witness'][0])}")
        if args.out_dir:
            _write(manifest, Path(args.out_dir) / f"{cert['claim']}.json", _dump(cert))
    manifest.summary = {c["claim"]: c["status"] for c in certs}
    return EXIT_OK if all(c["status"] == "pass" for c in certs) else EXIT_FAIL


def cmd_bounds(args, manifest: RunManifest) -> int:
    rep = gap_report(args.n, args.rounds)
    data = rep.to_json()
    text = _dump(data)
    if args.out:
        _write(manifest, args.out, text)
    lower_note = f"chi_l >= {rep.chi_l_lower} (strict bound {rep.vetrik_strict}"
    if rep.kierstead is not None:
        lower_note += f", K_3*r value {rep.kierstead}"
    lower_note += ")"
    print(f"n={rep.n} rounds={rep.rounds}: chi <= {rep.chi_upper}, {lower_note}, gap >= {rep.gap_lower}")
    if rep.reference_gap_bound is not None:
        print(f"gap bound n^2-6n+3 = {rep.reference_gap_bound}; exceeded: {rep.exceeds_reference_bound}")
    print("counterexample certified" if rep.certified else
          ("formula only (not certified)" if rep.formula_only else "not certified"))
    manifest.summary = {"certified": rep.certified, "gap_lower": rep.gap_lower}
    return EXIT_OK if all(c.passed for c in rep.certificates) else EXIT_FAIL


def cmd_solve(args, manifest: RunManifest) -> int:
    g = _load_graph(args.graph)
    lists = ch.ListAssignment.from_json(_load_json(args.lists), g.vertex_count)
    res = ch.is_l_colorable(g, lists, args.budget)
    out = {"status": res.status, "nodes": res.nodes,
           "coloring": {str(v): c for v, c in enumerate(res.coloring)} if res.coloring else None}
    text = _dump(out)
    if args.out:
        _write(manifest, args.out, text)
    else:
        sys.stdout.write(text)
    manifest.summary = {"status": res.status, "nodes": res.nodes}
    return {ch.COLORABLE: EXIT_OK, ch.UNCOLORABLE: EXIT_FAIL}.get(res.status, EXIT_UNKNOWN)


def cmd_oracle(args, manifest: RunManifest) -> int:
    g = _load_graph(args.graph)
    rule = ch.default_palette_cap if args.palette_cap is None else (lambda k, nv: args.palette_cap)
    res = ch.list_chromatic_oracle(g, args.max_k, rule, args.size_guard, args.budget)
    text = _dump(res.to_json())
    if args.out:
        _write(manifest, args.out, text)
    else:
        sys.stdout.write(text)
    manifest.summary = {"list_chromatic": res.list_chromatic, "status": res.status}
    return EXIT_OK if res.status == "exact" else EXIT_UNKNOWN


def cmd_badsearch(args, manifest: RunManifest) -> int:
    g = _load_graph(args.graph)
    res = ch.search_bad_assignment(g, args.k, args.palette, args.budget)
    out = {"found": res.assignment is not None, "exhausted": res.exhausted,
           "candidates": res.candidates, "reason": res.reason}
    if res.assignment is not None:
        out.update(res.assignment.to_json())
    text = _dump(out)
    if args.out:
        _write(manifest, args.out, text)
    else:
        sys.stdout.write(text)
    manifest.summary = {k: out[k] for k in ("found", "exhausted", "candidates")}
    if res.assignment is not None:
        return EXIT_OK
    return EXIT_FAIL if res.exhausted else EXIT_UNKNOWN


def cmd_export_dot(args, manifest: RunManifest) -> int:
    data = _load_json(args.graph)
    g = Graph.from_json(data)
    labels = None
    if args.labels and "labels" in data:
        labels = [lab.name() for lab in LabeledGraph.from_json(data).labels]
    text = to_dot(g, labels)
    if args.out:
        _write(manifest, args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_latin(args, manifest: RunManifest) -> int:
    squares = mols_family(args.n)
    if args.json:
        sys.stdout.write(_dump([sq.to_json() for sq in squares]))
    else:
        for i, sq in enumerate(squares, start=1):
            print(f"L_{i}")
            print(sq.grid())
    return EXIT_OK


def cmd_report(args, manifest: RunManifest) -> int:
    from . import report

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    primes = [int(p) for p in args.primes.split(",")]
    rows = report.gap_rows(primes, args.rounds)
    for path in (report.write_csv(rows, out / "gap_table.csv"),
                 report.plot_gap_bounds(rows, out / "gap_bounds.png"),
                 report.plot_square_structure(build_iterated(args.n, args.rounds), out / "square_structure.png"),
                 report.plot_latin_squares(args.n, out / "latin_squares.png")):
        manifest.outputs.append(str(path))
    _write(manifest, out / "gap_report.json", _dump(gap_report(args.n, args.rounds).to_json()))
    for row in rows:
        print("\t".join(str(row[c]) for c in report.GAP_COLUMNS))
    manifest.summary = {"rows": len(rows)}
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqchoose", description=__doc__.splitlines()[0])
    parser.add_argument("--manifest", help="write a run manifest JSON to this path")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build the labeled graph for (n, rounds)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--dot", help="also write a DOT export")
    p.set_defaults(func=cmd_construct, inputs=())

    p = sub.add_parser("verify", help="run structural claim verifiers")
    p.add_argument("--graph", help="labeled graph JSON")
    p.add_argument("--n", type=int)
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--claims", default="all", help="'all' or comma-separated claim ids")
    p.add_argument("--out-dir", help="directory for one certificate JSON per claim")
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=cmd_verify, inputs=("graph",))

    p = sub.add_parser("bounds", help="gap report for (n, rounds)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds, inputs=())

    p = sub.add_parser("solve", help="decide L-colorability")
    p.add_argument("--graph", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--budget", type=int, default=0, help="node limit, 0 = unlimited")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve, inputs=("graph", "lists"))

    p = sub.add_parser("oracle", help="brute-force list chromatic number of a tiny graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--palette-cap", type=int)
    p.add_argument("--size-guard", type=int, default=8)
    p.add_argument("--budget", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle, inputs=("graph",))

    p = sub.add_parser("badsearch", help="search for a bad k-list assignment")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--palette", type=int)
    p.add_argument("--budget", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_badsearch, inputs=("graph",))

    p = sub.add_parser("export-dot", help="convert graph JSON to DOT")
    p.add_argument("--graph", required=True)
    p.add_argument("--labels", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot, inputs=("graph",))

    p = sub.add_parser("latin", help="print the MOLS family of order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_latin, inputs=())

    p = sub.add_parser("report", help="gap table CSV plus figures")
    p.add_argument("--n", type=int, default=3, help="order used for the structure figures")
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--primes", default="3,5,7,11,13")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report, inputs=())
    return parser


def _manifest_path(args) -> Path | None:
    if args.manifest:
        return Path(args.manifest)
    target = getattr(args, "out", None) or getattr(args, "out_dir", None)
    if not target:
        return None
    target = Path(target)
    if getattr(args, "out_dir", None) and not getattr(args, "out", None):
        return target / "manifest.json"
    return target.with_name(target.name + ".manifest.json")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "inputs", "manifest")}
    manifest = RunManifest(args.command, params)
    start = time.perf_counter()
    try:
        for key in args.inputs:
            path = getattr(args, key, None)
            if path:
                manifest.input_digests[path] = _digest(path)
        code = args.func(args, manifest)
    except (DomainError, ContractViolation, ConstructionError, SizeGuardError, UsageError, OSError) as exc:
        manifest.error = f"{type(exc).__name__}: {exc}"
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except Exception as exc:  # still leave a manifest behind
        manifest.error = f"{type(exc).__name__}: {exc}"
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        code = EXIT_FAIL
    manifest.wall_time = time.perf_counter() - start
    manifest.summary.setdefault("exit_code", code)
    path = _manifest_path(args)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(_dump(manifest.to_json()))
    return code


if __name__ == "__main__":
    sys.exit(main())
