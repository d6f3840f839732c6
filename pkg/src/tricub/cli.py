"""Command-line interface: gen, analyze, batch, verify."""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import certificates
from .covers import DEFAULT_NODE_BUDGET, five_cdc, scc_exact
from .errors import GraphFormatError, NotCubicError, SearchInconclusive
from .generators import CATALOG_NAMES, caterpillar_tree, generate, generate_from_tree, random_cubic
from .graph import Multigraph, classify, require_cubic, serialize_edge_list
from .hcoloring import find_hcoloring, petersen_coloring_to_cdc
from .io import read_graph, to_sparse6
from .params import T_exact, check_bounds, check_gallai, t_exact
from .reports import (
    CONJECTURE,
    EXIT_INCONCLUSIVE,
    FAIL,
    INCONCLUSIVE,
    INFO,
    PASS,
    THEOREM,
    Report,
    Row,
    compare,
)

CHECKS = ("t", "T", "scc", "cdc", "hcolor", "gallai", "bounds")
DEFAULT_CHECKS = "t,gallai,bounds"
# parse errors and rejected inputs; distinct from the report exit codes 0-3
EXIT_INPUT_ERROR = 4
CSV_VERSION = "tricub-batch-csv v1"
CSV_COLUMNS = ("source", "graph_id", "status", "exit_code", "results", "wall_time", "solver_config")


class InputRejected(ValueError):
    pass


@dataclass
class SolverConfig:
    checks: tuple[str, ...]
    budget: Optional[int] = None
    timeout: Optional[float] = None
    node_budget: int = DEFAULT_NODE_BUDGET
    hcolor_budget: int = 1_000_000
    seed: int = 0

    def as_dict(self) -> dict:
        return {
            "checks": list(self.checks),
            "budget": self.budget,
            "timeout": self.timeout,
            "node_budget": self.node_budget,
            "hcolor_budget": self.hcolor_budget,
            "seed": self.seed,
        }


@dataclass
class RunRecord:
    graph_id: str
    source: str
    results: dict
    wall_time: Optional[float]
    solver_config: dict
    exit_code: int = 0
    status: str = "ok"

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "graph_id": self.graph_id,
            "source": self.source,
            "status": self.status,
            "exit_code": self.exit_code,
            "results": self.results,
            "solver_config": self.solver_config,
        }
        if timing:
            d["wall_time"] = None if self.wall_time is None else round(self.wall_time, 6)
        return d


def parse_checks(text: str) -> tuple[str, ...]:
    names = tuple(c.strip() for c in text.split(",") if c.strip())
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown check(s) {', '.join(bad)}; choose from {', '.join(CHECKS)}")
    return names


def load_input(spec: str, fmt: Optional[str] = None) -> Multigraph:
    """A graph file, or a catalog name when no such file exists."""
    path = Path(spec)
    if not path.exists() and spec in CATALOG_NAMES:
        return generate(spec)
    return read_graph(path, fmt)


# -- checks ------------------------------------------------------------------------------

def _check_t(g, cfg, rep, certs):
    cert = t_exact(g)
    rep.values["t"] = cert.value
    rep.values["t_witness_u"] = sorted(cert.witness_u)
    rep.add(Row("t", INFO, cert.value, note="fewest expansions for a perfect matching"))
    certs["t"] = cert


def _check_T(g, cfg, rep, certs):
    cert = T_exact(g, budget=cfg.budget, timeout=cfg.timeout)
    rep.values["T"] = cert.value
    rep.values["T_exact"] = cert.exact
    rep.values["T_lower_bound"] = cert.lower_bound
    if cert.value is not None:
        rep.values["T_witness_u"] = sorted(cert.witness_u)
    certs["T"] = cert
    status = PASS if cert.exact else INCONCLUSIVE
    note = "" if cert.exact else f"search stopped; every size below {cert.lower_bound} ruled out"
    rep.add(Row("T", INFO, cert.value, status=status, note=note))


def _check_scc(g, cfg, rep, certs):
    res = scc_exact(g, node_budget=cfg.node_budget)
    rep.values["scc"] = res.length
    rep.values["scc_exact"] = res.exact
    if res.cover is not None:
        certs["scc"] = res.cover
    rep.add(Row("scc", INFO, res.length, status=PASS if res.exact else INCONCLUSIVE,
                note="" if res.exact else "node budget exhausted; value is an upper bound"))


def _check_cdc(g, cfg, rep, certs):
    try:
        cdc = five_cdc(g, maximize_c0=True, node_budget=cfg.node_budget)
    except SearchInconclusive:
        rep.add(Row("5cdc-exists", CONJECTURE, status=INCONCLUSIVE, note="search budget exhausted"))
        return
    if cdc is None:
        rep.add(compare("5cdc-exists", CONJECTURE, 0, "=", 1))
        return
    certs["cdc"] = cdc
    rep.values["max_c0"] = len(cdc.c0.edges)
    rep.add(compare("5cdc-exists", CONJECTURE, 1, "=", 1))


def _check_hcolor(g, cfg, rep, certs):
    from fractions import Fraction

    try:
        f = find_hcoloring(g, generate("P10"), budget=cfg.hcolor_budget)
    except SearchInconclusive:
        rep.add(Row("petersen-coloring", CONJECTURE, status=INCONCLUSIVE, note="search budget exhausted"))
        return
    if f is None:
        rep.add(compare("petersen-coloring", CONJECTURE, 0, "=", 1))
        return
    certs["hcolor"] = f
    rep.add(compare("petersen-coloring", CONJECTURE, 1, "=", 1))
    cdc = petersen_coloring_to_cdc(g, f)
    certs["hcolor_cdc"] = cdc
    rep.values["hcolor_c0"] = len(cdc.c0.edges)
    rep.add(compare("coloring-C0>=3E/5", THEOREM, len(cdc.c0.edges), ">=", Fraction(3, 5) * g.m))


def _check_gallai(g, cfg, rep, certs):
    rep.extend(check_gallai(g))


def _check_bounds(g, cfg, rep, certs):
    b = check_bounds(g, budget=cfg.budget, timeout=cfg.timeout, node_budget=cfg.node_budget, T_cert=certs.get("T"))
    rep.rows.extend(b.rows)
    for k, v in b.values.items():
        rep.values.setdefault(k, v)


RUNNERS = {
    "t": _check_t, "T": _check_T, "scc": _check_scc, "cdc": _check_cdc,
    "hcolor": _check_hcolor, "gallai": _check_gallai, "bounds": _check_bounds,
}
NEEDS_BRIDGELESS = ("T", "scc")


def analyze_graph(g: Multigraph, cfg: SolverConfig, source: str = "") -> tuple[Report, dict]:
    """Run the selected checks; returns the report and the certificates found."""
    require_cubic(g)
    if not g.is_connected():
        raise InputRejected("input graph is disconnected")
    cert = classify(g)
    for c in NEEDS_BRIDGELESS:
        if c in cfg.checks and not cert.bridgeless:
            raise InputRejected(f"input has bridges ({c} undefined)")
    rep = Report(g.host_hash(), source or g.name)
    rep.values.update({"V": g.n, "E": g.m})
    certs: dict = {}
    for c in CHECKS:
        if c in cfg.checks:
            RUNNERS[c](g, cfg, rep, certs)
    return rep, certs


# -- subcommands ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.name == "family":
        if args.gadget is None or args.n is None:
            print("error: family needs --gadget and --n", file=sys.stderr)
            return EXIT_INPUT_ERROR
        g = generate_from_tree(caterpillar_tree(args.n), args.gadget).with_name(f"family_{args.gadget}_{args.n}")
    elif args.name == "random":
        if args.n is None:
            print("error: random needs --n", file=sys.stderr)
            return EXIT_INPUT_ERROR
        g = random_cubic(args.n, simple=args.simple, seed=args.seed).with_name(f"random_{args.n}_{args.seed}")
    else:
        try:
            g = generate(args.name)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    if args.format == "sparse6":
        text = to_sparse6(g) + "\n"
    else:
        text = (f"# {g.name}\n" if g.name else "") + serialize_edge_list(g)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _emit_certificates(g, certs, directory):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, cert in sorted(certs.items()):
        if getattr(cert, "witness", True) is None:
            continue
        (out / f"{name}.json").write_text(certificates.dumps(g, cert) + "\n")


def cmd_analyze(args) -> int:
    try:
        g = load_input(args.input, args.format)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    cfg = SolverConfig(args.checks, args.budget, args.timeout, seed=args.seed)
    try:
        rep, certs = analyze_graph(g, cfg, args.input)
    except (InputRejected, NotCubicError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if args.json:
        print(json.dumps(rep.as_dict(), sort_keys=True, indent=2))
    else:
        print(rep.as_text())
    if args.certificates:
        _emit_certificates(g, certs, args.certificates)
    code = rep.exit_code
    if any(r.kind == CONJECTURE and r.status == FAIL for r in rep.rows):
        print("CONJECTURE VIOLATION: see rows marked FAIL", file=sys.stderr)
    return code


def _batch_inputs(target: Path) -> list[Path]:
    if target.is_dir():
        return sorted(p for p in target.iterdir() if p.is_file() and not p.name.startswith("."))
    lines = target.read_text().splitlines()
    out = []
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            p = Path(line)
            out.append(p if p.is_absolute() else target.parent / p)
    return out


def _run_one(item) -> RunRecord:
    path, cfg = item
    start = time.perf_counter()
    try:
        g = read_graph(path)
        rep, _ = analyze_graph(g, cfg, str(path))
    except (OSError, GraphFormatError, NotCubicError, InputRejected, ValueError) as exc:
        return RunRecord("", str(path), {"error": str(exc)}, time.perf_counter() - start,
                         cfg.as_dict(), EXIT_INCONCLUSIVE, "failed")
    d = rep.as_dict()
    results = {"values": d["values"], "rows": d["rows"]}
    return RunRecord(rep.graph_id, str(path), results, time.perf_counter() - start, cfg.as_dict(), rep.exit_code)


def run_batch(paths, cfg: SolverConfig, jobs: int = 1) -> list[RunRecord]:
    items = [(p, cfg) for p in paths]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, items))
    return [_run_one(x) for x in items]


def format_jsonl(records, timing: bool = True) -> str:
    return "".join(json.dumps(r.as_dict(timing), sort_keys=True) + "\n" for r in records)


def format_csv(records, timing: bool = True) -> str:
    buf = _io.StringIO()
    buf.write(f"# {CSV_VERSION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([
            r.source, r.graph_id, r.status, r.exit_code,
            json.dumps(r.results, sort_keys=True),
            "" if not timing or r.wall_time is None else f"{r.wall_time:.6f}",
            json.dumps(r.solver_config, sort_keys=True),
        ])
    return buf.getvalue()


def cmd_batch(args) -> int:
    target = Path(args.inputs)
    try:
        paths = _batch_inputs(target)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    cfg = SolverConfig(args.checks, args.budget, args.timeout, seed=args.seed)
    records = run_batch(paths, cfg, args.jobs)
    timing = not args.no_timing
    use_csv = args.output is not None and args.output.endswith(".csv")
    text = format_csv(records, timing) if use_csv else format_jsonl(records, timing)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    failed = sum(1 for r in records if r.status == "failed")
    print(f"{len(records)} graphs, {failed} failed", file=sys.stderr)
    return _combine(r.exit_code for r in records)


def _combine(codes) -> int:
    codes = set(codes)
    for c in (1, 2, 3):
        if c in codes:
            return c
    return 0


def cmd_verify(args) -> int:
    try:
        g = load_input(args.graph, args.format)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    worst = 0
    for path in args.certificates:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"{path}: unreadable ({exc})")
            worst = 1
            continue
        ok, msg = certificates.verify(g, data)
        print(f"{path}: {data.get('type', '?')} {'valid' if ok else 'INVALID'} ({msg})")
        if not ok:
            worst = 1
    return worst


# -- entry point ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the report exit codes
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tricub", description="Triangle expansions of cubic graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a catalog or family graph")
    gen.add_argument("name", help=f"one of {', '.join(CATALOG_NAMES)}, 'family' or 'random'")
    gen.add_argument("--gadget", choices=("W", "Wprime"))
    gen.add_argument("--n", type=int, help="tree order for family, vertex count for random")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--simple", action="store_true", help="random: reject parallel edges")
    gen.add_argument("-o", "--output")
    gen.add_argument("--format", choices=("edgelist", "sparse6"), default="edgelist")
    gen.set_defaults(func=cmd_gen)

    def common(sp):
        sp.add_argument("--checks", type=parse_checks, default=parse_checks(DEFAULT_CHECKS),
                        help=f"comma list from {','.join(CHECKS)} (default {DEFAULT_CHECKS})")
        sp.add_argument("--budget", type=int, help="largest expansion set tried for T")
        sp.add_argument("--timeout", type=float, help="seconds allowed for the T search")
        sp.add_argument("--seed", type=int, default=0)

    an = sub.add_parser("analyze", help="run checks on one graph")
    an.add_argument("input", help="graph file or catalog name")
    an.add_argument("--format", choices=("edgelist", "sparse6"))
    an.add_argument("--json", action="store_true")
    an.add_argument("--certificates", metavar="DIR", help="write found certificates here")
    common(an)
    an.set_defaults(func=cmd_analyze)

    ba = sub.add_parser("batch", help="run checks over a directory or list file")
    ba.add_argument("inputs", help="directory of graph files or a file listing paths")
    ba.add_argument("--jobs", type=int, default=1)
    ba.add_argument("-o", "--output", help="*.csv for CSV, anything else for JSON lines")
    ba.add_argument("--no-timing", action="store_true", help="omit wall times for byte-stable output")
    common(ba)
    ba.set_defaults(func=cmd_batch)

    ve = sub.add_parser("verify", help="replay certificates against a graph")
    ve.add_argument("graph")
    ve.add_argument("certificates", nargs="+")
    ve.add_argument("--format", choices=("edgelist", "sparse6"))
    ve.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors exit 4, --help exits 0
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
