"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error, 2 a checked claim does not
hold, 3 a verification run could not finish within its budget.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .formats import ParseError, load_matrix, load_semiring
from .graph import (DEFAULT_MEMORY_CAP, GraphBudgetError, NotAVertex, UndefinedDiameter, build_graph,
                    certify_distance_ge4, component_indices, diameter, distance, export_graph, matrix_label)
from .matrix import MatrixMismatch
from .semiring import StructureError, classify, validate_axioms
from .space import BudgetExceeded, centralizer_enumerate, is_central
from .verify import DEFAULT_SEED, FAIL, INCOMPLETE, THEOREMS, Budget, verify

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_INCOMPLETE = 0, 1, 2, 3
MIN_MEMORY_CAP = 64 << 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandConfig:
    command: str
    action: Optional[str] = None
    semiring: Optional[str] = None
    n: Optional[int] = None
    a: Optional[str] = None
    b: Optional[str] = None
    matrix: Optional[str] = None
    mode: str = "materialized"
    memory_cap: int = DEFAULT_MEMORY_CAP
    allow_large: bool = False
    workers: int = 1
    seed: int = DEFAULT_SEED
    budget: str = "full"
    theorem: Optional[str] = None
    fmt: str = "text"
    output: Optional[str] = None
    timing: bool = True


def parse_size(text: str) -> int:
    m = re.fullmatch(r"\s*(\d+)\s*([kKmMgG]?)(i?[bB])?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad size {text!r} (examples: 512M, 1G, 1073741824)")
    scale = {"": 1, "k": 1 << 10, "m": 1 << 20, "g": 1 << 30}[m.group(2).lower()]
    value = int(m.group(1)) * scale
    if value < MIN_MEMORY_CAP:
        raise argparse.ArgumentTypeError("memory cap must be at least 64 MiB")
    return value


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _env_workers() -> int:
    raw = os.environ.get("COMMGRAPH_WORKERS")
    if raw is None:
        return 1
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"COMMGRAPH_WORKERS: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="commgraph", description="Commuting graphs of matrix semirings.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def graph_opts(q, need_n=True):
        q.add_argument("--semiring", required=need_n, help="builtin name or semiring file")
        q.add_argument("--n", type=_positive, required=need_n)
        q.add_argument("--mode", choices=("materialized", "implicit"), default="materialized")
        q.add_argument("--memory-cap", type=parse_size, default=DEFAULT_MEMORY_CAP)
        q.add_argument("--allow-large", action="store_true")
        q.add_argument("--workers", type=_positive, default=None)

    sr = sub.add_parser("semiring", help="semiring table tools")
    srs = sr.add_subparsers(dest="action", parser_class=_Parser)
    srs.required = True
    chk = srs.add_parser("check", help="validate axioms and classify")
    chk.add_argument("file", help="semiring file or builtin name")
    chk.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    g = sub.add_parser("graph", help="commuting graph computations")
    gs = g.add_subparsers(dest="action", parser_class=_Parser)
    gs.required = True
    for name in ("diameter", "distance", "components", "export"):
        q = gs.add_parser(name)
        graph_opts(q)
        if name == "distance":
            q.add_argument("--a", required=True)
            q.add_argument("--b", required=True)
        if name == "export":
            q.add_argument("--format", dest="fmt", choices=("dot", "csv"), required=True)
            q.add_argument("--output")
        else:
            q.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    c = sub.add_parser("certify-ge4", help="certify d(A, B) >= 4 by neighbourhood scans")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--semiring", help="defaults to the semiring named in the matrix files")
    c.add_argument("--workers", type=_positive, default=None)
    c.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="run a bundled verification")
    v.add_argument("theorem", choices=list(THEOREMS) + ["all"])
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--budget", default="full", help="quick or full, with optional ,key=value overrides")
    v.add_argument("--output")
    v.add_argument("--no-timing", dest="timing", action="store_false",
                   help="write elapsed_ms as null so reports are byte-identical across runs")

    z = sub.add_parser("centralizer", help="enumerate the centralizer of a matrix")
    z.add_argument("--matrix", required=True)
    z.add_argument("--semiring")
    z.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    return p


def _config(ns: argparse.Namespace) -> CommandConfig:
    cfg = CommandConfig(command=ns.command)
    for key in vars(ns):
        if hasattr(cfg, key) and getattr(ns, key) is not None:
            setattr(cfg, key, getattr(ns, key))
    if getattr(ns, "workers", None) is None:
        cfg.workers = _env_workers()
    if ns.command == "verify":
        cfg.theorem = ns.theorem
    if ns.command == "semiring":
        cfg.semiring = ns.file
    return cfg


def _finite_semiring(ref: str):
    S = load_semiring(ref)
    if not S.finite:
        raise UsageError(f"{S.name} is infinite; this subcommand needs a finite semiring to enumerate")
    return S


def _emit(text: str, output: Optional[str] = None, binary: bytes | None = None):
    data = binary if binary is not None else text.encode("utf-8")
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _value(x):
    return "inf" if x == float("inf") else int(x)


# -- subcommands -------------------------------------------------------------------

def cmd_semiring(cfg: CommandConfig) -> int:
    S = load_semiring(cfg.semiring)
    if not S.finite:
        raise UsageError("the tropical semiring has no finite table to check")
    report = validate_axioms(S)
    props = classify(S) if report.valid else None
    if cfg.fmt == "json":
        doc = {
            "semiring": S.name,
            "order": S.order,
            "valid": report.valid,
            "violations": [{"axiom": v.axiom, "message": v.message,
                            "witness": list(v.witness)} for v in report.violations],
            "properties": None if props is None else dict(vars(props)),
        }
        _emit(json.dumps(doc, indent=2) + "\n")
    else:
        lines = [f"semiring {S.name} order {S.order}: {'valid' if report.valid else 'INVALID'}"]
        for v in report.violations:
            lines.append(f"  {v.axiom}: {v.message} at ({', '.join(v.witness)})")
        if props is not None:
            lines += [f"  {k}: {'yes' if val else 'no'}" for k, val in vars(props).items()]
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if report.valid else EXIT_VIOLATED


def _graph(cfg: CommandConfig, S):
    return build_graph(S, cfg.n, cfg.mode, memory_cap=cfg.memory_cap,
                       allow_large=cfg.allow_large, workers=cfg.workers)


def cmd_graph(cfg: CommandConfig) -> int:
    S = _finite_semiring(cfg.semiring)
    if cfg.action == "distance":
        A, B = load_matrix(cfg.a, S), load_matrix(cfg.b, S)
        for M, label in ((A, "--a"), (B, "--b")):
            if M.n != cfg.n:
                raise UsageError(f"{label} is {M.n}x{M.n} but --n is {cfg.n}")
    g = _graph(cfg, S)
    if cfg.action == "export":
        _emit("", cfg.output, export_graph(g, cfg.fmt))
        return EXIT_OK
    if cfg.action == "diameter":
        d = diameter(g, cfg.workers)
        doc = {"semiring": S.name, "n": cfg.n, "vertices": len(g), "diameter": _value(d.value),
               "endpoints": [matrix_label(M) for M in d.endpoints],
               "path": [matrix_label(M) for M in d.witness_path or []]}
        text = f"{doc['diameter']}\n"
    elif cfg.action == "distance":
        d = distance(g, A, B)
        doc = {"semiring": S.name, "n": cfg.n, "distance": _value(d.value),
               "path": [matrix_label(M) for M in d.witness_path or []]}
        text = f"{doc['distance']}\n" + "".join(f"  {p}\n" for p in doc["path"])
    else:
        comps = component_indices(g)
        doc = {"semiring": S.name, "n": cfg.n, "vertices": len(g), "components": len(comps),
               "sizes": [len(c) for c in comps]}
        text = f"{len(comps)}\n" + "".join(f"  component {i}: {len(c)} vertices\n" for i, c in enumerate(comps))
    _emit(json.dumps(doc, indent=2) + "\n" if cfg.fmt == "json" else text)
    return EXIT_OK


def _matrix_pair(cfg: CommandConfig):
    S = load_semiring(cfg.semiring) if cfg.semiring else None
    A = load_matrix(cfg.a, S)
    B = load_matrix(cfg.b, S or A.semiring)
    if A.n != B.n:
        raise UsageError(f"matrix sizes differ: {A.n} and {B.n}")
    return A, B


def cmd_certify(cfg: CommandConfig) -> int:
    A, B = _matrix_pair(cfg)
    if not A.semiring.finite:
        raise UsageError("certify-ge4 scans all matrices and needs a finite semiring")
    cert = certify_distance_ge4(A.semiring, A.n, A, B, workers=cfg.workers)
    if cfg.fmt == "json":
        doc = {"holds": cert.holds, "evidence": cert.evidence,
               "neighbors_a": [matrix_label(M) for M in cert.neighbors_a],
               "neighbors_b": [matrix_label(M) for M in cert.neighbors_b]}
        _emit(json.dumps(doc, indent=2) + "\n")
    else:
        ev = cert.evidence
        lines = [f"d(A, B) >= 4: {'holds' if cert.holds else 'does not hold'}"]
        lines += [f"  {k}: {v}" for k, v in ev.items() if k != "counterexample"]
        if "counterexample" in ev:
            lines.append(f"  counterexample: {json.dumps(ev['counterexample'])}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if cert.holds else EXIT_VIOLATED


def cmd_verify(cfg: CommandConfig) -> int:
    try:
        budget = Budget.parse(cfg.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = verify(cfg.theorem, budget, cfg.seed)
    reports = result if isinstance(result, list) else [result]
    if isinstance(result, list):
        text = json.dumps([r.to_dict(cfg.timing) for r in reports], indent=2)
    else:
        text = result.to_json(cfg.timing)
    _emit(text + "\n", cfg.output)
    states = {r.status for r in reports}
    if FAIL in states:
        return EXIT_VIOLATED
    if INCOMPLETE in states:
        return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_centralizer(cfg: CommandConfig) -> int:
    S = load_semiring(cfg.semiring) if cfg.semiring else None
    A = load_matrix(cfg.matrix, S)
    if not A.semiring.finite:
        raise UsageError("centralizer enumeration needs a finite semiring")
    members = centralizer_enumerate(A)
    if cfg.fmt == "json":
        doc = {"matrix": matrix_label(A), "central": is_central(A), "size": len(members),
               "centralizer": [matrix_label(M) for M in members]}
        _emit(json.dumps(doc, indent=2) + "\n")
    else:
        _emit(f"{len(members)}\n" + "".join(f"  {matrix_label(M)}\n" for M in members))
    return EXIT_OK


COMMANDS = {
    "semiring": cmd_semiring,
    "graph": cmd_graph,
    "certify-ge4": cmd_certify,
    "verify": cmd_verify,
    "centralizer": cmd_centralizer,
}


def run(cfg: CommandConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        return run(_config(ns))
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, StructureError, MatrixMismatch, BudgetExceeded, GraphBudgetError,
            UndefinedDiameter, NotAVertex, FileNotFoundError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
