"""Command-line front end.

Every command writes one document to stdout: JSON by default, or ``text``
and ``cas`` renderings of the same payload. Exit status is 0 on success,
1 on a domain error (bad partition, no symplectic orbit, non-prime modulus)
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Sequence

from . import __version__, casexport, orbits_gl, orbits_sp, padic, suites, weyman
from .cache import ENV_VAR, ResultCache
from .orbits_gl import EquationSet
from .partitions import Partition, PartitionError
from .polyalg import MONOMIAL_ORDER, Polynomial

SCHEMA = "orbitforge-v1"


class DomainError(Exception):
    pass


class UsageError(Exception):
    pass


# -- configuration --------------------------------------------------------------


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except PartitionError as exc:
        raise DomainError(f"invalid partition {text!r}: {exc}") from None


def run_config(args: argparse.Namespace) -> dict[str, Any]:
    """Normal form of the options that determine a closure or chart payload."""
    algebra = getattr(args, "algebra", "gl")
    n, m = getattr(args, "n", None), getattr(args, "m", None)
    if algebra == "gl":
        if m is not None or n is None:
            raise UsageError("gl needs --n and no --m")
        size = n
    else:
        if n is not None or m is None:
            raise UsageError("sp needs --m and no --n")
        size = 2 * m
    if size < 1:
        raise DomainError("dimension must be positive")
    lam = _partition(args.lam)
    if lam.n != size:
        raise DomainError(f"partition {lam} sums to {lam.n}, expected {size}")
    cfg: dict[str, Any] = {
        "algebra": algebra,
        "lambda": list(lam.parts),
        "k_range": "full" if getattr(args, "full_k_range", False) else "pruned",
    }
    if algebra == "gl":
        cfg["n"] = n
    else:
        cfg["m"] = m
        cfg["sp_mode"] = args.sp_mode
    return cfg


def _cache(args: argparse.Namespace) -> ResultCache:
    return ResultCache(getattr(args, "cache_dir", None), enabled=not getattr(args, "no_cache", False))


# -- payload builders -----------------------------------------------------------


def _closure_set(cfg: dict[str, Any]) -> EquationSet:
    lam = Partition(cfg["lambda"])
    full = cfg["k_range"] == "full"
    try:
        if cfg["algebra"] == "sp":
            return orbits_sp.sp_closure_equations(lam, cfg["sp_mode"], full_k_range=full)
        return orbits_gl.closure_equations(lam, full_k_range=full)
    except (orbits_sp.SymplecticError, orbits_gl.ExpansionTooLarge) as exc:
        raise DomainError(str(exc)) from None


def closure_payload(cfg: dict[str, Any]) -> dict[str, Any]:
    out = _closure_set(cfg).to_json()
    if cfg["algebra"] == "sp":
        out["sp_mode"] = cfg["sp_mode"]
        out["gerstenhaber"] = True
    return out


def charts_payload(cfg: dict[str, Any]) -> dict[str, Any]:
    lam = Partition(cfg["lambda"])
    base = _closure_set(cfg)
    try:
        if cfg["algebra"] == "sp":
            charts = orbits_sp.sp_orbit_charts(lam, cfg["sp_mode"])
        else:
            charts = orbits_gl.localization_charts(lam, base)
    except orbits_gl.ExpansionTooLarge as exc:
        raise DomainError(str(exc)) from None
    return {
        "base": base.to_json(),
        "chart_count": len(charts),
        "expected_chart_count": orbits_gl.expected_chart_count(lam),
        "charts": [c.to_json() for c in charts],
    }


# -- rendering --------------------------------------------------------------------


def _emit(doc: dict[str, Any]) -> str:
    return json.dumps({"schema": SCHEMA, **doc}, separators=(",", ":")) + "\n"


def _polys(data: list) -> list[Polynomial]:
    return [Polynomial.from_json(p) for p in data]


def _text_equations(title: str, polys: Sequence[Polynomial]) -> str:
    lines = [f"# {title}: {len(polys)} equations"]
    lines += [f"{g} = 0" for g in polys]
    return "\n".join(lines) + "\n"


def _title(cfg: dict[str, Any]) -> str:
    dim = f"n={cfg['n']}" if cfg["algebra"] == "gl" else f"m={cfg['m']} mode={cfg['sp_mode']}"
    return f"closure {cfg['algebra']} {dim} lambda={Partition(cfg['lambda'])}"


def _cas(polys: Sequence[Polynomial], n: int, dialect: str, title: str, with_t: bool | None = None) -> str:
    try:
        return casexport.export_polys(polys, n, dialect, title, with_t=with_t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands -----------------------------------------------------------------------


def cmd_closure(args) -> str:
    cfg = run_config(args)
    payload = _cache(args).fetch({"command": "closure", **cfg}, lambda: closure_payload(cfg))
    polys = _polys(payload["equations"])
    if args.format == "text":
        return _text_equations(_title(cfg), polys)
    if args.format == "cas":
        return _cas(polys, payload["n"], args.dialect, _title(cfg))
    return _emit({"command": "closure", **payload})


def cmd_charts(args) -> str:
    cfg = run_config(args)
    payload = _cache(args).fetch({"command": "charts", **cfg}, lambda: charts_payload(cfg))
    base = _polys(payload["base"]["equations"])
    n = payload["base"]["n"]
    if args.format == "text":
        lines = [f"# charts of {_title(cfg)}: {payload['chart_count']} charts over {len(base)} base equations"]
        for c in payload["charts"]:
            h = Polynomial.from_json(c["h"])
            lines.append(f"chart j={c['j']} k={c['k']} rows={c['rows']} cols={c['cols']}: ({h})*t - 1 = 0")
        return "\n".join(lines) + "\n"
    if args.format == "cas":
        if not payload["charts"]:
            raise DomainError(f"{Partition(cfg['lambda'])} has no localization charts")
        if not 1 <= args.chart <= len(payload["charts"]):
            raise UsageError(f"--chart must be between 1 and {len(payload['charts'])}")
        c = payload["charts"][args.chart - 1]
        polys = base + [Polynomial.from_json(c["relation"])]
        return _cas(polys, n, args.dialect, f"chart {args.chart} of {_title(cfg)}", with_t=True)
    return _emit({"command": "charts", **payload})


def cmd_weyman(args) -> str:
    lam = _partition(args.lam)
    if lam.n != args.n:
        raise DomainError(f"partition {lam} sums to {lam.n}, expected {args.n}")
    pres = weyman.j_lambda_generators(lam, args.convention, args.index_range)
    doc: dict[str, Any] = {"command": "weyman", "convention": args.convention, "index_range": args.index_range}
    doc.update(pres.to_json())
    if args.compare:
        rep = weyman.compare_generator_sets(
            lam, samples=args.samples, seed=args.seed, convention=args.convention, index_range=args.index_range
        )
        doc["comparison"] = rep.to_json()
    if args.format == "text":
        lines = [f"# weyman generators for {lam}: {pres.spanning_count} spanning, {len(pres.equations)} distinct"]
        for g in pres.generators:
            tag = "excluded" if g.excluded else ("trivial" if g.trivial else f"{len(g.polys)} polynomials")
            lines.append(f"{g.label}: {tag}")
        if args.compare:
            c = doc["comparison"]
            lines.append(
                f"closure {c['closure_count']} vs weyman {c['weyman_spanning_count']}; "
                f"agreement on sampled points: {c['oracle_agreement']}"
            )
        return "\n".join(lines) + "\n"
    if args.format == "cas":
        return _cas(pres.equations.polynomials(), lam.n, args.dialect, f"weyman generators for {lam}")
    return _emit(doc)


def cmd_symplectic(args) -> str:
    try:
        cons = orbits_sp.symplectic_constraints(args.m, args.sp_mode)
    except orbits_sp.SymplecticError as exc:
        raise DomainError(str(exc)) from None
    eqs = cons.equations
    if args.format == "text":
        return _text_equations(f"symplectic constraints m={args.m} mode={args.sp_mode}", eqs.polynomials())
    if args.format == "cas":
        return _cas(eqs.polynomials(), eqs.n, args.dialect, f"symplectic constraints m={args.m}")
    return _emit({"command": "symplectic constraints", "m": args.m, "sp_mode": args.sp_mode,
                  "family_sizes": cons.family_sizes, **eqs.to_json()})


def cmd_bound(args) -> str:
    lam = _partition(args.lam)
    if lam.n != args.n:
        raise DomainError(f"partition {lam} sums to {lam.n}, expected {args.n}")
    try:
        rep = padic.coefficient_report(lam)
    except orbits_gl.ExpansionTooLarge as exc:
        raise DomainError(str(exc)) from None
    doc = rep.to_json(detail=args.detail)
    if args.format == "text":
        return (
            f"lambda={lam} bound={doc['paper_bound']} prime={doc['prime']} "
            f"max|F|={doc['max_coeff_F']} max|H|={doc['max_coeff_H']} F>H={doc['F_exceeds_H']}\n"
        )
    return _emit({"command": "bound", **doc})


def _read_equations(stream) -> EquationSet:
    try:
        data = json.load(stream)
    except ValueError as exc:
        raise DomainError(f"input is not JSON: {exc}") from None
    if isinstance(data, dict) and "base" in data and "equations" not in data:
        data = data["base"]
    if not isinstance(data, dict) or "equations" not in data or "n" not in data:
        raise DomainError("input must be an equation-set JSON document with 'n' and 'equations'")
    try:
        return EquationSet.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed equation set: {exc}") from None


def cmd_reduce(args) -> str:
    eqs = _read_equations(sys.stdin)
    try:
        red = padic.reduce_mod_p(eqs, args.p)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if args.format == "text":
        return _text_equations(f"reduction mod {args.p}", red.polynomials())
    return _emit({"command": "reduce", "modulus": args.p, **red.to_json()})


def cmd_export(args) -> str:
    if args.lam is not None:
        cfg = run_config(args)
        payload = _cache(args).fetch({"command": "closure", **cfg}, lambda: closure_payload(cfg))
        return _cas(_polys(payload["equations"]), payload["n"], args.dialect, _title(cfg))
    eqs = _read_equations(sys.stdin)
    return _cas(eqs.polynomials(), eqs.n, args.dialect, "exported equation set")


def _jobs(value: int) -> int:
    return os.cpu_count() or 1 if value <= 0 else value


def cmd_oracle(args) -> str:
    results = suites.oracle(args.max_n, args.samples, args.seed, _jobs(args.jobs))
    if args.format == "text":
        return suites.format_oracle(results)
    ok = all(not r["mismatches"] for r in results)
    return _emit({"command": "oracle", "max_n": args.max_n, "samples": args.samples, "seed": args.seed,
                  "agreement": ok, "results": results})


def cmd_verify(args) -> tuple[str, int]:
    report = suites.verify(args.max_n, args.samples, args.seed, _jobs(args.jobs))
    status = 0 if report["passed"] else 1
    if args.format == "json":
        return _emit({"command": "verify", **report}), status
    return suites.format_summary(report), status


# -- parser -------------------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser, default: str = "json", choices=("json", "text", "cas")) -> None:
    p.add_argument("--format", choices=choices, default=default)
    if "cas" in choices:
        p.add_argument("--dialect", choices=casexport.DIALECTS, default="singular")


def _add_target(p: argparse.ArgumentParser, lam_required: bool = True) -> None:
    p.add_argument("--algebra", choices=("gl", "sp"), default="gl")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--lambda", dest="lam", required=lam_required, help='partition as JSON, e.g. "[2,1]"')
    p.add_argument("--sp-mode", choices=orbits_sp.MODES, default="lie")
    p.add_argument("--full-k-range", action="store_true", help="use every k = 1..n instead of stopping at the largest part")
    p.add_argument("--cache-dir", help=f"cache directory (default ${ENV_VAR} or ~/.cache/orbitforge)")
    p.add_argument("--no-cache", action="store_true")


def _add_sampling(p: argparse.ArgumentParser, samples: int = 20) -> None:
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitforge", description="Equations for nilpotent orbit closures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({MONOMIAL_ORDER})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="closure equations of an orbit")
    _add_target(p)
    _add_format(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("charts", help="localization charts covering an orbit")
    _add_target(p)
    _add_format(p)
    p.add_argument("--chart", type=int, default=1, help="chart exported by --format cas (1-based)")
    p.set_defaults(func=cmd_charts)

    p = sub.add_parser("weyman", help="V_{i,p} generators and comparison with the closure equations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--compare", action="store_true")
    p.add_argument("--convention", choices=weyman.CONVENTIONS, default="ordered")
    p.add_argument("--index-range", choices=weyman.INDEX_RANGES, default="parts")
    _add_sampling(p)
    _add_format(p)
    p.set_defaults(func=cmd_weyman)

    p = sub.add_parser("symplectic", help="symplectic constraint sets")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("constraints")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--sp-mode", choices=orbits_sp.MODES, default="lie")
    _add_format(q)
    q.set_defaults(func=cmd_symplectic)

    p = sub.add_parser("bound", help="coefficient bound and admissible prime")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--detail", action="store_true", help="include every coefficient set")
    _add_format(p, choices=("json", "text"))
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("reduce", help="reduce an equation-set JSON (stdin) mod p")
    p.add_argument("--p", type=int, required=True)
    _add_format(p, choices=("json", "text"))
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("oracle", help="stratification oracle on sampled orbit points")
    p.add_argument("--max-n", type=int, default=4)
    _add_sampling(p)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (0 = all cores)")
    _add_format(p, choices=("json", "text"))
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run every property suite and print a summary")
    p.add_argument("--max-n", type=int, default=4)
    _add_sampling(p, samples=10)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (0 = all cores)")
    _add_format(p, default="text", choices=("text", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="CAS script for a closure (or an equation-set JSON on stdin)")
    _add_target(p, lam_required=False)
    p.add_argument("--dialect", choices=casexport.DIALECTS, default="singular")
    p.set_defaults(func=cmd_export)
    return parser


def run_command(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for attr in ("n", "m", "max_n", "samples"):
        value = getattr(args, attr, None)
        if value is not None and value < 0:
            print(f"orbitforge: error: --{attr.replace('_', '-')} must be non-negative", file=sys.stderr)
            return 2
    try:
        result = args.func(args)
    except UsageError as exc:
        print(f"orbitforge: usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PartitionError, ValueError) as exc:
        print(f"orbitforge: error: {exc}", file=sys.stderr)
        return 1
    text, status = result if isinstance(result, tuple) else (result, 0)
    out.write(text)
    out.flush()
    return status


def main(argv: Sequence[str] | None = None) -> None:
    logging.basicConfig(level=logging.WARNING, format="orbitforge: %(levelname)s: %(message)s")
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
