"""Property suites behind ``orbitforge oracle`` and ``orbitforge verify``.

Every suite is split into independent tasks. A task is a plain tuple, so it
can run in a worker process, and its result depends only on the tuple.
Results are merged in task order, which keeps reports byte-identical
whatever the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from math import factorial
from typing import Any, Iterable, Sequence

import numpy as np

from . import orbits_gl, orbits_sp, padic, weyman
from .orbits_gl import ExpansionTooLarge, membership_many, sample_orbit_point
from .partitions import Partition, dominance_leq, enumerate_partitions, gerstenhaber_valid

MODP_PRIMES = (2, 3, 5, 7)
MODP_POINTS = 100
MODP_RANGE = 10
WEYMAN_MAX_N = 4
DET_MAX_N = 5
SP_MAX_M = 3


def _points(n: int, samples: int, seed: int):
    return [sample_orbit_point(mu, seed + s) for mu in enumerate_partitions(n) for s in range(samples)]


def _mismatches(points, verdicts, lam: Partition) -> list[dict[str, Any]]:
    out = []
    for pt, got in zip(points, verdicts):
        want = dominance_leq(pt.mu, lam)
        if got != want:
            out.append({"mu": list(pt.mu.parts), "seed": pt.seed, "member": got, "dominated": want})
    return out


# -- tasks ------------------------------------------------------------------------


def stratification_task(parts: tuple[int, ...], samples: int, seed: int) -> dict[str, Any]:
    """Closure oracle for one ``lam`` plus the checks that reuse its equations."""
    lam = Partition(parts)
    F = orbits_gl.closure_equations(lam)
    points = _points(lam.n, samples, seed)
    bad = _mismatches(points, membership_many(points, F), lam)
    report = padic.coefficient_report(lam, closure=F)
    return {
        "lambda": list(parts),
        "n": lam.n,
        "equation_count": len(F),
        "raw_count": F.raw_count,
        "expected_raw_count": orbits_gl.expected_closure_raw_count(lam),
        "chart_count": len(report.h_coefficients),
        "expected_chart_count": orbits_gl.expected_chart_count(lam),
        "points": len(points),
        "mismatches": bad,
        "max_coeff_F": report.max_coeff_f,
        "paper_bound": report.paper_bound,
    }


def weyman_task(parts: tuple[int, ...], samples: int, seed: int) -> dict[str, Any]:
    lam = Partition(parts)
    rep = weyman.compare_generator_sets(lam, samples=samples, seed=seed)
    return {
        "lambda": list(parts),
        "closure_count": rep.closure_count,
        "weyman_spanning_count": rep.weyman_spanning_count,
        "weyman_distinct_count": rep.weyman_distinct_count,
        "agreement": rep.agreement,
        "mismatches": rep.mismatches,
    }


def det_task(n: int) -> dict[str, Any]:
    counts = padic.det_occurrence_counts(n)
    return {"n": n, "expected": factorial(n - 1), "counts": sorted(set(counts.values()))}


def lambda_sp_task(m: int) -> dict[str, Any]:
    cons = orbits_sp.lambda_sp_sets(m)
    return {"m": m, "raw_count": cons.raw_count, "family_sizes": cons.family_sizes}


def modp_task(parts: tuple[int, ...], seed: int, npoints: int = MODP_POINTS) -> dict[str, Any]:
    lam = Partition(parts)
    F = orbits_gl.closure_equations(lam)
    rng = np.random.default_rng([seed, lam.n, *parts])
    pts = rng.integers(-MODP_RANGE, MODP_RANGE + 1, size=(npoints, lam.n, lam.n)).tolist()
    exact = [[e.poly.evaluate(pt) for e in F] for pt in pts]
    failures = []
    for p in MODP_PRIMES:
        red = padic.reduce_mod_p(F, p)
        for a, pt in enumerate(pts):
            for b, e in enumerate(red):
                if e.poly.evaluate(pt) % p != exact[a][b] % p:
                    failures.append({"p": p, "point": a, "equation": b})
    return {"lambda": list(parts), "points": npoints, "primes": list(MODP_PRIMES), "failures": failures}


def sp_task(m: int, samples: int, seed: int) -> dict[str, Any]:
    """Gate every partition of ``2m``; run the sp oracle on those that expand."""
    rows = []
    valid = [lam for lam in enumerate_partitions(2 * m) if gerstenhaber_valid(lam)]
    points = [orbits_sp.sample_sp_orbit_point(mu, seed + s) for mu in valid for s in range(samples)]
    for lam in enumerate_partitions(2 * m):
        row: dict[str, Any] = {"lambda": list(lam.parts), "valid": gerstenhaber_valid(lam)}
        try:
            F = orbits_sp.sp_closure_equations(lam)
        except orbits_sp.SymplecticError:
            row["outcome"] = "refused"
        except ExpansionTooLarge:
            row["outcome"] = "too large"
        else:
            row["outcome"] = "generated"
            row["equation_count"] = len(F)
            row["mismatches"] = _mismatches(points, membership_many(points, F), lam)
        rows.append(row)
    return {"m": m, "points": len(points), "rows": rows}


TASKS = {
    "stratification": stratification_task,
    "weyman": weyman_task,
    "det": det_task,
    "lambda_sp": lambda_sp_task,
    "modp": modp_task,
    "sp": sp_task,
}


def run_task(task: tuple) -> dict[str, Any]:
    name, *args = task
    return TASKS[name](*args)


def run_tasks(tasks: Sequence[tuple], jobs: int = 1) -> list[dict[str, Any]]:
    if jobs <= 1 or len(tasks) <= 1:
        return [run_task(t) for t in tasks]
    # largest n first so the long tasks start early; results are put back in order
    order = sorted(range(len(tasks)), key=lambda i: -_weight(tasks[i]))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        done = list(pool.map(run_task, [tasks[i] for i in order]))
    out: list[dict[str, Any]] = [{}] * len(tasks)
    for i, res in zip(order, done):
        out[i] = res
    return out


def _weight(task: tuple) -> int:
    args = task[1:]
    if args and isinstance(args[0], tuple):
        return sum(args[0]) * 10 + max(args[0])
    return 0


# -- suites -----------------------------------------------------------------------


def stratification_tasks(max_n: int, samples: int, seed: int, min_n: int = 1) -> list[tuple]:
    return [
        ("stratification", lam.parts, samples, seed)
        for n in range(min_n, max_n + 1)
        for lam in enumerate_partitions(n)
    ]


def oracle(max_n: int, samples: int, seed: int, jobs: int = 1) -> list[dict[str, Any]]:
    return run_tasks(stratification_tasks(max_n, samples, seed), jobs)


def verify_tasks(max_n: int, samples: int, seed: int) -> list[tuple]:
    tasks = stratification_tasks(max_n, samples, seed)
    tasks += [
        ("weyman", lam.parts, samples, seed)
        for n in range(1, min(max_n, WEYMAN_MAX_N) + 1)
        for lam in enumerate_partitions(n)
    ]
    tasks += [("det", n) for n in range(1, min(max_n, DET_MAX_N) + 1)]
    tasks += [("lambda_sp", m) for m in range(1, SP_MAX_M + 1)]
    tasks += [
        ("modp", lam.parts, seed)
        for n in range(1, min(max_n, WEYMAN_MAX_N) + 1)
        for lam in enumerate_partitions(n)
    ]
    tasks += [("sp", m, samples, seed) for m in range(1, max(1, max_n // 2) + 1)]
    return tasks


def _summarize(tasks: Sequence[tuple], results: Sequence[dict[str, Any]]) -> list[dict[str, Any]]:
    """One row per check: name, number of cases, number of failing cases."""
    rows: dict[str, list[int]] = {}
    notes: dict[str, list[str]] = {}

    def tally(name: str, ok: bool, cases: int = 1, note: str | None = None):
        row = rows.setdefault(name, [0, 0])
        row[0] += cases
        row[1] += 0 if ok else 1
        if note:
            notes.setdefault(name, []).append(note)

    for task, res in zip(tasks, results):
        kind = task[0]
        if kind == "stratification":
            tally("stratification oracle", not res["mismatches"], res["points"])
            tally("closure raw count", res["raw_count"] == res["expected_raw_count"])
            tally("chart count", res["chart_count"] == res["expected_chart_count"])
            tally("coefficient bound", res["max_coeff_F"] <= res["paper_bound"])
        elif kind == "weyman":
            tally("weyman agreement", res["agreement"])
        elif kind == "det":
            tally("det occurrences", res["counts"] == [res["expected"]])
        elif kind == "lambda_sp":
            m = res["m"]
            sizes = res["family_sizes"]
            ok = res["raw_count"] == 4 * m * m and sizes["rest"] == 4 * m * m - 2 * m
            tally("lambda_sp cardinality", ok)
        elif kind == "modp":
            tally("mod-p homomorphism", not res["failures"], res["points"] * len(res["primes"]))
        elif kind == "sp":
            for row in res["rows"]:
                expected = "generated" if row["valid"] else "refused"
                if row["outcome"] == "too large" and row["valid"]:
                    tally("symplectic gate", True)
                    tally("symplectic oracle", False, note=f"{row['lambda']} too large to expand")
                    continue
                tally("symplectic gate", row["outcome"] == expected)
                if row["outcome"] == "generated":
                    tally("symplectic oracle", not row["mismatches"])
    return [
        {"check": name, "cases": cases, "failures": fails, "notes": notes.get(name, [])}
        for name, (cases, fails) in rows.items()
    ]


def verify(max_n: int, samples: int, seed: int, jobs: int = 1) -> dict[str, Any]:
    tasks = verify_tasks(max_n, samples, seed)
    results = run_tasks(tasks, jobs)
    summary = _summarize(tasks, results)
    return {
        "max_n": max_n,
        "samples": samples,
        "seed": seed,
        "summary": summary,
        "passed": all(row["failures"] == 0 for row in summary),
        "results": [{"task": _task_label(t), **r} for t, r in zip(tasks, results)],
    }


def _task_label(task: tuple) -> str:
    name, *args = task
    if args and isinstance(args[0], tuple):
        return f"{name} {Partition(args[0])}"
    return f"{name} {args[0]}"


def format_summary(report: dict[str, Any]) -> str:
    lines = [f"verify max_n={report['max_n']} samples={report['samples']} seed={report['seed']}"]
    width = max(len(r["check"]) for r in report["summary"])
    lines.append(f"{'check':<{width}}  {'cases':>7}  {'failures':>8}  status")
    for row in report["summary"]:
        status = "ok" if row["failures"] == 0 else "FAIL"
        lines.append(f"{row['check']:<{width}}  {row['cases']:>7}  {row['failures']:>8}  {status}")
        for note in row["notes"]:
            lines.append(f"  note: {note}")
    lines.append("all checks passed" if report["passed"] else "some checks failed")
    return "\n".join(lines) + "\n"


def format_oracle(results: Iterable[dict[str, Any]]) -> str:
    lines = [f"{'n':>2}  {'lambda':<12} {'equations':>9}  {'points':>6}  mismatches"]
    for r in results:
        lines.append(
            f"{r['n']:>2}  {str(Partition(r['lambda'])):<12} {r['equation_count']:>9}  {r['points']:>6}  {len(r['mismatches'])}"
        )
    return "\n".join(lines) + "\n"
