"""Benchmark harness: resolve a list of input pairs under a wall-clock
budget and report blow-up and final-chart counts next to the published
reference numbers.

Rows run concurrently in worker processes; a row past its budget is
reported as TIMEOUT, which is data, not an error.
"""

from __future__ import annotations

import signal
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import EngineError
from .geometry import affine_space, presentation
from .ideals import IdealPresentation
from .parsing import parse_many
from .resolve import ResolutionProblem, count_statistics, weighted_resolution
from .rings import ring

# Published per-row counts (blow-ups, final charts): the weighted column
# is what this engine reproduces; the classical column is reference data
# only and is never recomputed here.
REFERENCE = {
    "x^2-y1*y2*y3": {"ring": "x,y1,y2,y3", "weighted": (5, 10), "classical": (166, 198)},
    "x^2+y^2+z^3*t^3": {"ring": "x,y,z,t", "weighted": (5, 8), "classical": (27, 35)},
    "x^5+x^3*y^3+y^7": {"ring": "x,y", "weighted": (1, 2), "classical": (5, 2)},
    "x^5+x^3*y^3+y^9": {"ring": "x,y", "weighted": (3, 3), "classical": (3, 2)},
    "x^2+y^2*z^3-z^4": {"ring": "x,y,z", "weighted": (4, 5), "classical": (9, 10)},
    "x^2+y^2*z-z^2": {"ring": "x,y,z", "weighted": (1, 3), "classical": (2, 3)},
    "x^3*y+x*z^3+y^3*z+z^3+7*z^2+5*z": {
        "ring": "x,y,z",
        "weighted": (1, 3),
        "classical": (4, 5),
    },
    "x^2+y^3+z^5": {"ring": "x,y,z", "weighted": (1, 3), "classical": (61, 65)},
    "x^2-x^3+y^2+y^4+z^3-z^4": {"ring": "x,y,z", "weighted": (1, 3), "classical": (4, 5)},
    "x^3-y*(1-z^2)^2": {"ring": "x,y,z", "weighted": (4, 4), "classical": (50, 49)},
    "x^4+z^3-y*z^2": {"ring": "x,y,z", "weighted": (4, 4), "classical": (50, 49)},
    "x^2+z^2+y^3*(y-1)^3": {"ring": "x,y,z", "weighted": (1, 3), "classical": (8, 10)},
    "x*y*z+y*z+2*z^5": {"ring": "x,y,z", "weighted": (9, 7), "classical": (6, 10)},
    "x^2+y^4+y^3*z^2": {"ring": "x,y,z", "weighted": (4, 5), "classical": (9, 10)},
    "x^2+y^2*z^3": {"ring": "x,y,z", "weighted": (8, 5), "classical": (24, 23)},
    "x*y*z": {"ring": "x,y,z", "weighted": (4, 6), "classical": (7, 12)},
    "x^2+y^2*z+z^3": {"ring": "x,y,z", "weighted": (1, 3), "classical": (22, 24)},
    "z^50-x*y": {"ring": "x,y,z", "weighted": (1, 3), "classical": (25, 50)},
}


def reference_rows():
    """The built-in benchmark rows, in table order."""
    return [
        {"name": poly, "ring": info["ring"], "ideal": [poly]}
        for poly, info in REFERENCE.items()
    ]


def _build_problem(row):
    R = ring(row["ring"])
    ambient = parse_many(";".join(row.get("ambient", [])), R) if row.get("ambient") else []
    ideal_gens = [g for part in row["ideal"] for g in parse_many(part, R)]
    if ambient:
        pres = presentation(R, ambient, certified=False)
    else:
        pres = affine_space(R)
    I = IdealPresentation(R, tuple(ideal_gens))
    return ResolutionProblem([(pres, I)], codim=row.get("codim"))


class _RowTimeout(Exception):
    pass


def _alarm_handler(signum, frame):
    raise _RowTimeout()


def run_row(row, budget=None):
    """Resolve one row, honoring the wall-clock budget via SIGALRM."""
    start = time.monotonic()
    old = None
    if budget:
        old = signal.signal(signal.SIGALRM, _alarm_handler)
        signal.alarm(int(budget))
    try:
        problem = _build_problem(row)
        tree = weighted_resolution(problem)
        blow_ups, charts = count_statistics(tree)
        status = "ok"
        result = {"blowups": blow_ups, "charts": charts}
    except _RowTimeout:
        status = "timeout"
        result = {}
    except EngineError as err:
        status = "error"
        result = {"message": str(err)}
    finally:
        if budget:
            signal.alarm(0)
            signal.signal(signal.SIGALRM, old)
    result.update(
        {
            "name": row.get("name", ";".join(row["ideal"])),
            "status": status,
            "seconds": round(time.monotonic() - start, 3),
        }
    )
    ref = REFERENCE.get(result["name"])
    if ref:
        result["expected_weighted"] = ref["weighted"]
        result["classical_published"] = ref["classical"]
    return result


def bench_table(rows, budget=None, workers=1):
    """Run rows (concurrently when workers > 1) and gather the report."""
    if not rows:
        raise ValueError("bench needs at least one row")
    if workers <= 1 or len(rows) == 1:
        return [run_row(row, budget=budget) for row in rows]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_row, row, budget) for row in rows]
        return [f.result() for f in futures]


def format_bench_report(report):
    lines = []
    header = f"{'input pair':<34} {'blowups':>8} {'charts':>7} {'time(s)':>8}  {'expected':>9} {'classical':>10}  status"
    lines.append(header)
    for row in report:
        got = (
            f"{row.get('blowups', '-'):>8} {row.get('charts', '-'):>7}"
            if row["status"] == "ok"
            else f"{'-':>8} {'-':>7}"
        )
        exp = row.get("expected_weighted")
        cls = row.get("classical_published")
        exp_s = f"({exp[0]},{exp[1]})" if exp else "-"
        cls_s = f"({cls[0]},{cls[1]})" if cls else "-"
        status = row["status"].upper() if row["status"] != "ok" else "ok"
        lines.append(
            f"{row['name']:<34} {got} {row['seconds']:>8}  {exp_s:>9} {cls_s:>10}  {status}"
        )
    return "\n".join(lines)
