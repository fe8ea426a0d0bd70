"""
Compare the compiled and pure-Python lattice enumeration backends.

    python3 benchmarks/bench_enumerate.py [--repeat 3] [--json]

Each case is timed with both backends (best of ``--repeat``) and the two
point sets are checked for equality before any time is reported.
"""

from __future__ import annotations

import argparse
import json
import time

from schubert_lab import lattice
from schubert_lab.combinatorics import ParFamily, Partition
from schubert_lab.gt import gt_system
from schubert_lab.lattice import enumerate_lattice
from schubert_lab.minkowski import q_system

CASES = [
    ("GT(3,2,1,0)", lambda: gt_system(Partition((3, 2, 1, 0)))),
    ("GT(4,3,2,1,0)", lambda: gt_system(Partition((4, 3, 2, 1, 0)))),
    ("GT(3,3,2,1,1,0)", lambda: gt_system(Partition((3, 3, 2, 1, 1, 0)))),
    ("GT(5,4,3,2,1,0)", lambda: gt_system(Partition((5, 4, 3, 2, 1, 0)))),
    ("P_D n=4", lambda: q_system(ParFamily.from_lists([[1], [2, 1], [2, 1, 0], [3, 2, 1, 0]]))),
    ("P_D n=5", lambda: q_system(ParFamily.from_lists([[1], [1, 0], [2, 1, 0], [2, 1, 1, 0], [2, 2, 1, 0, 0]]))),
]


def best_time(system, backend: str, repeat: int, count_only: bool):
    lattice.set_backend(backend)
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = enumerate_lattice(system, count_only=count_only)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="emit JSON lines instead of a table")
    args = ap.parse_args()
    if lattice._enum_c is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
    previous = lattice.backend_name()
    rows = []
    try:
        for name, make in CASES:
            system = make()
            for count_only in (False, True):
                t_py, r_py = best_time(system, "python", args.repeat, count_only)
                t_c, r_c = best_time(system, "cython", args.repeat, count_only)
                same = r_py == r_c if count_only else r_py.points == r_c.points
                if not same:
                    raise SystemExit(f"{name}: backends disagree")
                points = r_c if count_only else len(r_c)
                rows.append({"case": name, "mode": "count" if count_only else "list", "points": points,
                             "pythonSec": round(t_py, 4), "cythonSec": round(t_c, 4),
                             "speedup": round(t_py / t_c, 1) if t_c else None})
    finally:
        lattice.set_backend(previous)
    if args.json:
        for row in rows:
            print(json.dumps(row))
        return
    print(f"{'case':<18}{'mode':<7}{'points':>9}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for r in rows:
        print(f"{r['case']:<18}{r['mode']:<7}{r['points']:>9}{r['pythonSec']:>11.4f}{r['cythonSec']:>11.4f}{r['speedup']:>8}x")


if __name__ == "__main__":
    main()
