"""
Command-line interface. Every command writes JSON to standard output.

Exit codes: 0 ok, 1 mismatch, 2 usage or input error. Verification commands
stream one JSON line per instance followed by a summary line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence, TextIO

from .combinatorics import (
    Diagram, ParFamily, Partition, Permutation, _parse_ints, par_family, rothe_diagram,
)
from .flow import build_g_lambda, flow_vertices, gwt, integer_flows
from .gt import gt_points, integer_point_transform, schur, specialize
from .minkowski import p_d_points, q_system, verify_theorem1
from .poly import flagged_character, schubert
from . import verify as V

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class InputError(ValueError):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "millis"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


class Output:
    """Line-oriented JSON writer; ``deterministic`` drops wall-clock fields."""

    def __init__(self, stream: TextIO, deterministic: bool, sink: Optional[TextIO] = None):
        self.stream, self.deterministic, self.sink = stream, deterministic, sink

    def line(self, obj, to_sink: bool = False) -> None:
        if self.deterministic:
            obj = _strip_timing(obj)
        text = _dumps(obj) + "\n"
        target = self.sink if (to_sink and self.sink is not None) else self.stream
        target.write(text)
        target.flush()


# argument parsing helpers


def _permutation(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise InputError(f"--w {text!r}: {exc}") from None


def _partition(text: str, dilate: int = 1) -> Partition:
    try:
        lam = Partition.parse(text)
    except ValueError as exc:
        raise InputError(f"--lambda {text!r}: {exc}") from None
    if dilate < 1:
        raise InputError(f"--dilate must be positive, got {dilate}")
    return lam.scaled(dilate)


def _family(text: str) -> ParFamily:
    """``"0;1,0;2,1,0"``: shapes ``lambda^(1)``, ``lambda^(2)``, ... separated by ``;``."""
    shapes = []
    for k, chunk in enumerate(text.split(";"), start=1):
        try:
            shapes.append(_parse_ints(chunk, "partition"))
        except ValueError as exc:
            raise InputError(f"--family shape {k} {chunk!r}: {exc}") from None
    try:
        return ParFamily.from_lists(shapes)
    except ValueError as exc:
        raise InputError(f"--family {text!r}: {exc}") from None


def _diagram(text: str) -> Diagram:
    try:
        return Diagram.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"--diagram: {exc}") from None


def _family_from(args) -> ParFamily:
    if args.family is not None:
        return _family(args.family)
    if args.w is not None:
        return par_family(rothe_diagram(_permutation(args.w)))
    raise InputError("one of --family or --w is required")


# command handlers; each returns (status, result payload, params)


def cmd_schubert(args):
    w = _permutation(args.w)
    return "ok", schubert(w).to_json(), {"w": w.to_json()}


def cmd_character(args):
    if args.diagram is not None:
        D = _diagram(args.diagram)
        params = {"diagram": D.to_json()}
    elif args.w is not None:
        w = _permutation(args.w)
        D = rothe_diagram(w)
        params = {"w": w.to_json()}
    else:
        raise InputError("one of --w or --diagram is required")
    return "ok", flagged_character(D).to_json(), params


def cmd_gt(args):
    lam = _partition(args.lam, args.dilate)
    params = {"lambda": lam.to_json()}
    if args.action == "enumerate":
        pts = gt_points(lam)
        return "ok", {"count": len(pts), **pts.to_json()}, params
    if args.action == "transform":
        sigma = integer_point_transform(gt_points(lam))
        return "ok", (specialize(sigma) if args.specialize else sigma).to_json(), params
    return "ok", schur(lam).to_json(), params


def cmd_minkowski(args):
    if args.action == "verify":
        if args.w is None:
            raise InputError("minkowski verify needs --w")
        rep = verify_theorem1(_permutation(args.w))
        return ("ok" if rep.ok else "mismatch"), rep.to_json(), {"w": rep.w.to_json()}
    fam = _family_from(args)
    params = {"family": fam.to_json()}
    if args.action == "system":
        return "ok", q_system(fam).to_json(), params
    pts = p_d_points(fam)
    return "ok", {"count": len(pts), **pts.to_json()}, params


def cmd_flow(args):
    lam = _partition(args.lam, args.dilate)
    net = build_g_lambda(lam)
    params = {"lambda": lam.to_json()}
    if args.action == "build":
        return "ok", net.to_json(), params
    if args.action == "enumerate":
        flows = integer_flows(net)
        return "ok", {"count": len(flows), "flows": [list(f) for f in flows]}, params
    if args.action == "vertices":
        verts = flow_vertices(net)
        return "ok", {
            "count": len(verts),
            "vertices": [{"flow": list(f), "gwt": list(gwt(f, net))} for f in verts],
        }, params
    row = V.flow_equivalence_row(lam)
    return ("ok" if row.pop("ok") else "mismatch"), row, params


def cmd_verify(args, out: Output):
    emit = lambda row: out.line(row, to_sink=True)
    params: dict = {}
    if args.action == "theorem1":
        if args.w is not None:
            perms = [_permutation(args.w)]
            params["w"] = perms[0].to_json()
            results = [V.check_theorem1(perms=perms, emit=emit)]
        else:
            params.update(n=args.n, samples=args.samples, seed=args.seed)
            results = [V.check_theorem1(n_max=args.n, sample_n=args.n + 1, samples=args.samples,
                                        seed=args.seed, emit=emit)]
    elif args.action == "theorem2":
        params.update(maxParts=args.max_parts, maxPart=args.max_part, maxDilate=args.max_dilate)
        results = [V.check_flow_equivalence(args.max_parts, args.max_part, args.max_dilate, emit=emit)]
    else:
        params["seed"] = args.seed
        results = V.run_all(seed=args.seed, emit=emit)
    status = "ok" if all(r.ok for r in results) else "mismatch"
    summary = [{k: v for k, v in r.to_json().items() if k != "failures"} for r in results]
    return status, {"checks": summary}, params


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schubert-lab", description=__doc__.strip().splitlines()[0])
    p.add_argument("--deterministic", action="store_true", help="omit wall-clock fields from the output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deterministic", action="store_true", default=argparse.SUPPRESS,
                        help="omit wall-clock fields from the output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("schubert", parents=[common], help="Schubert polynomial of a permutation")
    s.add_argument("--w", required=True, help="one-line notation, e.g. 132 or 1,3,2")
    s.set_defaults(handler=cmd_schubert)

    s = sub.add_parser("character", parents=[common], help="flagged character of a diagram")
    s.add_argument("--w", help="use the Rothe diagram of this permutation")
    s.add_argument("--diagram", help='JSON {"rows": n, "boxes": [[i, j], ...]}')
    s.set_defaults(handler=cmd_character)

    s = sub.add_parser("gt", parents=[common], help="Gelfand-Tsetlin polytopes")
    s.add_argument("action", choices=["enumerate", "transform", "schur"])
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--dilate", type=int, default=1)
    s.add_argument("--specialize", action="store_true", help="specialize the transform")
    s.set_defaults(handler=cmd_gt)

    s = sub.add_parser("minkowski", parents=[common], help="Minkowski sums of Gelfand-Tsetlin polytopes")
    s.add_argument("action", choices=["system", "enumerate", "verify"])
    s.add_argument("--family", help="shapes separated by ';', e.g. '0;1,0;2,1,0'")
    s.add_argument("--w")
    s.set_defaults(handler=cmd_minkowski)

    s = sub.add_parser("flow", parents=[common], help="the flow network G_lambda")
    s.add_argument("action", choices=["build", "enumerate", "equiv", "vertices"])
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--dilate", type=int, default=1)
    s.set_defaults(handler=cmd_flow)

    s = sub.add_parser("verify", parents=[common], help="verification suites (JSON lines)")
    s.add_argument("action", choices=["theorem1", "theorem2", "all"])
    s.add_argument("--n", type=int, default=5, help="exhaustive bound for theorem1")
    s.add_argument("--w", help="check a single permutation")
    s.add_argument("--samples", type=int, default=0, help="extra sampled permutations of size n+1")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-parts", type=int, default=4)
    s.add_argument("--max-part", type=int, default=3)
    s.add_argument("--max-dilate", type=int, default=3)
    s.add_argument("--out", help="write the per-instance lines to this file")
    s.set_defaults(handler=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = args.command + (f" {args.action}" if hasattr(args, "action") else "")
    sink = None
    start = time.perf_counter()
    try:
        if getattr(args, "out", None):
            sink = open(args.out, "w")
        out = Output(stdout, args.deterministic, sink)
        if args.handler is cmd_verify:
            status, result, params = cmd_verify(args, out)
        else:
            status, result, params = args.handler(args)
    except ValueError as exc:  # includes InputError and malformed-object errors
        print(f"schubert-lab: error: {exc}", file=stderr)
        Output(stdout, args.deterministic).line({"command": command, "status": "error", "error": str(exc)})
        return EXIT_USAGE
    except BrokenPipeError:
        raise
    except OSError as exc:
        print(f"schubert-lab: error: {exc}", file=stderr)
        return EXIT_USAGE
    finally:
        if sink is not None:
            sink.close()
    report = {"command": command, "params": params, "status": status, "result": result,
              "millis": round((time.perf_counter() - start) * 1000, 3)}
    Output(stdout, args.deterministic).line(report)
    return EXIT_OK if status == "ok" else EXIT_MISMATCH


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # the reader went away (e.g. `| head`); stop quietly
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
