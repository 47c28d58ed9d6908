"""Command-line surface: planning, oracle checks, maps, fuzzing, rendering.

Exit codes: 0 success, 1 invalid input (bad scenario file, unreadable path,
query outside the map), 2 invariant violation (a fuzz cross-check found a
mismatch), 64 usage errors.

Arrival times are printed as exact rationals; non-integers get a decimal
rendering appended so humans do not have to divide.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from .engine import naive_plan, _Engine
from .fast import fast_plan
from .geometry import Scene, validate_path
from .oracle import bench_scene, oracle_plan, random_scene
from .scenario import ScenarioError, load_scene, _enc_num
from .spm import OutsideBoundingBox, build_spm, dump_spm
from .svg import render_svg


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage("%s: %s" % (self.prog, message))


def _fmt_time(v) -> str:
    f = Fraction(v)
    if f.denominator == 1:
        return str(f.numerator)
    return "%s (%s)" % (f, format(float(f), ".15g"))


def _num(text: str):
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _Usage("not a number: %r" % text)
    return int(f) if f.denominator == 1 else f


def _parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise _Usage("expected x,y, got %r" % text)
    return (_num(parts[0]), _num(parts[1]))


def _path_doc(arrival, path) -> dict:
    return {
        "version": 1,
        "arrival": _enc_num(Fraction(arrival)),
        "waypoints": [
            {
                "point": [_enc_num(Fraction(wp.point[0])), _enc_num(Fraction(wp.point[1]))],
                "arrive": _enc_num(Fraction(wp.arrive)),
                "depart": _enc_num(Fraction(wp.depart)),
            }
            for wp in path.waypoints
        ],
    }


def _cmd_plan(args) -> int:
    scene = load_scene(args.scene)
    res = (naive_plan if args.algorithm == "naive" else fast_plan)(scene)
    print(_fmt_time(res.arrival))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(_path_doc(res.arrival, res.path), fh, indent=2)
            fh.write("\n")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(scene, res.path))
    return 0


def _cmd_oracle(args) -> int:
    target = _parse_point(args.target) if args.target else None
    scene = load_scene(args.scene)
    print(_fmt_time(oracle_plan(scene, target=target)))
    return 0


def _cmd_spm(args) -> int:
    query = _parse_point(args.query) if args.query else None
    scene = load_scene(args.scene)
    m = build_spm(scene)
    if query is not None:
        t, _path = m.query(query)
        print(_fmt_time(t))
    else:
        dump_spm(m, args.dump)
        print("%d cells -> %s" % (len(m.cells), args.dump))
    return 0


_CHECKS = ("naive", "fast", "oracle", "spm")


def _cmd_fuzz(args) -> int:
    checks = args.check.split(",")
    for c in checks:
        if c not in _CHECKS:
            raise _Usage("unknown check %r (pick from %s)" % (c, ",".join(_CHECKS)))
    for k in range(args.count):
        seed = args.seed + k
        scene = random_scene(seed, seed % (args.max_edges + 1))
        vals = {}
        for c in checks:
            if c == "oracle":
                vals[c] = oracle_plan(scene)
                continue
            if c == "spm":
                vals[c], path = build_spm(scene).query(scene.dest)
            else:
                res = (naive_plan if c == "naive" else fast_plan)(scene)
                vals[c], path = res.arrival, res.path
            report = validate_path(scene, path, vals[c])
            if not report.ok:
                print("invalid %s path on seed %d: %s" % (c, seed, report.issues[0]))
                return 2
        if len(set(vals.values())) > 1:
            detail = ", ".join("%s=%s" % (c, _fmt_time(vals[c])) for c in checks)
            print("mismatch on seed %d: %s" % (seed, detail))
            print(
                "reproduce: rectipath fuzz --seed %d --count 1 --max-edges %d --check %s"
                % (seed, args.max_edges, args.check)
            )
            return 2
    print("ok: %d scenes, checks %s" % (args.count, ",".join(checks)))
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    print("n,algo,arrival,point_wavelets,segment_wavelets,narrows,expands,wall_ns")
    for n in sizes:
        scene = bench_scene(args.seed, n)
        for name, fn in (("naive", naive_plan), ("fast", fast_plan)):
            t0 = time.perf_counter_ns()
            res = fn(scene)
            dt = time.perf_counter_ns() - t0
            s = res.stats
            print(
                "%d,%s,%s,%d,%d,%d,%d,%d"
                % (n, name, Fraction(res.arrival), s.point_wavelets, s.segment_wavelets, s.narrows, s.expands, dt)
            )
    return 0


def _cmd_render(args) -> int:
    scene = load_scene(args.scene)
    res = fast_plan(scene)
    trace = None
    if args.trace:
        eng = _Engine(scene, trace=True)
        eng.run()
        k = eng.sc.coord_scale
        trace = []
        for rec in eng.trace:
            if rec[0] == "cone":
                xlo, xhi, ylo, yhi = rec[3]
            else:
                _, lo, hi, _, _, line, _, d, reach, _ = rec
                if d in ("N", "S"):
                    xlo, xhi, ylo, yhi = lo, hi, min(line, reach), max(line, reach)
                else:
                    xlo, xhi, ylo, yhi = min(line, reach), max(line, reach), lo, hi
            trace.append(
                (
                    "cone" if rec[0] == "cone" else "flat",
                    (Fraction(xlo, k), Fraction(xhi, k), Fraction(ylo, k), Fraction(yhi, k)),
                )
            )
    sys.stdout.write(render_svg(scene, res.path, trace))
    return 0


def _build_parser() -> _Parser:
    p = _Parser(prog="rectipath", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("plan", help="minimum arrival time and a witness path")
    sp.add_argument("scene")
    sp.add_argument("--algorithm", choices=("naive", "fast"), default="fast")
    sp.add_argument("--out", help="write the timestamped path as JSON")
    sp.add_argument("--svg", help="write a picture of the scene and path")
    sp.set_defaults(func=_cmd_plan)

    sp = sub.add_parser("oracle", help="grid-oracle arrival time")
    sp.add_argument("scene")
    sp.add_argument("--target", help="query point x,y (default: the destination)")
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("spm", help="build the all-destinations map")
    sp.add_argument("scene")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--query", help="answer one query point x,y")
    g.add_argument("--dump", help="serialize the map to a file")
    sp.set_defaults(func=_cmd_spm)

    sp = sub.add_parser("fuzz", help="cross-check planners on random scenes")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--max-edges", type=int, required=True)
    sp.add_argument("--check", default="naive,fast,oracle")
    sp.set_defaults(func=_cmd_fuzz)

    sp = sub.add_parser("bench", help="wavelet counts and wall time per algorithm")
    sp.add_argument("--sizes", required=True, help="comma-separated edge counts")
    sp.add_argument("--seed", type=int, default=1)
    sp.set_defaults(func=_cmd_bench)

    sp = sub.add_parser("render", help="SVG of scene and path on stdout")
    sp.add_argument("scene")
    sp.add_argument("--trace", action="store_true", help="overlay swept wavefront regions")
    sp.set_defaults(func=_cmd_render)

    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _Usage as exc:
        print(str(exc), file=sys.stderr)
        return 64
    except (ScenarioError, OutsideBoundingBox, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
