"""Acceptance suite: one test per shipping criterion, exact tolerances.

Each test prints a single summary line (visible with -s or on failure); the
pytest -v status of the test is the pass/fail line for that criterion.  The
two wall-clock criteria are hard when run locally and advisory under CI
(set by the CI environment variable), since shared runners make timing
ratios unreliable.
"""

import gc
import os
import random
import statistics
import time

import pytest

from rectipath.engine import naive_plan
from rectipath.fast import fast_plan, wavelet_stats
from rectipath.geometry import validate_path
from rectipath.oracle import bench_scene, oracle_arrivals, oracle_plan, random_scene
from rectipath.rangeindex import (
    DynRangeMin,
    RectStabber,
    SegIntersecter,
    WeightedPoint,
    WeightedRect,
    WeightedSegment,
)
from rectipath.scenario import canonical_scene
from rectipath.spm import build_spm

_CI = bool(os.environ.get("CI"))


def _soft_fail(message):
    if _CI:
        pytest.xfail("advisory on shared hardware: " + message)
    pytest.fail(message)


def _hull(scene):
    pts = [scene.source, scene.dest] + [p for e in scene.edges for p in (e.p1, e.p2)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), max(xs), min(ys), max(ys)


@pytest.fixture(scope="module")
def small_runs():
    # Criterion 1 corpus, reused by criterion 8.
    runs = []
    for seed in range(1, 1001):
        scene = random_scene(seed, seed % 11)
        runs.append((seed, scene, fast_plan(scene), naive_plan(scene), oracle_plan(scene)))
    return runs


@pytest.fixture(scope="module")
def mid_runs():
    # Criterion 2 corpus, reused by criterion 8.
    runs = []
    for seed in range(1001, 1501):
        scene = random_scene(seed, 10 + (seed * 7) % 31)
        runs.append((seed, scene, fast_plan(scene), naive_plan(scene)))
    return runs


@pytest.fixture(scope="module")
def canonical_runs():
    runs = []
    for name, want in (("S0", 10), ("S1", 20), ("S2", 11), ("S3", 10)):
        scene = canonical_scene(name)
        runs.append((name, want, scene, fast_plan(scene), naive_plan(scene)))
    return runs


def test_criterion_1_exact_oracle_equivalence(small_runs):
    t0 = time.perf_counter()
    for seed, _scene, fast, naive, want in small_runs:
        assert fast.arrival == want, f"fast != oracle on seed {seed}"
        assert naive.arrival == want, f"naive != oracle on seed {seed}"
    dt = time.perf_counter() - t0
    print(f"criterion 1 PASS: 1000 scenes, fast = naive = oracle exactly ({dt:.1f}s compare)")


def test_criterion_2_naive_fast_equivalence_mid_size(mid_runs):
    for seed, scene, fast, naive in mid_runs:
        assert fast.arrival == naive.arrival, f"fast != naive on seed {seed}"
        for res in (fast, naive):
            report = validate_path(scene, res.path, res.arrival)
            assert report.ok, f"invalid path on seed {seed}: {report.issues[0]}"
    print("criterion 2 PASS: 500 scenes with n in [10, 40], equal arrivals, all paths valid")


def test_criterion_3_canonical_instances(canonical_runs):
    for name, want, scene, fast, naive in canonical_runs:
        assert oracle_plan(scene) == want, f"oracle disagrees with golden value on {name}"
        assert fast.arrival == want and naive.arrival == want, f"wrong arrival on {name}"
    print("criterion 3 PASS: S0=10 S1=20 S2=11 S3=10 on oracle, naive, and fast")


def test_criterion_4_linear_point_wavelet_count():
    seeds = range(1, 9)
    ratios = {}
    for n in (50, 100, 200, 400, 800):
        cm = max(60, 3 * n)
        counts = [
            wavelet_stats(random_scene(seed, n, coord_max=cm, time_max=2 * cm, max_len=20)).point_wavelets
            for seed in seeds
        ]
        ratios[n] = statistics.fmean(counts) / n
    cap = 1.25 * ratios[50]
    over = {n: r for n, r in ratios.items() if r > cap}
    assert not over, f"point wavelets per edge grew past 1.25x the n=50 level: {over} vs cap {cap:.2f}"
    shown = ", ".join(f"n={n}: {r:.1f}" for n, r in ratios.items())
    print(f"criterion 4 PASS: point wavelets per edge stays within 1.25x of n=50 ({shown})")


def test_criterion_5_near_linear_scaling():
    # Collector pauses scale with everything the other fixtures keep alive,
    # not with this planner, so they are kept out of the timed region.  The
    # five runs per size are interleaved round-robin so that machine-load
    # drift lands on every size instead of one size's whole block.
    sizes = (100, 200, 400, 800)
    scenes = {n: bench_scene(1, n) for n in sizes}
    times = {n: [] for n in sizes}
    gc.collect()
    gc.disable()
    try:
        for rnd in range(6):
            for n in sizes:
                t0 = time.perf_counter()
                fast_plan(scenes[n])
                if rnd:  # round 0 is warmup
                    times[n].append(time.perf_counter() - t0)
    finally:
        gc.enable()
    medians = {n: statistics.median(times[n]) for n in sizes}
    ratios = {n: medians[n] / medians[n // 2] for n in (200, 400, 800)}
    shown = ", ".join(f"T({n})/T({n // 2})={r:.2f}" for n, r in ratios.items())
    bad = {n: r for n, r in ratios.items() if r > 3.0}
    if bad:
        _soft_fail(f"doubling ratio exceeded 3.0: {shown}")
    print(f"criterion 5 PASS: {shown} (medians of 5 runs)")


def test_criterion_6_map_queries_exact_and_scalable():
    rng = random.Random(600)
    checked = 0
    for seed in range(1, 201):
        scene = random_scene(seed, seed % 11)
        m = build_spm(scene)
        xlo, xhi, ylo, yhi = _hull(scene)
        qs = [(rng.randint(xlo, xhi), rng.randint(ylo, yhi)) for _ in range(100)]
        for q, want in zip(qs, oracle_arrivals(scene, qs)):
            assert m.arrival(q) == want, f"map disagrees with oracle on seed {seed} at {q}"
            checked += 1

    per_query = {}
    for n in (100, 800):
        scene = bench_scene(1, n)
        m = build_spm(scene)
        xlo, xhi, ylo, yhi = _hull(scene)
        qs = [(rng.randint(xlo, xhi), rng.randint(ylo, yhi)) for _ in range(2000)]
        for q in qs[:200]:
            m.arrival(q)  # warmup, untimed
        gc.collect()
        gc.disable()
        try:
            t0 = time.perf_counter()
            for q in qs:
                m.arrival(q)
            per_query[n] = (time.perf_counter() - t0) / len(qs)
        finally:
            gc.enable()
    ratio = per_query[800] / per_query[100]
    print(
        f"criterion 6: {checked} queries exact; query time n=800/n=100 = {ratio:.2f} "
        f"({per_query[100] * 1e6:.0f}us -> {per_query[800] * 1e6:.0f}us)"
    )
    if ratio > 4.0:
        _soft_fail(f"query time ratio {ratio:.2f} above 4.0")
    print("criterion 6 PASS")


def test_criterion_7_range_structures_vs_linear_scan():
    rng = random.Random(700)

    for rep in range(1000):
        rects = []
        for i in range(rng.randrange(0, 16)):
            x1, x2 = sorted(rng.randrange(0, 26) for _ in range(2))
            y1, y2 = sorted(rng.randrange(0, 26) for _ in range(2))
            rects.append(WeightedRect(x1, x2, y1, y2, rng.randrange(0, 9), i))
        st = RectStabber(rects)
        for _ in range(6):
            q = (rng.randrange(-2, 28), rng.randrange(-2, 28))
            floor = rng.choice([None, rng.randrange(0, 9)])
            want = min(
                (
                    (r.weight, r.payload)
                    for r in rects
                    if r.xlo <= q[0] <= r.xhi
                    and r.ylo <= q[1] <= r.yhi
                    and (floor is None or r.weight > floor)
                ),
                default=None,
            )
            got = st.query(q, floor)
            assert (None if got is None else (got.weight, got.payload)) == want

    def boxes_meet(a1, a2, b1, b2):
        ax1, ax2 = sorted((a1[0], a2[0]))
        ay1, ay2 = sorted((a1[1], a2[1]))
        bx1, bx2 = sorted((b1[0], b2[0]))
        by1, by2 = sorted((b1[1], b2[1]))
        return ax1 <= bx2 and bx1 <= ax2 and ay1 <= by2 and by1 <= ay2

    for rep in range(1000):
        segs = []
        for i in range(rng.randrange(0, 16)):
            a = rng.randrange(0, 26)
            b, c = sorted(rng.randrange(0, 26) for _ in range(2))
            pts = ((b, a), (c, a)) if rng.random() < 0.5 else ((a, b), (a, c))
            segs.append(WeightedSegment(pts[0], pts[1], rng.randrange(0, 9), i))
        si = SegIntersecter(segs)
        for _ in range(6):
            a = rng.randrange(0, 26)
            b, c = sorted(rng.randrange(0, 26) for _ in range(2))
            p1, p2 = ((b, a), (c, a)) if rng.random() < 0.5 else ((a, b), (a, c))
            want = min(
                ((s.weight, s.payload) for s in segs if boxes_meet(p1, p2, s.p1, s.p2)),
                default=None,
            )
            got = si.query(p1, p2)
            assert (None if got is None else (got.weight, got.payload)) == want

    for rep in range(1000):
        d = DynRangeMin()
        live = {}
        next_id = 0
        for _ in range(rng.randrange(1, 30)):
            op = rng.random()
            if op < 0.45 or not live:
                p = WeightedPoint(rng.randrange(0, 20), rng.randrange(0, 20), rng.randrange(0, 9), next_id)
                next_id += 1
                d.insert(p)
                live[(p.x, p.y, p.payload)] = p
            elif op < 0.65:
                key = rng.choice(list(live))
                d.delete(*key)
                del live[key]
            else:
                x1, x2 = sorted(rng.randrange(-1, 22) for _ in range(2))
                y1, y2 = sorted(rng.randrange(-1, 22) for _ in range(2))
                want = min(
                    (
                        (p.weight, p.payload)
                        for p in live.values()
                        if x1 <= p.x <= x2 and y1 <= p.y <= y2
                    ),
                    default=None,
                )
                got = d.query((x1, x2, y1, y2))
                assert (None if got is None else (got.weight, got.payload)) == want

    print("criterion 7 PASS: stabbing, intersection, and range-min match linear scans on 1000 sequences each")


def test_criterion_8_paths_monotone_with_legal_waits(small_runs, mid_runs, canonical_runs):
    bad = 0
    total = 0
    for seed, scene, fast, naive, _want in small_runs:
        for res in (fast, naive):
            total += 1
            bad += not validate_path(scene, res.path, res.arrival).ok
    for seed, scene, fast, naive in mid_runs:
        for res in (fast, naive):
            total += 1
            bad += not validate_path(scene, res.path, res.arrival).ok
    for _name, _want, scene, fast, naive in canonical_runs:
        for res in (fast, naive):
            total += 1
            bad += not validate_path(scene, res.path, res.arrival).ok
    assert bad == 0, f"{bad} of {total} paths failed validation"
    print(f"criterion 8 PASS: {total} paths valid (monotone subpaths, perpendicular wait departures)")
