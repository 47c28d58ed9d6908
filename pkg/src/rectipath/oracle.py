"""Independent exact arbiter: earliest-arrival Dijkstra on the Hanan grid.

The grid is the set of intersections of all vertical and horizontal lines
through edge endpoints, the terminals, and any extra targets.  Every
supporting line of an obstacle edge is a grid line, so a transversal crossing
of an edge can only happen at a grid node, and an optimal path exists whose
bends, wait points and crossings all lie on grid nodes (bends at vertex
coordinates; a wait point shares its column or row with the next bend).

Movement rule per step: departing node a toward a neighbor at time tau is
delayed to an edge's disappearance when the move is perpendicular to an edge
that contains a in its relative interior and tau falls strictly inside the
edge's existence interval.  This is memoryless and slightly conservative: it
also delays a retreat back to the side the path came from, which the
continuous model allows but which never improves the optimum (the retreat is
replaceable by waiting at the previous node).  ``oracle_plan_relaxed`` keeps
the arrival side in the state and delays true crossings only; both return
identical values, which the test suite checks on a batch of random scenes.

All arithmetic is exact (ints and fractions); nothing here shares code with
the planners.
"""

from __future__ import annotations

import heapq
import random
from bisect import bisect_left
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import Point, Scene, TransientEdge, l1_distance, validate_scene


class ParamsInfeasible(ValueError):
    """random_scene could not satisfy its constraints in the given ranges."""


def _grid_axes(scene: Scene, targets: Sequence[Point]):
    xs = {scene.source[0], scene.dest[0]}
    ys = {scene.source[1], scene.dest[1]}
    for e in scene.edges:
        for (px, py) in e.endpoints:
            xs.add(px)
            ys.add(py)
    for (px, py) in targets:
        xs.add(px)
        ys.add(py)
    return sorted(xs), sorted(ys)


def _hosting_interior(scene: Scene, p: Point, horizontal_edge: bool) -> Optional[TransientEdge]:
    for e in scene.edges:
        if e.horizontal == horizontal_edge and e.interior_contains(p):
            return e
    return None


def oracle_arrivals(scene: Scene, targets: Sequence[Point]):
    """Earliest arrival at each target, by one Dijkstra over the shared grid."""
    xs, ys = _grid_axes(scene, targets)
    nx, ny = len(xs), len(ys)
    vm = scene.vmax

    def node_id(x, y):
        return bisect_left(xs, x) * ny + bisect_left(ys, y)

    # Per node, the edge whose relative interior hosts it, split by the
    # orientation a departing move would cross.
    host_h: Dict[int, TransientEdge] = {}
    host_v: Dict[int, TransientEdge] = {}
    for e in scene.edges:
        lo, hi = e.span
        if e.horizontal:
            y = e.line_coord
            for x in xs[bisect_left(xs, lo) : bisect_left(xs, hi) + 1]:
                if lo < x < hi:
                    host_h[node_id(x, y)] = e
        else:
            x = e.line_coord
            for y in ys[bisect_left(ys, lo) : bisect_left(ys, hi) + 1]:
                if lo < y < hi:
                    host_v[node_id(x, y)] = e

    start = node_id(*scene.source)
    dist: dict = {start: 0}
    heap = [(0, start)]
    while heap:
        t, u = heapq.heappop(heap)
        if dist.get(u) != t:
            continue
        i, j = divmod(u, ny)
        x, y = xs[i], ys[j]
        for di, dj, vertical_move in ((1, 0, False), (-1, 0, False), (0, 1, True), (0, -1, True)):
            i2, j2 = i + di, j + dj
            if not (0 <= i2 < nx and 0 <= j2 < ny):
                continue
            host = host_h.get(u) if vertical_move else host_v.get(u)
            dep = t
            if host is not None and host.appear < t < host.disappear:
                dep = host.disappear
            cost = Fraction(abs(xs[i2] - x) + abs(ys[j2] - y)) / vm
            cand = dep + cost
            v = i2 * ny + j2
            if v not in dist or cand < dist[v]:
                dist[v] = cand
                heapq.heappush(heap, (cand, v))
    out = []
    for p in targets:
        val = dist.get(node_id(*p))
        if val is not None and isinstance(val, Fraction) and val.denominator == 1:
            val = int(val)
        out.append(val)
    return out


def oracle_plan(scene: Scene, target: Optional[Point] = None):
    """Exact minimum arrival time from the source to target (default: dest)."""
    return oracle_arrivals(scene, [scene.dest if target is None else target])[0]


def oracle_plan_relaxed(scene: Scene, target: Optional[Point] = None):
    """Like oracle_plan but with the arrival side kept in the Dijkstra state,
    so a retreat to the side the path came from is never delayed.  Exists to
    document that the memoryless delay rule is value-preserving."""
    goal = scene.dest if target is None else target
    xs, ys = _grid_axes(scene, [goal])
    nx, ny = len(xs), len(ys)
    vm = scene.vmax

    def node_id(x, y):
        return bisect_left(xs, x) * ny + bisect_left(ys, y)

    host_h: Dict[int, TransientEdge] = {}
    host_v: Dict[int, TransientEdge] = {}
    for e in scene.edges:
        lo, hi = e.span
        if e.horizontal:
            for x in xs[bisect_left(xs, lo) : bisect_left(xs, hi) + 1]:
                if lo < x < hi:
                    host_h[node_id(x, e.line_coord)] = e
        else:
            for y in ys[bisect_left(ys, lo) : bisect_left(ys, hi) + 1]:
                if lo < y < hi:
                    host_v[node_id(e.line_coord, y)] = e

    # State: (node, came_from) with came_from in {-1: start/none, 0: west,
    # 1: east, 2: south, 3: north, 4: slid along hosting line}.
    start = node_id(*scene.source)
    dist: dict = {(start, -1): 0}
    heap = [(0, start, -1)]
    goal_id = node_id(*goal)
    best = None
    while heap:
        t, u, came = heapq.heappop(heap)
        if dist.get((u, came)) != t:
            continue
        if u == goal_id:
            best = t if best is None or t < best else best
            continue
        i, j = divmod(u, ny)
        x, y = xs[i], ys[j]
        for move, (di, dj) in enumerate(((-1, 0), (1, 0), (0, -1), (0, 1))):
            i2, j2 = i + di, j + dj
            if not (0 <= i2 < nx and 0 <= j2 < ny):
                continue
            vertical_move = di == 0
            host = host_h.get(u) if vertical_move else host_v.get(u)
            dep = t
            if host is not None and host.appear < t < host.disappear:
                # A touch-and-retreat (straight back to the side the last
                # move came from) is not a crossing; everything else is.
                if vertical_move:
                    retreat = (came == 2 and dj == -1) or (came == 3 and dj == 1)
                else:
                    retreat = (came == 0 and di == -1) or (came == 1 and di == 1)
                if not retreat:
                    dep = host.disappear
            cost = Fraction(abs(xs[i2] - x) + abs(ys[j2] - y)) / vm
            cand = dep + cost
            v = i2 * ny + j2
            host2 = host_h.get(v) if vertical_move else host_v.get(v)
            if vertical_move:
                came2 = 2 if dj == 1 else 3
            else:
                came2 = 0 if di == 1 else 1
            if host2 is None:
                hostpar = host_v.get(v) if vertical_move else host_h.get(v)
                came2 = 4 if hostpar is not None else came2
            key = (v, came2)
            if key not in dist or cand < dist[key]:
                dist[key] = cand
                heapq.heappush(heap, (cand, v, came2))
    if best is None:
        vals = [t for (u, _c), t in dist.items() if u == goal_id]
        best = min(vals) if vals else None
    if isinstance(best, Fraction) and best.denominator == 1:
        best = int(best)
    return best


# ---------------------------------------------------------------------------
# Scene fuzzer
# ---------------------------------------------------------------------------


def _statically_ok(edges: List[TransientEdge], cand: TransientEdge) -> bool:
    clo, chi = cand.span
    for e in edges:
        if e.horizontal == cand.horizontal:
            if e.line_coord == cand.line_coord:
                return False  # no shared supporting line
        else:
            h, v = (e, cand) if e.horizontal else (cand, e)
            hlo, hhi = h.span
            vlo, vhi = v.span
            if hlo <= v.line_coord <= hhi and vlo <= h.line_coord <= vhi:
                return False
    return True


def random_scene(
    seed: int,
    n: int,
    *,
    coord_max: int = 60,
    time_max: int = 100,
    max_len: int = 20,
) -> Scene:
    """Deterministic random scene: n disjoint non-collinear transient edges,
    integer coordinates in [0, coord_max], intervals in [0, time_max], unit
    speed, terminals off every edge."""
    rng = random.Random(seed)
    edges: List[TransientEdge] = []
    attempts = 0
    while len(edges) < n:
        attempts += 1
        if attempts > 4000 * (n + 1):
            raise ParamsInfeasible(f"cannot place {n} edges in [0, {coord_max}]")
        a = rng.randint(0, coord_max - 1)
        b = min(a + rng.randint(1, max_len), coord_max)
        line = rng.randint(0, coord_max)
        ta = rng.randint(0, time_max - 1)
        td = min(ta + rng.randint(1, time_max), time_max)
        if rng.random() < 0.5:
            cand = TransientEdge(len(edges), (a, line), (b, line), ta, td)
        else:
            cand = TransientEdge(len(edges), (line, a), (line, b), ta, td)
        if _statically_ok(edges, cand):
            edges.append(cand)

    def off_edges(p):
        return all(not e.contains_point(p) for e in edges)

    while True:
        s = (rng.randint(0, coord_max), rng.randint(0, coord_max))
        if off_edges(s):
            break
    while True:
        d = (rng.randint(0, coord_max), rng.randint(0, coord_max))
        if d != s and off_edges(d):
            break
    scene = Scene(edges=tuple(edges), vmax=1, source=s, dest=d)
    assert validate_scene(scene).ok
    return scene


def bench_scene(seed: int, n: int) -> Scene:
    """Benchmark instance with terminals pinned near opposite corners.

    Every edge needs its own supporting line (general position), so the
    coordinate range must grow linearly with n.  Pinning the terminals to
    the box diagonal makes every run sweep the full diameter, removing the
    variance that random terminal placement adds to timing comparisons.
    """
    side = max(60, 3 * n)
    sc = random_scene(
        seed, n, coord_max=side, time_max=2 * side, max_len=20
    )

    def free_on_diagonal(start, step):
        i = start
        while 0 <= i <= side:
            p = (i, i)
            if all(not e.contains_point(p) for e in sc.edges):
                return p
            i += step
        raise ParamsInfeasible("no free corner point")

    s = free_on_diagonal(0, 1)
    d = free_on_diagonal(side, -1)
    assert s != d
    scene = Scene(edges=sc.edges, vmax=1, source=s, dest=d)
    assert validate_scene(scene).ok
    return scene
