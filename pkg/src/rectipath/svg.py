"""Standalone SVG pictures of scenes, paths, and swept wavefront regions.

World coordinates have north pointing up, SVG has y growing downward, so
every y is negated on the way out (a transform flip would mirror nothing but
it also flips any future text labels, negating is simpler to reason about).
"""

from __future__ import annotations

from typing import Iterable, Optional, Tuple

from .geometry import Scene, TimedPath

_STYLE = """\
  .edge { stroke: #334; stroke-linecap: square; }
  .leg { stroke: #1565c0; fill: none; }
  .wait { fill: #ef6c00; stroke: none; }
  .source { fill: #2e7d32; stroke: none; }
  .dest { fill: #c62828; stroke: none; }
  .cone { fill: #fdd835; fill-opacity: 0.12; stroke: #fdd835; stroke-opacity: 0.5; }
  .flat { fill: #26c6da; fill-opacity: 0.12; stroke: #26c6da; stroke-opacity: 0.5; }
"""


def _f(v) -> str:
    return format(float(v), "g")


def render_svg(
    scene: Scene,
    path: Optional[TimedPath] = None,
    trace: Optional[Iterable[Tuple[str, Tuple]]] = None,
) -> str:
    xs = [scene.source[0], scene.dest[0]]
    ys = [scene.source[1], scene.dest[1]]
    for e in scene.edges:
        xs += [e.p1[0], e.p2[0]]
        ys += [e.p1[1], e.p2[1]]
    if path is not None:
        xs += [wp.point[0] for wp in path.waypoints]
        ys += [wp.point[1] for wp in path.waypoints]
    trace = list(trace) if trace is not None else []
    for _kind, (xlo, xhi, ylo, yhi) in trace:
        xs += [xlo, xhi]
        ys += [ylo, yhi]
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    span = max(xhi - xlo, yhi - ylo, 1)
    pad = max(2, span * 5 // 100)
    xlo, xhi, ylo, yhi = xlo - pad, xhi + pad, ylo - pad, yhi + pad
    w, h = xhi - xlo, yhi - ylo
    stroke = max(span, 20) / 100

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="640" height="%s" viewBox="%s %s %s %s">'
        % (_f(640 * float(h) / float(w)), _f(xlo), _f(-yhi), _f(w), _f(h))
    )
    out.append("<style>%s</style>" % _STYLE)
    out.append('<g stroke-width="%s">' % _f(stroke))

    for kind, (rxlo, rxhi, rylo, ryhi) in trace:
        out.append(
            '<rect class="%s" x="%s" y="%s" width="%s" height="%s"/>'
            % (kind, _f(rxlo), _f(-ryhi), _f(rxhi - rxlo), _f(ryhi - rylo))
        )

    for e in scene.edges:
        out.append(
            '<line class="edge" x1="%s" y1="%s" x2="%s" y2="%s">'
            "<title>edge %d: [%s, %s]</title></line>"
            % (_f(e.p1[0]), _f(-e.p1[1]), _f(e.p2[0]), _f(-e.p2[1]), e.id, e.appear, e.disappear)
        )

    if path is not None:
        wps = path.waypoints
        for a, b in zip(wps, wps[1:]):
            out.append(
                '<polyline class="leg" points="%s,%s %s,%s"/>'
                % (_f(a.point[0]), _f(-a.point[1]), _f(b.point[0]), _f(-b.point[1]))
            )
        for wp in wps:
            if wp.depart > wp.arrive:
                out.append(
                    '<circle class="wait" cx="%s" cy="%s" r="%s">'
                    "<title>wait %s to %s</title></circle>"
                    % (_f(wp.point[0]), _f(-wp.point[1]), _f(stroke * 2.5), wp.arrive, wp.depart)
                )

    for cls, p in (("source", scene.source), ("dest", scene.dest)):
        out.append(
            '<circle class="%s" cx="%s" cy="%s" r="%s"/>'
            % (cls, _f(p[0]), _f(-p[1]), _f(stroke * 2))
        )

    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
