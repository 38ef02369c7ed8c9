"""Deterministic renderings: SVG sketches and PGM distance rasters.

The SVG writer works in the affine chart z = 1 and clips everything to a
view rectangle; points behind the chart split the curve into separate
polylines rather than drawing a bogus chord through infinity.  The PGM
writer rasterizes the angle-to-nearest-line field over a complex slice as
16-bit big-endian grayscale.  Both formats are emitted with fixed decimal
precision so identical inputs give identical bytes.
"""

import math
import struct

import numpy as np


class SliceSpec:
    """Affine complex line z(w) = base + w * direction, with a window.

    base and direction are complex 3-vectors; the window is the rectangle
    re0..re1 x im0..im1 in the w-coordinate, sampled on a grid x grid
    lattice.
    """

    __slots__ = ("base", "direction", "re0", "re1", "im0", "im1", "grid")

    def __init__(self, base, direction, re0=-2.0, re1=2.0, im0=-2.0, im1=2.0,
                 grid=256):
        self.base = tuple(complex(x) for x in base)
        self.direction = tuple(complex(x) for x in direction)
        self.re0, self.re1 = float(re0), float(re1)
        self.im0, self.im1 = float(im0), float(im1)
        self.grid = int(grid)

    def points(self):
        """Grid of unit complex 3-vectors, row major, top row first."""
        res = np.linspace(self.re0, self.re1, self.grid)
        ims = np.linspace(self.im1, self.im0, self.grid)
        w = res[None, :] + 1j * ims[:, None]
        base = np.array(self.base, dtype=complex)
        direction = np.array(self.direction, dtype=complex)
        pts = base[None, None, :] + w[:, :, None] * direction[None, None, :]
        flat = pts.reshape(-1, 3)
        norms = np.linalg.norm(flat, axis=1)
        norms[norms == 0] = 1.0
        return flat / norms[:, None]


def _chart_xy(coords):
    x, y, z = (float(c) for c in coords)
    if abs(z) < 1e-12:
        return None
    return x / z, y / z


def _clip_segment(x0, y0, x1, y1, view):
    """Liang-Barsky clip of one segment to the view rect; None if outside."""
    xmin, ymin, xmax, ymax = view
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0 - xmin), (dx, xmax - x0),
                 (-dy, y0 - ymin), (dy, ymax - y0)):
        if p == 0:
            if q < 0:
                return None
            continue
        r = q / p
        if p < 0:
            if r > t1:
                return None
            t0 = max(t0, r)
        else:
            if r < t0:
                return None
            t1 = min(t1, r)
    return (x0 + t0 * dx, y0 + t0 * dy, x0 + t1 * dx, y0 + t1 * dy)


def _line_in_view(coords, view):
    """Chart segment of a projective line inside the view rect."""
    a, b, c = (float(v) for v in coords)
    xmin, ymin, xmax, ymax = view
    pts = []
    if abs(b) > 1e-15:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin - 1e-9 <= y <= ymax + 1e-9:
                pts.append((x, y))
    if abs(a) > 1e-15:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin - 1e-9 <= x <= xmax + 1e-9:
                pts.append((x, y))
    uniq = []
    for p in pts:
        if not any(abs(p[0] - q[0]) + abs(p[1] - q[1]) < 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    return uniq[0] + uniq[1]


class SvgCanvas:
    """Minimal SVG assembly with a fixed world-to-pixel transform."""

    def __init__(self, view=(-2.0, -2.0, 2.0, 2.0), size=800):
        self.view = view
        self.size = size
        self.parts = []
        xmin, ymin, xmax, ymax = view
        self.scale = size / max(xmax - xmin, ymax - ymin)

    def _pix(self, x, y):
        xmin, ymin, xmax, ymax = self.view
        return ((x - xmin) * self.scale, (ymax - y) * self.scale)

    def _fmt(self, v):
        return "%.6f" % v

    def polyline(self, chart_pts, stroke="#1a1a1a", width=1.0):
        if len(chart_pts) < 2:
            return
        coords = []
        for x, y in chart_pts:
            px, py = self._pix(x, y)
            coords.append("%s,%s" % (self._fmt(px), self._fmt(py)))
        self.parts.append(
            '<polyline fill="none" stroke="%s" stroke-width="%s" points="%s"/>'
            % (stroke, self._fmt(width), " ".join(coords)))

    def segment(self, x0, y0, x1, y1, stroke="#888888", width=0.5):
        clipped = _clip_segment(x0, y0, x1, y1, self.view)
        if clipped is None:
            return
        a = self._pix(clipped[0], clipped[1])
        b = self._pix(clipped[2], clipped[3])
        self.parts.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"/>'
            % (self._fmt(a[0]), self._fmt(a[1]), self._fmt(b[0]),
               self._fmt(b[1]), stroke, self._fmt(width)))

    def infinite_line(self, coords, stroke="#bbbbbb", width=0.4):
        seg = _line_in_view(coords, self.view)
        if seg is not None:
            self.segment(*seg, stroke=stroke, width=width)

    def comment(self, text):
        self.parts.append("<!-- %s -->" % text.replace("--", "- -"))

    def render(self):
        head = ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
                'viewBox="0 0 %d %d">' % (self.size, self.size, self.size, self.size))
        return "\n".join([head] + self.parts + ["</svg>"]) + "\n"


def curve_svg(approx, view=(-2.0, -2.0, 2.0, 2.0), size=800, draw_curve=True,
              draw_lines=False, draw_boxes=None):
    """SVG sketch of the sampled curve in parameter order.

    The polyline breaks wherever a sample leaves the chart or the view, so
    no chord is drawn across the line at infinity.  draw_boxes takes orbit
    nodes whose quadrilaterals are outlined underneath.
    """
    canvas = SvgCanvas(view, size)
    canvas.comment("curve depth %d, %d core samples" % (approx.depth, len(approx.curve)))
    xmin, ymin, xmax, ymax = view
    if draw_boxes:
        for node in draw_boxes:
            pts = [_chart_xy(p.coords) for p in
                   (node.box.p, node.box.q, node.box.r, node.box.s, node.box.p)]
            if all(pt is not None for pt in pts):
                for a, b in zip(pts, pts[1:]):
                    canvas.segment(a[0], a[1], b[0], b[1],
                                   stroke="#4477aa", width=0.6)
    if draw_lines:
        for s in approx.lines:
            canvas.infinite_line(s.line.float_coords)
    if draw_curve:
        run = []
        for s in approx.curve:
            xy = _chart_xy(s.point.coords)
            inside = (xy is not None
                      and xmin <= xy[0] <= xmax and ymin <= xy[1] <= ymax)
            if inside:
                run.append(xy)
            else:
                canvas.polyline(run)
                run = []
        canvas.polyline(run)
    return canvas.render()


def slice_pgm(approx, spec):
    """16-bit PGM of angle-to-nearest-sampled-line over a complex slice.

    Pixel value is the kulkarni angle scaled so a quarter turn saturates;
    dark pixels hug the limit set's trace on the slice.
    """
    lines = approx.line_units()
    pts = spec.points()
    vals = np.full(len(pts), np.pi / 2)
    block = 65536 // max(1, len(lines) // 256 + 1)
    block = max(256, block)
    for lo in range(0, len(pts), block):
        chunk = pts[lo:lo + block]
        s = np.abs(chunk @ lines.T.astype(complex)).min(axis=1)
        vals[lo:lo + block] = np.arcsin(np.clip(s, 0.0, 1.0))
    scaled = np.clip(vals / (math.pi / 2), 0.0, 1.0)
    pixels = np.round(scaled * 65535).astype(np.uint16)
    header = "P5\n%d %d\n65535\n" % (spec.grid, spec.grid)
    body = struct.pack(">%dH" % len(pixels), *pixels.tolist())
    return header.encode("ascii") + body
