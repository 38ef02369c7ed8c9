"""Marked boxes and the three box operations.

A marked box is a convex quadrilateral (p, q, r, s) with a distinguished
mark t in the open top edge pq and b in the open bottom edge rs.  The
interior triple (u, m, v) comes from the hexagon construction on the six
points, its axis is the line through all three, and the operations act as

    i:    (p, q, r, s; t, b)  ->  (r, s, p, q; b, t)
    tau1: (p, q, r, s; t, b)  ->  (p, q, v, u; t, m)
    tau2: (p, q, r, s; t, b)  ->  (u, v, r, s; m, b)

Two boxes are equal when their data matches up to the relabeling
(p, q, r, s; t, b) ~ (q, p, s, r; t, b).  Words act with the rightmost
letter applied first.
"""

from fractions import Fraction

from . import linalg3, projective
from .errors import BadLetter, DegenerateBox, EqualLines, EqualPoints
from .projective import HPoint, dist, join, meet

LETTERS = ("i", "1", "2")
TAU_LETTERS = ("1", "2")


class MarkedBox:
    """Six points: vertices p, q, r, s and marks t, b."""

    __slots__ = ("p", "q", "r", "s", "t", "b")

    def __init__(self, p, q, r, s, t, b):
        self.p, self.q, self.r, self.s = p, q, r, s
        self.t, self.b = t, b

    @property
    def points(self):
        return (self.p, self.q, self.r, self.s, self.t, self.b)

    @property
    def is_exact(self):
        return all(pt.is_exact for pt in self.points)

    def transform(self, m):
        return MarkedBox(*(m.apply(pt) for pt in self.points))

    def __eq__(self, other):
        if not isinstance(other, MarkedBox):
            return NotImplemented
        if boxes_match(self.points, other.points):
            return True
        relabeled = (other.q, other.p, other.s, other.r, other.t, other.b)
        return boxes_match(self.points, relabeled)

    def __hash__(self):
        # relabel-invariant: hash the unordered vertex pair structure
        return hash((frozenset((self.p, self.q)), frozenset((self.r, self.s)),
                     self.t, self.b))

    def __repr__(self):
        return "MarkedBox(p=%r, q=%r, r=%r, s=%r, t=%r, b=%r)" % self.points


def boxes_match(pts_a, pts_b):
    return all(projective.same_point(x, y) for x, y in zip(pts_a, pts_b))


def default_seed():
    """The standard full box: unit square with off-center marks."""
    return MarkedBox(
        HPoint.affine(-1, 1), HPoint.affine(1, 1),
        HPoint.affine(1, -1), HPoint.affine(-1, -1),
        HPoint.affine(Fraction(1, 4), 1), HPoint.affine(Fraction(-1, 3), -1),
    )


def symmetric_seed():
    """Unit square with centered marks; generates a flat configuration."""
    return MarkedBox(
        HPoint.affine(-1, 1), HPoint.affine(1, 1),
        HPoint.affine(1, -1), HPoint.affine(-1, -1),
        HPoint.affine(0, 1), HPoint.affine(0, -1),
    )


def _edge_coefficients(mark, end_a, end_b):
    """Solve mark = lam * end_a + mu * end_b on a common line."""
    cols = linalg3.transpose((end_a.coords, end_b.coords, linalg3.cross(end_a.coords, end_b.coords)))
    lam, mu, extra = linalg3.solve3(cols, mark.coords)
    return lam, mu, extra


def validate(box):
    """Return a list of violation strings; empty means the box is proper.

    Convexity is checked in the affine chart z = 1, so points on the line
    at infinity are reported as violations rather than reinterpreted.
    """
    problems = []
    pts = box.points
    names = ("p", "q", "r", "s", "t", "b")
    floats = []
    for name, pt in zip(names, pts):
        x, y, z = pt.float_coords
        if abs(z) <= 1e-15 * max(abs(x), abs(y), 1.0):
            problems.append("%s lies at infinity in the chart" % name)
            floats.append(None)
        else:
            sign = 1.0 if z > 0 else -1.0
            floats.append((x * sign, y * sign, abs(z)))
    if any(f is None for f in floats):
        return problems

    for a in range(6):
        for b in range(a + 1, 6):
            if projective.same_point(pts[a], pts[b]):
                problems.append("%s equals %s" % (names[a], names[b]))
    if problems:
        return problems

    quad = floats[:4]
    dets = []
    for k in range(4):
        a, b, c = quad[k], quad[(k + 1) % 4], quad[(k + 2) % 4]
        dets.append(linalg3.det3((a, b, c)))
    if not (all(d > 0 for d in dets) or all(d < 0 for d in dets)):
        problems.append("vertices p,q,r,s are not in convex position")

    for mark_name, mark, ea, eb, edge in (("t", pts[4], pts[0], pts[1], "pq"),
                                          ("b", pts[5], pts[2], pts[3], "rs")):
        try:
            lam, mu, extra = _edge_coefficients(mark, ea, eb)
        except Exception:
            problems.append("%s cannot be placed on edge %s" % (mark_name, edge))
            continue
        scale = max(abs(float(lam)), abs(float(mu)), abs(float(extra)), 1e-300)
        if abs(float(extra)) > 1e-12 * scale and extra != 0:
            problems.append("%s is off the %s line" % (mark_name, edge))
            continue
        za = ea.float_coords[2]
        zb = eb.float_coords[2]
        zm = mark.float_coords[2]
        lam_c = float(lam) * (1.0 if za * zm > 0 else -1.0)
        mu_c = float(mu) * (1.0 if zb * zm > 0 else -1.0)
        if not (lam_c > 0 and mu_c > 0):
            problems.append("%s is outside the open edge %s" % (mark_name, edge))
    return problems


def pappus_triple(box):
    """The interior triple (u, m, v); all three lie on one line, the axis."""
    p, q, r, s, t, b = box.points
    try:
        u = meet(join(p, b), join(t, s))
        m = meet(join(p, r), join(q, s))
        v = meet(join(t, r), join(q, b))
    except (EqualPoints, EqualLines) as exc:
        raise DegenerateBox("hexagon construction degenerated: %s" % exc) from exc
    return u, m, v


def axis(box):
    """The line carrying the interior triple."""
    u, m, v = pappus_triple(box)
    try:
        return join(u, v)
    except EqualPoints as exc:
        raise DegenerateBox("interior triple collapsed") from exc


def top_edge(box):
    return join(box.p, box.q)


def bottom_edge(box):
    return join(box.r, box.s)


def apply_box_op(box, op):
    """One letter of the alphabet; raises BadLetter for anything else."""
    if op == "i":
        return MarkedBox(box.r, box.s, box.p, box.q, box.b, box.t)
    if op in ("1", "2"):
        u, m, v = pappus_triple(box)
        if op == "1":
            return MarkedBox(box.p, box.q, v, u, box.t, m)
        return MarkedBox(u, v, box.r, box.s, m, box.b)
    raise BadLetter("unknown box operation %r" % (op,))


def apply_word(box, word):
    """Apply a word with its rightmost letter first."""
    for op in reversed(word):
        box = apply_box_op(box, op)
    return box


def diameter(box):
    """Largest angle distance among the fifteen point pairs."""
    pts = box.points
    best = 0.0
    for a in range(6):
        for b in range(a + 1, 6):
            d = dist(pts[a], pts[b])
            if d > best:
                best = d
    return best


def marks_diameter(box, triple=None):
    """Largest angle distance among the marks t, m, b.

    This is the curve-facing size of a box: the vertices of deep boxes can
    pin the six-point diameter at a constant while the marks keep
    contracting toward the limit curve.
    """
    if triple is None:
        triple = pappus_triple(box)
    m = triple[1]
    return max(dist(box.t, m), dist(box.b, m), dist(box.t, box.b))


class OrbitNode:
    """One visited box in a word orbit."""

    __slots__ = ("word", "box", "diameter")

    def __init__(self, word, box, diam):
        self.word = word
        self.box = box
        self.diameter = diam

    def __repr__(self):
        return "OrbitNode(%r, diameter=%.6f)" % (self.word, self.diameter)


def orbit(seed, depth, alphabet=TAU_LETTERS):
    """Breadth-first orbit of reduced words up to the given length.

    Nodes come back level by level, children in alphabet order, so the
    ordering is deterministic.  Words never repeat the involution letter
    twice in a row; that is the only reduction in the free product.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    for letter in alphabet:
        if letter not in LETTERS:
            raise BadLetter("unknown letter %r in alphabet" % (letter,))
    nodes = [OrbitNode("", seed, diameter(seed))]
    level = [nodes[0]]
    for _ in range(depth):
        nxt = []
        for node in level:
            for letter in alphabet:
                if letter == "i" and node.word.startswith("i"):
                    continue
                child_box = apply_box_op(node.box, letter)
                child = OrbitNode(letter + node.word, child_box, diameter(child_box))
                nxt.append(child)
        nodes.extend(nxt)
        level = nxt
    return nodes
