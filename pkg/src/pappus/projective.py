"""Projective plane primitives: points, lines, maps, spectra, limits of maps.

Points and lines are homogeneous coordinate triples up to scale, over the
reals (exact Fractions or floats) or over the complexes.  The metric is the
angle metric d(x, y) = arccos(|<x, y>| / (|x| |y|)), with the hermitian
inner product in the complex case; distances from points to lines use the
complementary arcsin form.  Maps are 3x3 real matrices up to scale acting on
column vectors.
"""

import math
from fractions import Fraction

from . import linalg3, numeric
from .errors import (
    DegenerateFrame,
    EqualLines,
    EqualPoints,
    FieldMismatch,
    IllConditioned,
    KernelHit,
    NotEscaping,
    TooShort,
)

SCALE_TOL = 1e-9
RANK_TOL = 1e-8
GAP_TOL = 1e-6


class _HomObject:
    """Shared storage for homogeneous triples with canonical forms."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        if len(coords) != 3:
            raise ValueError("need exactly three homogeneous coordinates")
        self.coords = numeric.canonical(coords)

    @property
    def is_exact(self):
        return numeric.is_exact_tuple(self.coords)

    @property
    def field(self):
        return "complex" if numeric.is_complex_tuple(self.coords) else "real"

    @property
    def float_coords(self):
        if self.field == "complex":
            return self.coords
        return tuple(float(v) for v in self.coords)

    def __eq__(self, other):
        return type(self) is type(other) and self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def __repr__(self):
        inner = ", ".join(numeric.fmt_scalar(v) for v in self.coords)
        return "%s(%s)" % (type(self).__name__, inner)


class HPoint(_HomObject):
    """A point of the projective plane in homogeneous coordinates."""

    @classmethod
    def affine(cls, x, y):
        """Point (x, y) of the affine chart z = 1."""
        return cls((numeric.as_fraction(x), numeric.as_fraction(y), Fraction(1)))


class HLine(_HomObject):
    """A line ax + by + cz = 0, stored by its coefficient triple."""

    @classmethod
    def affine(cls, a, b, c):
        return cls((numeric.as_fraction(a), numeric.as_fraction(b), numeric.as_fraction(c)))


def _require_same_field(a, b):
    if a.field != b.field:
        raise FieldMismatch("cannot mix %s and %s operands" % (a.field, b.field))


def _hermitian_dot(a, b):
    """<a, b> with conjugation on the second slot; plain product when real."""
    return sum(x * (y.conjugate() if isinstance(y, complex) else y) for x, y in zip(a, b))


def _norm(a):
    return math.sqrt(sum((x * x.conjugate()).real if isinstance(x, complex) else x * x for x in a))


def dist(a, b):
    """Angle metric between two points (or two lines), in [0, pi/2]."""
    _require_same_field(a, b)
    u, v = a.float_coords, b.float_coords
    c = abs(_hermitian_dot(u, v)) / (_norm(u) * _norm(v))
    return math.acos(min(1.0, c))


def dist_point_line(p, l):
    """Angle from a point to the nearest point of a line, in [0, pi/2]."""
    _require_same_field(p, l)
    u, v = p.float_coords, l.float_coords
    s = abs(sum(x * y for x, y in zip(u, v))) / (_norm(u) * _norm(v))
    return math.asin(min(1.0, s))


def same_point(a, b, tol=SCALE_TOL):
    if a.is_exact and b.is_exact:
        return a.coords == b.coords
    return dist(a, b) <= tol


def same_line(a, b, tol=SCALE_TOL):
    if a.is_exact and b.is_exact:
        return a.coords == b.coords
    return dist(a, b) <= tol


def join(a, b):
    """The line through two distinct points."""
    _require_same_field(a, b)
    c = linalg3.cross(a.coords, b.coords)
    if all(v == 0 for v in c):
        raise EqualPoints("join of equal points")
    if not (a.is_exact and b.is_exact):
        if _norm(c) <= SCALE_TOL * _norm(a.float_coords) * _norm(b.float_coords):
            raise EqualPoints("join of nearly equal points")
    return HLine(c)


def meet(a, b):
    """The intersection point of two distinct lines."""
    _require_same_field(a, b)
    c = linalg3.cross(a.coords, b.coords)
    if all(v == 0 for v in c):
        raise EqualLines("meet of equal lines")
    if not (a.is_exact and b.is_exact):
        if _norm(c) <= SCALE_TOL * _norm(a.float_coords) * _norm(b.float_coords):
            raise EqualLines("meet of nearly equal lines")
    return HPoint(c)


def incident(p, l):
    """Exact incidence test when both are exact, else angle tolerance."""
    if p.is_exact and l.is_exact:
        return linalg3.dot(p.coords, l.coords) == 0
    return dist_point_line(p, l) <= SCALE_TOL


def complexify(obj):
    """Reinterpret a real point or line inside the complex projective plane."""
    if obj.field == "complex":
        return obj
    coords = tuple(complex(float(v), 0.0) for v in obj.coords)
    return type(obj)(coords)


class ProjMap:
    """An invertible real 3x3 matrix up to scale, acting on points."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        flat = [v for row in rows for v in row]
        if len(flat) != 9:
            raise ValueError("need a 3x3 matrix")
        if numeric.is_complex_tuple(flat):
            raise FieldMismatch("maps are real; complexify points, not maps")
        canon = numeric.canonical(flat)
        self.rows = (canon[0:3], canon[3:6], canon[6:9])

    @property
    def is_exact(self):
        return numeric.is_exact_tuple(self.rows[0] + self.rows[1] + self.rows[2])

    @property
    def float_rows(self):
        return linalg3.mat_float(self.rows)

    def det(self):
        return linalg3.det3(self.rows)

    def apply(self, p):
        img = linalg3.matvec(self.rows if p.is_exact and self.is_exact else self.float_rows,
                             p.coords if p.is_exact and self.is_exact else p.float_coords)
        if all(v == 0 for v in img):
            raise KernelHit("point lies in the kernel")
        if not (p.is_exact and self.is_exact):
            scale = linalg3.sup_norm(self.float_rows) * _norm(p.float_coords)
            if _norm(img) <= 1e-12 * scale:
                raise KernelHit("point lies numerically in the kernel")
        return HPoint(img)

    def apply_line(self, l):
        return self.dual().apply_to_coeffs(l)

    def apply_to_coeffs(self, l):
        img = linalg3.matvec(self.rows if l.is_exact and self.is_exact else self.float_rows,
                             l.coords if l.is_exact and self.is_exact else l.float_coords)
        if all(v == 0 for v in img):
            raise KernelHit("line lies in the kernel")
        return HLine(img)

    def dual(self):
        """The induced action on lines: inverse transpose up to scale."""
        return ProjMap(linalg3.transpose(linalg3.adjugate(self.rows)))

    def inverse(self):
        """Inverse up to scale via the adjugate."""
        adj = linalg3.adjugate(self.rows)
        if all(v == 0 for row in adj for v in row):
            raise IllConditioned("map is not invertible")
        return ProjMap(adj)

    def compose(self, other):
        """self after other."""
        return ProjMap(linalg3.matmul(self.rows, other.rows))

    def __matmul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        return isinstance(other, ProjMap) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "ProjMap(%r)" % (self.rows,)

    @classmethod
    def identity(cls):
        one = Fraction(1)
        zero = Fraction(0)
        return cls(((one, zero, zero), (zero, one, zero), (zero, zero, one)))


def map_from_correspondence(src, dst):
    """The unique map sending one projective frame to another.

    src and dst are 4-tuples of points, no three collinear in either.  The
    map carries src[k] to dst[k] exactly; exact inputs give an exact map.
    """
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("frames need four points each")

    def half(frame):
        a, b, c, d = frame
        cols = linalg3.transpose((a.coords, b.coords, c.coords))
        if linalg3.det3(cols) == 0:
            raise DegenerateFrame("three frame points are collinear")
        try:
            mu = linalg3.solve3(cols, d.coords)
        except IllConditioned:
            raise DegenerateFrame("frame solve failed")
        if any(m == 0 for m in mu):
            raise DegenerateFrame("fourth point lies on a frame edge")
        return linalg3.transpose(tuple(
            tuple(m * v for v in pt.coords) for m, pt in zip(mu, (a, b, c))
        ))

    m_dst = half(dst)
    m_src = half(src)
    return ProjMap(linalg3.matmul(m_dst, linalg3.adjugate(m_src)))


class SpectrumReport:
    """Classification of a map by its eigenvalue moduli pattern.

    spec_class is one of "loxodromic", "elation", "involution-like",
    "other".  Loxodromic reports carry the three fixed points and the two
    invariant lines; elation reports carry the pointwise-fixed axis and the
    pencil center.  moduli_gaps are consecutive log-modulus differences of
    the det-normalized eigenvalues, largest modulus first.
    """

    __slots__ = (
        "spec_class", "eigenvalues", "moduli_gaps",
        "attracting_point", "saddle_point", "repelling_point",
        "attracting_line", "repelling_line", "center", "axis",
    )

    def __init__(self, spec_class, eigenvalues, moduli_gaps, **extra):
        self.spec_class = spec_class
        self.eigenvalues = eigenvalues
        self.moduli_gaps = moduli_gaps
        for name in ("attracting_point", "saddle_point", "repelling_point",
                     "attracting_line", "repelling_line", "center", "axis"):
            setattr(self, name, extra.get(name))

    def __repr__(self):
        return "SpectrumReport(%s, gaps=%r)" % (self.spec_class, self.moduli_gaps)


def _det_normalized(m):
    rows = linalg3.mat_float(m.rows)
    d = linalg3.det3(rows)
    if d == 0.0:
        raise IllConditioned("map has zero determinant")
    c = math.copysign(abs(d) ** (1.0 / 3.0), d)
    return linalg3.mat_scale(rows, 1.0 / c)


def spectrum(m, gap_tol=GAP_TOL, rank_tol=RANK_TOL):
    """Eigen-classify a map; see SpectrumReport."""
    rows = _det_normalized(m)
    pairs = linalg3.eig3(rows)
    eigs = tuple(lam for lam, _ in pairs)
    moduli = [max(abs(lam), 1e-300) for lam in eigs]
    gaps = (math.log(moduli[0]) - math.log(moduli[1]),
            math.log(moduli[1]) - math.log(moduli[2]))

    ident = linalg3.identity3()
    prop_id = linalg3.sup_norm(
        linalg3.mat_sub(linalg3.sup_normalize(rows), ident)) <= SCALE_TOL
    if prop_id:
        return SpectrumReport("other", eigs, gaps)

    if min(gaps) > gap_tol:
        vecs = [vec for _, vec in pairs]
        att, sad, rep = (HPoint(v) for v in vecs)
        att_line = HLine(linalg3.cross(vecs[0], vecs[1]))
        rep_line = HLine(linalg3.cross(vecs[2], vecs[1]))
        return SpectrumReport(
            "loxodromic", eigs, gaps,
            attracting_point=att, saddle_point=sad, repelling_point=rep,
            attracting_line=att_line, repelling_line=rep_line,
        )

    square = linalg3.sup_normalize(linalg3.matmul(rows, rows))
    if linalg3.sup_norm(linalg3.mat_sub(square, ident)) <= 1e-8:
        return SpectrumReport("involution-like", eigs, gaps)

    if max(gaps) <= gap_tol:
        lam = (rows[0][0] + rows[1][1] + rows[2][2]) / 3.0
        shifted = linalg3.mat_sub(rows, linalg3.mat_scale(ident, lam))
        u_cols, sig, v_cols = linalg3.svd3(shifted)
        if sig[0] > 0 and sig[1] / sig[0] <= rank_tol:
            return SpectrumReport(
                "elation", eigs, gaps,
                center=HPoint(u_cols[0]), axis=HLine(v_cols[0]),
            )

    return SpectrumReport("other", eigs, gaps)


class PseudoData:
    """Singular limit data of a normalized map sequence."""

    __slots__ = ("numeric_rank", "sv_ratio", "image_point", "kernel_line", "field")

    def __init__(self, numeric_rank, sv_ratio, image_point, kernel_line, field="real"):
        self.numeric_rank = numeric_rank
        self.sv_ratio = sv_ratio
        self.image_point = image_point
        self.kernel_line = kernel_line
        self.field = field

    def __repr__(self):
        return "PseudoData(rank=%d, sv_ratio=%.3e)" % (self.numeric_rank, self.sv_ratio)


def pseudo_limit_data(seq, rank_tol=RANK_TOL):
    """Detect a rank-one limit of sup-normalized map arrays.

    The sequence escapes when the sv ratio sigma2/sigma1 of the normalized
    arrays either falls below rank_tol or decreases geometrically along the
    tail while the leading singular directions stabilize.  The limit's
    column space gives the image point and its row space the kernel line.
    Raises TooShort for fewer than two maps and NotEscaping when the ratio
    stays up or the directions keep moving.
    """
    if len(seq) < 2:
        raise TooShort("need at least two maps")
    arrays = [linalg3.sup_normalize(linalg3.mat_float(m.rows)) for m in seq]
    svds = [linalg3.svd3(a) for a in arrays[-5:]]
    ratios = [s[1][1] / s[1][0] if s[1][0] > 0 else float("inf") for s in svds]

    last_u, last_v = svds[-1][0][0], svds[-1][2][0]
    prev_u, prev_v = svds[-2][0][0], svds[-2][2][0]
    u_move = math.acos(min(1.0, abs(sum(a * b for a, b in zip(last_u, prev_u)))))
    v_move = math.acos(min(1.0, abs(sum(a * b for a, b in zip(last_v, prev_v)))))
    directions_stable = u_move <= 1e-3 and v_move <= 1e-3

    firm = ratios[-1] <= rank_tol
    trending = (
        len(ratios) >= 3
        and all(ratios[i + 1] < ratios[i] * 0.9 for i in range(len(ratios) - 1))
    )
    if not (firm or (trending and directions_stable)):
        raise NotEscaping("sv ratio %.3e does not fall" % ratios[-1])
    if not directions_stable:
        raise NotEscaping("singular directions keep moving")
    return PseudoData(1, ratios[-1], HPoint(last_u), HLine(last_v))
