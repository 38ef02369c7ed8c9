"""Plain-text dump formats.

Everything is tab-separated with one record per line so the outputs diff
cleanly; exact coordinates serialize as num:den pairs and floats as their
shortest round-trip repr.  Writes go through a temp file and an atomic
rename, so a crashed run never leaves a half-written dump behind.
"""

import os
import tempfile
from fractions import Fraction

from . import linalg3
from .numeric import fmt_scalar, parse_scalar
from .projective import HLine, HPoint


def fmt_coords(coords):
    return "/".join(fmt_scalar(c) for c in coords)


def parse_coords(text):
    return tuple(parse_scalar(part) for part in text.split("/"))


def fmt_point(p):
    return fmt_coords(p.coords)


def parse_point(text):
    return HPoint(parse_coords(text))


def fmt_line(l):
    return fmt_coords(l.coords)


def parse_line(text):
    return HLine(parse_coords(text))


def fmt_map_rows(rows):
    """Nine entries, row major, comma separated, determinant-normalized
    float with 17 significant digits."""
    f = linalg3.mat_float(rows)
    d = linalg3.det3(f)
    if d != 0:
        scale = abs(d) ** (1.0 / 3.0) * (1 if d > 0 else -1)
        f = tuple(tuple(x / scale for x in row) for row in f)
    return ",".join("%.17g" % x for row in f for x in row)


def fmt_fraction(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return "%d:%d" % (x.numerator, x.denominator)
    return "%.17g" % float(x)


def atomic_write(path, text):
    """Write text to path via a same-directory temp file and rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def dump_orbit(nodes):
    """word, the six points, diameter."""
    lines = []
    for node in nodes:
        label = node.word if node.word else "."
        cells = [label]
        cells.extend(fmt_point(p) for p in node.box.points)
        cells.append("%.17g" % node.diameter)
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def dump_curve(approx):
    """param, x, y, z, error bound; one cell per coordinate."""
    lines = []
    for s in approx.curve:
        cells = [fmt_fraction(s.param_value)]
        cells.extend(fmt_scalar(c) for c in s.point.coords)
        cells.append("%.17g" % s.error_bound)
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def dump_lines(approx):
    """param, a, b, c; one cell per line coefficient."""
    out = []
    for s in approx.lines:
        cells = [fmt_fraction(s.param_value)]
        cells.extend(fmt_scalar(c) for c in s.line.coords)
        out.append("\t".join(cells))
    return "\n".join(out) + "\n"


def dump_spectrum(element, report):
    """word, normalized matrix, class, moduli, mark residual."""
    word = element.word if element.word else "."
    moduli = ",".join("%.17g" % abs(l) for l in report.eigenvalues)
    return "\t".join([
        word,
        fmt_map_rows(element.map.rows),
        report.spec_class,
        moduli,
        "%.17g" % element.mark_residual,
    ]) + "\n"


def dump_report(report):
    """name, status, residual, tolerance per check plus an OVERALL line."""
    lines = []
    for c in report.checks:
        res = "-" if c.residual is None else "%.17g" % c.residual
        tol = "-" if c.tolerance is None else "%.17g" % c.tolerance
        lines.append("\t".join([c.name, c.status, res, tol]))
    lines.append("OVERALL\t%s" % report.overall)
    return "\n".join(lines) + "\n"
