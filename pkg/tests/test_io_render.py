import os
from fractions import Fraction

import pytest

import pappus.io as pio
import pappus.limitset as ls
import pappus.render as render
from pappus.boxes import orbit
from pappus.group import enumerate_group, rho_hat
from pappus.projective import HLine, HPoint, spectrum

F = Fraction


@pytest.fixture(scope="module")
def approx(seed):
    return ls.sample_curve(seed, 6)


def test_point_roundtrip_exact():
    p = HPoint((F(-3, 7), F(2, 5), 1))
    assert pio.parse_point(pio.fmt_point(p)) == p


def test_line_roundtrip_float():
    l = HLine((0.25, -1.5, 3.0))
    back = pio.parse_line(pio.fmt_line(l))
    assert back.float_coords == l.float_coords


def test_fmt_coords_separator():
    assert pio.fmt_coords((F(1, 2), F(-3), F(0))) == "1:2/-3:1/0:1"


def test_fmt_fraction():
    assert pio.fmt_fraction(F(5)) == "5"
    assert pio.fmt_fraction(F(-7, 3)) == "-7:3"
    assert pio.fmt_fraction(0.5) == "0.5"


def test_fmt_map_rows_det_normalized():
    text = pio.fmt_map_rows(((2, 0, 0), (0, 2, 0), (0, 0, 2)))
    vals = [float(x) for x in text.split(",")]
    assert vals == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_atomic_write(tmp_path):
    target = tmp_path / "out.txt"
    pio.atomic_write(str(target), "payload\n")
    assert target.read_text() == "payload\n"
    leftovers = [f for f in os.listdir(tmp_path) if f != "out.txt"]
    assert leftovers == []


def test_atomic_write_replaces(tmp_path):
    target = tmp_path / "out.txt"
    target.write_text("old")
    pio.atomic_write(str(target), "new")
    assert target.read_text() == "new"


def test_dump_orbit_root_label(seed):
    nodes = orbit(seed, 2)
    text = pio.dump_orbit(nodes)
    rows = text.strip().split("\n")
    assert len(rows) == 7
    first = rows[0].split("\t")
    assert first[0] == "."
    assert len(first) == 8  # word, six points, diameter


def test_dump_curve_shape(approx):
    text = pio.dump_curve(approx)
    rows = text.strip().split("\n")
    assert len(rows) == len(approx.curve)
    assert rows[0].split("\t")[0] == "0"
    assert rows[-1].split("\t")[0] == "1"
    mid = rows[len(rows) // 2].split("\t")
    assert len(mid) == 5
    assert ":" in mid[0]
    assert float(mid[4]) > 0


def test_dump_lines_parses_back(approx):
    from pappus.numeric import parse_scalar
    text = pio.dump_lines(approx)
    rows = text.strip().split("\n")
    assert len(rows) == len(approx.lines)
    cells = rows[0].split("\t")
    assert len(cells) == 4
    l = HLine(tuple(parse_scalar(c) for c in cells[1:]))
    assert l == approx.lines[0].line


def test_dump_spectrum_cells(seed):
    g = rho_hat("12", seed)
    text = pio.dump_spectrum(g, spectrum(g.map))
    cells = text.strip().split("\t")
    assert len(cells) == 5
    assert cells[0] == "12"
    assert cells[2] == "loxodromic"
    moduli = [float(x) for x in cells[3].split(",")]
    assert len(moduli) == 3
    assert moduli[0] > 1 > moduli[2]
    assert float(cells[4]) == 0.0


def test_dump_report_overall_line(seed):
    cfg = ls.VerifyConfig(depth=3, maxlen=0, n_random_boxes=4, n_random_maps=2)
    report = ls.verify_all(seed, cfg)
    text = pio.dump_report(report)
    rows = text.strip().split("\n")
    assert rows[-1] == "OVERALL\tinconclusive"
    for row in rows[:-1]:
        cells = row.split("\t")
        assert len(cells) == 4
        assert cells[1] in ("pass", "fail", "skipped", "degenerate")


def test_svg_deterministic(seed, approx):
    a = render.curve_svg(approx, draw_lines=True)
    b = render.curve_svg(approx, draw_lines=True)
    assert a == b
    assert a.startswith("<svg")
    assert "<polyline" in a


def test_svg_box_overlay(seed, approx):
    nodes = orbit(seed, 2)
    text = render.curve_svg(approx, draw_boxes=nodes)
    assert text.count("<line") >= 4


def test_slice_spec_grid_shape():
    spec = render.SliceSpec((0, 0, 1), (1, 1j, 0), grid=8)
    pts = spec.points()
    assert pts.shape == (64, 3)
    import numpy as np
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)


def test_slice_pgm_header_and_size(approx):
    spec = render.SliceSpec((0, 0, 1), (1, 1j, 0), grid=16)
    data = render.slice_pgm(approx, spec)
    header = b"P5\n16 16\n65535\n"
    assert data.startswith(header)
    assert len(data) == len(header) + 2 * 16 * 16


def test_slice_pgm_deterministic(approx):
    spec = render.SliceSpec((0, 0, 1), (1, 1j, 0), grid=16)
    assert render.slice_pgm(approx, spec) == render.slice_pgm(approx, spec)


def test_slice_pgm_dark_on_curve(seed, approx):
    # center the window on a real chart point of the curve: pixel must be
    # much darker there than the frame average
    s = approx.curve[len(approx.curve) // 2]
    x, y, z = (float(c) for c in s.point.coords)
    cx, cy = x / z, y / z
    spec = render.SliceSpec((cx, cy, 1), (1, 1j, 0), re0=-0.01, re1=0.01,
                            im0=-0.01, im1=0.01, grid=9)
    data = render.slice_pgm(approx, spec)
    import struct
    vals = struct.unpack(">81H", data[len(b"P5\n9 9\n65535\n"):])
    center = vals[4 * 9 + 4]
    assert center < max(vals) / 10
