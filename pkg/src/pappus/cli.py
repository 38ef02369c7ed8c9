"""Command-line access to the box dynamics and the verification battery.

Exit codes: 0 success (and verify overall pass), 1 failed or inconclusive
verification, 2 usage or configuration error, 3 degenerate seed.
"""

import argparse
import os
import sys
from fractions import Fraction

from . import boxes, group, io, limitset, render
from .boxes import default_seed, symmetric_seed
from .errors import DegenerateSeed, PappusError
from .group import rho_hat
from .limitset import VerifyConfig, sample_curve, verify_all
from .projective import HPoint, spectrum

MAX_DEPTH = 24
MAX_MAXLEN = 12
MAX_GRID = 4096
MAX_THREADS = 64

_UNSET = object()


def parse_seed(text):
    """default | symmetric | six semicolon-separated x,y rational pairs."""
    if text == "default":
        return default_seed()
    if text == "symmetric":
        return symmetric_seed()
    parts = text.split(";")
    if len(parts) != 6:
        raise ValueError("inline seed needs six x,y pairs separated by ';'")
    pts = []
    for part in parts:
        xy = part.split(",")
        if len(xy) != 2:
            raise ValueError("seed pair %r is not x,y" % part)
        pts.append(HPoint.affine(Fraction(xy[0].strip()), Fraction(xy[1].strip())))
    return boxes.MarkedBox(*pts)


def read_config_file(path):
    """key=value lines; blank lines and # comments ignored."""
    values = {}
    with open(path) as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError("config line %r is not key=value" % line)
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


class RunConfig:
    """Merged CLI settings: defaults, then config file, then explicit flags."""

    FIELDS = ("seed", "depth", "maxlen", "translate_len", "grid", "threads",
              "mode", "view", "out", "rank_tol", "gap_tol", "mark_tol",
              "no_invariant_tol")
    DEFAULTS = {"seed": "default", "depth": 6, "maxlen": 6,
                "translate_len": None, "grid": 256, "threads": None,
                "mode": "exact", "view": "-2:2:-2:2", "out": None,
                "rank_tol": 1e-8, "gap_tol": 1e-6, "mark_tol": 1e-9,
                "no_invariant_tol": 1e-6}
    INTS = {"depth", "maxlen", "translate_len", "grid", "threads"}
    FLOATS = {"rank_tol", "gap_tol", "mark_tol", "no_invariant_tol"}

    def __init__(self, args, parser):
        self.parser = parser
        merged = dict(self.DEFAULTS)
        config_path = getattr(args, "config", None)
        if config_path:
            try:
                file_vals = read_config_file(config_path)
            except (OSError, ValueError) as exc:
                parser.error(str(exc))
            for key, val in file_vals.items():
                if key not in self.FIELDS:
                    parser.error("unknown config key %r" % key)
                try:
                    if key in self.INTS:
                        val = int(val)
                    elif key in self.FLOATS:
                        val = float(val)
                except ValueError:
                    parser.error("bad config value for %r: %r" % (key, val))
                merged[key] = val
        for key in self.FIELDS:
            flag = getattr(args, key, _UNSET)
            if flag is not _UNSET and flag is not None:
                merged[key] = flag
        if merged["threads"] is None:
            env = os.environ.get("PAPPUS_THREADS", "1")
            try:
                merged["threads"] = int(env)
            except ValueError:
                parser.error("PAPPUS_THREADS=%r is not an integer" % env)
        for key, value in merged.items():
            setattr(self, key, value)
        if not 0 <= self.depth <= MAX_DEPTH:
            parser.error("depth must be between 0 and %d" % MAX_DEPTH)
        if not 0 <= self.maxlen <= MAX_MAXLEN:
            parser.error("maxlen must be between 0 and %d" % MAX_MAXLEN)
        if self.translate_len is not None and not 0 <= self.translate_len <= MAX_MAXLEN:
            parser.error("translate must be between 0 and %d" % MAX_MAXLEN)
        if not 16 <= self.grid <= MAX_GRID:
            parser.error("grid must be between 16 and %d" % MAX_GRID)
        if not 0 <= self.threads <= MAX_THREADS:
            parser.error("threads must be between 0 and %d (0 = auto)"
                         % MAX_THREADS)
        if self.threads == 0:
            self.threads = min(MAX_THREADS, os.cpu_count() or 1)
        if self.mode not in ("exact", "float"):
            parser.error("mode must be exact or float")
        for name in sorted(self.FLOATS):
            if getattr(self, name) <= 0:
                parser.error("%s must be positive" % name)
        self.view_rect = self._parse_view(self.view)
        try:
            self.seed_box = parse_seed(self.seed)
        except (ValueError, ZeroDivisionError, PappusError) as exc:
            parser.error("bad seed: %s" % exc)

    def _parse_view(self, text):
        parts = str(text).split(":")
        if len(parts) != 4:
            self.parser.error("view must be x0:x1:y0:y1")
        try:
            x0, x1, y0, y1 = (float(p) for p in parts)
        except ValueError:
            self.parser.error("view %r has a non-numeric bound" % text)
        if not (x0 < x1 and y0 < y1):
            self.parser.error("view window is empty")
        return x0, x1, y0, y1


def _emit(cfg, text, path=_UNSET):
    out = cfg.out if path is _UNSET else path
    if out:
        if isinstance(text, bytes):
            with open(out, "wb") as handle:
                handle.write(text)
        else:
            io.atomic_write(out, text)
    else:
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
        else:
            sys.stdout.write(text)


def cmd_orbit(cfg, args):
    alphabet = boxes.LETTERS if args.letters == "all" else boxes.TAU_LETTERS
    limitset.assert_nondegenerate(cfg.seed_box)
    nodes = boxes.orbit(cfg.seed_box, cfg.depth, alphabet)
    _emit(cfg, io.dump_orbit(nodes))
    return 0


def _lines_path(out):
    root, ext = os.path.splitext(out)
    return root + ".lines" + ext


def cmd_curve(cfg, args):
    if not cfg.out:
        cfg.parser.error("curve writes two dumps and requires --out")
    translate = cfg.translate_len if cfg.translate_len is not None else 0
    approx = sample_curve(cfg.seed_box, cfg.depth, translate,
                          threads=cfg.threads)
    _emit(cfg, io.dump_curve(approx))
    _emit(cfg, io.dump_lines(approx), path=_lines_path(cfg.out))
    return 0


def cmd_render(cfg, args):
    if not args.draw:
        cfg.parser.error("render needs at least one --draw layer")
    translate = cfg.translate_len if cfg.translate_len is not None else 0
    approx = sample_curve(cfg.seed_box, cfg.depth, translate,
                          threads=cfg.threads)
    draw_boxes = boxes.orbit(cfg.seed_box, cfg.depth) if "boxes" in args.draw \
        else None
    x0, x1, y0, y1 = cfg.view_rect
    text = render.curve_svg(approx, view=(x0, y0, x1, y1),
                            draw_curve="curve" in args.draw,
                            draw_lines="lines" in args.draw,
                            draw_boxes=draw_boxes)
    _emit(cfg, text)
    return 0


def cmd_slice(cfg, args):
    base = tuple(complex(c) for c in args.base)
    direction = tuple(complex(c) for c in args.direction)
    cross = (base[1] * direction[2] - base[2] * direction[1],
             base[2] * direction[0] - base[0] * direction[2],
             base[0] * direction[1] - base[1] * direction[0])
    scale = max(max(abs(c) for c in base), max(abs(c) for c in direction), 1e-30)
    if max(abs(c) for c in cross) <= 1e-12 * scale * scale:
        cfg.parser.error("slice base and direction are collinear")
    translate = cfg.translate_len if cfg.translate_len is not None else 0
    approx = sample_curve(cfg.seed_box, cfg.depth, translate,
                          threads=cfg.threads)
    x0, x1, y0, y1 = cfg.view_rect
    spec = render.SliceSpec(base, direction, x0, x1, y0, y1, cfg.grid)
    _emit(cfg, render.slice_pgm(approx, spec))
    return 0


def cmd_spectrum(cfg, args):
    word = group.reduce_word(args.word)
    element = rho_hat(word, cfg.seed_box)
    rep = spectrum(element.map, cfg.gap_tol, cfg.rank_tol)
    _emit(cfg, io.dump_spectrum(element, rep))
    return 0


def cmd_verify(cfg, args):
    vcfg = VerifyConfig(depth=cfg.depth, maxlen=cfg.maxlen,
                        translate_len=cfg.translate_len, threads=cfg.threads,
                        mark_tol=cfg.mark_tol, gap_tol=cfg.gap_tol,
                        rank_tol=cfg.rank_tol,
                        no_invariant_tol=cfg.no_invariant_tol)
    report = verify_all(cfg.seed_box, vcfg)
    _emit(cfg, io.dump_report(report))
    if report.overall == "pass":
        return 0
    if report.overall == "degenerate":
        return 3
    return 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pappus",
        description="Marked-box dynamics and limit-set verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", default=_UNSET,
                       help="default, symmetric, or six x,y pairs joined by ';'")
        p.add_argument("--depth", type=int, default=_UNSET)
        p.add_argument("--maxlen", type=int, default=_UNSET)
        p.add_argument("--translate", dest="translate_len", type=int,
                       default=_UNSET,
                       help="apply group elements up to this word length")
        p.add_argument("--grid", type=int, default=_UNSET)
        p.add_argument("--threads", type=int, default=_UNSET,
                       help="worker count; 0 = auto")
        p.add_argument("--mode", choices=("exact", "float"), default=_UNSET)
        p.add_argument("--view", default=_UNSET,
                       help="window as x0:x1:y0:y1")
        p.add_argument("--rank-tol", dest="rank_tol", type=float, default=_UNSET)
        p.add_argument("--gap-tol", dest="gap_tol", type=float, default=_UNSET)
        p.add_argument("--mark-tol", dest="mark_tol", type=float, default=_UNSET)
        p.add_argument("--no-invariant-tol", dest="no_invariant_tol",
                       type=float, default=_UNSET)
        p.add_argument("--config", help="key=value settings file")
        p.add_argument("--out", default=_UNSET, help="write output to this path")

    p_orbit = sub.add_parser("orbit", help="dump refinement boxes")
    common(p_orbit)
    p_orbit.add_argument("--letters", choices=("tau", "all"), default="tau")
    p_orbit.set_defaults(func=cmd_orbit)

    p_curve = sub.add_parser("curve", help="dump curve and line samples")
    common(p_curve)
    p_curve.set_defaults(func=cmd_curve)

    p_render = sub.add_parser("render", help="SVG sketch of the curve")
    common(p_render)
    p_render.add_argument("--draw", action="append",
                          choices=("curve", "boxes", "lines"),
                          help="layer to draw; repeatable")
    p_render.set_defaults(func=cmd_render)

    p_slice = sub.add_parser("slice", help="PGM raster of a complex slice")
    common(p_slice)
    p_slice.add_argument("--base", nargs=3, default=("0", "0", "1"))
    p_slice.add_argument("--direction", nargs=3, default=("1", "1j", "0"))
    p_slice.set_defaults(func=cmd_slice)

    p_spec = sub.add_parser("spectrum", help="classify one word's map")
    common(p_spec)
    p_spec.add_argument("--word", required=True, help="word in letters i, 1, 2")
    p_spec.set_defaults(func=cmd_spectrum)

    p_verify = sub.add_parser("verify", help="run the check battery")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args, parser)
    try:
        return args.func(cfg, args)
    except DegenerateSeed as exc:
        print("degenerate seed: %s" % exc, file=sys.stderr)
        return 3
    except PappusError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
