import os
import subprocess
import sys

import pytest

from pappus.cli import main


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bad_depth_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["orbit", "--depth", "99"])
    assert exc.value.code == 2


def test_negative_depth_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["orbit", "--depth", "-1"])
    assert exc.value.code == 2


def test_bad_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("PAPPUS_THREADS", "lots")
    with pytest.raises(SystemExit) as exc:
        main(["orbit", "--depth", "2"])
    assert exc.value.code == 2


def test_threads_zero_means_auto(monkeypatch, capsys):
    monkeypatch.setenv("PAPPUS_THREADS", "0")
    code, out, err = run_main(["orbit", "--depth", "2"], capsys)
    assert code == 0
    assert len(out.strip().split("\n")) == 7


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_symmetric_seed_exits_3(capsys):
    code, out, err = run_main(["orbit", "--seed", "symmetric", "--depth", "2"],
                              capsys)
    assert code == 3
    assert "degenerate" in err


def test_orbit_default_count(capsys):
    code, out, err = run_main(["orbit"], capsys)
    assert code == 0
    assert len(out.strip().split("\n")) == 127


def test_orbit_row_shape(capsys):
    code, out, err = run_main(["orbit", "--depth", "1"], capsys)
    rows = [r.split("\t") for r in out.strip().split("\n")]
    assert all(len(r) == 8 for r in rows)
    assert rows[0][0] == "."


def test_orbit_all_letters(capsys):
    code, out, err = run_main(["orbit", "--depth", "2", "--letters", "all"],
                              capsys)
    assert code == 0
    assert len(out.strip().split("\n")) == 12


def test_curve_requires_out(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["curve", "--depth", "3"])
    assert exc.value.code == 2


def test_curve_writes_both_dumps(tmp_path, capsys):
    target = tmp_path / "curve.tsv"
    code, out, err = run_main(
        ["curve", "--depth", "4", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    rows = target.read_text().strip().split("\n")
    assert len(rows) == 17
    assert all(len(r.split("\t")) == 5 for r in rows)
    lines_file = tmp_path / "curve.lines.tsv"
    lrows = lines_file.read_text().strip().split("\n")
    assert len(lrows) == 17
    assert all(len(r.split("\t")) == 4 for r in lrows)


def test_curve_explicit_seed_matches_default(tmp_path, capsys):
    default = "-1,1;1,1;1,-1;-1,-1;1/4,1;-1/3,-1"
    a = tmp_path / "a.tsv"
    b = tmp_path / "b.tsv"
    code1, _, _ = run_main(["curve", "--depth", "3", "--out", str(a)], capsys)
    code2, _, _ = run_main(
        ["curve", "--seed=" + default, "--depth", "3", "--out", str(b)], capsys)
    assert code1 == code2 == 0
    assert a.read_text() == b.read_text()


def test_spectrum_record(capsys):
    code, out, err = run_main(["spectrum", "--word", "12"], capsys)
    assert code == 0
    cells = out.strip().split("\t")
    assert len(cells) == 5
    assert cells[0] == "12"
    assert cells[2] == "loxodromic"


def test_spectrum_quarantined_word(capsys):
    code, out, err = run_main(["spectrum", "--word", "1"], capsys)
    assert code == 0
    assert out.strip().split("\t")[0] == "1"


def test_spectrum_bad_letter(capsys):
    code, out, err = run_main(["spectrum", "--word", "1x"], capsys)
    assert code == 1
    assert "error" in err


def test_spectrum_missing_word(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum"])
    assert exc.value.code == 2


def test_render_svg(capsys):
    code, out, err = run_main(["render", "--depth", "5", "--draw", "curve"],
                              capsys)
    assert code == 0
    assert out.startswith("<svg")
    assert out.rstrip().endswith("</svg>")


def test_render_requires_draw(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["render", "--depth", "3"])
    assert exc.value.code == 2


def test_render_box_layer(capsys):
    code, out, err = run_main(["render", "--depth", "2", "--draw", "boxes"],
                              capsys)
    assert code == 0
    # 7 orbit quadrilaterals, four sides each
    assert out.count("<line ") == 28
    assert "<polyline" not in out


def test_render_bad_view(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["render", "--draw", "curve", "--view", "2:-2:0:1"])
    assert exc.value.code == 2


def test_slice_collinear_base_dir(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["slice", "--base", "1", "0", "0", "--direction", "2", "0", "0"])
    assert exc.value.code == 2


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\ndepth = 3\n")
    code, out, _ = run_main(["orbit", "--config", str(cfg)], capsys)
    assert len(out.strip().split("\n")) == 15
    code, out, _ = run_main(
        ["orbit", "--config", str(cfg), "--depth", "4"], capsys)
    assert len(out.strip().split("\n")) == 31


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus = 1\n")
    with pytest.raises(SystemExit) as exc:
        main(["orbit", "--config", str(cfg)])
    assert exc.value.code == 2


def test_bad_tolerance_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--mark-tol", "0"])
    assert exc.value.code == 2


def test_verify_maxlen_zero_inconclusive(capsys):
    code, out, err = run_main(
        ["verify", "--depth", "3", "--maxlen", "0"], capsys)
    assert code == 1
    assert "OVERALL\tinconclusive" in out


def test_verify_symmetric_degenerate_report(capsys):
    code, out, err = run_main(
        ["verify", "--seed", "symmetric", "--depth", "3", "--maxlen", "2"],
        capsys)
    assert code == 3
    assert "invariant_line\tdegenerate" in out
    assert "OVERALL\tdegenerate" in out


def test_verify_small_report(capsys):
    code, out, err = run_main(
        ["verify", "--depth", "4", "--maxlen", "2"], capsys)
    rows = out.strip().split("\n")
    assert rows[-1].startswith("OVERALL\t")
    overall = rows[-1].split("\t")[1]
    assert code == (0 if overall == "pass" else 1)
    names = [r.split("\t")[0] for r in rows[:-1]]
    assert "degeneracy_gate" in names
    assert "determinism" in names
    assert len(names) >= 12


def test_slice_pgm_thread_count_invariance(tmp_path):
    """Worker count must never leak into output bytes."""
    outs = []
    for threads in ("1", "4"):
        target = tmp_path / ("s%s.pgm" % threads)
        env = dict(os.environ, PAPPUS_THREADS=threads)
        proc = subprocess.run(
            [sys.executable, "-m", "pappus.cli", "slice", "--depth", "5",
             "--translate", "3", "--grid", "16", "--out", str(target)],
            env=env, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].startswith(b"P5\n16 16\n65535\n")
