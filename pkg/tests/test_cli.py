import io
import subprocess
import sys
from pathlib import Path

import pytest

from fracsum import cli

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["verify", "base2", "--string", "1.01", "--n", "4"], "verify_base2.txt"),
        (["verify", "base2", "--string", "1.00(1)", "--n", "4", "--corollary", "--gap"],
         "verify_base2_corollary.txt"),
        (["delta", "lai_wang", "--k", "4", "--window", "8", "--check-lattice"], "delta_lai_wang.txt"),
        (["fluct", "heighway", "--n", "15", "--count", "1000", "--seed", "1"], "fluct_heighway.txt"),
        (["circle", "--n", "1000", "--count", "2000", "--seed", "1", "--bins", "64"], "circle.txt"),
    ],
)
def test_golden_text(argv, golden):
    code, text = run(*argv)
    assert code == 0
    assert text == (GOLDEN / golden).read_text()


def test_verify_reports_holds():
    code, text = run("verify", "base2", "--string", "1.01", "--n", "4")
    header, row = text.splitlines()
    assert dict(zip(header.split(","), row.split(",")))["holds"] == "true"


def test_com():
    assert run("com", "heighway") == (0, "-1/5, 1/10\n")
    assert run("com", "base3_neg") == (0, "5/2\n")


def test_validate_and_config_file(tmp_path):
    cfg = tmp_path / "dragon.cfg"
    cfg.write_text("# comment\ndim = 2\nrow = -1 1\nrow = -1 -1  # second row\ndigit = 1 0\ndigit = 0 0\n")
    code, text = run("validate", str(cfg))
    assert code == 0
    assert text == "valid: name=dragon dim=2 q=2\ndigit 0 = 0, 0\ndigit 1 = 1, 0\n"


def test_bad_config_duplicate_residue(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("dim = 1\nrow = 2\ndigit = 0\ndigit = 2\n")
    code, _ = run("validate", str(cfg))
    err = capsys.readouterr().err
    assert code == 1
    assert "DuplicateResidue" in err and "(0,)" in err and "(2,)" in err


@pytest.mark.parametrize(
    "text, line",
    [("dim = 1\nrow = 2\ndigit = 0 1\n", 3), ("dim = x\n", 1), ("dim = 1\nfoo = 2\n", 2),
     ("dim = 1\nrow 2\n", 2)],
)
def test_config_errors_carry_line(tmp_path, capsys, text, line):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(text)
    assert run("validate", str(cfg))[0] == 1
    assert f"line {line}" in capsys.readouterr().err


def test_missing_config(capsys):
    assert run("validate", "/nonexistent/x.cfg")[0] == 1


def test_expand():
    assert run("expand", "base2", "--int", "5") == (0, "101.\n")
    assert run("expand", "base2", "--frac", "3/7", "--digits", "6") == (0, "0.(011)\n")
    assert run("expand", "heighway", "--int", "1,0") == (0, "1.\n")
    assert run("expand", "base2", "--int", "-1")[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "base2"],
        ["expand", "base2", "--int", "1", "--frac", "1/2"],
        ["expand", "base2", "--frac", "1/2"],
        ["expand", "base2", "--int", "x"],
        ["expand", "heighway", "--int", "1"],
        ["verify", "base2", "--string", "1.(", "--n", "2"],
        ["tile", "heighway", "--depth", "3"],
        ["tile", "heighway", "--depth", "3", "--cap", "2", "--csv-out", "/dev/null"],
        ["delta", "heighway", "--k", "2", "--window", "abc"],
        ["fluct", "heighway", "--n", "15", "--count", "10"],
        ["circle", "--n", "10", "--count", "10"],
        ["rho", "--t", "0.3", "--n", "10"],
        ["nosuchcommand"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2


def test_rho():
    code, text = run("rho", "--t", "0.0")
    assert code == 0 and text.startswith("rotation_number = 0.0\n")
    assert run("rho", "--t", "1.5")[0] == 1


def test_tile_outputs(tmp_path):
    pgm, png, csv = tmp_path / "a.pgm", tmp_path / "a.png", tmp_path / "a.csv"
    code, text = run("tile", "heighway", "--depth", "8", "--pgm-out", str(pgm), "--png-out", str(png),
                     "--csv-out", str(csv), "--width", "64", "--height", "64")
    assert code == 0 and "points = 256" in text
    assert pgm.read_bytes().startswith(b"P5\n64 64\n255\n")
    assert png.read_bytes()[:4] == b"\x89PNG"
    code, text = run("tile", "heighway", "--depth", "8", "--csv-out", str(csv))
    assert text == (GOLDEN / "tile_heighway_d8.txt").read_text()
    assert csv.read_text() == (GOLDEN / "heighway_d8.csv").read_text()


def test_tile_sampled_reports_seed(tmp_path):
    code, text = run("tile", "heighway", "--depth", "30", "--cap", "100", "--seed", "3",
                     "--csv-out", str(tmp_path / "s.csv"))
    assert code == 0 and "points = 100" in text and "seed = 3" in text


@pytest.mark.parametrize("name, depth, golden", [("heighway", 14, "heighway_d14.pgm"),
                                                 ("lai_wang", 7, "lai_wang_d7.pgm")])
def test_golden_rasters(tmp_path, name, depth, golden):
    out = tmp_path / "r.pgm"
    assert run("tile", name, "--depth", str(depth), "--pgm-out", str(out))[0] == 0
    assert out.read_bytes() == (GOLDEN / golden).read_bytes()


def test_capability_table_covers_modules():
    import fracsum

    parser = cli.build_parser()
    commands = set(parser._subparsers._group_actions[0].choices)
    assert set(cli.CAPABILITIES.values()) <= commands
    for cap in cli.CAPABILITIES:
        module, func = cap.split(".")
        assert callable(getattr(getattr(fracsum, module), func))
    modules = {c.split(".")[0] for c in cli.CAPABILITIES}
    assert modules == {"numsys", "expand", "sumformula", "tiles", "fluct", "circlemap"}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fracsum", "com", "heighway"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "-1/5, 1/10\n"
