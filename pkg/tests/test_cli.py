"""End-to-end tests of the octa command line."""

import pytest

import octa.main as cli
from octa.complex_core import CrossPolytopalComplex, OctaCell
from octa.errors import CellCertificationFailed, SearchExhausted
from octa.exact_geom import Point
from octa.fixtures import icosahedron
from octa.formats import load_off_file, read_xpc, write_off, write_xpc
from octa.main import (
    EXIT_INPUT,
    EXIT_NOT_BALANCED,
    EXIT_OK,
    EXIT_SEARCH,
    EXIT_VERIFICATION,
    main,
)


@pytest.fixture
def octa(tmp_path):
    """main() with a config path that does not exist, so defaults apply"""

    def run(*argv):
        return main(["--config", str(tmp_path / "no-config.yaml"), *map(str, argv)])

    return run


def test_gen_bipyramid(octa, tmp_path, capsys):
    out = tmp_path / "hex.off"
    assert octa("gen", "bipyramid2k", "--k", 3, "--out", out) == EXIT_OK
    assert load_off_file(out).f_vector() == (8, 18, 12)
    assert "f0=8" in capsys.readouterr().out


def test_gen_rejects_small_k(octa, tmp_path, capsys):
    assert octa("gen", "bipyramid2k", "--k", 1, "--out", tmp_path / "x.off") == EXIT_INPUT
    assert "k >= 2" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["subdivide"], ["ref", "cube"], ["gen", "bipyramid2k", "--k", "two"]])
def test_usage_errors_exit_1(octa, argv):
    with pytest.raises(SystemExit) as exc_info:
        octa(*argv)
    assert exc_info.value.code == EXIT_INPUT


def test_subdivide_tetrahedron_is_not_balanced(octa, data_dir, tmp_path, capsys):
    assert octa("subdivide", data_dir / "tetrahedron.off", "--out", tmp_path / "t.xpc") == EXIT_NOT_BALANCED
    assert "NotBalanced" in capsys.readouterr().err
    assert not (tmp_path / "t.xpc").exists()


def test_subdivide_icosahedron_is_not_balanced(octa, tmp_path):
    path = tmp_path / "ico.off"
    write_off(icosahedron(), path)
    assert octa("subdivide", path, "--out", tmp_path / "ico.xpc") == EXIT_NOT_BALANCED


def test_subdivide_malformed_input(octa, data_dir, capsys):
    assert octa("subdivide", data_dir / "malformed.off") == EXIT_INPUT
    assert "malformed.off:9:" in capsys.readouterr().err


def test_subdivide_missing_file(octa, tmp_path):
    assert octa("subdivide", tmp_path / "missing.off") == EXIT_INPUT


def test_bad_config_is_an_input_error(tmp_path, data_dir):
    path = tmp_path / "config.yaml"
    path.write_text("search:\n  cap: -3\n")
    assert main(["--config", str(path), "subdivide", str(data_dir / "octahedron.off")]) == EXIT_INPUT


@pytest.mark.parametrize(
    "error",
    [SearchExhausted("epsilon", 1, 0), CellCertificationFailed("type 3 cell 17 is not a cross-polytope", 3, 0)],
)
def test_search_failures_exit_4(octa, data_dir, tmp_path, monkeypatch, capsys, error):
    def failing(*args, **kwargs):
        raise error

    monkeypatch.setattr(cli, "octahedralize", failing)
    assert octa("subdivide", data_dir / "octahedron.off", "--out", tmp_path / "o.xpc") == EXIT_SEARCH
    assert type(error).__name__ in capsys.readouterr().err


def test_ref_tetra23_is_not_proper(octa, data_dir, tmp_path, capsys):
    out = tmp_path / "tetra23.xpc"
    assert octa("ref", "tetra23", "--out", out) == EXIT_OK
    assert len(read_xpc(out).cells) == 23
    report = tmp_path / "report.tsv"
    code = octa("verify", out, "--against", data_dir / "tetrahedron.off", "--report", report)
    assert code == EXIT_VERIFICATION
    assert "proper\tfail" in report.read_text()
    assert "❌ proper" in capsys.readouterr().out


def test_ref_schlegel24_and_export(octa, tmp_path):
    xpc, obj = tmp_path / "s.xpc", tmp_path / "s.obj"
    assert octa("ref", "schlegel24", "--out", xpc) == EXIT_OK
    assert octa("verify", xpc, "--level", "full") == EXIT_OK
    assert octa("export", xpc, "--out", obj) == EXIT_OK
    lines = obj.read_text().splitlines()
    assert sum(line.startswith("f ") for line in lines) == 8 * 23
    assert sum(line.startswith("v ") for line in lines) == len(read_xpc(xpc).vertices)


def test_verify_corrupted_pairing(octa, tmp_path, single_cell, capsys):
    broken = CrossPolytopalComplex(single_cell.vertices, (OctaCell((0, 2, 1, 3, 4, 5)),))
    path = tmp_path / "broken.xpc"
    write_xpc(broken, path)
    assert octa("verify", path) == EXIT_VERIFICATION
    assert "❌ is_cross_polytope" in capsys.readouterr().out


def test_verify_full_reports_flat_cell(octa, tmp_path, single_cell, capsys):
    vertices = single_cell.vertices + (Point.of(2, 0, 0),)
    flat = CrossPolytopalComplex(vertices, (OctaCell((0, 2, 1, 3, 6, 5)),))
    path = tmp_path / "flat.xpc"
    write_xpc(flat, path)
    assert octa("verify", path, "--level", "full") == EXIT_VERIFICATION
    assert "❌ is_cross_polytope" in capsys.readouterr().out


@pytest.mark.slow
def test_subdivide_octahedron_end_to_end(octa, data_dir, tmp_path, capsys):
    xpc, report = tmp_path / "o.xpc", tmp_path / "o.tsv"
    code = octa("subdivide", data_dir / "octahedron.off", "--out", xpc, "--verify", "full", "--report", report)
    assert code == EXIT_OK
    assert len(read_xpc(xpc).cells) == 92
    assert all(row.split("\t")[1] == "pass" for row in report.read_text().splitlines())
    assert octa("verify", xpc, "--against", data_dir / "octahedron.off", "--level", "full") == EXIT_OK

    again = tmp_path / "again.xpc"
    assert octa("subdivide", data_dir / "octahedron.off", "--out", again, "--verify", "none") == EXIT_OK
    assert again.read_bytes() == xpc.read_bytes()
