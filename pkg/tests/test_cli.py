import json

from click.testing import CliRunner

from patchwork.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_gen_then_validate(tmp_path):
    tri_file = tmp_path / "tri.json"
    res = run("gen-triangulation", "--n", "2", "--d", "2", "-o", str(tri_file))
    assert res.exit_code == 0
    res = run("validate", "--triangulation", str(tri_file))
    assert res.exit_code == 0
    assert json.loads(res.output)["ok"] is True


def test_betti_trivial_k0_is_projective_plane():
    res = run("betti", "--n", "2", "--d", "3", "--k", "0",
              "--phase", "trivial-k0")
    assert res.exit_code == 0
    assert json.loads(res.output)["betti"] == [1, 1, 1]


def test_hodge_both_routes_agree():
    res = run("hodge", "--n", "3", "--d", "1", "--k", "2", "--via", "both")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["diff"] == []
    assert data["poset"] == data["closed_form"]


def test_verify_cubic_curve():
    res = run("verify", "--n", "2", "--d", "3", "--k", "1", "--seed", "7")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["ok"] is True
    assert data["bound_ok"] is True
    assert data["chi"] == 0
    assert all(data["checks"].values())


def test_verify_deterministic():
    a = run("verify", "--n", "2", "--d", "2", "--k", "1", "--seed", "5").output
    b = run("verify", "--n", "2", "--d", "2", "--k", "1", "--seed", "5").output
    assert a == b


def test_phase_roundtrip(tmp_path):
    ph_file = tmp_path / "ph.json"
    res = run("phase", "--n", "2", "--d", "2", "--k", "1", "--seed", "3",
              "-o", str(ph_file))
    assert res.exit_code == 0
    res = run("betti", "--n", "2", "--d", "2", "--phase", str(ph_file))
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["cosheaf"] == data["simplicial"]


def test_export_svg(tmp_path):
    out = tmp_path / "curve.svg"
    res = run("export-svg", "--n", "2", "--d", "2", "--seed", "1",
              "-o", str(out))
    assert res.exit_code == 0
    assert out.read_text().startswith("<svg")


def test_missing_seed_fails():
    res = run("betti", "--n", "2", "--d", "2", "--k", "1")
    assert res.exit_code != 0


def test_malformed_triangulation_fails(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": []}')
    res = run("validate", "--triangulation", str(bad))
    assert res.exit_code != 0
