"""Command-line interface."""

import json
import math

import pytest

from nilcover.cli import main

OPT = "1.30633820,0,0.73894461,0.65316910,1.13132206,1.10841692"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_distance(capsys):
    code, out, _ = run_cli(capsys, "distance", "--from", "0,0,0",
                           "--to", "1,0,0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["distance"] == pytest.approx(1.0)


def test_distance_human(capsys):
    code, out, _ = run_cli(capsys, "distance", "--from", "0,0,0", "--to", "0,0,1")
    assert code == 0
    assert "distance = 1" in out


def test_geodesic(capsys):
    code, out, _ = run_cli(capsys, "geodesic", "--from", "0,0,0",
                           "--to", "0.4,0.3,0.2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["residual"] < 1e-8
    _, out2, _ = run_cli(capsys, "distance", "--from", "0,0,0",
                         "--to", "0.4,0.3,0.2", "--json")
    assert data["arc_length"] == pytest.approx(json.loads(out2)["distance"])


def test_ball_volume(capsys):
    code, out, _ = run_cli(capsys, "ball-volume", "--radius", "0.90293941",
                           "--json")
    assert code == 0
    assert json.loads(out)["volume"] == pytest.approx(3.12538516, abs=1e-5)


def test_convexity(capsys):
    code, out, _ = run_cli(capsys, "convexity", "--radius", "2.0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ball_convex"] is False
    assert data["m_image_convex"] is True


def test_chord_max(capsys):
    code, out, _ = run_cli(capsys, "chord-max", "--radius", "4.71238898038469",
                           "--json")
    assert code == 0
    assert json.loads(out)["max_vertical_chord"] == pytest.approx(
        13 * math.pi / 4)


def test_sphere_mesh_stdout(capsys):
    code, out, _ = run_cli(capsys, "sphere-mesh", "--radius", "1.0",
                           "--n-theta", "6", "--n-phi", "8")
    assert code == 0
    assert out.startswith("v ")
    assert "\nf " in out


def test_sphere_mesh_out_file(tmp_path, capsys):
    target = tmp_path / "ball.obj"
    code, out, _ = run_cli(capsys, "sphere-mesh", "--radius", "1.0",
                           "--n-theta", "6", "--n-phi", "8",
                           "--m-image", "--out", str(target))
    assert code == 0
    text = target.read_text()
    assert text.startswith("v ")


def test_lattice_domain(capsys):
    code, out, _ = run_cli(capsys, "lattice", "domain", "--lattice",
                           "1,0,0,0,1,0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["T213"] == [1.0, 1.0, 2.0]
    assert data["rotation"] == 0.0


def test_lattice_volume(capsys):
    code, out, _ = run_cli(capsys, "lattice", "volume", "--lattice", OPT,
                           "--json")
    assert code == 0
    assert json.loads(out)["domain_volume"] == pytest.approx(2.18415656,
                                                             abs=1e-5)


def test_lattice_points(capsys):
    code, out, _ = run_cli(capsys, "lattice", "points", "--lattice",
                           "1,0,0,0,1,0", "--shell", "1", "--json")
    assert code == 0
    assert len(json.loads(out)["points"]) == 27


def test_lattice_tiling_check(capsys):
    code, out, _ = run_cli(capsys, "lattice", "tiling-check", "--lattice",
                           "1,0,0,0,1,0", "--samples", "120", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["gaps"] == 0 and data["overlaps"] == 0
    assert data["ok"] is True


def test_lattice_file(tmp_path, capsys):
    f = tmp_path / "lat.json"
    f.write_text(json.dumps({"t1": [1.30633820, 0.0, 0.73894461],
                             "t2": [0.65316910, 1.13132206, 1.10841692],
                             "k": 1}))
    code, out, _ = run_cli(capsys, "covering", "radius",
                           "--lattice-file", str(f), "--json")
    assert code == 0
    assert json.loads(out)["covering_radius"] == pytest.approx(0.90293941,
                                                               abs=1e-6)


def test_circumball(capsys):
    code, out, _ = run_cli(capsys, "circumball", "0,0,0",
                           "1.30633820,0,0.73894461",
                           "0.65316910,1.13132206,1.10841692",
                           "0,0,1.4778892262913", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["radius"] == pytest.approx(0.90293941, abs=1e-5)
    assert data["center"][0] == pytest.approx(0.45981062, abs=1e-5)


def test_covering_density(capsys):
    code, out, _ = run_cli(capsys, "covering", "density", "--lattice", OPT,
                           "--json")
    assert code == 0
    data = json.loads(out)
    assert data["density"] == pytest.approx(1.43093459, abs=1e-5)
    assert data["verified"] is True


def test_covering_verify(capsys):
    code, out, _ = run_cli(capsys, "covering", "verify", "--lattice", OPT,
                           "--radius", "0.905", "--samples", "4000", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["covered"] is True


def test_covering_verify_failure_witness(capsys):
    code, out, _ = run_cli(capsys, "covering", "verify", "--lattice", OPT,
                           "--radius", "0.8", "--samples", "4000", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["covered"] is False
    assert data["witness_distance"] > 0.8


def test_bound(capsys):
    code, out, _ = run_cli(capsys, "bound", "f", "--radius",
                           str(math.pi / 2), "--json")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(1.71179510, abs=1e-5)


def test_bound_lower(capsys):
    code, out, _ = run_cli(capsys, "bound", "lower", "--radius",
                           "0.8584744499478333", "--json")
    assert code == 0
    assert json.loads(out)["density"] == pytest.approx(1.36278112, abs=1e-6)


def test_optimize_hex(capsys):
    code, out, _ = run_cli(capsys, "optimize", "hex", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["t11"] == pytest.approx(1.26001585, abs=1e-4)
    assert data["density"] == pytest.approx(1.42900615, abs=1e-5)


def test_optimize_lower(capsys):
    code, out, _ = run_cli(capsys, "optimize", "lower", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["density"] == pytest.approx(1.36278112, abs=1e-4)


def test_constants(capsys):
    code, out, _ = run_cli(capsys, "constants", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["max_ball_radius"] == pytest.approx(2 * math.pi)


def test_output_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "covering", "verify", "--lattice", OPT,
                         "--radius", "0.905", "--samples", "2000", "--json")
    _, out2, _ = run_cli(capsys, "covering", "verify", "--lattice", OPT,
                         "--radius", "0.905", "--samples", "2000", "--json")
    assert out1 == out2


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["distance", "--from", "0,0,0"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["distance", "--from", "0,0", "--to", "1,0,0"])
    assert exc.value.code == 1


def test_domain_error_exit_two(capsys):
    code, _, err = run_cli(capsys, "ball-volume", "--radius", "7.0")
    assert code == 2
    assert "error:" in err
    code, _, err = run_cli(capsys, "lattice", "volume", "--lattice",
                           "1,0,0,2,0,0")
    assert code == 2


def test_no_solution_exit_three(capsys):
    code, _, err = run_cli(capsys, "distance", "--from", "0,0,0",
                           "--to", "9,0,0")
    assert code == 3
    assert "error:" in err


def test_io_error_exit_four(capsys):
    code, _, err = run_cli(capsys, "covering", "radius",
                           "--lattice-file", "/nonexistent/lat.json")
    assert code == 4
    assert "error:" in err
