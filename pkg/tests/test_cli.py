"""Command line interface."""

import json
import subprocess
import sys

import numpy as np
import pytest

from jbgrassmann import io
from jbgrassmann import manifold as mf
from jbgrassmann.cli import main


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, m in [("a", np.diag([1.0, 0.0])), ("b", np.full((2, 2), 0.5)), ("e22", np.diag([0.0, 1.0]))]:
        out[name] = str(tmp_path / f"{name}.json")
        io.write_matrix(mf.make_projection(m), out[name])
    out["dir"] = tmp_path
    return out


def run(argv, capsys):
    code = main([str(x) for x in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_gen_and_check(files, capsys):
    path = files["dir"] / "g.json"
    code, _, _ = run(["gen", "--n", 6, "--rank", 2, "--seed", 4, "-o", path], capsys)
    assert code == 0 and io.read_matrix(path).rank == 2
    code, out, _ = run(["check", path], capsys)
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.splitlines() if " " in line)
    assert lines["rank"] == "2"
    assert float(lines["idempotency_residual"]) < 1e-14


def test_check_rejects_non_projection(files, capsys):
    path = files["dir"] / "m.json"
    io.write_matrix(np.array([[1.0, 1.0], [0.0, 0.0]]), path)
    code, out, err = run(["check", path], capsys)
    assert code == 1 and "hermiticity_residual" in out and "error" in err


def test_dist_prints_quarter_pi(files, capsys):
    code, out, _ = run(["dist", files["a"], files["b"]], capsys)
    assert code == 0
    assert out.splitlines()[0] == "distance 0.7853981633974483"
    assert out.splitlines()[1] == "angles 0.7853981633974483"


def test_logmap_expmap(files, capsys):
    u = files["dir"] / "u.json"
    b2 = files["dir"] / "b2.json"
    assert run(["logmap", files["a"], files["b"], "-o", u], capsys)[0] == 0
    assert np.allclose(io.read_matrix(u).matrix, np.pi / 4 * np.array([[0, 1], [1, 0]]))
    assert run(["expmap", files["a"], u, "-o", b2], capsys)[0] == 0
    assert np.allclose(io.read_matrix(b2).matrix, 0.5, atol=1e-10)


def test_logmap_antipodal_exit_2(files, capsys):
    code, _, err = run(["logmap", files["a"], files["e22"], "-o", files["dir"] / "x.json"], capsys)
    assert code == 2 and "not in normal neighbourhood" in err


def test_expmap_domain_exit_2(files, capsys):
    a = io.read_matrix(files["a"])
    u = files["dir"] / "big.json"
    io.write_matrix(mf.make_tangent(a, 1.6 * np.array([[0, 1], [1, 0]])), u)
    assert run(["expmap", files["a"], u, "-o", files["dir"] / "x.json"], capsys)[0] == 2


def test_geodesic_zero_velocity(files, capsys):
    path = files["dir"] / "p.json"
    code, _, _ = run(["geodesic", files["a"], "--velocity", "0", "--samples", 10, "-o", path], capsys)
    assert code == 0
    samples, meta = io.read_path(path)
    assert len(samples) == 11
    a = io.read_matrix(files["a"]).matrix
    assert all(np.array_equal(p.matrix, a) for _, p in samples)
    assert meta["distance"] == 0.0


def test_geodesic_to_target(files, capsys):
    path = files["dir"] / "p.json"
    code, _, _ = run(["geodesic", files["a"], "--to", files["b"], "--samples", 4, "-o", path], capsys)
    assert code == 0
    samples, meta = io.read_path(path)
    assert [t for t, _ in samples] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert np.allclose(samples[-1][1].matrix, 0.5)
    assert meta["angles"] == [np.pi / 4] and abs(meta["distance"] - np.pi / 4) < 1e-15
    assert np.array_equal(meta["target"].matrix, io.read_matrix(files["b"]).matrix)


def test_midpoint_symmetry_frame(files, capsys):
    d = files["dir"]
    assert run(["midpoint", files["a"], files["b"], "-o", d / "m.json"], capsys)[0] == 0
    assert run(["symmetry", d / "m.json", files["a"], "-o", d / "s.json"], capsys)[0] == 0
    assert np.allclose(io.read_matrix(d / "s.json").matrix, 0.5)
    code, out, _ = run(["frame", files["a"]], capsys)
    assert code == 0 and out.startswith("alpha_1 ")
    run(["logmap", files["a"], files["b"], "-o", d / "u.json"], capsys)
    code, out, _ = run(["frame", files["a"], "--tangent", d / "u.json"], capsys)
    assert code == 0
    assert "rho 0.7853981633974483" in out and "theta 0.7853981633974483" in out


def test_symmetry_maps_tangents(files, capsys):
    d = files["dir"]
    run(["logmap", files["a"], files["b"], "-o", d / "u.json"], capsys)
    assert run(["symmetry", files["a"], d / "u.json", "-o", d / "su.json"], capsys)[0] == 0
    su = io.read_matrix(d / "su.json")
    assert np.allclose(su.matrix, -io.read_matrix(d / "u.json").matrix)


def test_input_errors_exit_1(files, capsys):
    d = files["dir"]
    assert run(["dist", d / "missing.json", files["b"]], capsys)[0] == 1
    (d / "bad.json").write_text(json.dumps({"schema_version": "1", "kind": "tangent", "n": 1,
                                            "entries": [[0, 0]]}))
    assert run(["expmap", files["a"], d / "bad.json", "-o", d / "x.json"], capsys)[0] == 1
    assert run(["gen", "--n", 2, "--rank", 3, "-o", d / "x.json"], capsys)[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1


def test_output_deterministic(files, capsys):
    first = run(["dist", files["a"], files["b"]], capsys)
    second = run(["dist", files["a"], files["b"]], capsys)
    assert first == second
    d = files["dir"]
    run(["geodesic", files["a"], "--to", files["b"], "-o", d / "p1.json"], capsys)
    run(["geodesic", files["a"], "--to", files["b"], "-o", d / "p2.json"], capsys)
    assert (d / "p1.json").read_bytes() == (d / "p2.json").read_bytes()


def test_selftest_small(capsys):
    code, out, _ = run(["selftest", "--n", 4, "--rank", 2, "--trials", 3], capsys)
    assert code == 0 and "checks passed" in out


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "jbgrassmann", "dist", files["a"], files["b"]],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("distance 0.7853981633974483")
