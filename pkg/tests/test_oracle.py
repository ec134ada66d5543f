"""Reference computations and the seeded self-test suite."""

import numpy as np
import pytest
from conftest import opn, unit

from jbgrassmann import manifold as mf
from jbgrassmann.errors import ValidationError
from jbgrassmann.oracle import (
    CHECKS,
    block_joint_peirce,
    commutator_flow,
    operator_flow_series,
    principal_angles,
    run_suite,
)
from jbgrassmann.oracle.suite import format_reports


def _line(theta):
    v = np.array([np.cos(theta), np.sin(theta)])
    return np.outer(v, v)


def test_principal_angles_examples(e11, e22, half):
    assert np.allclose(principal_angles(half, half), 0, atol=1e-8)
    assert np.allclose(principal_angles(e11, half), [np.pi / 4])
    a = mf.make_projection(np.diag([1.0, 1.0, 0.0, 0.0]))
    b = mf.make_projection(np.diag([0.0, 0.0, 1.0, 1.0]))
    assert np.allclose(principal_angles(a, b), np.pi / 2)


def test_principal_angles_small_angle_accuracy():
    a = mf.make_projection(_line(0.0))
    b = mf.make_projection(_line(1e-9))
    assert abs(principal_angles(a, b)[0] - 1e-9) < 1e-18


def test_principal_angles_rank_mismatch():
    with pytest.raises(ValidationError):
        principal_angles(mf.random_projection(4, 1, 0), mf.random_projection(4, 2, 0))


def test_commutator_flow_examples(e11):
    assert np.allclose(commutator_flow(e11, mf.zero_tangent(e11), 0.7).matrix, e11.matrix)
    theta = 0.3
    u = mf.make_tangent(e11, theta * (unit(2, 1, 2) + unit(2, 2, 1)))
    for t in (0.5, 1.0, 2.5):
        assert np.allclose(commutator_flow(e11, u, t).matrix, _line(t * theta))


def test_operator_flow_series(e11, rng):
    u = mf.make_tangent(e11, unit(2, 1, 2) + unit(2, 2, 1))
    assert np.array_equal(operator_flow_series(e11, u, 0.3, 1), e11.matrix)
    assert np.array_equal(operator_flow_series(e11, mf.zero_tangent(e11), 0.3, 9), e11.matrix)
    a = mf.random_projection(6, 2, rng)
    v = mf.random_tangent(a, rng)
    assert opn(operator_flow_series(a, v, 0.1, 30) - commutator_flow(a, v, 0.1).matrix) < 1e-12
    with pytest.raises(ValidationError):
        operator_flow_series(a, v, 0.1, 0)


def test_block_joint_peirce_blocks():
    atoms = [unit(3, 1, 1), unit(3, 2, 2)]
    z = np.arange(9.0).reshape(3, 3)
    assert np.allclose(block_joint_peirce(atoms, 0, 0, z), unit(3, 3, 3) * z[2, 2])
    assert np.allclose(block_joint_peirce(atoms, 2, 1, z), z[0, 1] * unit(3, 1, 2) + z[1, 0] * unit(3, 2, 1))


def test_run_suite_small_passes():
    reports = run_suite(n=5, r=2, trials=5, seed=3)
    assert len(reports) == len(CHECKS)
    bad = [rep.line() for rep in reports if not rep.passed]
    assert not bad, "\n".join(bad)
    assert all(rep.samples == 5 and rep.seed == 3 for rep in reports)


def test_run_suite_edge_cases():
    assert run_suite(trials=0) == []
    with pytest.raises(ValueError):
        run_suite(n=3, r=4, trials=1)


def test_run_suite_deterministic():
    first = run_suite(n=4, r=1, trials=3, seed=11)
    second = run_suite(n=4, r=1, trials=3, seed=11)
    assert first == second


def test_run_suite_subset_and_format():
    reports = run_suite(n=4, r=2, trials=2, checks=["peirce_rules", "triangle_inequality"])
    assert [rep.name for rep in reports] == ["peirce_rules", "triangle_inequality"]
    text = format_reports(reports, 0.5)
    assert "PASS" in text and "2/2" in text
