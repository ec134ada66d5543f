"""Projections, frames, tangent spaces, spectral data and the metric."""

import numpy as np
import pytest
from conftest import opn, unit
from hypothesis import given, settings
from hypothesis import strategies as st

from jbgrassmann import manifold as mf
from jbgrassmann.errors import DimensionError, NotProjectionError, NotTangentError, ValidationError
from jbgrassmann.triple_core import is_tripotent, peirce_project


def test_make_projection_examples():
    assert mf.make_projection(np.diag([1.0, 1.0, 0.0, 0.0])).rank == 2
    assert mf.make_projection(np.full((2, 2), 0.5)).rank == 1
    with pytest.raises(NotProjectionError):
        mf.make_projection([[1.0, 1.0], [0.0, 0.0]])


def test_make_projection_rejects():
    with pytest.raises(NotProjectionError):
        mf.make_projection(np.diag([1.0, 0.5]))
    with pytest.raises(ValidationError):
        mf.make_projection(np.zeros((3, 3)))
    with pytest.raises(ValidationError):
        mf.make_projection(np.ones((2, 3)))


def test_projection_symmetrizes():
    m = np.full((2, 2), 0.5) + 1e-13j * np.array([[0, 1], [1, 0]])
    p = mf.make_projection(m, tol=1e-10)
    assert np.array_equal(p.matrix, p.matrix.conj().T)
    assert p.symmetrization_residual > 0


def test_random_projection_deterministic():
    p, q = mf.random_projection(4, 2, 7), mf.random_projection(4, 2, 7)
    assert np.array_equal(p.matrix, q.matrix)
    assert p.rank == 2
    assert not np.array_equal(p.matrix, mf.random_projection(4, 2, 8).matrix)


def test_frame_for_diagonal():
    a = mf.make_projection(np.diag([1.0, 1.0, 0.0]))
    atoms = sorted((at.matrix for at in mf.frame_for(a).atoms), key=lambda m: -m[0, 0].real)
    assert np.allclose(atoms[0], unit(3, 1, 1))
    assert np.allclose(atoms[1], unit(3, 2, 2))


def test_frame_properties(rng):
    a = mf.random_projection(6, 3, rng)
    fr = mf.random_frame(a, rng)
    assert np.allclose(sum(at.matrix for at in fr.atoms), a.matrix)
    for i, x in enumerate(fr.atoms):
        assert x.rank == 1
        for y in fr.atoms[i + 1:]:
            assert opn(x.matrix @ y.matrix) < 1e-12
    with pytest.raises(ValidationError):
        mf.make_frame(a, fr.vectors[:, :2])


def test_tangent_project_examples(rng):
    a = mf.make_projection(unit(2, 1, 1))
    u = unit(2, 1, 2) + unit(2, 2, 1)
    assert np.allclose(mf.tangent_project(a, u).matrix, u)
    b = mf.random_projection(5, 2, rng)
    h = b.matrix @ np.diag(np.arange(5.0)) @ b.matrix + b.complement @ b.complement
    assert opn(mf.tangent_project(b, h).matrix) < 1e-13


def test_make_tangent_rejects(e11):
    with pytest.raises(NotTangentError):
        mf.make_tangent(e11, unit(2, 1, 1))
    with pytest.raises(NotTangentError):
        mf.make_tangent(e11, unit(2, 1, 2))  # not Hermitian
    with pytest.raises(DimensionError):
        mf.make_tangent(e11, np.zeros((3, 3)))


def test_tangent_from_xi_examples():
    a = mf.make_projection(unit(2, 1, 1))
    fr = mf.make_frame(a, [[1.0, 0.0]])
    assert np.allclose(mf.tangent_from_xi(fr, np.array([[0.0], [1.0]])).matrix, unit(2, 1, 2) + unit(2, 2, 1))
    assert opn(mf.tangent_from_xi(fr, np.zeros((2, 1))).matrix) == 0


def test_tangent_xi_roundtrip(rng):
    a = mf.random_projection(6, 2, rng)
    fr = mf.random_frame(a, rng)
    u = mf.random_tangent(a, rng)
    xis = mf.xi_from_tangent(fr, u)
    assert opn(a.matrix @ xis) < 1e-13
    assert opn(mf.tangent_from_xi(fr, xis).matrix - u.matrix) < 1e-13


def _four_example():
    a = mf.make_projection(np.diag([1.0, 1.0, 0.0, 0.0]))
    u13, u24 = unit(4, 1, 3) + unit(4, 3, 1), unit(4, 2, 4) + unit(4, 4, 2)
    return a, u13, u24


def test_spectral_decompose_example():
    a, u13, u24 = _four_example()
    sd = mf.spectral_decompose(mf.make_tangent(a, 0.7 * u13 + 0.2 * u24))
    assert np.allclose(sd.singular_values, [0.2, 0.7])
    assert np.allclose(sd.tripotents[0], u24)
    assert np.allclose(sd.tripotents[1], u13)
    assert np.allclose(sd.reconstruct(), 0.7 * u13 + 0.2 * u24)


def test_spectral_decompose_zero(e11):
    sd = mf.spectral_decompose(mf.zero_tangent(e11))
    assert sd.s == 0 and sd.tripotents == ()


def test_spectral_tripotents_orthogonal(rng):
    a = mf.random_projection(8, 3, rng)
    sd = mf.spectral_decompose(mf.random_tangent(a, rng))
    assert sd.s == 3 and np.all(np.diff(sd.singular_values) >= 0)
    for i, x in enumerate(sd.tripotents):
        assert is_tripotent(x)
        for y in sd.tripotents[i + 1:]:
            assert mf.are_orthogonal_tripotents(x, y)


def test_associated_frame_example():
    a, u13, u24 = _four_example()
    fr = mf.associated_frame(mf.make_tangent(a, 0.7 * u13 + 0.2 * u24))
    assert np.allclose(fr.atoms[0].matrix, unit(4, 2, 2))
    assert np.allclose(fr.atoms[1].matrix, unit(4, 1, 1))


def test_associated_frame_of_zero_completes(rng):
    a = mf.random_projection(5, 2, rng)
    fr = mf.associated_frame(mf.zero_tangent(a))
    assert np.allclose(sum(at.matrix for at in fr.atoms), a.matrix)


def test_associated_frame_peirce_relations(rng):
    a = mf.random_projection(7, 3, rng)
    u = mf.random_tangent(a, rng)
    sd = mf.spectral_decompose(u)
    fr = mf.associated_frame(u, sd)
    for atom, uk in zip(fr.atoms, sd.tripotents):
        # u_k in Z_1/2(a_k) and a_k = {u_k u_k a_k}
        assert opn(peirce_project(atom, 0.5, uk) - uk) < 1e-12
        assert opn(0.5 * (uk @ uk @ atom.matrix + atom.matrix @ uk @ uk) - atom.matrix) < 1e-12


def test_minimal_tripotent_half():
    assert np.allclose(mf.minimal_tripotent_half([1, 0], [0, 1]), unit(2, 1, 2) + unit(2, 2, 1))
    with pytest.raises(ValidationError):
        mf.minimal_tripotent_half([1, 0], [1, 0])


def test_orthogonality_criterion():
    u13, u24, u23 = (unit(4, i, j) + unit(4, j, i) for i, j in ((1, 3), (2, 4), (2, 3)))
    assert mf.are_orthogonal_tripotents(u13, u24)
    assert not mf.are_orthogonal_tripotents(u13, u13)
    assert not mf.are_orthogonal_tripotents(u13, u23)


def test_lambda_coefficients(e11, e22, half):
    fr = mf.frame_for(e11)
    assert np.allclose(mf.lambda_coefficients(fr, e11), 1)
    assert np.allclose(mf.lambda_coefficients(fr, e22), 0)
    assert np.allclose(mf.lambda_coefficients(fr, half), 0.5)


def test_normal_neighbourhood(e11, e22, half):
    assert mf.is_in_normal_nbhd(e11, e11)
    assert not mf.is_in_normal_nbhd(e11, e22)
    assert mf.is_in_normal_nbhd(e11, half)
    with pytest.raises(ValidationError):
        mf.is_in_normal_nbhd(e11, mf.make_projection(np.eye(2)))


def test_metric_examples(e11):
    u = mf.make_tangent(e11, unit(2, 1, 2) + unit(2, 2, 1))
    assert np.isclose(mf.metric(e11, u, u), 1.0)
    a, u13, u24 = _four_example()
    v = mf.make_tangent(a, u13 + u24)
    assert np.isclose(mf.metric(a, v, v), 1.0)
    z = mf.zero_tangent(a)
    assert mf.metric(a, z, z) == 0


def test_metric_frame_independent_and_bounded(rng):
    a = mf.random_projection(8, 3, rng)
    u, v = mf.random_tangent(a, rng), mf.random_tangent(a, rng)
    f1, f2 = mf.random_frame(a, rng), mf.random_frame(a, rng)
    assert abs(mf.metric(a, u, v, f1) - mf.metric(a, u, v, f2)) < 1e-12
    assert abs(mf.metric(a, u, v, f1) - mf.metric(a, v, u, f1)) < 1e-12
    assert mf.tangent_norm(u) ** 2 <= opn(u.matrix) ** 2 + 1e-12


def test_metric_base_mismatch(rng):
    a, b = mf.random_projection(4, 2, 1), mf.random_projection(4, 2, 2)
    with pytest.raises(ValidationError):
        mf.metric(a, mf.random_tangent(b, 0), mf.random_tangent(b, 0))


def test_jordan_algebra_basis(e11):
    u = unit(2, 1, 2) + unit(2, 2, 1)
    p, x, x2 = mf.jordan_algebra_basis(e11, u)
    assert np.allclose(p, unit(2, 1, 1)) and np.allclose(x, u) and np.allclose(x2, unit(2, 2, 2))
    with pytest.raises(ValidationError):
        mf.jordan_algebra_basis(e11, unit(2, 2, 2))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 7), seed=st.integers(0, 2**31 - 1), data=st.data())
def test_spectral_reconstruction_property(n, seed, data):
    r = data.draw(st.integers(1, n - 1))
    rng = np.random.default_rng(seed)
    a = mf.random_projection(n, r, rng)
    u = mf.random_tangent(a, rng)
    sd = mf.spectral_decompose(u)
    assert sd.s <= min(r, n - r)
    assert opn(sd.reconstruct() - u.matrix) < 1e-12 * (1 + opn(u.matrix))
