"""Independent reference computations.

Nothing here goes through the geodesic or Peirce formulas being checked:
Peirce components come from block shortcuts or from diagonalizing ``e□e`` as
an ``n^2 x n^2`` matrix, subspace angles from range-basis SVDs, geodesics from
the matrix exponential of ``Ω = u a - a u``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from ..errors import ValidationError
from ..manifold import Projection, TangentVector, make_projection, make_tangent
from ..triple_core import as_matrix, k_operator_apply


@dataclass(frozen=True)
class OracleReport:
    name: str
    max_residual: float
    samples: int
    passed: bool
    seed: int
    tol: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<28} max_residual={self.max_residual:.3e}  "
                f"tol={self.tol:.1e}  samples={self.samples}  seed={self.seed}")


def brute_force_triple(x, y, z) -> np.ndarray:
    """``{x y z}`` by explicit index expansion."""
    x, y, z = (as_matrix(m) for m in (x, y, z))
    return 0.5 * (np.einsum("ij,kj,kl->il", x, y.conj(), z)
                  + np.einsum("ij,kj,kl->il", z, y.conj(), x))


def block_peirce(a, z):
    """``(a z a, a z (I-a) + (I-a) z a, (I-a) z (I-a))`` for a projection ``a``."""
    a, z = as_matrix(a), as_matrix(z)
    c = np.eye(a.shape[0]) - a
    return a @ z @ a, a @ z @ c + c @ z @ a, c @ z @ c


def block_joint_peirce(atoms, i: int, j: int, z) -> np.ndarray:
    """Joint Peirce component for a family of orthogonal projections, by blocks."""
    mats = [as_matrix(getattr(p, "matrix", p)) for p in atoms]
    z = as_matrix(z)
    p0 = np.eye(z.shape[0]) - sum(mats)
    proj = [p0] + mats
    i, j = min(i, j), max(i, j)
    if i == j:
        return proj[i] @ z @ proj[i]
    return proj[i] @ z @ proj[j] + proj[j] @ z @ proj[i]


def box_operator_matrix(e) -> np.ndarray:
    """Matrix of ``z -> {e e z}`` acting on row-major ``vec(z)``."""
    e = as_matrix(e)
    n = e.shape[0]
    ee = e @ e.conj().T
    eye = np.eye(n)
    # vec(A z B) = kron(A, B^T) vec(z) for row-major vec
    return 0.5 * (np.kron(ee, eye) + np.kron(eye, (e.conj().T @ e).T))


def eigenspace_peirce(e, k: float, z) -> np.ndarray:
    """Orthogonal projection of ``z`` onto the ``k``-eigenspace of ``e□e``."""
    z = as_matrix(z)
    n = z.shape[0]
    vals, vecs = np.linalg.eigh(box_operator_matrix(e))
    sel = vecs[:, np.abs(vals - k) < 1e-6]
    return (sel @ (sel.conj().T @ z.reshape(-1))).reshape(n, n)


def _basis(p: Projection) -> np.ndarray:
    u, _, _ = np.linalg.svd(p.matrix)
    return u[:, : p.rank]


def principal_angles(a: Projection, b: Projection) -> np.ndarray:
    """Ascending principal angles between ``range(a)`` and ``range(b)``.

    Large angles are ``arccos`` of the singular values of ``V_a* V_b``
    (clamped to ``[0, 1]``); angles below ``pi/4`` are taken from
    ``arcsin`` of the singular values of ``(I - V_a V_a*) V_b``, where
    ``arccos`` loses accuracy.
    """
    if a.rank != b.rank:
        raise ValidationError(f"rank mismatch: {a.rank} vs {b.rank}")
    va, vb = _basis(a), _basis(b)
    cos = np.clip(np.linalg.svd(va.conj().T @ vb, compute_uv=False), 0.0, 1.0)
    sin = np.clip(np.linalg.svd(vb - va @ (va.conj().T @ vb), compute_uv=False), 0.0, 1.0)
    from_cos = np.arccos(cos)  # ascending
    from_sin = np.arcsin(sin[::-1])  # ascending
    return np.where(cos**2 >= 0.5, from_sin, from_cos)


def _tangent(a: Projection, u) -> TangentVector:
    if isinstance(u, TangentVector):
        return u
    return make_tangent(a, u)


def commutator_flow(a: Projection, u, t: float) -> Projection:
    """``exp(t Ω) a exp(-t Ω)`` with ``Ω = u a - a u`` (skew-Hermitian)."""
    u = _tangent(a, u)
    omega = u.matrix @ a.matrix - a.matrix @ u.matrix
    g = expm(t * omega)
    return make_projection(g @ a.matrix @ g.conj().T, a.tol)


def operator_flow_series(a: Projection, u, t: float, terms: int) -> np.ndarray:
    """Truncated series ``sum_{m < terms} t^m/m! k_u^m(a)``."""
    if terms < 1:
        raise ValidationError("terms must be >= 1")
    u = _tangent(a, u)
    term = a.matrix.copy()
    total = term.copy()
    for m in range(1, terms):
        term = k_operator_apply(a.matrix, u.matrix, term) * (t / m)
        total = total + term
    return total
